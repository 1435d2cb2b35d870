"""Groebner-Shirshov engine for Lie Omega-polynomial rule sets.

A rule is a monic Lie polynomial used as a rewrite rule on its leading
word.  Two rules interact through intersection ambiguities (their leading
words overlap as top-level concatenations) and inclusion ambiguities (one
leading word occurs inside the other, possibly under operators).  Each
ambiguity yields a composition, the Lie analogue of an S-polynomial,
built from special normal words; a rule set is a Groebner-Shirshov basis
up to a degree bound when every composition reduces to zero.

The associative cross-check runs the same ambiguities through the
associative rewriting machinery on the expanded rules; the two verdicts
must agree, which gives an independent route to every triviality claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .liepoly import (
    AssocPoly,
    LambdaPoly,
    LiePoly,
    apply_op,
    bracket,
    expand,
    normalize_monic,
    specialize,
)
from .lyndon import SLOT, BracketNode, OpNode, alsw_by_degree, relative_bracket
from .words import (
    LT,
    STAR,
    Alphabet,
    OmegaWord,
    cmp_dl,
    has_occurrence,
    occurrences,
    overlaps,
    substitute,
)

INTERSECTION = "intersection"
INCLUSION = "inclusion"


class NonMonicRule(ValueError):
    """A rule whose leading coefficient is not 1."""


@dataclass(frozen=True)
class Rule:
    """A monic rewrite rule with its cached leading word."""

    poly: LiePoly
    lead: OmegaWord
    id: int


class RuleSet:
    """An ordered collection of monic rules over one alphabet.

    ``lam`` records an optional specialization of the weight parameter;
    ``None`` means the fully symbolic mode.
    """

    def __init__(self, rules, alphabet: Alphabet, lam=None):
        rules = tuple(rules)
        seen = set()
        for r in rules:
            if r.poly.is_zero():
                raise ValueError("a rule may not be the zero polynomial")
            w, c = r.poly.leading()
            if not c.is_one():
                raise NonMonicRule(f"rule {r.id} has leading coefficient {c}")
            if w != r.lead:
                raise ValueError(f"rule {r.id} has stale cached leading word")
            if r.id in seen:
                raise ValueError(f"duplicate rule id {r.id}")
            seen.add(r.id)
        self.rules = rules
        self.alphabet = alphabet
        self.lam = None if lam is None else Fraction(lam)

    @classmethod
    def from_polys(cls, polys, alphabet: Alphabet, lam=None):
        """Build a rule set from arbitrary nonzero Lie polynomials,
        specializing the weight first when requested and normalizing each
        polynomial to be monic."""
        rules = []
        for i, p in enumerate(polys):
            if lam is not None:
                p = specialize(p, lam)
            p = normalize_monic(p)
            rules.append(Rule(p, p.leading()[0], i))
        return cls(rules, alphabet, lam)

    def leads(self):
        return [r.lead for r in self.rules]

    def __len__(self):
        return len(self.rules)


@dataclass(frozen=True)
class Ambiguity:
    """A critical overlap or inclusion of two leading words.

    For intersections ``w = lead(f)·a = b·lead(g)``; for inclusions
    ``w = lead(f) = pi|_{lead(g)}``.
    """

    kind: str
    f: int
    g: int
    w: OmegaWord
    a: Optional[OmegaWord] = None
    b: Optional[OmegaWord] = None
    pi: Optional[OmegaWord] = None

    def sort_key(self):
        ctx = self.a.dl_key() if self.kind == INTERSECTION else self.pi.dl_key()
        return (self.w.dl_key(), self.f, self.g, self.kind, ctx)


@dataclass(frozen=True)
class CompositionReport:
    """One composition together with its reduced normal form."""

    ambiguity: Ambiguity
    composition: object
    normal_form: object

    @property
    def trivial(self):
        return self.normal_form.is_zero()


class PresetKind(Enum):
    ROTA_BAXTER = "rb"
    MODIFIED_ROTA_BAXTER = "mrb"
    NIJENHUIS = "nij"


# ---------------------------------------------------------------------------
# special normal words and reduction


def special_normal_word(pi: OmegaWord, rule: Rule) -> LiePoly:
    """The rule substituted into a context through relative bracketing.

    The result is monic with leading word substitute(pi, rule.lead); this
    postcondition is verified on every call.
    """
    marked = relative_bracket(pi, rule.lead)
    result = _eval_marked(marked, rule.poly)
    w, c = result.leading()
    expected = substitute(pi, rule.lead)
    if w != expected or not c.is_one():
        raise AssertionError(
            f"special normal word is not monic on {expected}: got ({w}, {c})"
        )
    return result


def _eval_marked(t, f: LiePoly) -> LiePoly:
    if t is SLOT:
        return f
    if not t.has_slot:
        return LiePoly.basis(t.word())
    if type(t) is BracketNode:
        return bracket(_eval_marked(t.left, f), _eval_marked(t.right, f))
    if type(t) is OpNode:
        return apply_op(t.op, [_eval_marked(c, f) for c in t.children])
    raise TypeError(f"not a marked tree node: {t!r}")  # pragma: no cover


def reduce(h: LiePoly, S: RuleSet) -> LiePoly:
    """Normal form of h modulo the rule set.

    While the leading word contains an occurrence of some rule's leading
    word, the matching special normal word is subtracted; otherwise the
    leading term moves to the output.  Rule selection is by smallest rule
    id, then leftmost-outermost occurrence, so normal forms are
    deterministic even for non-confluent rule sets.
    """
    out: dict = {}
    cur = h
    while not cur.is_zero():
        u, c = cur.leading()
        hit = None
        for rule in S.rules:
            if rule.lead.degree > u.degree:
                continue
            occs = occurrences(u, rule.lead)
            if occs:
                hit = (occs[0], rule)
                break
        if hit is None:
            out[u] = c
            cur = cur - LiePoly.basis(u, c)
        else:
            pi, rule = hit
            cur = cur - special_normal_word(pi, rule).scale(c)
    return LiePoly(out)


# ---------------------------------------------------------------------------
# ambiguities and compositions


def ambiguities(f: Rule, g: Rule) -> list:
    """All critical configurations of the ordered rule pair (f, g)."""
    out = []
    for w, a, b in overlaps(f.lead, g.lead):
        out.append(Ambiguity(INTERSECTION, f.id, g.id, w, a=a, b=b))
    for pi in occurrences(f.lead, g.lead):
        if f.id == g.id and pi.primes == (STAR,):
            continue  # a rule trivially includes itself
        out.append(Ambiguity(INCLUSION, f.id, g.id, f.lead, pi=pi))
    out.sort(key=Ambiguity.sort_key)
    return out


def composition(f: Rule, g: Rule, amb: Ambiguity) -> LiePoly:
    """The composition of f and g at the given ambiguity.

    Its leading word is strictly below the ambiguity word; this descent
    is asserted on every call.
    """
    if amb.kind == INTERSECTION:
        pi_f = OmegaWord((STAR,) + amb.a.primes)
        pi_g = OmegaWord(amb.b.primes + (STAR,))
        comp = special_normal_word(pi_f, f) - special_normal_word(pi_g, g)
    else:
        comp = f.poly - special_normal_word(amb.pi, g)
    if not comp.is_zero():
        w, _ = comp.leading()
        if cmp_dl(w, amb.w) != LT:
            raise AssertionError(
                f"composition at {amb.w} fails to cancel: leading word {w}"
            )
    return comp


def _all_ambiguities(rules, maxdeg):
    out = []
    for f in rules:
        for g in rules:
            for amb in ambiguities(f, g):
                if amb.w.degree <= maxdeg:
                    out.append((amb, f, g))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def check_gsb(S: RuleSet, maxdeg: int) -> list:
    """Compute and reduce every composition with ambiguity degree at most
    maxdeg; one report per ambiguity, in canonical order."""
    reports = []
    for amb, f, g in _all_ambiguities(S.rules, maxdeg):
        comp = composition(f, g, amb)
        nf = reduce(comp, S)
        reports.append(CompositionReport(amb, comp, nf))
    return reports


def complete(S: RuleSet, maxdeg: int) -> RuleSet:
    """Adjoin reduced nontrivial compositions, smallest ambiguity first,
    until none remain below the degree bound; then inter-reduce."""
    rules = list(S.rules)
    next_id = max((r.id for r in rules), default=-1) + 1
    while True:
        progressed = False
        for amb, f, g in _all_ambiguities(rules, maxdeg):
            comp = composition(f, g, amb)
            nf = reduce(comp, RuleSet(rules, S.alphabet, S.lam))
            if not nf.is_zero():
                nf = normalize_monic(nf)
                rules.append(Rule(nf, nf.leading()[0], next_id))
                next_id += 1
                progressed = True
                break
        if not progressed:
            break
    rules = _interreduce(rules, S.alphabet, S.lam)
    rules = [Rule(r.poly, r.lead, i) for i, r in enumerate(rules)]
    return RuleSet(rules, S.alphabet, S.lam)


def _interreduce(rules, alphabet, lam):
    rules = list(rules)
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(rules):
            others = rules[:i] + rules[i + 1 :]
            nf = reduce(r.poly, RuleSet(others, alphabet, lam))
            if nf == r.poly:
                continue
            changed = True
            if nf.is_zero():
                rules.pop(i)
            else:
                nf = normalize_monic(nf)
                rules[i] = Rule(nf, nf.leading()[0], r.id)
            break
    return rules


# ---------------------------------------------------------------------------
# irreducible words and the dimension oracle


def irr_enumerate(S: RuleSet, maxdeg: int) -> list:
    """ALSW words of each degree containing no rule's leading word;
    index 0 of the returned list is an empty placeholder."""
    leads = S.leads()
    out = [[]]
    for bucket in alsw_by_degree(S.alphabet, maxdeg)[1:]:
        out.append(
            [u for u in bucket if not any(has_occurrence(u, w) for w in leads)]
        )
    return out


_ORACLE_SEED = 271828


def _oracle_specializations(count):
    rng = random.Random(_ORACLE_SEED)
    out = []
    while len(out) < count:
        v = Fraction(rng.randint(2, 97), rng.randint(2, 97))
        if rng.random() < 0.5:
            v = -v
        if v not in out and v not in (1, -1):
            out.append(v)
    return out


class _RankState:
    """Incremental rank of sparse rational rows, by triangular elimination."""

    def __init__(self):
        self.basis: dict = {}
        self.rank = 0

    def insert(self, row: dict):
        row = dict(row)
        while row:
            lead = max(row, key=OmegaWord.dl_key)
            piv = self.basis.get(lead)
            if piv is None:
                inv = 1 / row[lead]
                self.basis[lead] = {w: c * inv for w, c in row.items()}
                self.rank += 1
                return
            coeff = row.pop(lead)
            for w, c in piv.items():
                if w == lead:
                    continue
                nc = row.get(w, 0) - coeff * c
                if nc:
                    row[w] = nc
                else:
                    row.pop(w, None)


def dim_oracle(S: RuleSet, maxdeg: int, runs: int = 3) -> list:
    """Per-degree dimension of the quotient, computed independently of the
    irreducible-word enumeration.

    The span of all special normal words of leading degree at most n is
    expanded into associative coordinates; its rank, accumulated degree by
    degree, is subtracted from the cumulative ALSW count.  The filtered
    computation is what makes weight terms of lower degree (as in the
    Rota-Baxter family) come out right.  In symbolic mode the ranks are
    computed under several random rational specializations of the weight,
    which must agree; disagreement aborts, because it falsifies the
    generic-rank assumption.
    """
    alsw = alsw_by_degree(S.alphabet, maxdeg)
    specs = [S.lam] if S.lam is not None else _oracle_specializations(runs)
    states = [_RankState() for _ in specs]
    dims = [0] * (maxdeg + 1)
    for n in range(1, maxdeg + 1):
        row_polys = []
        for u in alsw[n]:
            for rule in S.rules:
                if rule.lead.degree > n:
                    continue
                for pi in occurrences(u, rule.lead):
                    row_polys.append(expand(special_normal_word(pi, rule)))
        increments = []
        for state, lam in zip(states, specs):
            before = state.rank
            for rp in row_polys:
                row = {}
                for w, c in rp.terms.items():
                    v = c.evaluate(lam)
                    if v:
                        row[w] = v
                state.insert(row)
            increments.append(state.rank - before)
        if len(set(increments)) > 1:
            raise RuntimeError(
                f"rank disagreement at degree {n} across specializations "
                f"{specs}: {increments}"
            )
        dims[n] = len(alsw[n]) - increments[0]
    return dims


# ---------------------------------------------------------------------------
# associative cross-check


def _subst_assoc(pi: OmegaWord, q: AssocPoly) -> AssocPoly:
    acc: dict = {}
    for w, c in q.terms.items():
        target = substitute(pi, w)
        prev = acc.get(target)
        s = c if prev is None else prev + c
        if s.is_zero():
            acc.pop(target, None)
        else:
            acc[target] = s
    return AssocPoly(acc)


def _assoc_reduce(h: AssocPoly, S: RuleSet, exps: dict) -> AssocPoly:
    out: dict = {}
    cur = h
    while not cur.is_zero():
        u, c = cur.leading()
        hit = None
        for rule in S.rules:
            if rule.lead.degree > u.degree:
                continue
            occs = occurrences(u, rule.lead)
            if occs:
                hit = (occs[0], rule)
                break
        if hit is None:
            out[u] = c
            cur = cur - AssocPoly.single(u, c)
        else:
            pi, rule = hit
            cur = cur - _subst_assoc(pi, exps[rule.id]).scale(c)
    return AssocPoly(out)


def assoc_check(S: RuleSet, maxdeg: int) -> list:
    """Run the associative composition machinery on the expanded rules.

    The ambiguities coincide with those of check_gsb because the leading
    words do, so the two report lists align one to one.
    """
    exps = {}
    for r in S.rules:
        e = expand(r.poly)
        w, c = e.leading()
        if w != r.lead or not c.is_one():  # pragma: no cover - expansion is monic
            raise NonMonicRule(f"expanded rule {r.id} is not monic on its lead")
        exps[r.id] = e
    reports = []
    for amb, f, g in _all_ambiguities(S.rules, maxdeg):
        if amb.kind == INTERSECTION:
            comp = exps[f.id] * AssocPoly.single(amb.a) - AssocPoly.single(
                amb.b
            ) * exps[g.id]
        else:
            comp = exps[f.id] - _subst_assoc(amb.pi, exps[g.id])
        nf = _assoc_reduce(comp, S, exps)
        reports.append(CompositionReport(amb, comp, nf))
    return reports


# ---------------------------------------------------------------------------
# the three preset rule families


def preset_rules(
    kind: PresetKind, alphabet: Alphabet, maxdeg: int, lam=None
) -> RuleSet:
    """Defining relations of the chosen operator identity, instantiated on
    all ALSW pairs u > v with leading word degree at most maxdeg.

    Every rule has the leading word P(u)P(v) with coefficient 1.
    """
    kind = PresetKind(kind)
    if len(alphabet.operators) != 1 or alphabet.operators[0].arity != 1:
        raise ValueError("presets require exactly one unary operator")
    P = alphabet.operators[0]
    polys = []
    top = maxdeg - 3  # deg(P(u)P(v)) = 2 + deg(u) + deg(v), deg(v) >= 1
    if top >= 1:
        alsw = alsw_by_degree(alphabet, top)
        flat = [u for bucket in alsw[1:] for u in bucket]
        for u in flat:
            for v in flat:
                if u.degree + v.degree + 2 <= maxdeg and v < u:
                    polys.append(_preset_poly(kind, P, u, v))
    return RuleSet.from_polys(polys, alphabet, lam)


def _preset_poly(kind: PresetKind, P, u: OmegaWord, v: OmegaWord) -> LiePoly:
    bu = LiePoly.basis(u)
    bv = LiePoly.basis(v)
    pu = apply_op(P, [bu])
    pv = apply_op(P, [bv])
    f = bracket(pu, pv)
    f = f - apply_op(P, [bracket(pu, bv)])
    f = f - apply_op(P, [bracket(bu, pv)])
    tail = bracket(bu, bv)
    if kind is PresetKind.ROTA_BAXTER:
        f = f - apply_op(P, [tail]).scale(LambdaPoly((0, 1)))
    elif kind is PresetKind.MODIFIED_ROTA_BAXTER:
        f = f - tail.scale(LambdaPoly((0, 1)))
    else:
        f = f + apply_op(P, [apply_op(P, [tail])])
    return f
