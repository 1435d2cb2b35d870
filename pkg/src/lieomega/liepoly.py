"""Exact coefficient arithmetic and Lie Omega-polynomials.

Coefficients live in Q[l], univariate polynomials in the formal weight
parameter with rational coefficients; no floating point anywhere.  An
associative polynomial maps words to coefficients; a Lie polynomial maps
ALSW words to coefficients and represents the combination of their
standard bracketings.  ``expand`` and ``to_nlsw`` are the two directions
of the bridge between the representations: expansion replaces each
bracketing by its associative image, and ``to_nlsw`` peels leading terms
(each ALSW expansion is monic on its own word, so peeling terminates and
inverts expansion exactly).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .lyndon import (
    BracketNode,
    Leaf,
    OpNode,
    is_alsw,
    standard_split,
    std_bracket,
)
from .words import ArityMismatch, OmegaWord, OpWord, concat


class NotLieElement(ValueError):
    """An associative polynomial outside the Lie subalgebra."""

    def __init__(self, word):
        super().__init__(f"leading word {word} is not Lyndon-Shirshov")
        self.word = word


class ZeroPolynomial(ValueError):
    """The zero polynomial has no leading term."""


class NonConstantLeadingCoefficient(ValueError):
    """The leading coefficient involves the weight parameter and is not a
    unit of Q[l]."""


class LambdaPoly:
    """A univariate polynomial in the weight parameter over Q.

    coeffs[i] is the rational coefficient of the i-th power; the tuple
    carries no trailing zeros, so equal values are structurally equal.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, value):
        return cls((Fraction(value),))

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (Fraction(1),)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) > 1:
            raise ValueError("coefficient is not constant")
        return self.coeffs[0]

    def evaluate(self, value) -> Fraction:
        value = Fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monomials(self):
        for power, c in enumerate(self.coeffs):
            if c:
                yield power, c

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LambdaPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            if other == 1:
                return self
            return LambdaPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LambdaPoly):
            other = other.constant()
        other = Fraction(other)
        return LambdaPoly(tuple(c / other for c in self.coeffs))

    def __eq__(self, other):
        return type(other) is LambdaPoly and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for power, c in self.monomials():
            if power == 0:
                parts.append(str(c))
            else:
                head = "l" if power == 1 else f"l^{power}"
                parts.append(head if c == 1 else f"{c}*{head}")
        return " + ".join(parts)


ZERO = LambdaPoly()
ONE = LambdaPoly.const(1)
LAMBDA = LambdaPoly((0, 1))


def _clean(terms: dict) -> dict:
    return {w: c for w, c in terms.items() if not c.is_zero()}


def _add_scaled(acc: dict, terms, coeff=None):
    for w, c in terms:
        if coeff is not None:
            c = c * coeff
        prev = acc.get(w)
        s = c if prev is None else prev + c
        if s.is_zero():
            acc.pop(w, None)
        else:
            acc[w] = s
    return acc


class AssocPoly:
    """A finite combination of words with Q[l] coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _clean(terms) if terms else {}

    @classmethod
    def single(cls, word, coeff=ONE):
        p = cls()
        if not coeff.is_zero():
            p.terms[word] = coeff
        return p

    def is_zero(self):
        return not self.terms

    def leading(self):
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading word")
        w = max(self.terms, key=OmegaWord.dl_key)
        return w, self.terms[w]

    def items_desc(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].dl_key(), reverse=True)

    def __add__(self, other):
        return AssocPoly(_add_scaled(dict(self.terms), other.terms.items()))

    def __sub__(self, other):
        return AssocPoly(_add_scaled(dict(self.terms), ((w, -c) for w, c in other.terms.items())))

    def __neg__(self):
        return AssocPoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = concat(u, v)
                prev = out.get(w)
                c = cu * cv if prev is None else prev + cu * cv
                if c.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = c
        return AssocPoly(out)

    def scale(self, coeff):
        if isinstance(coeff, (int, Fraction)):
            coeff = LambdaPoly.const(coeff)
        if coeff.is_zero():
            return AssocPoly()
        return AssocPoly({w: c * coeff for w, c in self.terms.items()})

    def __eq__(self, other):
        return type(other) is AssocPoly and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})·{w}" for w, c in self.items_desc())


class LiePoly:
    """A combination of standard bracketings, keyed by their ALSW words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        terms = _clean(terms) if terms else {}
        for w in terms:
            if not is_alsw(w):
                raise NotLieElement(w)
        self.terms = terms

    @classmethod
    def basis(cls, word, coeff=ONE):
        p = cls()
        if not coeff.is_zero():
            if not is_alsw(word):
                raise NotLieElement(word)
            p.terms[word] = coeff
        return p

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def leading(self):
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        w = max(self.terms, key=OmegaWord.dl_key)
        return w, self.terms[w]

    def items_desc(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].dl_key(), reverse=True)

    def support_degrees(self):
        return sorted({w.degree for w in self.terms})

    def is_homogeneous(self):
        return len(self.support_degrees()) <= 1

    def __add__(self, other):
        return _lie(_add_scaled(dict(self.terms), other.terms.items()))

    def __sub__(self, other):
        return _lie(_add_scaled(dict(self.terms), ((w, -c) for w, c in other.terms.items())))

    def __neg__(self):
        return _lie({w: -c for w, c in self.terms.items()})

    def scale(self, coeff):
        if isinstance(coeff, (int, Fraction)):
            coeff = LambdaPoly.const(coeff)
        if coeff.is_zero():
            return _lie({})
        return _lie({w: c * coeff for w, c in self.terms.items()})

    def __eq__(self, other):
        return type(other) is LiePoly and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})·[{w}]" for w, c in self.items_desc())


def _lie(terms: dict) -> LiePoly:
    """Internal constructor skipping the ALSW re-validation of keys."""
    p = LiePoly.__new__(LiePoly)
    p.terms = terms
    return p


# ---------------------------------------------------------------------------
# expansion into the associative algebra and back

_EXPAND_CACHE: dict = {}


def _expand_alsw(u: OmegaWord) -> dict:
    """Integer-coefficient associative expansion of the standard
    bracketing of u; monic on u itself."""
    got = _EXPAND_CACHE.get(u)
    if got is not None:
        return got
    primes = u.primes
    if len(primes) == 1:
        p = primes[0]
        if type(p) is OpWord:
            out: dict = {}
            for combo in product(*(list(_expand_alsw(a).items()) for a in p.args)):
                k = 1
                words = []
                for w, c in combo:
                    k *= c
                    words.append(w)
                key = OmegaWord((OpWord(p.op, tuple(words)),))
                out[key] = out.get(key, 0) + k
        else:
            out = {u: 1}
    else:
        left, right = standard_split(u)
        le, re = _expand_alsw(left), _expand_alsw(right)
        out = {}
        for lu, lc in le.items():
            for ru, rc in re.items():
                k = lc * rc
                w1 = concat(lu, ru)
                out[w1] = out.get(w1, 0) + k
                w2 = concat(ru, lu)
                out[w2] = out.get(w2, 0) - k
    out = {w: c for w, c in out.items() if c}
    _EXPAND_CACHE[u] = out
    return out


def expand(p: LiePoly) -> AssocPoly:
    """Associative expansion; leading word and coefficient are preserved."""
    acc: dict = {}
    for u, c in p.terms.items():
        _add_scaled(acc, ((w, c * k) for w, k in _expand_alsw(u).items()))
    return AssocPoly(acc)


def to_nlsw(q: AssocPoly) -> LiePoly:
    """NLSW coordinates of an associative polynomial in the Lie subalgebra.

    Peels leading terms: each step subtracts coeff times the expansion of
    the leading word's bracketing.  Raises NotLieElement when a leading
    word fails the Lyndon-Shirshov test, which certifies the input lies
    outside the Lie subalgebra.
    """
    rem = dict(q.terms)
    out: dict = {}
    while rem:
        u = max(rem, key=OmegaWord.dl_key)
        c = rem.pop(u)
        if not is_alsw(u):
            raise NotLieElement(u)
        out[u] = c
        for w, k in _expand_alsw(u).items():
            if w is u or w == u:
                continue
            _add_scaled(rem, ((w, c * (-k)),))
    return _lie(out)


def bracket(p: LiePoly, q: LiePoly) -> LiePoly:
    """Lie bracket computed through the associative commutator."""
    pe, qe = expand(p), expand(q)
    return to_nlsw(pe * qe - qe * pe)


def apply_op(op, args) -> LiePoly:
    """Multilinear operator application on NLSW coordinates."""
    if len(args) != op.arity:
        raise ArityMismatch(
            f"{op.name} expects {op.arity} argument(s), got {len(args)}"
        )
    out: dict = {}
    for combo in product(*(list(a.terms.items()) for a in args)):
        coeff = ONE
        words = []
        for w, c in combo:
            coeff = coeff * c
            words.append(w)
        key = OmegaWord((OpWord(op, tuple(words)),))
        _add_scaled(out, ((key, coeff),))
    return _lie(out)


def from_tree(t) -> LiePoly:
    """Evaluate an arbitrary bracket tree bottom-up into NLSW coordinates."""
    kind = type(t)
    if kind is Leaf:
        return LiePoly.basis(t.word())
    if kind is OpNode:
        return apply_op(t.op, [from_tree(c) for c in t.children])
    if kind is BracketNode:
        return bracket(from_tree(t.left), from_tree(t.right))
    raise TypeError(f"not a bracket tree node: {t!r}")


def normalize_monic(p: LiePoly) -> LiePoly:
    """Divide by the leading coefficient, which must be a nonzero rational."""
    w, c = p.leading()
    if not c.is_constant():
        raise NonConstantLeadingCoefficient(
            f"leading coefficient {c} of {w} is not invertible in Q[l]"
        )
    k = c.constant()
    if k == 1:
        return p
    return p.scale(Fraction(1) / k)


def specialize(p: LiePoly, value) -> LiePoly:
    """Substitute a concrete rational for the weight parameter."""
    value = Fraction(value)
    out: dict = {}
    for w, c in p.terms.items():
        v = c.evaluate(value)
        if v:
            out[w] = LambdaPoly.const(v)
    return _lie(out)
