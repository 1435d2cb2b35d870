"""Command-line surface: grammars for words, trees and polynomials, and
subcommands wrapping the engine.

Words:        word := prime+ ; prime := gen | op '(' word (',' word)* ')'
Trees:        tree := gen | op '(' tree (',' tree)* ')' | '(' tree tree ')'
Polynomials:  poly := ['-'] term (('+'|'-') term)* ; term := (factor '*')* tree
              factor := rational | 'l' ['^' nat] ; the literal "0" is zero.

Coefficients print as products of a rational, an optional power of the
weight parameter ``l`` and the tree, so every printed polynomial parses
back to itself.  Exit codes: 0 success (all compositions trivial for the
check commands), 1 nontrivial compositions found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .gsb import (
    INTERSECTION,
    NonMonicRule,
    PresetKind,
    RuleSet,
    assoc_check,
    check_gsb,
    complete,
    dim_oracle,
    irr_enumerate,
    preset_rules,
    reduce,
)
from .liepoly import (
    LambdaPoly,
    LiePoly,
    NonConstantLeadingCoefficient,
    NotLieElement,
    expand,
    from_tree,
)
from .lyndon import BracketNode, Leaf, NotAlsw, OpNode, std_bracket
from .words import Alphabet, ArityMismatch, OmegaWord, OpWord


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


@dataclass
class SessionConfig:
    """Alphabet plus run options shared by every subcommand."""

    alphabet: Alphabet
    lam: Optional[Fraction] = None  # None means fully symbolic
    max_degree: int = 6
    preset: Optional[PresetKind] = None

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max degree must be at least 1")


# ---------------------------------------------------------------------------
# tokenizer

_PUNCT = set("(),+-*/^")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("name", text[start:pos], start))
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("int", text[start:pos], start))
        elif ch in _PUNCT:
            tokens.append((ch, ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    return tokens


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind!r}", len(self.text))
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])

    def fail_here(self, message):
        tok = self.peek()
        raise ParseError(message, tok[2] if tok else len(self.text))


def _alphabet_of(cfg):
    return cfg.alphabet if isinstance(cfg, SessionConfig) else cfg


# ---------------------------------------------------------------------------
# word grammar


def parse_word(text: str, cfg) -> OmegaWord:
    """Parse a word; whitespace separates primes and is otherwise free."""
    alphabet = _alphabet_of(cfg)
    cur = _Cursor(text)
    word = _parse_word(cur, alphabet)
    cur.done()
    return word


def _parse_word(cur, alphabet):
    primes = [_parse_prime(cur, alphabet)]
    while True:
        tok = cur.peek()
        if tok is None or tok[0] != "name":
            break
        primes.append(_parse_prime(cur, alphabet))
    return OmegaWord(primes)


def _parse_prime(cur, alphabet):
    tok = cur.expect("name")
    name = tok[1]
    if alphabet.is_generator(name):
        return alphabet.letter(name)
    if not alphabet.is_operator(name):
        raise ParseError(f"unknown name {name!r}", tok[2])
    op = alphabet.operator(name)
    cur.expect("(")
    args = [_parse_word(cur, alphabet)]
    while cur.peek() and cur.peek()[0] == ",":
        cur.next()
        args.append(_parse_word(cur, alphabet))
    cur.expect(")")
    if len(args) != op.arity:
        raise ParseError(
            f"{name} expects {op.arity} argument(s), got {len(args)}", tok[2]
        )
    return OpWord(op, args)


def word_str(w: OmegaWord) -> str:
    return str(w)


# ---------------------------------------------------------------------------
# tree and polynomial grammar


def _parse_tree(cur, alphabet):
    tok = cur.peek()
    if tok is None:
        raise ParseError("expected a tree", len(cur.text))
    if tok[0] == "(":
        cur.next()
        left = _parse_tree(cur, alphabet)
        right = _parse_tree(cur, alphabet)
        cur.expect(")")
        return BracketNode(left, right)
    if tok[0] != "name":
        cur.fail_here(f"expected a tree, found {tok[1]!r}")
    cur.next()
    name = tok[1]
    if alphabet.is_generator(name):
        return Leaf(alphabet.letter(name).gen)
    if not alphabet.is_operator(name):
        raise ParseError(f"unknown name {name!r}", tok[2])
    op = alphabet.operator(name)
    cur.expect("(")
    children = [_parse_tree(cur, alphabet)]
    while cur.peek() and cur.peek()[0] == ",":
        cur.next()
        children.append(_parse_tree(cur, alphabet))
    cur.expect(")")
    if len(children) != op.arity:
        raise ParseError(
            f"{name} expects {op.arity} argument(s), got {len(children)}", tok[2]
        )
    return OpNode(op, children)


def parse_tree(text: str, cfg):
    cur = _Cursor(text)
    tree = _parse_tree(cur, _alphabet_of(cfg))
    cur.done()
    return tree


def tree_str(t) -> str:
    return str(t)


def _parse_rational(cur):
    tok = cur.expect("int")
    num = int(tok[1])
    if cur.peek() and cur.peek()[0] == "/":
        cur.next()
        den = int(cur.expect("int")[1])
        if den == 0:
            raise ParseError("zero denominator", tok[2])
        return Fraction(num, den)
    return Fraction(num)


def _parse_term(cur, alphabet):
    coeff = LambdaPoly.const(1)
    while True:
        tok = cur.peek()
        if tok is None:
            raise ParseError("expected a tree", len(cur.text))
        if tok[0] == "int":
            coeff = coeff * _parse_rational(cur)
            cur.expect("*")
            continue
        if tok[0] == "name" and tok[1] == "l":
            cur.next()
            power = 1
            if cur.peek() and cur.peek()[0] == "^":
                cur.next()
                power = int(cur.expect("int")[1])
            coeff = coeff * LambdaPoly((0, 1) if power == 1 else (0,) * power + (1,))
            cur.expect("*")
            continue
        break
    tree = _parse_tree(cur, alphabet)
    return from_tree(tree).scale(coeff)


def parse_poly(text: str, cfg) -> LiePoly:
    """Parse a polynomial in the term grammar; the literal "0" is zero."""
    alphabet = _alphabet_of(cfg)
    if text.strip() == "0":
        return LiePoly.zero()
    cur = _Cursor(text)
    sign = 1
    if cur.peek() and cur.peek()[0] in ("+", "-"):
        sign = -1 if cur.next()[0] == "-" else 1
    acc = _parse_term(cur, alphabet).scale(sign)
    while cur.peek() is not None:
        tok = cur.next()
        if tok[0] == "+":
            acc = acc + _parse_term(cur, alphabet)
        elif tok[0] == "-":
            acc = acc - _parse_term(cur, alphabet)
        else:
            raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
    return acc


def _term_chunks(keystr, coeff):
    """Split one key/coefficient pair into printable monomial chunks."""
    chunks = []
    for power, frac in coeff.monomials():
        neg = frac < 0
        f = -frac if neg else frac
        factors = []
        if f != 1:
            factors.append(str(f))
        if power:
            factors.append("l" if power == 1 else f"l^{power}")
        factors.append(keystr)
        chunks.append((neg, "*".join(factors)))
    return chunks


def _join_chunks(chunks):
    if not chunks:
        return "0"
    out = []
    for i, (neg, mag) in enumerate(chunks):
        if i == 0:
            out.append(("-" if neg else "") + mag)
        else:
            out.append((" - " if neg else " + ") + mag)
    return "".join(out)


def poly_str(p: LiePoly) -> str:
    """Deg-lex descending, weight powers ascending; parses back to p."""
    chunks = []
    for w, c in p.items_desc():
        chunks.extend(_term_chunks(str(std_bracket(w)), c))
    return _join_chunks(chunks)


def assoc_poly_str(q) -> str:
    chunks = []
    for w, c in q.items_desc():
        chunks.extend(_term_chunks(str(w), c))
    return _join_chunks(chunks)


# ---------------------------------------------------------------------------
# session setup

_RESERVED = {"l"}


def _split_csv(text):
    return [part.strip() for part in text.split(",") if part.strip()]


def config_from_args(args) -> SessionConfig:
    gens = _split_csv(args.gens) if args.gens else []
    if not gens:
        raise ValueError("at least one generator is required (--gens)")
    ops = []
    for spec in _split_csv(args.ops):
        if ":" in spec:
            name, _, arity = spec.partition(":")
            ops.append((name.strip(), int(arity)))
        else:
            ops.append((spec, 1))
    for name in gens + [n for n, _ in ops]:
        if name in _RESERVED:
            raise ValueError(f"{name!r} is reserved for the weight parameter")
    lam = None if args.lam == "symbolic" else Fraction(args.lam)
    preset = PresetKind(args.preset) if getattr(args, "preset", None) else None
    return SessionConfig(
        alphabet=Alphabet(gens, ops),
        lam=lam,
        max_degree=args.max_deg,
        preset=preset,
    )


def _load_rules(path, cfg) -> RuleSet:
    polys = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                p = parse_poly(line, cfg)
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}", exc.position) from None
            if p.is_zero():
                raise ValueError(f"{path}:{lineno}: rule is the zero polynomial")
            polys.append(p)
    return RuleSet.from_polys(polys, cfg.alphabet, cfg.lam)


def _build_ruleset(args, cfg) -> RuleSet:
    if cfg.preset is not None and args.rules:
        raise ValueError("--preset and --rules are mutually exclusive")
    if cfg.preset is not None:
        return preset_rules(cfg.preset, cfg.alphabet, cfg.max_degree, cfg.lam)
    if args.rules:
        return _load_rules(args.rules, cfg)
    raise ValueError("either --preset or --rules is required")


# ---------------------------------------------------------------------------
# report emission


def _emit(args, obj, human):
    if args.json:
        print(json.dumps(obj))
    else:
        print(human)


def _report_record(checker, rep, poly_to_str):
    amb = rep.ambiguity
    if amb.kind == INTERSECTION:
        context = {"a": str(amb.a), "b": str(amb.b)}
    else:
        context = {"pi": str(amb.pi)}
    return {
        "type": "composition",
        "checker": checker,
        "kind": amb.kind,
        "f": amb.f,
        "g": amb.g,
        "w": str(amb.w),
        "context": context,
        "trivial": rep.trivial,
        "normal_form": poly_to_str(rep.normal_form),
    }


def _run_check(args, checker):
    cfg = config_from_args(args)
    S = _build_ruleset(args, cfg)
    if checker == "lie":
        reports = check_gsb(S, cfg.max_degree)
        to_str = poly_str
    else:
        reports = assoc_check(S, cfg.max_degree)
        to_str = assoc_poly_str
    nontrivial = 0
    for rep in reports:
        rec = _report_record(checker, rep, to_str)
        verdict = "trivial" if rep.trivial else f"NONTRIVIAL: {rec['normal_form']}"
        _emit(args, rec, f"{rec['kind']} f={rec['f']} g={rec['g']} w={rec['w']} -> {verdict}")
        if not rep.trivial:
            nontrivial += 1
    summary = {
        "type": "summary",
        "checker": checker,
        "rules": len(S),
        "max_degree": cfg.max_degree,
        "ambiguities": len(reports),
        "nontrivial": nontrivial,
    }
    _emit(
        args,
        summary,
        f"{len(reports)} composition(s) checked, {nontrivial} nontrivial "
        f"({len(S)} rules, degree <= {cfg.max_degree})",
    )
    return 0 if nontrivial == 0 else 1


# ---------------------------------------------------------------------------
# subcommands


def cmd_bracket(args):
    cfg = config_from_args(args)
    w = parse_word(args.word, cfg)
    tree = std_bracket(w)
    expansion = expand(LiePoly.basis(w))
    _emit(
        args,
        {
            "type": "bracket",
            "word": str(w),
            "bracketing": str(tree),
            "expansion": assoc_poly_str(expansion),
        },
        f"{tree}\n= {assoc_poly_str(expansion)}",
    )
    return 0


def cmd_normalize(args):
    cfg = config_from_args(args)
    S = _build_ruleset(args, cfg)
    p = parse_poly(args.poly, cfg)
    if cfg.lam is not None:
        from .liepoly import specialize

        p = specialize(p, cfg.lam)
    nf = reduce(p, S)
    _emit(
        args,
        {"type": "normal_form", "input": args.poly, "normal_form": poly_str(nf)},
        poly_str(nf),
    )
    return 0


def cmd_check_gsb(args):
    return _run_check(args, "lie")


def cmd_assoc_check(args):
    return _run_check(args, "assoc")


def cmd_complete(args):
    cfg = config_from_args(args)
    S = _build_ruleset(args, cfg)
    result = complete(S, cfg.max_degree)
    for rule in result.rules:
        _emit(
            args,
            {"type": "rule", "id": rule.id, "lead": str(rule.lead), "poly": poly_str(rule.poly)},
            poly_str(rule.poly),
        )
    if args.json:
        print(json.dumps({"type": "summary", "rules": len(result), "added": len(result) - len(S)}))
    return 0


def cmd_basis(args):
    cfg = config_from_args(args)
    S = _build_ruleset(args, cfg)
    buckets = irr_enumerate(S, cfg.max_degree)
    for n in range(1, cfg.max_degree + 1):
        words = buckets[n]
        rec = {"type": "basis", "degree": n, "count": len(words)}
        human = f"degree {n}: {len(words)}"
        if not args.count:
            rec["words"] = [str(w) for w in words]
            human += "\n" + "\n".join(f"  {w}" for w in words) if words else ""
        _emit(args, rec, human)
    return 0


def cmd_oracle(args):
    cfg = config_from_args(args)
    S = _build_ruleset(args, cfg)
    dims = dim_oracle(S, cfg.max_degree)
    for n in range(1, cfg.max_degree + 1):
        _emit(
            args,
            {"type": "oracle", "degree": n, "dim": dims[n]},
            f"degree {n}: {dims[n]}",
        )
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lieomega",
        description="Exact Groebner-Shirshov computations in free Lie algebras with operators.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gens", default="", help="generators, descending (e.g. x2,x1)")
    common.add_argument("--ops", default="P:1", help="operators name:arity, descending")
    common.add_argument("--lambda", dest="lam", default="symbolic",
                        help="weight parameter: 'symbolic' or a rational like -1 or 2/3")
    common.add_argument("--max-deg", type=int, default=6, help="degree bound")
    common.add_argument("--preset", choices=[k.value for k in PresetKind])
    common.add_argument("--rules", help="rule file, one polynomial per line")
    common.add_argument("--json", action="store_true", help="JSON lines on stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="standard bracketing of a word")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("normalize", parents=[common], help="reduce a polynomial to normal form")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check-gsb", parents=[common], help="verify triviality of all compositions")
    p.set_defaults(func=cmd_check_gsb)

    p = sub.add_parser("assoc-check", parents=[common],
                       help="associative cross-check of the same compositions")
    p.set_defaults(func=cmd_assoc_check)

    p = sub.add_parser("complete", parents=[common], help="adjoin nontrivial compositions")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("basis", parents=[common], help="enumerate irreducible basis words")
    p.add_argument("--count", action="store_true", help="counts only")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("oracle", parents=[common], help="independent per-degree dimensions")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        ParseError,
        NotAlsw,
        NotLieElement,
        ArityMismatch,
        NonMonicRule,
        NonConstantLeadingCoefficient,
        ValueError,
        KeyError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
