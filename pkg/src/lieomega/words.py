"""Associative Omega-words over an operated alphabet.

A word is a nonempty flat sequence of primes; a prime is either a letter
or an operator applied to argument words.  Star-words carry a single
substitution hole and share the same representation, the hole acting as
one extra letter.  Everything here is immutable and hashable, so values
can be shared freely and used as dictionary keys by the polynomial
layers.

The deg-lex order compares the tuple (degree, breadth, primes...)
lexicographically; primes of equal degree compare by generator rank,
or by operator rank and then argument words.  The lex order compares
prime by prime with the convention that a proper prefix is *greater*
than its extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

LT, EQ, GT = -1, 0, 1


class ArityMismatch(ValueError):
    """An operator was applied to the wrong number of arguments."""


@dataclass(frozen=True)
class Generator:
    """A letter of the alphabet; rank 0 is the greatest generator."""

    name: str
    rank: int


@dataclass(frozen=True)
class OperatorSymbol:
    """An operator symbol of fixed arity; rank 0 is the greatest operator."""

    name: str
    arity: int
    rank: int


class _Star:
    """The unique hole of a star-word.

    It counts one toward the degree, exactly like the letter it stands in
    for, and sorts below every real prime (the sort position is only used
    to keep report orders deterministic, never semantically).
    """

    __slots__ = ()
    degree = 1
    depth = 0
    star_count = 1

    def key(self):
        return (1, -1)

    def __repr__(self):
        return "*"


STAR = _Star()


class Letter:
    """A single letter occurrence."""

    __slots__ = ("gen", "_key")
    degree = 1
    depth = 0
    star_count = 0

    def __init__(self, gen: Generator):
        self.gen = gen
        self._key = (1, 0, -gen.rank)

    def key(self):
        return self._key

    def __eq__(self, other):
        return self is other or (type(other) is Letter and self.gen == other.gen)

    def __hash__(self):
        return hash(self.gen)

    def __repr__(self):
        return self.gen.name


class OpWord:
    """A prime of the form op(w1, ..., wm) with word arguments."""

    __slots__ = ("op", "args", "degree", "star_count", "_key", "_hash", "_depth")

    def __init__(self, op: OperatorSymbol, args):
        args = tuple(args)
        if len(args) != op.arity:
            raise ArityMismatch(
                f"{op.name} expects {op.arity} argument(s), got {len(args)}"
            )
        self.op = op
        self.args = args
        self.degree = 1 + sum(a.degree for a in args)
        self.star_count = sum(a.star_count for a in args)
        self._key = None
        self._hash = None
        self._depth = None

    @property
    def depth(self):
        d = self._depth
        if d is None:
            d = self._depth = 1 + max(a.depth for a in self.args)
        return d

    def key(self):
        k = self._key
        if k is None:
            k = self._key = (self.degree, 1, -self.op.rank) + tuple(
                a.dl_key() for a in self.args
            )
        return k

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is OpWord and self.op == other.op and self.args == other.args

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.op, self.args))
        return h

    def __repr__(self):
        return f"{self.op.name}({', '.join(map(str, self.args))})"


class OmegaWord:
    """A nonempty prime sequence in canonical flat form.

    Degree and breadth are cached at construction so order comparisons
    never re-walk the tree.
    """

    __slots__ = ("primes", "degree", "star_count", "_key", "_hash", "_depth")

    def __init__(self, primes):
        primes = tuple(primes)
        if not primes:
            raise ValueError("a word must contain at least one prime")
        self.primes = primes
        self.degree = sum(p.degree for p in primes)
        self.star_count = sum(p.star_count for p in primes)
        self._key = None
        self._hash = None
        self._depth = None

    @property
    def breadth(self):
        return len(self.primes)

    @property
    def depth(self):
        d = self._depth
        if d is None:
            d = self._depth = max(p.depth for p in self.primes)
        return d

    def dl_key(self):
        k = self._key
        if k is None:
            k = self._key = (self.degree, len(self.primes)) + tuple(
                p.key() for p in self.primes
            )
        return k

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is OmegaWord and self.primes == other.primes

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.primes)
        return h

    def __lt__(self, other):
        return self.dl_key() < other.dl_key()

    def __le__(self, other):
        return self.dl_key() <= other.dl_key()

    def __gt__(self, other):
        return self.dl_key() > other.dl_key()

    def __ge__(self, other):
        return self.dl_key() >= other.dl_key()

    def __repr__(self):
        return " ".join(map(str, self.primes))


# A star-word is an OmegaWord whose star_count is exactly 1; no separate
# node type is needed because the hole behaves as a letter.
StarWord = OmegaWord

STAR_WORD = OmegaWord((STAR,))


class Weight(NamedTuple):
    """The tuple that the deg-lex order compares lexicographically."""

    deg: int
    bre: int
    primes: tuple


def weight(u: OmegaWord) -> Weight:
    return Weight(u.degree, len(u.primes), u.primes)


def degree(u: OmegaWord) -> int:
    """Total number of letter and operator occurrences in u."""
    return u.degree


def breadth(u: OmegaWord) -> int:
    """Number of top-level primes of u."""
    return len(u.primes)


def depth(u: OmegaWord) -> int:
    """Operator nesting depth; 0 for operator-free words."""
    return u.depth


def cmp_dl(u: OmegaWord, v: OmegaWord) -> int:
    """Deg-lex comparison; EQ only for structurally identical words."""
    ku, kv = u.dl_key(), v.dl_key()
    if ku > kv:
        return GT
    if ku < kv:
        return LT
    return EQ


def cmp_lex(u, v) -> int:
    """Lex comparison of prime sequences; ``None`` denotes the empty word.

    When one side is exhausted first, the exhausted (prefix) side compares
    greater: the empty word is greater than every nonempty word.
    """
    pu = () if u is None else u.primes
    pv = () if v is None else v.primes
    for a, b in zip(pu, pv):
        ka, kb = a.key(), b.key()
        if ka > kb:
            return GT
        if ka < kb:
            return LT
    if len(pu) == len(pv):
        return EQ
    return GT if len(pu) < len(pv) else LT


def concat(u: OmegaWord, v: OmegaWord) -> OmegaWord:
    return OmegaWord(u.primes + v.primes)


def substitute(pi: StarWord, u: OmegaWord) -> OmegaWord:
    """Replace the unique hole of pi by the primes of u, splicing in place."""
    if pi.star_count != 1:
        raise ValueError("star-word must contain exactly one hole")
    return _splice(pi, u)


def _splice(w, u):
    out = []
    for p in w.primes:
        if p is STAR:
            out.extend(u.primes)
        elif p.star_count:
            out.append(
                OpWord(p.op, tuple(_splice(a, u) if a.star_count else a for a in p.args))
            )
        else:
            out.append(p)
    return OmegaWord(out)


def occurrences(host: OmegaWord, pattern: OmegaWord) -> list:
    """All star-words pi with substitute(pi, pattern) == host.

    Includes occurrences nested inside operator arguments at any depth,
    enumerated leftmost-outermost.
    """
    out = []
    hp = host.primes
    pp = pattern.primes
    k = len(pp)
    for i in range(len(hp)):
        if hp[i : i + k] == pp:
            out.append(OmegaWord(hp[:i] + (STAR,) + hp[i + k :]))
        p = hp[i]
        if type(p) is OpWord:
            for j, arg in enumerate(p.args):
                for inner in occurrences(arg, pattern):
                    marked = OpWord(p.op, p.args[:j] + (inner,) + p.args[j + 1 :])
                    out.append(OmegaWord(hp[:i] + (marked,) + hp[i + 1 :]))
    return out


def has_occurrence(host: OmegaWord, pattern: OmegaWord) -> bool:
    """Early-exit check that pattern occurs somewhere inside host."""
    hp = host.primes
    pp = pattern.primes
    k = len(pp)
    for i in range(len(hp)):
        if hp[i : i + k] == pp:
            return True
        p = hp[i]
        if type(p) is OpWord and any(has_occurrence(a, pattern) for a in p.args):
            return True
    return False


def overlaps(t1: OmegaWord, t2: OmegaWord) -> list:
    """Proper border overlaps w = t1·a = b·t2 at the prime level.

    Both remainders a and b are nonempty, so bre(w) < bre(t1) + bre(t2)
    holds automatically; full coincidence of t1 and t2 is not an overlap.
    """
    out = []
    p1, p2 = t1.primes, t2.primes
    for ln in range(1, min(len(p1), len(p2))):
        if p1[len(p1) - ln :] == p2[:ln]:
            w = OmegaWord(p1 + p2[ln:])
            a = OmegaWord(p2[ln:])
            b = OmegaWord(p1[: len(p1) - ln])
            out.append((w, a, b))
    return out


class Alphabet:
    """Generators in descending order and operators in descending order.

    The first generator is the greatest under the generator order, the
    first operator the greatest under the operator order.  Names must be
    pairwise distinct across both kinds.
    """

    def __init__(self, generators, operators=()):
        gnames = list(generators)
        ospecs = [(name, int(arity)) for name, arity in operators]
        names = gnames + [name for name, _ in ospecs]
        if len(set(names)) != len(names):
            raise ValueError("generator and operator names must be pairwise distinct")
        for name, arity in ospecs:
            if arity < 1:
                raise ValueError(f"operator {name} must have arity >= 1")
        self.generators = tuple(Generator(n, i) for i, n in enumerate(gnames))
        self.operators = tuple(
            OperatorSymbol(n, a, i) for i, (n, a) in enumerate(ospecs)
        )
        self._letters = {g.name: Letter(g) for g in self.generators}
        self._ops = {o.name: o for o in self.operators}

    def letter(self, name: str) -> Letter:
        try:
            return self._letters[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def letter_word(self, name: str) -> OmegaWord:
        return OmegaWord((self.letter(name),))

    def operator(self, name: str) -> OperatorSymbol:
        try:
            return self._ops[name]
        except KeyError:
            raise KeyError(f"unknown operator {name!r}") from None

    def is_operator(self, name: str) -> bool:
        return name in self._ops

    def is_generator(self, name: str) -> bool:
        return name in self._letters


def _compositions(total, parts):
    """Ordered compositions of total into the given number of parts >= 1."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def words_by_degree(alphabet: Alphabet, maxdeg: int) -> list:
    """All words of each degree 1..maxdeg, sorted ascending by deg-lex.

    Index 0 of the returned list is an empty placeholder.
    """
    words = [[] for _ in range(maxdeg + 1)]
    primes = [[] for _ in range(maxdeg + 1)]
    if maxdeg >= 1:
        primes[1] = [alphabet.letter(g.name) for g in alphabet.generators]
    for n in range(1, maxdeg + 1):
        if n >= 2:
            for op in alphabet.operators:
                if n - 1 < op.arity:
                    continue
                for degs in _compositions(n - 1, op.arity):
                    for combo in product(*(words[d] for d in degs)):
                        primes[n].append(OpWord(op, combo))
        bucket = []
        for d in range(1, n + 1):
            for p in primes[d]:
                if d == n:
                    bucket.append(OmegaWord((p,)))
                else:
                    for rest in words[n - d]:
                        bucket.append(OmegaWord((p,) + rest.primes))
        bucket.sort(key=OmegaWord.dl_key)
        words[n] = bucket
    return words
