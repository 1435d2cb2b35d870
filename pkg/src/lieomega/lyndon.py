"""Lyndon-Shirshov machinery for Omega-words.

Recognition uses the rotation test: a word is an associative
Lyndon-Shirshov word (ALSW) when every operator argument inside it is
one, and the top-level prime sequence is lex-greater than each of its
proper rotations.  The standard bracketing splits an ALSW at its longest
proper ALSW suffix and recurses; operator arguments are bracketed first.

Relative bracketing re-brackets a word so that a designated ALSW subword
survives as one intact unit (the slot).  The construction locates the
minimal bracket of the standard bracketing that begins exactly at the
subword and covers it; that bracket spans the subword followed by a tail
c, and is replaced by the left-normed product of the slot with the ALSW
factors of c.  When the subword sits inside an operator argument, the
same surgery is applied recursively inside that argument's bracketing.
"""

from __future__ import annotations

from .words import (
    STAR,
    Letter,
    OmegaWord,
    OpWord,
    concat,
    substitute,
)


class NotAlsw(ValueError):
    """The word is not an associative Lyndon-Shirshov word."""

    def __init__(self, word):
        super().__init__(f"not a Lyndon-Shirshov word: {word}")
        self.word = word


# ---------------------------------------------------------------------------
# bracket trees


class Leaf:
    """A generator leaf."""

    __slots__ = ("gen", "_word")
    has_slot = False

    def __init__(self, gen):
        self.gen = gen
        self._word = None

    def word(self):
        w = self._word
        if w is None:
            w = self._word = OmegaWord((Letter(self.gen),))
        return w

    def __eq__(self, other):
        return type(other) is Leaf and self.gen == other.gen

    def __hash__(self):
        return hash(self.gen)

    def __repr__(self):
        return self.gen.name


class OpNode:
    """An operator applied to bracketed arguments."""

    __slots__ = ("op", "children", "has_slot", "_word")

    def __init__(self, op, children):
        self.op = op
        self.children = tuple(children)
        self.has_slot = any(c.has_slot for c in self.children)
        self._word = None

    def word(self):
        w = self._word
        if w is None:
            if self.has_slot:
                raise ValueError("tree contains a slot")
            args = tuple(c.word() for c in self.children)
            w = self._word = OmegaWord((OpWord(self.op, args),))
        return w

    def __eq__(self, other):
        return (
            type(other) is OpNode
            and self.op == other.op
            and self.children == other.children
        )

    def __hash__(self):
        return hash((self.op, self.children))

    def __repr__(self):
        return f"{self.op.name}({', '.join(map(str, self.children))})"


class BracketNode:
    """A binary Lie bracket of two subtrees."""

    __slots__ = ("left", "right", "has_slot", "_word")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.has_slot = left.has_slot or right.has_slot
        self._word = None

    def word(self):
        w = self._word
        if w is None:
            if self.has_slot:
                raise ValueError("tree contains a slot")
            w = self._word = concat(self.left.word(), self.right.word())
        return w

    def __eq__(self, other):
        return (
            type(other) is BracketNode
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"({self.left} {self.right})"


class _Slot:
    """Placeholder leaf of a marked tree; stands for a bracketed subword."""

    __slots__ = ()
    has_slot = True

    def word(self):
        raise ValueError("the slot has no word")

    def __repr__(self):
        return "*"


SLOT = _Slot()

# MarkedTree: a bracket tree containing SLOT exactly once.
MarkedTree = object


def tree_word(t, slot=None) -> OmegaWord:
    """Flatten a tree to its word; ``slot`` fills the slot if present."""
    if t is SLOT:
        if slot is None:
            raise ValueError("tree contains a slot and no filler was given")
        return slot
    if not t.has_slot:
        return t.word()
    if type(t) is BracketNode:
        return concat(tree_word(t.left, slot), tree_word(t.right, slot))
    args = tuple(tree_word(c, slot) for c in t.children)
    return OmegaWord((OpWord(t.op, args),))


# ---------------------------------------------------------------------------
# recognition and factorization

_ALSW_CACHE: dict = {}


def is_alsw(u: OmegaWord) -> bool:
    """True when u is an associative Lyndon-Shirshov word.

    Every operator argument anywhere inside u must itself be one, and the
    top-level prime sequence must beat all of its proper rotations.
    """
    cached = _ALSW_CACHE.get(u)
    if cached is not None:
        return cached
    result = _args_alsw(u) and _rotation_test(u.primes)
    _ALSW_CACHE[u] = result
    return result


def _args_alsw(u):
    for p in u.primes:
        if type(p) is OpWord and not all(is_alsw(a) for a in p.args):
            return False
    return True


def _rotation_test(primes):
    n = len(primes)
    if n == 1:
        return True
    keys = [p.key() for p in primes]
    base = tuple(keys)
    for i in range(1, n):
        if not base > tuple(keys[i:] + keys[:i]):
            return False
    return True


def factorize(u: OmegaWord) -> list:
    """The unique factorization of u into lex-nondecreasing ALSW factors.

    Only defined on words whose operator arguments are all ALSW; computed
    by repeatedly stripping the longest ALSW suffix.
    """
    if not _args_alsw(u):
        raise NotAlsw(u)
    primes = u.primes
    factors = []
    end = len(primes)
    while end > 0:
        for start in range(end):
            cand = OmegaWord(primes[start:end])
            if is_alsw(cand):
                factors.append(cand)
                end = start
                break
        else:  # pragma: no cover - a single prime with ALSW args is ALSW
            raise AssertionError("no ALSW suffix found")
    factors.reverse()
    return factors


def standard_split(u: OmegaWord):
    """Split an ALSW of breadth >= 2 as u = left · right, with right the
    longest proper ALSW suffix; both halves are ALSW."""
    primes = u.primes
    if len(primes) < 2:
        raise ValueError("standard split needs breadth >= 2")
    s = _split_index(primes)
    return OmegaWord(primes[:s]), OmegaWord(primes[s:])


def _split_index(primes):
    for s in range(1, len(primes)):
        if is_alsw(OmegaWord(primes[s:])):
            return s
    raise AssertionError("no ALSW suffix found")  # pragma: no cover


# ---------------------------------------------------------------------------
# standard bracketing

_BRACKET_CACHE: dict = {}


def std_bracket(u: OmegaWord):
    """The Shirshov standard bracketing of an ALSW, as a bracket tree."""
    cached = _BRACKET_CACHE.get(u)
    if cached is not None:
        return cached
    if not is_alsw(u):
        raise NotAlsw(u)
    tree = _bracket_seq(u.primes)
    _BRACKET_CACHE[u] = tree
    return tree


def _bracket_prime(p):
    if type(p) is Letter:
        return Leaf(p.gen)
    return OpNode(p.op, tuple(std_bracket(a) for a in p.args))


def _bracket_seq(primes):
    if len(primes) == 1:
        return _bracket_prime(primes[0])
    s = _split_index(primes)
    return BracketNode(_bracket_seq(primes[:s]), _bracket_seq(primes[s:]))


# ---------------------------------------------------------------------------
# relative bracketing

# Skeleton nodes are (lo, hi, left, right) with inclusive prime spans;
# leaves have left = right = None.


def _skel(primes, lo, hi):
    if lo == hi:
        return (lo, hi, None, None)
    s = _split_index(primes[lo : hi + 1])
    return (lo, hi, _skel(primes, lo, lo + s - 1), _skel(primes, lo + s, hi))


def _find_enclosing(node, lo, min_hi):
    """Minimal skeleton node with span start lo and span end >= min_hi."""
    best = None
    stack = [node]
    while stack:
        n = stack.pop()
        nlo, nhi, left, right = n
        if nlo == lo and nhi >= min_hi and (best is None or nhi < best[1]):
            best = n
        if left is not None:
            if left[0] <= lo <= left[1]:
                stack.append(left)
            if right[0] <= lo <= right[1]:
                stack.append(right)
    return best


def _graft(primes, node, target, replacement):
    if node is target:
        return replacement
    lo, hi, left, right = node
    if left is None:
        return _bracket_prime(primes[lo])
    return BracketNode(
        _graft(primes, left, target, replacement),
        _graft(primes, right, target, replacement),
    )


def relative_bracket(pi: OmegaWord, v: OmegaWord):
    """Bracket pi|_v so that v survives as one intact slot unit.

    Returns a marked tree: the bracketing of substitute(pi, v) in which
    the subtree for v is SLOT.  Requires v and substitute(pi, v) ALSW.
    """
    if pi.star_count != 1:
        raise ValueError("star-word must contain exactly one hole")
    if not is_alsw(v):
        raise NotAlsw(v)
    w = substitute(pi, v)
    if not is_alsw(w):
        raise NotAlsw(w)
    return _relative(pi, v, w)


def _relative(pi, v, w):
    pp = pi.primes
    wp = w.primes
    idx = next(i for i, p in enumerate(pp) if p.star_count)
    root = _skel(wp, 0, len(wp) - 1)
    p = pp[idx]
    if p is STAR:
        k = len(v.primes)
        target = _find_enclosing(root, idx, idx + k - 1)
        if target is None:  # pragma: no cover - guaranteed for ALSW input
            raise AssertionError("no enclosing bracket starts at the subword")
        chain = SLOT
        tail = wp[idx + k : target[1] + 1]
        if tail:
            for factor in factorize(OmegaWord(tail)):
                chain = BracketNode(chain, std_bracket(factor))
        return _graft(wp, root, target, chain)
    # the hole sits inside an operator argument of prime idx
    j = next(jj for jj, a in enumerate(p.args) if a.star_count)
    host = wp[idx]
    inner = _relative(p.args[j], v, host.args[j])
    children = tuple(
        inner if t == j else std_bracket(a) for t, a in enumerate(host.args)
    )
    replacement = OpNode(host.op, children)
    target = _find_enclosing(root, idx, idx)
    # the minimal node starting at idx with span >= 1 prime is the leaf there
    while target[3] is not None:  # pragma: no cover - leaf by construction
        target = target[2]
    return _graft(wp, root, target, replacement)


# ---------------------------------------------------------------------------
# enumeration


def alsw_by_degree(alphabet, maxdeg: int) -> list:
    """All ALSW words of each degree 1..maxdeg, sorted ascending by deg-lex.

    Index 0 of the returned list is an empty placeholder.
    """
    from itertools import product

    from .words import _compositions

    alsw = [[] for _ in range(maxdeg + 1)]
    seqs = [[] for _ in range(maxdeg + 1)]
    primes = [[] for _ in range(maxdeg + 1)]
    if maxdeg >= 1:
        primes[1] = [alphabet.letter(g.name) for g in alphabet.generators]
    for n in range(1, maxdeg + 1):
        if n >= 2:
            for op in alphabet.operators:
                if n - 1 < op.arity:
                    continue
                for degs in _compositions(n - 1, op.arity):
                    for combo in product(*(alsw[d] for d in degs)):
                        primes[n].append(OpWord(op, combo))
        bucket = []
        for d in range(1, n + 1):
            for p in primes[d]:
                if d == n:
                    bucket.append(OmegaWord((p,)))
                else:
                    for rest in seqs[n - d]:
                        bucket.append(OmegaWord((p,) + rest.primes))
        seqs[n] = bucket
        alsw[n] = sorted(
            (w for w in bucket if _rotation_test(w.primes)), key=OmegaWord.dl_key
        )
    return alsw
