"""Shared fixtures and independent oracle helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from lieomega.words import STAR, Alphabet, Letter, OmegaWord, OpWord
from lieomega.liepoly import LambdaPoly, LiePoly, apply_op, bracket
from lieomega.gsb import RuleSet
from lieomega.lyndon import alsw_by_degree


@pytest.fixture(scope="session")
def ab1():
    return Alphabet(["x"], [("P", 1)])


@pytest.fixture(scope="session")
def ab2():
    return Alphabet(["x2", "x1"], [("P", 1)])


@pytest.fixture(scope="session")
def ab3():
    return Alphabet(["x2", "x1", "x0"], [("P", 1)])


@pytest.fixture(scope="session")
def abw():
    return Alphabet(["x2", "x1"], [("w3", 3), ("w1", 1)])


def star_variants(word):
    """All star-words obtained by replacing one letter occurrence of
    ``word`` by the hole."""
    out = []
    for i, p in enumerate(word.primes):
        if type(p) is Letter:
            out.append(OmegaWord(word.primes[:i] + (STAR,) + word.primes[i + 1 :]))
        elif type(p) is OpWord:
            for j, a in enumerate(p.args):
                for va in star_variants(a):
                    marked = OpWord(p.op, p.args[:j] + (va,) + p.args[j + 1 :])
                    out.append(OmegaWord(word.primes[:i] + (marked,) + word.primes[i + 1 :]))
    return out


def random_lie_poly(rng, pool, max_terms=3, lam_deg=1, coeff_range=4):
    """A random Lie polynomial supported on the given ALSW pool."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.choice(pool)
        c = LambdaPoly(
            [Fraction(rng.randint(-coeff_range, coeff_range)) for _ in range(lam_deg + 1)]
        )
        prev = terms.get(w)
        c = c if prev is None else prev + c
        if c.is_zero():
            terms.pop(w, None)
        else:
            terms[w] = c
    return LiePoly(terms)


def perturbed_control_rules(alphabet, maxdeg):
    """The broken two-term variant of the operator relation: keeps the
    leading word of each rule but drops the last two terms, so the family
    is deliberately not closed under compositions."""
    P = alphabet.operators[0]
    flat = [u for bucket in alsw_by_degree(alphabet, max(maxdeg - 3, 0))[1:] for u in bucket]
    polys = []
    for u in flat:
        for v in flat:
            if u.degree + v.degree + 2 <= maxdeg and v < u:
                pu = apply_op(P, [LiePoly.basis(u)])
                bv = LiePoly.basis(v)
                polys.append(bracket(pu, apply_op(P, [bv])) - apply_op(P, [bracket(pu, bv)]))
    return RuleSet.from_polys(polys, alphabet)


def mobius(n):
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def witt_count(k, n):
    """Number of Lyndon words of length n over k letters (necklace count)."""
    total = sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


def seeded_rng(salt=0):
    return random.Random(0x5EED + salt)
