"""Hilbert series, dimension, degree and length of graded quotients.

Everything is read off the leading-term ideal of a degrevlex Groebner basis.
The Hilbert series of ``S/M`` for a monomial ideal ``M`` in ``n`` variables is
``N(t) / (1 - t)^n``; ``N`` is computed with the pivot recursion

    N(M) = N(M + (p)) + t^deg(p) * N(M : p)

for a pure-power pivot ``p``, bottoming out when the generators have pairwise
disjoint supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import JMultError

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert data of a graded quotient ``S/I`` with ``S`` in ``nvars`` variables.

    ``degree`` is the multiplicity e(S/I) in positive dimension and the length
    in dimension 0. The zero ring has ``dimension == -1`` and ``degree == 0``.
    """

    numerator: Tuple[int, ...]
    nvars: int
    dimension: int
    degree: int
    is_zero_ring: bool

    def hilbert_function(self, d: int) -> int:
        """dim_k (S/I)_d, from the series."""
        if d < 0:
            return 0
        n = self.nvars
        if n == 0:
            return self.numerator[d] if d < len(self.numerator) else 0
        return sum(c * comb(d - j + n - 1, n - 1) for j, c in enumerate(self.numerator) if j <= d)

    def hilbert_polynomial_leading(self) -> Fraction:
        """Leading coefficient of the Hilbert polynomial, degree/(dim-1)!."""
        from math import factorial

        if self.dimension <= 0:
            return Fraction(0)
        return Fraction(self.degree, factorial(self.dimension - 1))

    def length(self) -> int:
        if self.dimension > 0:
            raise ValueError("quotient is not Artinian")
        return self.degree


# -- integer polynomial helpers (coefficient lists, index = power of t) --------

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a, k):
    return [0] * k + list(a) if a else []


def _divide_one_minus_t(a):
    """Return a / (1 - t) if exact, else None."""
    if not a:
        return []
    # a = (1 - t) q  =>  q_i = a_0 + ... + a_i
    q = []
    run = 0
    for x in a[:-1]:
        run += x
        q.append(run)
    if run + a[-1] != 0:
        return None
    return _trim(q)


# -- monomial ideals -----------------------------------------------------------

def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> List[Monomial]:
    """Minimal generators of a monomial ideal."""
    gens = sorted(set(tuple(g) for g in gens), key=lambda m: (sum(m), m))
    out: List[Monomial] = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: Sequence[Monomial], nvars: int) -> Tuple[int, ...]:
    """Numerator of the Hilbert series of ``S/(gens)`` over ``(1 - t)^nvars``."""
    memo: Dict[FrozenSet[Monomial], List[int]] = {}
    return tuple(_numerator(frozenset(minimalize(gens)), nvars, memo))


def _numerator(M: FrozenSet[Monomial], n: int, memo) -> List[int]:
    if not M:
        return [1]
    hit = memo.get(M)
    if hit is not None:
        return hit
    gens = list(M)
    if any(sum(g) == 0 for g in gens):
        memo[M] = []
        return []
    # base case: pairwise disjoint supports
    counts = [0] * n
    for g in gens:
        for i, x in enumerate(g):
            if x:
                counts[i] += 1
    if max(counts) <= 1:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _sub(out, _shift(out, d))
        memo[M] = out
        return out
    var = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var] and sum(g) != g[var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = frozenset(minimalize(gens + [pivot]))
    colon = frozenset(minimalize(
        tuple(x - e if i == var else x for i, x in enumerate(g)) if g[var] >= e
        else tuple(0 if i == var else x for i, x in enumerate(g))
        for g in gens))
    out = _add(_numerator(plus, n, memo), _shift(_numerator(colon, n, memo), e))
    memo[M] = out
    return out


def hilbert_data_from_monomials(gens: Sequence[Monomial], nvars: int) -> HilbertData:
    num = hilbert_numerator(gens, nvars)
    return hilbert_data_from_numerator(num, nvars)


def hilbert_data_from_numerator(num: Sequence[int], nvars: int) -> HilbertData:
    num = list(num)
    if not num:
        return HilbertData((), nvars, -1, 0, True)
    q = num
    k = 0
    while k < nvars:
        nxt = _divide_one_minus_t(q)
        if nxt is None:
            break
        q = nxt
        k += 1
    degree = sum(q)
    if degree <= 0:
        raise JMultError(f"inconsistent Hilbert numerator {num}")
    return HilbertData(tuple(num), nvars, nvars - k, degree, False)


# -- ideal-level entry points -------------------------------------------------

def leading_monomials(I) -> List[Monomial]:
    """Leading monomials of the degrevlex basis of an IdealHandle (ideal + relations)."""
    return [g.leading_monomial for g in I.basis()]


def hilbert_data(I) -> HilbertData:
    """Hilbert data of ``ambient / (I + relations)``."""
    return hilbert_data_from_monomials(leading_monomials(I), I.ring.ambient.nvars)


def hf_bruteforce(I, up_to_degree: int) -> List[int]:
    """Count standard monomials degree by degree, for degrees 0..up_to_degree."""
    lms = leading_monomials(I)
    n = I.ring.ambient.nvars
    out = []
    for d in range(up_to_degree + 1):
        count = 0
        for combo in combinations_with_replacement(range(n), d):
            m = [0] * n
            for v in combo:
                m[v] += 1
            if not any(_divides(g, m) for g in lms):
                count += 1
        out.append(count)
    return out


def hilbert_samuel_bruteforce(I, R, n_max: int) -> int:
    """Hilbert-Samuel multiplicity e_I(R) for an m-primary ideal ``I`` of ``R``.

    Computes lengths l(R/I^n) for n = 0..n_max and takes d-fold differences,
    d = dim R. The differences must be constant over three consecutive n.
    """
    from .ideals import ideal_power

    d = R.dimension()
    if hilbert_data(I).dimension != 0:
        raise JMultError("ideal is not primary to the maximal homogeneous ideal")
    if n_max < d + 2:
        raise ValueError(f"n_max must be at least dim R + 2 = {d + 2}")
    lengths = [0]
    for k in range(1, n_max + 1):
        lengths.append(hilbert_data(ideal_power(I, k)).length())
    diffs = lengths
    for _ in range(d):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if len(diffs) < 3 or not (diffs[-1] == diffs[-2] == diffs[-3]):
        raise JMultError(f"{d}-th differences {diffs} not stable by n={n_max}; increase n_max")
    return diffs[-1]
