"""Slow reference implementations used to check the production code.

Nothing here touches the Groebner engine or the Hilbert-series recursion:
the Groebner oracle is a plain S-polynomial fixpoint on public polynomial
arithmetic, and the Hilbert-function oracle is Gaussian elimination on the
degree-d span of the generators.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Sequence, Tuple

from jmult.ring import LEX, PolyRing, Polynomial


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def naive_reduce(f: Polynomial, gs: Sequence[Polynomial]) -> Polynomial:
    """Full division of f by gs, term by term from the top."""
    ring = f.ring
    rem = ring.zero()
    h = f
    while not h.is_zero():
        lm, lc = h.leading_monomial, h.leading_coefficient
        for g in gs:
            glm = g.leading_monomial
            if _divides(glm, lm):
                q = tuple(a - b for a, b in zip(lm, glm))
                c = lc * ring.field.inv(g.leading_coefficient)
                h = h - g.mul_monomial(q, c)
                break
        else:
            lead = ring.monomial(lm, lc)
            rem = rem + lead
            h = h - lead
    return rem


def naive_s_poly(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    lf, lg = f.leading_monomial, g.leading_monomial
    L = tuple(max(a, b) for a, b in zip(lf, lg))
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, lf)), ring.field.inv(f.leading_coefficient))
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, lg)), ring.field.inv(g.leading_coefficient))
    return a - b


def naive_groebner(gens: Sequence[Polynomial]) -> List[Polynomial]:
    """Add reduced S-polynomials until every pair reduces to zero; no criteria at all."""
    G = [g for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                r = naive_reduce(naive_s_poly(G[i], G[j]), G)
                if not r.is_zero():
                    G.append(r)
                    changed = True
    return G


def minimal_monomials(ms) -> List[Tuple[int, ...]]:
    ms = sorted(set(ms), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(_divides(a, m) for a in out):
            out.append(m)
    return sorted(out)


def naive_leading_ideal(gens: Sequence[Polynomial]) -> List[Tuple[int, ...]]:
    return minimal_monomials(g.leading_monomial for g in naive_groebner(gens))


def naive_eliminate(gens: Sequence[Polynomial], drop: Sequence[str]) -> List[Polynomial]:
    """Lex basis with the dropped variables first, keeping elements free of them."""
    ring = gens[0].ring
    names = list(drop) + [v for v in ring.variables if v not in drop]
    lex = PolyRing(tuple(names), ring.field, LEX)
    perm = [names.index(v) for v in ring.variables]
    moved = [g.rename(lex, perm) for g in gens]
    G = naive_groebner(moved)
    k = len(drop)
    keep = [g for g in G if all(all(e[i] == 0 for i in range(k)) for e in g.terms)]
    return keep


def _monomials(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for v in combo:
            m[v] += 1
        yield tuple(m)


def _rank_mod_p(rows: List[Dict[tuple, int]], p: int) -> int:
    rank = 0
    pivots: Dict[tuple, Dict[tuple, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = max(row)
            if col not in pivots:
                inv = pow(row[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            c = row[col]
            for k, v in piv.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def hilbert_function_linear_algebra(gens: Sequence[Polynomial], nvars: int, p: int, up_to: int) -> List[int]:
    """dim_k (S/I)_d for homogeneous generators, by ranking all monomial multiples of degree d."""
    gens = [g for g in gens if not g.is_zero()]
    out = []
    for d in range(up_to + 1):
        rows = []
        for g in gens:
            e = g.total_degree()
            if e > d:
                continue
            for m in _monomials(nvars, d - e):
                rows.append({tuple(a + b for a, b in zip(mono, m)): c for mono, c in g.terms.items()})
        out.append(comb(d + nvars - 1, nvars - 1) - _rank_mod_p(rows, p))
    return out
