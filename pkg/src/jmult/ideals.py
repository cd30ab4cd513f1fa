"""Quotient rings by pullback and the ideal constructions built on them.

A :class:`QuotientRing` is an ambient polynomial ring together with relations
``K``. An :class:`IdealHandle` stores generators in the ambient ring and stands
for ``(generators) + K``; every Groebner basis, dimension and degree is
computed for that sum in the ambient ring.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import NotEquigeneratedError, RingMismatchError
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .hilbert import HilbertData, hilbert_data
from .ring import DEGREVLEX, MonomialOrder, PolyRing, Polynomial, elimination_order

SATURATION_CAP = 64


class QuotientRing:
    """``ambient / (relations)``. The ambient ring is forced to degrevlex."""

    def __init__(self, ambient: PolyRing, relations: Iterable[Union[Polynomial, str]] = ()):
        if ambient.order != DEGREVLEX:
            ambient = ambient.with_order(DEGREVLEX)
        self.ambient = ambient
        rels = tuple(ambient(r) for r in relations)
        self.relations = tuple(r for r in rels if not r.is_zero())
        self._hilbert = None

    @classmethod
    def polynomial_ring(cls, variables, characteristic=None) -> "QuotientRing":
        from .ring import PrimeField

        fld = PrimeField(characteristic) if characteristic is not None else PrimeField()
        return cls(PolyRing(tuple(variables), fld))

    def __repr__(self):
        rels = ", ".join(map(str, self.relations)) or "0"
        return f"QuotientRing({', '.join(self.ambient.variables)} / ({rels}); p={self.ambient.p})"

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and self.ambient == other.ambient
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.ambient, self.relations))

    @property
    def gens(self):
        return self.ambient.gens

    def parse(self, text: str) -> Polynomial:
        return self.ambient.parse(text)

    def ideal(self, gens: Iterable[Union[Polynomial, str]] = ()) -> "IdealHandle":
        return IdealHandle(self, gens)

    def zero_ideal(self) -> "IdealHandle":
        return IdealHandle(self, ())

    def unit_ideal(self) -> "IdealHandle":
        return IdealHandle(self, (self.ambient.one(),))

    def hilbert(self) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = hilbert_data(self.zero_ideal())
        return self._hilbert

    def dimension(self) -> int:
        return self.hilbert().dimension

    def degree(self) -> int:
        return self.hilbert().degree

    def is_zero_ring(self) -> bool:
        return self.hilbert().is_zero_ring

    def quotient(self, I: "IdealHandle") -> "QuotientRing":
        """``R / I`` as a new quotient of the same ambient ring (relations = reduced basis)."""
        _same_ring(I.ring, self)
        return QuotientRing(self.ambient, I.basis().elements)


class IdealHandle:
    """Generators in the ambient ring; represents ``(gens) + K``."""

    def __init__(self, ring: QuotientRing, gens: Iterable[Union[Polynomial, str]] = ()):
        self.ring = ring
        gens = tuple(ring.ambient(g) for g in gens)
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._bases: Dict[Tuple[MonomialOrder, Optional[tuple]], GroebnerBasis] = {}
        self._hilbert = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"IdealHandle({', '.join(map(str, self.gens)) or '0'})"

    @property
    def all_generators(self) -> Tuple[Polynomial, ...]:
        return self.gens + self.ring.relations

    def basis(self, order: Optional[MonomialOrder] = None, weights=None) -> GroebnerBasis:
        """Reduced Groebner basis of ``gens + K`` (write-once cache per order)."""
        order = order or DEGREVLEX
        key = (order, tuple(weights) if weights is not None else None)
        gb = self._bases.get(key)
        if gb is None:
            gens = self.all_generators
            if gens:
                gb = groebner_basis(gens, order, ring=self.ring.ambient, weights=weights)
            else:
                gb = GroebnerBasis(self.ring.ambient.with_order(order), ())
            with self._lock:
                gb = self._bases.setdefault(key, gb)
        return gb

    def _seed_basis(self, gb: GroebnerBasis):
        with self._lock:
            self._bases.setdefault((gb.ring.order, None), gb)

    def is_unit(self) -> bool:
        return self.basis().is_unit()

    def is_zero(self) -> bool:
        """True if the ideal is zero in the quotient ring (all gens lie in K)."""
        if not self.gens:
            return True
        K = self.ring.zero_ideal()
        return all(K.contains(g) for g in self.gens)

    def contains(self, f: Union[Polynomial, str]) -> bool:
        f = self.ring.ambient(f)
        if f.is_zero():
            return True
        return normal_form(f, self.basis()).is_zero()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(self.ring.ambient(f), self.basis())

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_ideal(self, other: "IdealHandle") -> bool:
        _same_ring(self.ring, other.ring)
        return self.basis().elements == other.basis().elements

    def hilbert(self) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = hilbert_data(self)
        return self._hilbert

    def dimension(self) -> int:
        """Krull dimension of R / I."""
        return self.hilbert().dimension

    def degree(self) -> int:
        """e(R / I) (length when Artinian)."""
        return self.hilbert().degree

    def generator_degree(self) -> int:
        """Common degree of the generators; raises if not equigenerated."""
        degs = set()
        for g in self.gens:
            if not g.is_homogeneous():
                raise NotEquigeneratedError(f"generator {g} is not homogeneous")
            degs.add(g.total_degree())
        if len(degs) != 1:
            raise NotEquigeneratedError(f"generators have degrees {sorted(degs)}; one common degree is required")
        d = degs.pop()
        if d < 1:
            raise NotEquigeneratedError("generators must have positive degree")
        return d

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.all_generators)

    def with_generators(self, gens) -> "IdealHandle":
        return IdealHandle(self.ring, gens)


def _same_ring(R: QuotientRing, S: QuotientRing):
    if R is not S and R != S:
        raise RingMismatchError("ideals live in different quotient rings")


def fresh_names(prefix: str, count: int, taken: Iterable[str]) -> List[str]:
    taken = set(taken)
    out = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


# -- sums, products, intersections --------------------------------------------

def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I.ring, J.ring)
    return IdealHandle(I.ring, I.gens + J.gens)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I.ring, J.ring)
    return IdealHandle(I.ring, [a * b for a in I.gens for b in J.gens])


def ideal_power(I: IdealHandle, k: int) -> IdealHandle:
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return I.ring.unit_ideal()
    current = {g.monic() for g in I.gens}
    gens = list(current)
    for _ in range(k - 1):
        current = {(a * b).monic() for a in current for b in gens}
    ordered = sorted(current, key=lambda f: [(e, c) for e, c in f.sorted_terms()])
    return IdealHandle(I.ring, ordered)


def _extended(ambient: PolyRing, front: Sequence[str], order: MonomialOrder) -> PolyRing:
    return PolyRing(tuple(front) + ambient.variables, ambient.field, order)


def _ambient_intersection(ambient: PolyRing, A: Sequence[Polynomial], B: Sequence[Polynomial]):
    """Generators of (A) ∩ (B) in the ambient ring, by eliminating t from tA + (1-t)B."""
    if not A or not B:
        return []
    (tname,) = fresh_names("_t", 1, ambient.variables)
    big = _extended(ambient, [tname], elimination_order(1))
    shift = list(range(1, ambient.nvars + 1))
    t = big.gen(0)
    gens = [t * a.rename(big, shift) for a in A] + [(1 - t) * b.rename(big, shift) for b in B]
    gb = groebner_basis(gens, ring=big)
    out = []
    back = PolyRing(ambient.variables, ambient.field, ambient.order)
    for g in gb.elements:
        if all(e[0] == 0 for e in g._terms):
            out.append(Polynomial(back, {e[1:]: c for e, c in g._terms.items()}))
    return out


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I.ring, J.ring)
    gens = _ambient_intersection(I.ring.ambient, I.basis().elements, J.basis().elements)
    return IdealHandle(I.ring, gens)


# -- colon and saturation -------------------------------------------------------

def colon_element(I: IdealHandle, g: Polynomial) -> IdealHandle:
    """``I : g`` computed as ``(I ∩ (g)) / g``."""
    g = I.ring.ambient(g)
    if g.is_zero():
        raise ValueError("colon by the zero element is the whole ring; special-case it")
    if I.contains(g):
        return I.ring.unit_ideal()
    inter = _ambient_intersection(I.ring.ambient, I.basis().elements, [g])
    return IdealHandle(I.ring, [h.divide_exact(g) for h in inter])


def colon(I: IdealHandle, J: Union[IdealHandle, Polynomial]) -> IdealHandle:
    """``I : J = {f : f J ⊆ I}``, intersecting the colons by each generator of J."""
    if isinstance(J, Polynomial):
        return colon_element(I, J)
    _same_ring(I.ring, J.ring)
    K = I.ring.zero_ideal()
    gens = [g for g in J.gens if not K.contains(g)]
    if not gens:
        raise ValueError("colon by the zero ideal is the whole ring; special-case it")
    result = None
    for g in gens:
        part = colon_element(I, g)
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    if result is None:
        return I.ring.unit_ideal()
    return _canonical(result)


def _canonical(I: IdealHandle) -> IdealHandle:
    """Same ideal, generated by its reduced degrevlex basis."""
    gb = I.basis()
    J = IdealHandle(I.ring, gb.elements)
    J._seed_basis(gb)
    return J


def saturate(I: IdealHandle, J: IdealHandle) -> Tuple[IdealHandle, int]:
    """``I : <J>`` by iterated colon; returns the ideal and the number of
    colon steps that changed it."""
    _same_ring(I.ring, J.ring)
    current = _canonical(I)
    for k in range(SATURATION_CAP + 1):
        nxt = colon(current, J)
        if nxt.basis().elements == current.basis().elements:
            return current, k
        current = nxt
    raise RuntimeError(f"saturation did not stabilize within {SATURATION_CAP} colon steps")


def saturate_element(I: IdealHandle, h: Polynomial) -> IdealHandle:
    """``I : h^oo``.

    For homogeneous input this adjoins ``u = h`` with ``u`` of weight ``deg h``
    and last in a weighted degrevlex order, strips powers of ``u`` from the
    basis, and substitutes ``u -> h`` back. Otherwise it eliminates ``t`` from
    ``I + (1 - t h)``.
    """
    ambient = I.ring.ambient
    h = ambient(h)
    if h.is_zero():
        raise ValueError("saturation by the zero element")
    if I.contains(h):
        return I.ring.unit_ideal()
    if I.is_homogeneous() and h.is_homogeneous():
        (uname,) = fresh_names("_u", 1, ambient.variables)
        n = ambient.nvars
        w = (1,) * n + (h.total_degree(),)
        order = MonomialOrder("degrevlex", 0, w)
        big = PolyRing(ambient.variables + (uname,), ambient.field, order)
        ident = list(range(n))
        u = big.gen(n)
        gens = [g.rename(big, ident) for g in I.all_generators] + [h.rename(big, ident) - u]
        gb = groebner_basis(gens, ring=big)
        images = list(ambient.gens) + [h]
        out = []
        for g in gb.elements:
            k = min(e[n] for e in g._terms)
            stripped = Polynomial(big, {e[:n] + (e[n] - k,): c for e, c in g._terms.items()})
            out.append(stripped.compose(images, ambient))
        return _canonical(IdealHandle(I.ring, out))
    (tname,) = fresh_names("_t", 1, ambient.variables)
    big = _extended(ambient, [tname], elimination_order(1))
    shift = list(range(1, ambient.nvars + 1))
    t = big.gen(0)
    gens = [g.rename(big, shift) for g in I.all_generators] + [1 - t * h.rename(big, shift)]
    gb = groebner_basis(gens, ring=big)
    out = [Polynomial(ambient, {e[1:]: c for e, c in g._terms.items()})
           for g in gb.elements if all(e[0] == 0 for e in g._terms)]
    return _canonical(IdealHandle(I.ring, out))


def random_combination(J: IdealHandle, rng: random.Random) -> Polynomial:
    """A random nonzero-coefficient combination of J's generators."""
    p = J.ring.ambient.p
    acc = J.ring.ambient.zero()
    for g in J.gens:
        acc = acc + g.scale(rng.randrange(1, p))
    return acc


def saturate_general(I: IdealHandle, J: IdealHandle, rng: random.Random) -> IdealHandle:
    """``I : <J>`` as ``I : h^oo`` for a random combination ``h`` of J's generators.

    Equals the true saturation unless ``h`` falls into an associated prime of
    ``I`` not containing ``J`` (probability at most #Ass/p per prime).
    """
    _same_ring(I.ring, J.ring)
    if not J.gens:
        raise ValueError("saturation by the zero ideal")
    h = random_combination(J, rng)
    if h.is_zero():
        h = J.gens[0]
    return saturate_element(I, h)


# -- elimination ---------------------------------------------------------------

def eliminate(I: IdealHandle, keep: Sequence[str], weights: Optional[Dict[str, int]] = None) -> IdealHandle:
    """``(I + K) ∩ k[keep]`` as an ideal of the polynomial ring on ``keep``.

    ``weights`` maps variable names to positive degrees under which the input
    is homogeneous; it only steers pair selection.
    """
    ambient = I.ring.ambient
    missing = set(keep) - set(ambient.variables)
    if missing:
        raise KeyError(f"unknown variables {sorted(missing)}")
    keep = [v for v in ambient.variables if v in set(keep)]
    drop = [v for v in ambient.variables if v not in keep]
    sub = PolyRing(tuple(keep), ambient.field)
    target = QuotientRing(sub)
    gens = I.all_generators
    if not drop:
        return _canonical(IdealHandle(target, [g.rename(sub, list(range(len(keep)))) for g in gens]))
    order_vars = tuple(drop) + tuple(keep)
    big = PolyRing(order_vars, ambient.field, elimination_order(len(drop)))
    index = [order_vars.index(v) for v in ambient.variables]
    wts = None
    if weights is not None:
        wts = [int(weights.get(v, 1)) for v in order_vars]
    gb = groebner_basis([g.rename(big, index) for g in gens], ring=big, weights=wts)
    nd = len(drop)
    out = []
    for g in gb.elements:
        if all(not any(e[:nd]) for e in g._terms):
            out.append(Polynomial(sub, {e[nd:]: c for e, c in g._terms.items()}))
    result = IdealHandle(target, out)
    result._seed_basis(GroebnerBasis(sub, tuple(out)))
    return result


# -- determinantal ideals --------------------------------------------------------

def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        entry = M[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = entry * determinant(minor)
        acc = term if acc is None else (acc - term if j % 2 else acc + term)
    return acc if acc is not None else M[0][0].ring.zero()


def minors(M: Sequence[Sequence[Union[Polynomial, str]]], t: int, ring: QuotientRing) -> IdealHandle:
    """Ideal of all t x t minors of ``M``; ``t = 0`` gives the unit ideal."""
    rows = [[ring.ambient(x) for x in row] for row in M]
    if t == 0:
        return ring.unit_ideal()
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    if any(len(r) != nc for r in rows):
        raise ValueError("ragged matrix")
    if t < 0 or t > min(nr, nc):
        raise ValueError(f"minor size {t} exceeds matrix shape {nr}x{nc}")
    gens = []
    for rs in combinations(range(nr), t):
        for cs in combinations(range(nc), t):
            gens.append(determinant([[rows[i][j] for j in cs] for i in rs]))
    return IdealHandle(ring, gens)
