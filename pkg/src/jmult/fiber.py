"""Special fiber ring, analytic spread, the rank r, and dual-variety degrees.

The fiber ring ``k[I_delta]`` is presented as ``k[z_1..z_n] / F`` with
``F = ker(z_j -> a_j)``, found by elimination. Its degree is compared with the
cycle contributions of :mod:`jmult.multseq`: the inferred rank

    r = (e(R) delta^(d-1) - sum_{i<s} v_i delta^(d-i-1)) / e(k[I_delta])

must be a positive integer and must agree with ``v_s delta^(d-s-1) / e(k[I_delta])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import JMultError, NotEquigeneratedError, VerdictError
from .ideals import IdealHandle, QuotientRing, eliminate, fresh_names
from .multseq import MultSeqReport, agreed_multiplicity_sequence
from .ring import PolyRing, Polynomial

REDUCTION_CAVEAT = ("upper bound for the reduction number r_J(I) with respect to any reduction J; "
                    "valid in characteristic 0 for a domain R")
REDUCED_BANNER = "f is assumed reduced and irreducible (not verified)"
HYPOTHESIS_NOTE = "dim k[I]_p (x) G = d - s is assumed (holds for equidimensional quotients of polynomial rings)"


def fiber_ideal(R: QuotientRing, I: IdealHandle) -> IdealHandle:
    """Kernel of ``z_j -> a_j`` as an ideal of ``k[z_1..z_n]``."""
    if I.ring is not R and I.ring != R:
        raise ValueError("ideal does not belong to the given ring")
    delta = I.generator_degree()
    amb = R.ambient
    n = len(I.gens)
    znames = fresh_names("z", n, amb.variables)
    big = PolyRing(amb.variables + tuple(znames), amb.field)
    ident = list(range(amb.nvars))
    BR = QuotientRing(big, [k.rename(big, ident) for k in R.relations])
    gens = [big.gen(amb.nvars + j) - a.rename(big, ident) for j, a in enumerate(I.gens)]
    weights = {z: delta for z in znames}
    return eliminate(BR.ideal(gens), znames, weights)


def analytic_spread(R: QuotientRing, I: IdealHandle) -> int:
    """Krull dimension of the special fiber ring."""
    return fiber_ideal(R, I).dimension()


@dataclass(frozen=True)
class Equation7Verdict:
    r_balance: Fraction
    r_terminal: Fraction
    spread: int
    termination: int

    @property
    def r(self) -> Fraction:
        return self.r_balance

    @property
    def passed(self) -> bool:
        r = self.r_balance
        return (self.spread == self.termination and r == self.r_terminal
                and r.denominator == 1 and r > 0)


@dataclass
class FiberReport:
    fiber_ideal: IdealHandle
    spread: int
    fiber_degree: int
    delta: int
    e_R: Optional[int] = None
    dim: Optional[int] = None
    ht_I: Optional[int] = None
    multseq: Optional[MultSeqReport] = None
    seeds_agreed: Optional[bool] = None
    verdict: Optional[Equation7Verdict] = None
    dual_degree: Optional[int] = None
    smooth_term: Optional[int] = None
    corrections: List[Tuple[int, int, Fraction]] = field(default_factory=list)
    plucker_value: Optional[Fraction] = None
    notes: List[str] = field(default_factory=list)

    @property
    def r(self) -> Optional[Fraction]:
        return self.verdict.r if self.verdict is not None else None

    @property
    def reduction_bound(self) -> int:
        return self.fiber_degree


def fiber_data(R: QuotientRing, I: IdealHandle) -> FiberReport:
    F = fiber_ideal(R, I)
    hd = F.hilbert()
    if hd.is_zero_ring:
        raise JMultError("fiber ring is the zero ring")
    return FiberReport(F, hd.dimension, hd.degree, I.generator_degree())


def check_equation7(R: QuotientRing, I: IdealHandle, report: MultSeqReport,
                    fiber: FiberReport) -> Equation7Verdict:
    """Infer the rank r from the balance and from the terminal step; both must agree."""
    if fiber.fiber_degree == 0:
        raise JMultError("fiber degree 0: upstream computation failed")
    d = R.dimension()
    delta = Fraction(report.delta)
    s = fiber.spread
    v = report.contributions
    top = Fraction(R.degree()) * delta ** (d - 1)
    lower = sum((v[i] * delta ** (d - i - 1) for i in range(min(s, len(v)))), Fraction(0))
    r_balance = (top - lower) / fiber.fiber_degree
    v_s = v[s] if s < len(v) else 0
    r_terminal = v_s * delta ** (d - s - 1) / fiber.fiber_degree
    return Equation7Verdict(r_balance, r_terminal, s, report.s_observed)


def fiber_report(R: QuotientRing, I: IdealHandle, seed: int = 0, agree: int = 3) -> FiberReport:
    """Fiber data plus the rank cross-check against the cycle contributions."""
    fib = fiber_data(R, I)
    run = agreed_multiplicity_sequence(R, I, seed, agree)
    rep = run.report
    fib.e_R, fib.dim, fib.ht_I = rep.e_R, rep.dim, rep.ht_I
    fib.multseq = rep
    fib.seeds_agreed = run.seeds_agreed
    fib.verdict = check_equation7(R, I, rep, fib)
    fib.notes.append(HYPOTHESIS_NOTE)
    return fib


def jacobian_ideal(f: Polynomial, R: Optional[QuotientRing] = None) -> IdealHandle:
    """All partial derivatives of ``f`` (zero ones dropped) as an ideal of ``R``."""
    R = R or QuotientRing(f.ring, [f])
    return R.ideal([f.derivative(i) for i in range(f.ring.nvars)])


def dual_variety_degree(f: Polynomial, seed: int = 0, agree: int = 3) -> FiberReport:
    """Degree of the dual variety of the hypersurface ``V(f)``.

    Builds ``R = k[y]/(f)`` and its Jacobian ideal (generator degree
    ``deg f - 1``), computes the fiber degree by elimination and the
    Pluecker-type decomposition

        dual = (deg f (deg f - 1)^(n-1) - sum_{i<s} v_i (deg f - 1)^(n-i-1)) / r.
    """
    if f.is_zero() or not f.is_homogeneous():
        raise ValueError("f must be a nonzero homogeneous polynomial")
    deg = f.total_degree()
    if deg < 2:
        raise ValueError("f must have degree at least 2")
    p = f.ring.p
    if deg % p == 0 or (deg - 1) % p == 0:
        raise ValueError(f"characteristic {p} divides deg f or deg f - 1")
    R = QuotientRing(f.ring, [f])
    I = jacobian_ideal(f, R)
    if not I.gens:
        raise ValueError("all partial derivatives vanish")
    try:
        I.generator_degree()
    except NotEquigeneratedError as exc:  # pragma: no cover - partials of a form share a degree
        raise ValueError(str(exc)) from exc
    fib = fiber_report(R, I, seed, agree)
    n = fib.dim
    dt = deg - 1
    fib.smooth_term = deg * dt ** (n - 1)
    s = fib.spread
    v = fib.multseq.contributions
    fib.corrections = [(i, v[i], Fraction(v[i]) * Fraction(dt) ** (n - i - 1))
                       for i in range(min(s, len(v))) if v[i]]
    r = fib.r
    if r is not None and r != 0:
        fib.plucker_value = (fib.smooth_term - sum(c for _, _, c in fib.corrections)) / r
    fib.dual_degree = fib.fiber_degree
    fib.notes.insert(0, REDUCED_BANNER)
    return fib


def reduction_number_bound(fiber: FiberReport) -> Tuple[int, str]:
    """e(k[I_delta]) together with the caveat under which it bounds the reduction number."""
    if fiber.fiber_degree <= 0:
        raise VerdictError("fiber degree must be positive")
    return fiber.fiber_degree, REDUCTION_CAVEAT
