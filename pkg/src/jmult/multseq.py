"""Cycle contributions of an equigenerated ideal by repeated general cuts.

Starting from ``T_0 = R``, step ``i`` saturates away everything supported off
``V(I)`` (``J = 0 :_{T_i} <I>``), books the multiplicity that was lost as the
contribution ``v_i``, and cuts the saturated ring by the next general element
``x_{i+1}`` of ``I``. Every cut by a degree-``delta`` nonzerodivisor
multiplies the multiplicity by ``delta``, which gives the balance identity

    sum_i v_i * delta^(d-1-i) == e(R) * delta^(d-1).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import NonGenericError
from .ideals import IdealHandle, QuotientRing, colon, ideal_sum, saturate, saturate_general
from .ring import Polynomial


@dataclass(frozen=True)
class GeneralElementPlan:
    seed: int
    delta: int
    coefficients: Tuple[Tuple[int, ...], ...]
    elements: Tuple[Polynomial, ...]

    def __len__(self):
        return len(self.elements)


def general_elements(I: IdealHandle, count: int, seed: int) -> GeneralElementPlan:
    """``count`` random combinations ``x_i = sum_j c_ij a_j`` of I's generators.

    Coefficients are drawn uniformly from the nonzero residues by a PRNG seeded
    with ``seed``; rows are generated in order, so a longer plan extends a
    shorter one with the same seed.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    delta = I.generator_degree()
    p = I.ring.ambient.p
    rng = random.Random(seed)
    rows = tuple(tuple(rng.randrange(1, p) for _ in I.gens) for _ in range(count))
    zero = I.ring.ambient.zero()
    elements = []
    for row in rows:
        x = zero
        for c, a in zip(row, I.gens):
            x = x + a.scale(c)
        elements.append(x)
    return GeneralElementPlan(seed, delta, rows, tuple(elements))


@dataclass(frozen=True)
class StepRecord:
    i: int
    dim_before: int
    value: int
    terminal: bool = False
    reason: str = ""


@dataclass
class MultSeqReport:
    """Contributions deg v_i of one run of the recursion."""

    e_R: int
    dim: int
    ht_I: int
    delta: int
    seed: int
    steps: List[StepRecord] = field(default_factory=list)
    plan: Optional[GeneralElementPlan] = None

    @property
    def contributions(self) -> List[int]:
        return [s.value for s in self.steps]

    @property
    def s_observed(self) -> int:
        return self.steps[-1].i

    def balance(self) -> Tuple[Fraction, Fraction]:
        """(sum_i v_i delta^(d-1-i), e(R) delta^(d-1)) as exact rationals."""
        d, delta = self.dim, Fraction(self.delta)
        lhs = sum((v * delta ** (d - 1 - i) for i, v in enumerate(self.contributions)), Fraction(0))
        return lhs, Fraction(self.e_R) * delta ** (d - 1)

    @property
    def valid(self) -> bool:
        lhs, rhs = self.balance()
        return lhs == rhs

    def c_scale(self) -> List[Fraction]:
        """Contributions rescaled to the Veronese grading: v_i * delta^(d-i-1)."""
        d, delta = self.dim, Fraction(self.delta)
        return [v * delta ** (d - i - 1) for i, v in enumerate(self.contributions)]


def _check_same_ring(R: QuotientRing, I: IdealHandle):
    if I.ring is not R and I.ring != R:
        raise ValueError("ideal does not belong to the given ring")


def multiplicity_sequence(R: QuotientRing, I: IdealHandle, seed: int = 0,
                          method: str = "general") -> MultSeqReport:
    """Run the cut-and-saturate recursion for ``I`` in ``R``.

    ``method`` selects how ``0 :_T <I>`` is computed: ``"general"`` saturates
    by one random element of ``I`` (fast), ``"colon"`` iterates colons by the
    whole ideal.
    """
    _check_same_ring(R, I)
    delta = I.generator_degree()
    hd = R.hilbert()
    if hd.is_zero_ring:
        raise ValueError("R is the zero ring")
    if I.is_unit():
        raise ValueError("I must be a proper ideal")
    d = hd.dimension
    g = d - I.dimension()
    report = MultSeqReport(hd.degree, d, g, delta, seed)
    plan = general_elements(I, max(d, 1), seed)
    report.plan = plan
    sat_rng = random.Random(f"saturation:{seed}")

    T = R.zero_ideal()
    i = 0
    while True:
        dim_T = T.dimension()
        if dim_T != d - i:
            raise NonGenericError(f"step {i}: expected dimension {d - i}, got {dim_T}", seed)
        e_T = T.degree()
        if method == "general":
            J = saturate_general(T, I, sat_rng)
        elif method == "colon":
            J, _ = saturate(T, I)
        else:
            raise ValueError(f"unknown saturation method {method!r}")
        if J.is_unit():
            report.steps.append(StepRecord(i, dim_T, e_T, True, "I nilpotent"))
            return report
        if J.dimension() < dim_T:
            report.steps.append(StepRecord(i, dim_T, e_T, True, "dimension drop"))
            return report
        report.steps.append(StepRecord(i, dim_T, e_T - J.degree()))
        if i >= d:
            raise NonGenericError(f"no termination after {i} cuts in a ring of dimension {d}", seed)
        T = IdealHandle(R, J.gens + (plan.elements[i],))
        i += 1


@dataclass(frozen=True)
class BalanceVerdict:
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def check_equation3(report: MultSeqReport, R: QuotientRing) -> BalanceVerdict:
    """Exact check of sum_i v_i delta^(d-1-i) == e(R) delta^(d-1), with e(R) recomputed."""
    d, delta = R.dimension(), Fraction(report.delta)
    lhs = sum((v * delta ** (d - 1 - i) for i, v in enumerate(report.contributions)), Fraction(0))
    return BalanceVerdict(lhs, Fraction(R.degree()) * delta ** (d - 1))


@dataclass
class AgreedRun:
    report: MultSeqReport
    seeds: List[int]
    seeds_agreed: bool
    disagreements: List[Tuple[int, object]]


def agreed_multiplicity_sequence(R: QuotientRing, I: IdealHandle, seed: int = 0, agree: int = 3,
                                 method: str = "general") -> AgreedRun:
    """Run with seeds ``seed .. seed+agree-1`` and require identical contributions.

    On disagreement up to ``2*agree`` further seeds are drawn and the first
    contribution list seen ``agree`` times is reported, with
    ``seeds_agreed=False``. Raises :class:`NonGenericError` if no list reaches
    ``agree`` votes.
    """
    agree = max(1, agree)
    runs = {}
    failures = []
    tally: Counter = Counter()
    first_report = {}

    def run(s):
        try:
            rep = multiplicity_sequence(R, I, s, method)
        except NonGenericError as exc:
            failures.append((s, str(exc)))
            return
        key = tuple(rep.contributions)
        runs[s] = rep
        tally[key] += 1
        first_report.setdefault(key, rep)

    seeds = [seed + k for k in range(agree)]
    for s in seeds:
        run(s)
    if len(tally) == 1 and not failures:
        key = next(iter(tally))
        return AgreedRun(first_report[key], seeds, True, [])
    extra = [seed + agree + k for k in range(2 * agree)]
    for s in extra:
        run(s)
        best, votes = tally.most_common(1)[0] if tally else (None, 0)
        if votes >= agree:
            break
    best, votes = tally.most_common(1)[0] if tally else (None, 0)
    disagreements = [(s, tuple(r.contributions)) for s, r in runs.items() if tuple(r.contributions) != best]
    disagreements += failures
    if votes < agree:
        raise NonGenericError(f"no contribution list reached {agree} agreeing seeds: {dict(tally)}", seed)
    return AgreedRun(first_report[best], seeds + extra, False, disagreements)


# -- residual intersections ----------------------------------------------------

@dataclass
class ResidualChain:
    dim: int
    ht_I: int
    delta: int
    e_R: int
    entries: List[dict] = field(default_factory=list)
    pattern_lhs: Fraction = Fraction(0)
    pattern_rhs: Fraction = Fraction(0)

    @property
    def divergent_steps(self) -> List[int]:
        return [e["i"] for e in self.entries if not (e["saturated"] and e["matches"])]

    @property
    def agrees(self) -> bool:
        return not self.divergent_steps and self.pattern_lhs == self.pattern_rhs


def residual_chain(R: QuotientRing, I: IdealHandle, plan: GeneralElementPlan,
                   report: Optional[MultSeqReport] = None, upto: Optional[int] = None) -> ResidualChain:
    """Plain-colon ladder H_{i-1} = (x_1..x_{i-1}) : I and the degrees e(R/(H_{i-1}+I)).

    Each entry records whether H_{i-1} equals the saturation
    (x_1..x_{i-1}) : <I> and whether its term matches the contribution v_i of
    ``report`` (computed with the same seed when omitted). The pattern
    identity replaces v_i by e(R/(H_{i-1}+I)) for the chain indices and
    compares with e(R) delta^(d-1).
    """
    _check_same_ring(R, I)
    if report is None:
        report = multiplicity_sequence(R, I, plan.seed)
    d, g, delta = report.dim, report.ht_I, report.delta
    s = report.s_observed
    upto = s if upto is None else min(upto, len(plan.elements))
    chain = ResidualChain(d, g, delta, report.e_R)
    contributions = report.contributions
    start = max(1, g)
    sat_rng = random.Random(f"residual:{plan.seed}")
    for i in range(start, upto + 1):
        X = R.ideal(plan.elements[: i - 1])
        H = colon(X, I)
        Jsat = saturate_general(X, I, sat_rng)
        HI = ideal_sum(H, I)
        hd = HI.hilbert()
        expected = d - i
        term = hd.degree if (not hd.is_zero_ring and hd.dimension == expected) else 0
        v = contributions[i] if i < len(contributions) else 0
        chain.entries.append({
            "i": i,
            "H": H,
            "dim": hd.dimension,
            "degree": hd.degree,
            "term": term,
            "saturated": H.same_ideal(Jsat),
            "contribution": v,
            "matches": term == v,
        })
    dd = Fraction(delta)
    covered = {e["i"]: e["term"] for e in chain.entries}
    lhs = Fraction(0)
    for i, v in enumerate(contributions):
        lhs += covered.get(i, v) * dd ** (d - 1 - i)
    chain.pattern_lhs = lhs
    chain.pattern_rhs = Fraction(report.e_R) * dd ** (d - 1)
    return chain
