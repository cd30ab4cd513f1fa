"""Command-line front end.

Each subcommand reads one JSON problem file::

    {"char": 32003, "vars": ["y0", "y1", "y2", "y3"],
     "relations": ["y1^2*y3 - y2^2*y0"],
     "ideal": {"jacobian_of": "y1^2*y3 - y2^2*y0"}, "seed": 0}

Exit status is 0 on success, 1 on input errors and 2 when a computed
identity fails or the seeds do not agree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import JMultError, NonGenericError, VerdictError
from .fiber import (FiberReport, dual_variety_degree, fiber_report, jacobian_ideal,
                    reduction_number_bound)
from .ideals import IdealHandle, QuotientRing
from .multseq import agreed_multiplicity_sequence, check_equation3
from .ring import DEGREVLEX, LEX, PolyRing, PrimeField

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class ProblemSpec:
    characteristic: int
    variables: List[str]
    relations: List[str]
    ideal: Union[List[str], str]
    seed: int = 0
    seeds_for_agreement: int = 3
    source: str = ""

    @property
    def jacobian_of(self) -> Optional[str]:
        return self.ideal if isinstance(self.ideal, str) else None


def _line_of(source: str, needle: str) -> Optional[int]:
    pos = source.find(json.dumps(needle)[1:-1])
    return source.count("\n", 0, pos) + 1 if pos >= 0 else None


def load_problem(path: str) -> ProblemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    return problem_from_dict(doc, path, source)


def problem_from_dict(doc, path: str = "<problem>", source: str = "") -> ProblemSpec:
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    unknown = set(doc) - {"char", "vars", "relations", "ideal", "seed", "seeds_for_agreement"}
    if unknown:
        raise InputError(f"{path}: unknown keys {sorted(unknown)}")
    variables = doc.get("vars")
    if not isinstance(variables, list) or not variables or not all(isinstance(v, str) for v in variables):
        raise InputError(f"{path}: 'vars' must be a nonempty list of names")
    relations = doc.get("relations", [])
    if not isinstance(relations, list) or not all(isinstance(r, str) for r in relations):
        raise InputError(f"{path}: 'relations' must be a list of strings")
    ideal = doc.get("ideal")
    if isinstance(ideal, dict):
        if set(ideal) != {"jacobian_of"} or not isinstance(ideal["jacobian_of"], str):
            raise InputError(f"{path}: 'ideal' object must be {{\"jacobian_of\": \"<poly>\"}}")
        ideal = ideal["jacobian_of"]
    elif not isinstance(ideal, list) or not all(isinstance(g, str) for g in ideal):
        raise InputError(f"{path}: 'ideal' must be a list of strings or a jacobian_of directive")
    ints = {}
    for key, default in (("char", 32003), ("seed", 0), ("seeds_for_agreement", 3)):
        val = doc.get(key, default)
        if not isinstance(val, int) or isinstance(val, bool):
            raise InputError(f"{path}: '{key}' must be an integer")
        ints[key] = val
    return ProblemSpec(ints["char"], variables, relations, ideal, ints["seed"],
                       ints["seeds_for_agreement"], source)


def build(spec: ProblemSpec, path: str = "<problem>") -> Tuple[QuotientRing, IdealHandle]:
    """Parse every polynomial of the spec, reporting the file line of the culprit."""

    def parse(text, ring):
        try:
            return ring.parse(text)
        except (JMultError, ValueError, OverflowError) as exc:
            line = _line_of(spec.source, text) if spec.source else None
            where = f"{path}:{line}" if line else path
            raise InputError(f"{where}: {exc} in {text!r}") from exc

    try:
        field = PrimeField(spec.characteristic)
        ambient = PolyRing(tuple(spec.variables), field)
    except (JMultError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    R = QuotientRing(ambient, [parse(r, ambient) for r in spec.relations])
    if spec.jacobian_of is not None:
        I = jacobian_ideal(parse(spec.jacobian_of, ambient), R)
    else:
        I = R.ideal([parse(g, ambient) for g in spec.ideal])
    return R, I


# -- formatting ----------------------------------------------------------------

def _num(x) -> Union[int, str, None]:
    if x is None:
        return None
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _txt(x) -> str:
    return str(_num(x))


def _report_dict(run=None, fib: Optional[FiberReport] = None, R=None) -> dict:
    rep = run.report if run is not None else (fib.multseq if fib else None)
    out = {
        "e_R": rep.e_R if rep else None,
        "dim": rep.dim if rep else None,
        "ht_I": rep.ht_I if rep else None,
        "delta": rep.delta if rep else None,
        "spread": fib.spread if fib else None,
        "contributions": [{"i": s.i, "dim_before": s.dim_before, "value": s.value} for s in rep.steps] if rep else [],
        "balance": None,
        "fiber_degree": fib.fiber_degree if fib else None,
        "r": _num(fib.r) if fib else None,
        "dual_degree": fib.dual_degree if fib else None,
        "reduction_bound": reduction_number_bound(fib)[0] if fib else None,
        "seeds_agreed": run.seeds_agreed if run is not None else (fib.seeds_agreed if fib else None),
    }
    if rep is not None:
        bal = check_equation3(rep, R)
        out["balance"] = {"lhs": _num(bal.lhs), "rhs": _num(bal.rhs), "pass": bal.passed}
    return out


def _emit(obj: dict):
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _multseq_lines(rep, bal) -> List[str]:
    lines = [f"e(R) = {rep.e_R}, dim R = {rep.dim}, ht I = {rep.ht_I}, delta = {rep.delta}, seed = {rep.seed}"]
    for s in rep.steps:
        tail = f"   [{s.reason}]" if s.terminal else ""
        lines.append(f"  υ_{s.i} = {s.value:<6} (dim T_{s.i} = {s.dim_before}){tail}")
    lines.append(f"balance {_txt(bal.lhs)} = {_txt(bal.rhs)}" if bal.passed
                 else f"balance {_txt(bal.lhs)} != {_txt(bal.rhs)}  FAILED")
    return lines


def _plucker_lines(fib: FiberReport, deg: int) -> List[str]:
    n = fib.dim
    dt = deg - 1
    lines = [f"smooth term      {deg}·{dt}^{n - 1} = {fib.smooth_term}"]
    by_codim = {}
    for i, v, c in fib.corrections:
        by_codim.setdefault(i, []).append((v, c))
    for i in sorted(by_codim):
        for v, c in by_codim[i]:
            lines.append(f"codim {i} correction  υ_{i}·{dt}^{n - i - 1} = {v}·{dt ** (n - i - 1)} = {_txt(c)}")
    if not fib.corrections:
        lines.append("no corrections")
    total = sum((c for _, _, c in fib.corrections), Fraction(0))
    lines.append(f"Plücker value   ({fib.smooth_term} - {_txt(total)}) / {_txt(fib.r)} = {_txt(fib.plucker_value)}")
    return lines


# -- commands ------------------------------------------------------------------

def cmd_gb(R, I, args) -> int:
    order = LEX if args.order == "lex" else DEGREVLEX
    gb = I.basis(order)
    if args.json:
        _emit({"order": args.order, "basis": [str(g) for g in gb]})
    else:
        print(f"reduced Groebner basis ({args.order}, {len(gb)} elements):")
        for g in gb:
            print(f"  {g}")
    return EXIT_OK


def cmd_hilbert(R, I, args) -> int:
    hd = I.hilbert() if I.gens else R.hilbert()
    hf = [hd.hilbert_function(k) for k in range(9)]
    if args.json:
        _emit({"dim": hd.dimension, "degree": hd.degree, "numerator": list(hd.numerator),
               "hilbert_function": hf})
    else:
        print(f"dim {hd.dimension}, degree {hd.degree}")
        print(f"numerator {list(hd.numerator)} over (1-t)^{hd.nvars}")
        print(f"H(0..8) = {hf}")
    return EXIT_OK


def cmd_multseq(R, I, args) -> int:
    run = agreed_multiplicity_sequence(R, I, args.seed, args.agree)
    bal = check_equation3(run.report, R)
    if args.json:
        _emit(_report_dict(run=run, R=R))
    else:
        print("\n".join(_multseq_lines(run.report, bal)))
        print(f"seeds agreed: {'yes' if run.seeds_agreed else 'no'}")
    if not bal.passed:
        print(f"balance failed (seed {run.report.seed}): {_txt(bal.lhs)} != {_txt(bal.rhs)}", file=sys.stderr)
        return EXIT_VERDICT
    if not run.seeds_agreed:
        print(f"seeds disagreed: {run.disagreements}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def _fiber_verdict_code(fib: FiberReport, R) -> int:
    v = fib.verdict
    bal = check_equation3(fib.multseq, R)
    code = EXIT_OK
    if not bal.passed:
        print(f"balance failed (seed {fib.multseq.seed}): {_txt(bal.lhs)} != {_txt(bal.rhs)}", file=sys.stderr)
        code = EXIT_VERDICT
    if not v.passed:
        print(f"rank check failed (seed {fib.multseq.seed}): r from balance = {_txt(v.r_balance)}, "
              f"r from terminal step = {_txt(v.r_terminal)}, spread {v.spread}, "
              f"termination {v.termination}", file=sys.stderr)
        code = EXIT_VERDICT
    if not fib.seeds_agreed:
        print("seeds disagreed", file=sys.stderr)
        code = EXIT_VERDICT
    return code


def cmd_fiber(R, I, args) -> int:
    fib = fiber_report(R, I, args.seed, args.agree)
    if args.json:
        _emit(_report_dict(fib=fib, R=R))
    else:
        bound, caveat = reduction_number_bound(fib)
        print(f"fiber ideal: {', '.join(map(str, fib.fiber_ideal.gens)) or '0'}")
        print(f"analytic spread {fib.spread}, fiber degree {fib.fiber_degree}")
        print(f"r = {_txt(fib.verdict.r_balance)} (balance), {_txt(fib.verdict.r_terminal)} (terminal step)")
        print(f"reduction number bound {bound}: {caveat}")
        for note in fib.notes:
            print(f"note: {note}")
    return _fiber_verdict_code(fib, R)


def cmd_dual(R, I, args, spec: ProblemSpec) -> int:
    text = spec.jacobian_of
    if text is None:
        if len(R.relations) != 1:
            raise InputError("dual needs an 'ideal': {\"jacobian_of\": ...} directive or exactly one relation")
        f = R.relations[0]
    else:
        f = R.ambient.parse(text)
    try:
        fib = dual_variety_degree(f, args.seed, args.agree)
    except ValueError as exc:
        if isinstance(exc, JMultError):
            raise
        raise InputError(str(exc)) from exc
    Rf = QuotientRing(f.ring, [f])
    if args.json:
        out = _report_dict(fib=fib, R=Rf)
        out["smooth_term"] = fib.smooth_term
        out["corrections"] = [{"codim": i, "value": v, "scaled": _num(c)} for i, v, c in fib.corrections]
        out["plucker_value"] = _num(fib.plucker_value)
        _emit(out)
    else:
        print(f"f = {f}, deg f = {f.total_degree()}, n = dim R = {fib.dim}, delta = {fib.delta}")
        print("\n".join(_multseq_lines(fib.multseq, check_equation3(fib.multseq, Rf))))
        print("\n".join(_plucker_lines(fib, f.total_degree())))
        print(f"dual degree {fib.dual_degree} (fiber degree), r = {_txt(fib.r)}")
        for note in fib.notes:
            print(f"note: {note}")
    code = _fiber_verdict_code(fib, Rf)
    if fib.plucker_value != fib.dual_degree:
        print(f"Plücker value {_txt(fib.plucker_value)} != fiber degree {fib.dual_degree} "
              f"(seed {fib.multseq.seed})", file=sys.stderr)
        code = EXIT_VERDICT
    return code


def cmd_check(R, I, args) -> int:
    fib = fiber_report(R, I, args.seed, args.agree)
    bal = check_equation3(fib.multseq, R)
    if args.json:
        _emit(_report_dict(fib=fib, R=R))
    else:
        v = fib.verdict
        print(f"balance    {'pass' if bal.passed else 'FAIL'}  {_txt(bal.lhs)} = {_txt(bal.rhs)}")
        print(f"rank       {'pass' if v.passed else 'FAIL'}  r = {_txt(v.r_balance)} / {_txt(v.r_terminal)}")
        print(f"spread     {'pass' if v.spread == v.termination else 'FAIL'}  "
              f"spread {v.spread}, termination {v.termination}")
        print(f"seeds      {'pass' if fib.seeds_agreed else 'FAIL'}")
    return _fiber_verdict_code(fib, R)


COMMANDS = {"gb": cmd_gb, "hilbert": cmd_hilbert, "multseq": cmd_multseq,
            "fiber": cmd_fiber, "dual": cmd_dual, "check": cmd_check}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jmult", description="Multiplicity sequences, fiber degrees and dual varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "gb": "reduced Groebner basis of the ideal plus relations",
        "hilbert": "dimension, degree and Hilbert function of the quotient",
        "multseq": "cycle contributions and the balance identity",
        "fiber": "special fiber ring, analytic spread and the rank r",
        "dual": "degree of the dual variety of the hypersurface",
        "check": "run every consistency check",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("problem", help="JSON problem file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--agree", type=int, default=None, help="number of agreeing seeds required")
        p.add_argument("--char", type=int, default=None, help="override the characteristic")
        p.add_argument("--json", action="store_true")
        p.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        spec = load_problem(args.problem)
        if args.char is not None:
            spec.characteristic = args.char
        if args.seed is None:
            args.seed = spec.seed
        if args.agree is None:
            args.agree = spec.seeds_for_agreement
        if args.agree < 1:
            raise InputError("--agree must be at least 1")
        R, I = build(spec, args.problem)
        if args.command == "dual":
            return cmd_dual(R, I, args, spec)
        return COMMANDS[args.command](R, I, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonGenericError, VerdictError) as exc:
        print(f"verdict failure: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (JMultError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
