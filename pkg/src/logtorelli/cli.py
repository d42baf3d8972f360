"""Command-line front end.

Usage::

    logtorelli analyze --poly "x^3+y^3+z^3"
    logtorelli jump --poly "x^3+y^3+z^3" --against "x^2" --format json

Exit codes: 0 success, 2 parse error, 3 unsupported input (e.g. singular),
4 split needs a field extension, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cubic import corollary_check
from .errors import InternalConsistencyError, NotSmoothError, UnsupportedInput
from .fields import ModP, parse_field
from .jacobi import is_smooth, jacobi_piece, log_derivation_dims, partials_independent
from .polyring import (
    CoordinateChange,
    HomPoly,
    PolyParseError,
    default_var_names,
    format_poly,
    from_coeff_vector,
    parse_poly,
)
from .sebastiani import (
    NeedsExtension,
    STDecomposition,
    extract_decomposition,
    is_st,
    split_completely,
    st_space,
)
from .torelli import (
    Status,
    divisors_with_jacobi_piece,
    jump_locus_filter,
    torelli_verdict,
)

EXIT_CODES = {
    "ok": 0,
    "parse_error": 2,
    "unsupported": 3,
    "needs_extension": 4,
    "internal_error": 5,
}

SINGULAR_MESSAGE = "singular divisor: Theorem applies to smooth divisors only"


def exit_code(status: str) -> int:
    return EXIT_CODES[status]


# -- rendering helpers -------------------------------------------------------

def scalar(x) -> str:
    if isinstance(x, ModP):
        return str(x.v)
    return str(Fraction(x))


def matrix_rows(M) -> list[list[str]]:
    if isinstance(M, CoordinateChange):
        M = M.matrix
    return [[scalar(x) for x in r] for r in M.rows]


def _new_names(names: list[str]) -> list[str]:
    upper = [n.upper() for n in names]
    if len(set(upper)) == len(upper) and not set(upper) & set(names):
        return upper
    return [f"{n}_new" for n in names]


def decomposition_dict(d: STDecomposition, names: list[str]) -> dict:
    new = _new_names(names)
    return {
        "split_l": d.split_l,
        "new_vars": new,
        "change": matrix_rows(d.change),
        "f1": format_poly(d.f1, new),
        "f2": format_poly(d.f2, new),
        "convention": "old x_j = sum_i change[j][i] * new X_i",
    }


def full_split_dict(s, names: list[str]) -> dict:
    new = _new_names(names)
    return {
        "new_vars": new,
        "change": matrix_rows(s.change),
        "blocks": [[new[i] for i in b] for b in s.blocks],
        "parts": [format_poly(p, new) for p in s.parts],
        "blocked_by_extension": list(s.blocked),
    }


@dataclass
class AnalysisReport:
    command: str
    poly: str
    variables: list[str]
    field: str
    status: str = "ok"
    body: dict = field(default_factory=dict)
    message: Optional[str] = None
    timings: dict = field(default_factory=dict)

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "input": {"poly": self.poly, "variables": self.variables, "field": self.field},
            "status": self.status,
            "exit_code": exit_code(self.status),
        }
        out.update(self.body)
        if self.message is not None:
            out["message"] = self.message
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


@contextmanager
def _timed(report: AnalysisReport, stage: str):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        report.timings[stage] = time.perf_counter() - t0


# -- subcommands ---------------------------------------------------------------

def _require_smooth(f: HomPoly, report: AnalysisReport) -> bool:
    with _timed(report, "smoothness"):
        smooth = is_smooth(f)
    report.body["smooth"] = smooth
    if not smooth:
        report.status = "unsupported"
        report.message = SINGULAR_MESSAGE
    return smooth


def cmd_analyze(f: HomPoly, names, args, report: AnalysisReport):
    if not _require_smooth(f, report):
        report.body["torelli"] = {"status": str(Status.UNSUPPORTED)}
        return
    with _timed(report, "st_space"):
        st = is_st(f)
    report.body["st"] = {"verdict": st.verdict, "st_dim": st.st_dim}
    with _timed(report, "torelli"):
        verdict = torelli_verdict(f, attempts=args.attempts, seed=args.seed)
    tor = {"status": str(verdict.status)}
    if verdict.family is not None:
        new = _new_names(names)
        f1, f2 = verdict.family
        tor["non_injective_family"] = (f"mu*({format_poly(f1, new)}) + "
                                       f"nu*({format_poly(f2, new)})")
    report.body["torelli"] = tor
    w = verdict.witness
    if isinstance(w, STDecomposition):
        report.body["decomposition"] = decomposition_dict(w, names)
        if args.recursive:
            with _timed(report, "recursive_split"):
                report.body["full_split"] = full_split_dict(
                    split_completely(f, args.attempts, args.seed), names)
    elif isinstance(w, NeedsExtension):
        _needs_extension(w, report)


def _needs_extension(w: NeedsExtension, report: AnalysisReport):
    report.status = "needs_extension"
    report.message = "split exists only over a field extension"
    report.body["deferred_roots"] = [
        [scalar(c) for c in r.deferred] for r in w.deferred]


def cmd_st(f: HomPoly, names, args, report: AnalysisReport):
    with _timed(report, "st_space"):
        S = st_space(f)
    report.body["st_space"] = {"dim": S.dim,
                               "basis": [format_poly(g, names) for g in S.members()]}
    if not _require_smooth(f, report):
        return
    st = is_st(f)
    report.body["st"] = {"verdict": st.verdict, "st_dim": st.st_dim,
                         "justification": st.justification}
    with _timed(report, "extraction"):
        res = extract_decomposition(f, attempts=args.attempts, seed=args.seed)
    if isinstance(res, STDecomposition):
        report.body["decomposition"] = decomposition_dict(res, names)
        if args.recursive:
            report.body["full_split"] = full_split_dict(
                split_completely(f, args.attempts, args.seed), names)
    elif isinstance(res, NeedsExtension):
        _needs_extension(res, report)
    else:
        report.body["decomposition"] = None


def cmd_jacobi(f: HomPoly, names, args, report: AnalysisReport):
    with _timed(report, "jacobi_piece"):
        J = jacobi_piece(f)
    report.body["jacobi_piece"] = {
        "degree": f.degree - 1,
        "dim": J.dim,
        "basis": [format_poly(from_coeff_vector(v, f.nvars, f.degree - 1, f.field), names)
                  for v in J.piece.basis],
    }
    report.body["partials_independent"] = partials_independent(f)
    with _timed(report, "smoothness"):
        report.body["smooth"] = is_smooth(f)


def cmd_hilbert(f: HomPoly, names, args, report: AnalysisReport):
    with _timed(report, "hilbert"):
        h = log_derivation_dims(f, args.dmax)
    report.body["dmax"] = args.dmax
    report.body["log_derivation_dims"] = list(h.dims)


def cmd_jump(f: HomPoly, names, args, report: AnalysisReport):
    if not args.against:
        raise PolyParseError("jump needs at least one --against polynomial")
    cands = [parse_poly(_read_text(t), names, f.field) for t in args.against]
    if not _require_smooth(f, report):
        return
    with _timed(report, "jump"):
        reps = jump_locus_filter(f, cands)
    out = []
    for text, r in zip(args.against, reps):
        entry = {"g": format_poly(r.g, names) if r.g is not None else text,
                 "indicator_dim": r.indicator_dim, "jumped": r.jumped}
        if r.error:
            entry["error"] = r.error
        out.append(entry)
    report.body["jumps"] = out


def cmd_reconstruct(f: HomPoly, names, args, report: AnalysisReport):
    if not _require_smooth(f, report):
        return
    with _timed(report, "reconstruct"):
        fam = divisors_with_jacobi_piece(jacobi_piece(f))
    report.body["family"] = {
        "dim": fam.dim,
        "basis": [format_poly(g, names) for g in fam.members()],
        "basis_is_smooth_with_same_piece": list(fam.basis_full),
        "contains_f": f in fam,
        "determined_by_jacobi_ideal": fam.dim == 1,
    }


def cmd_cubic(f: HomPoly, names, args, report: AnalysisReport):
    if f.nvars != 3 or f.degree != 3:
        raise UnsupportedInput("cubic needs a ternary cubic")
    if not _require_smooth(f, report):
        return
    with _timed(report, "corollary"):
        rec = corollary_check(f)
    report.body["cubic"] = {"st": rec.st, "st_dim": rec.st_dim, "j_is_zero": rec.j_zero,
                            "invariant_value": scalar(rec.S_value), "agree": rec.agree}
    if not rec.agree:
        report.status = "internal_error"
        report.message = "ST verdict and j-invariant disagree"


COMMANDS = {
    "analyze": cmd_analyze,
    "st": cmd_st,
    "jacobi": cmd_jacobi,
    "hilbert": cmd_hilbert,
    "jump": cmd_jump,
    "reconstruct": cmd_reconstruct,
    "cubic": cmd_cubic,
}


# -- driver ------------------------------------------------------------------

def _read_text(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logtorelli",
        description="Sebastiani-Thom and Torelli analysis of smooth projective hypersurfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help="homogeneous polynomial, or '-' for stdin")
    common.add_argument("--vars", default=None,
                        help="comma-separated variable names (default: prefix of x,y,z,w)")
    common.add_argument("--field", default="q", help="'q' or 'fp:<prime>' (default q)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--attempts", type=int, default=32,
                        help="randomized candidates for the split search (default 32)")
    common.add_argument("--dmax", type=int, default=4)
    common.add_argument("--recursive", action="store_true",
                        help="split the parts again until no block splits")
    common.add_argument("--against", action="append", default=[],
                        help="degree k-1 divisor for 'jump' (repeatable)")
    common.add_argument("--timings", action="store_true",
                        help="include per-stage timings in json output")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def render_text(report: AnalysisReport) -> str:
    lines = [f"input:  {report.poly}   vars={','.join(report.variables)}  field={report.field}",
             f"status: {report.status}"]

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v) if isinstance(v, dict) else walk(f"{prefix}{k}", v)
        else:
            lines.append(f"{prefix.rstrip('.')}: {obj}")

    walk("", report.body)
    if report.message:
        lines.append(report.message)
    if report.timings:
        lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in report.timings.items()))
    return "\n".join(lines)


def run(argv=None) -> tuple[int, str]:
    """Run the CLI and return ``(exit code, output text)``."""
    args = build_parser().parse_args(argv)
    names = [v.strip() for v in args.vars.split(",")] if args.vars else None
    text = _read_text(args.poly).strip()
    try:
        fld = parse_field(args.field)
        f = parse_poly(text, names, fld)
    except UnsupportedInput as exc:
        report = AnalysisReport(args.command, text, names or [], args.field,
                                status="unsupported", message=str(exc))
        return _finish(report, args)
    except (PolyParseError, ValueError) as exc:
        report = AnalysisReport(args.command, text, names or [], args.field,
                                status="parse_error", message=str(exc))
        return _finish(report, args)
    names = names or default_var_names(f.nvars)
    report = AnalysisReport(args.command, format_poly(f, names), names, str(fld))
    try:
        COMMANDS[args.command](f, names, args, report)
    except PolyParseError as exc:
        report.status, report.message = "parse_error", str(exc)
    except NotSmoothError as exc:
        report.status, report.message = "unsupported", str(exc)
    except UnsupportedInput as exc:
        report.status, report.message = "unsupported", str(exc)
    except InternalConsistencyError as exc:
        report.status, report.message = "internal_error", str(exc)
    return _finish(report, args)


def _finish(report: AnalysisReport, args) -> tuple[int, str]:
    if args.format == "json":
        out = json.dumps(report.to_dict(with_timings=args.timings), indent=2)
    else:
        out = render_text(report)
    return exit_code(report.status), out


def main(argv=None) -> int:
    code, out = run(argv)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
