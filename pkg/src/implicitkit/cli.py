"""Command line: implicitize, resultant and verify jobs read from a JSON file.

The report goes to stdout as JSON; a short summary goes to stderr unless
--quiet is given.  Exit codes: 0 success, 1 input error, 2 hypothesis
violation, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field as dc_field

from . import errors
from .arith import field_from_spec
from .basepoints import (BasePoint, analyze_base_points, extraneous_and_split,
                         fiber_degree_check)
from .linalg import MinorMode, PolyMatrix
from .mubasis import (homogenize_matrix, moving_forms, mu_basis, param_from_matrix,
                      prop34_analyze, resultant_of_basis)
from .parametrization import Parametrization
from .poly import Ring
from .satur import saturation_indeg
from .strands import macrae_generator, presentation_matrix

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class JobSpec:
    field: object
    n: int
    f: list
    nu: int | None = None
    seed: int = 42
    extension_bound: int = 2
    base_points: list = dc_field(default_factory=list)
    affine_matrix: list | None = None
    mode: str = MinorMode.RANDOMIZED
    candidate: str | None = None
    fiber_check: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "JobSpec":
        if not isinstance(data, dict):
            raise errors.InputError("the job file must hold a JSON object")
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise errors.InputError(f"unknown job keys {sorted(unknown)}")
        for key in ("field", "n"):
            if key not in data:
                raise errors.InputError(f"missing job key {key!r}")
        job = cls(**{k: data[k] for k in data})
        for key in ("n", "nu", "seed", "extension_bound"):
            value = getattr(job, key)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise errors.InputError(f"{key} must be an integer")
        if job.base_points is not None and not (
                isinstance(job.base_points, list)
                and all(isinstance(pt, list) for pt in job.base_points)):
            raise errors.InputError("base_points must be a list of coordinate lists")
        if job.n not in (2, 3):
            raise errors.InputError("n must be 2 or 3")
        if not isinstance(job.f, list) or not all(isinstance(t, str) for t in job.f):
            if job.affine_matrix is None or job.f:
                raise errors.InputError("f must be a list of polynomial strings")
        if job.mode not in (MinorMode.RANDOMIZED, MinorMode.EXHAUSTIVE):
            raise errors.InputError(f"unknown mode {job.mode!r}")
        return job

    def parametrization(self) -> Parametrization:
        if not self.f and self.affine_matrix is not None and self.n == 3:
            ring = Ring(3, field_from_spec(self.field))
            Mh, _ = homogenize_matrix(PolyMatrix.parse(ring, self.affine_matrix))
            return param_from_matrix(Mh)
        return Parametrization.parse(self.field, self.n, self.f)


def _error_code(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (errors.InputError, json.JSONDecodeError, OSError)):
        return EXIT_INPUT
    if isinstance(exc, errors.HypothesisViolation):
        return EXIT_HYPOTHESIS
    return EXIT_INTERNAL


def _point_report(pt: BasePoint) -> dict:
    out = {
        "coords": pt.coords_text(),
        "field": getattr(pt.field, "name", "QQ"),
        "orbit_size": pt.orbit_size,
        "d_x": pt.d_x,
        "e_x": pt.e_x,
        "lci": pt.lci,
        "L_x": str(pt.L_x) if pt.L_x is not None else None,
    }
    if pt.field.is_extension:
        out["extension_modulus"] = pt.field.generator_text
    if pt.user_supplied:
        out["user_supplied"] = True
    return out


def _check(value) -> str:
    if value is None:
        return "skipped"
    return "pass" if value else "fail"


# ---------------------------------------------------------------------------
# commands

def cmd_implicitize(job: JobSpec) -> dict:
    param = job.parametrization()
    n, d = param.n, param.d
    sat = saturation_indeg(param)
    nu = sat.nu if job.nu is None else job.nu
    pres = presentation_matrix(param, nu)
    macrae = macrae_generator(param, nu, mode=job.mode, seed=job.seed)
    report = {
        "command": "implicitize",
        "field": getattr(param.field, "name", "QQ"),
        "n": n, "d": d,
        "eta": sat.eta, "indeg_sat": sat.indeg_sat, "nu": nu,
        "matrix_shape": list(pres.shape),
        "macrae": str(macrae.normalize()) if macrae else "0",
        "base_points": [], "G": None, "H": None, "deg_lambda": None,
        "checks": {}, "warnings": [],
    }
    if not macrae:
        if nu < sat.eta:
            report["warnings"].append(f"the strand in degree {nu} is not torsion (nu < eta)")
            return report
        # a point needing n+1 local generators is the usual cause; name it if found
        analyze_base_points(param, nu, job.extension_bound, job.base_points, job.seed)
        raise errors.NotTorsion(f"the strand in degree {nu} >= eta is not torsion")
    locus = analyze_base_points(param, max(nu, 0), job.extension_bound, job.base_points, job.seed)
    report["warnings"] += locus.warnings
    report["base_points"] = [_point_report(pt) for pt in locus.points]
    top = d ** (n - 1)
    complete = locus.sum_d == top - macrae.degree()
    report["base_points_complete"] = complete
    if not complete:
        report["warnings"].append(
            f"found base points of total degree {locus.sum_d}, the MacRae degree asks for "
            f"{top - macrae.degree()}; points over larger fields are missing")
    dec = extraneous_and_split(param, macrae, locus.points)
    report.update(G=str(dec.G), H=str(dec.H), deg_lambda=dec.deg_lambda)
    ring = param.ring
    checks = report["checks"]
    # fewer points than the degree asks for means an incomplete search, not a contradiction
    overfull = locus.sum_d > top - macrae.degree()
    checks["degree_sum_d"] = _check(
        None if nu < sat.eta or not (complete or overfull) else complete)
    checks["degree_sum_e"] = _check(
        dec.deg_lambda * dec.H.degree() == top - locus.sum_e if complete else None)
    checks["split_recombines"] = _check(
        ((dec.H ** dec.deg_lambda) * dec.G).normalize() == dec.macrae)
    checks["H_vanishes_on_image"] = _check(not param.substitute(dec.H))
    checks["G_nonzero_on_image"] = _check(
        bool(param.substitute(dec.G)) if dec.G != ring.one() else None)
    if job.fiber_check and param.field.is_finite and not param.field.is_extension:
        report["fiber_degree"] = fiber_degree_check(param, seed=job.seed)
    return report


def _param_for_matrix(job: JobSpec, Mh: PolyMatrix) -> Parametrization:
    if job.f:
        return job.parametrization()
    return param_from_matrix(Mh)


def cmd_resultant(job: JobSpec, prop34: bool = False) -> dict:
    report: dict = {"command": "resultant", "checks": {}, "warnings": []}
    if prop34 or job.affine_matrix is not None:
        if job.affine_matrix is None:
            raise errors.InputError("--prop34 needs an affine_matrix in the job")
        if job.n != 3:
            raise errors.InputError("the affine matrix path needs n = 3")
        ring = Ring(3, field_from_spec(job.field))
        Mh, degrees = homogenize_matrix(PolyMatrix.parse(ring, job.affine_matrix))
        param = _param_for_matrix(job, Mh)
        sat = saturation_indeg(param)
        locus = analyze_base_points(param, sat.nu, job.extension_bound, job.base_points,
                                    job.seed)
        rep = prop34_analyze(Mh, param, locus.points, seed=job.seed)
        res = rep.resultant
        report.update(
            field=getattr(ring.field, "name", "QQ"), n=3, d=param.d, path="prop34",
            homogenized_matrix=Mh.to_text(), d_degrees=list(degrees),
            cond_a=rep.cond_a, cond_b=rep.cond_b, factor_budget=rep.factor_budget,
            resultant=str(res), resultant_degree=res.degree() if res else None)
        report["checks"]["nonzero_iff_conditions"] = _check(rep.consistent)
        if res:
            report["checks"]["resultant_vanishes_on_image"] = _check(not param.substitute(res))
        return report
    param = job.parametrization()
    basis = mu_basis(param)
    forms = moving_forms(basis)
    res = resultant_of_basis(basis, seed=job.seed)
    res = res.normalize() if res else res
    mu = basis.mu
    expected = mu[0] + mu[1] if param.n == 2 else mu[0] * mu[1] + mu[0] * mu[2] + mu[1] * mu[2]
    report.update(
        field=getattr(param.field, "name", "QQ"), n=param.n, d=param.d, path="mu_basis",
        mu=list(mu), matrix=basis.M.to_text(), moving_forms=[str(L) for L in forms.L],
        resultant=str(res), resultant_degree=res.degree() if res else None)
    report["checks"]["resultant_degree"] = _check(bool(res) and res.degree() == expected)
    report["checks"]["resultant_vanishes_on_image"] = _check(not param.substitute(res))
    return report


def cmd_verify(job: JobSpec, candidate: str | None = None) -> dict:
    param = job.parametrization()
    text = candidate if candidate is not None else job.candidate
    if text is None:
        raise errors.InputError("no candidate polynomial given")
    g = param.ring.parse(text)
    if not g.in_t_only():
        raise errors.ParseError("the candidate must involve T variables only")
    vanishes = not param.substitute(g)
    return {"command": "verify", "candidate": str(g), "vanishes_on_image": vanishes}


# ---------------------------------------------------------------------------
# entry point

def _summary(report: dict) -> str:
    cmd = report.get("command")
    if "error" in report:
        err = report["error"]
        return f"error [{err['code']}]: {err['message']}"
    if cmd == "implicitize":
        lines = [f"eta = {report['eta']}, nu = {report['nu']}, "
                 f"presentation {report['matrix_shape'][0]}x{report['matrix_shape'][1]}",
                 f"H = {report['H']}", f"G = {report['G']}",
                 f"deg(lambda) = {report['deg_lambda']}, "
                 f"{len(report['base_points'])} base point class(es)"]
    elif cmd == "resultant":
        lines = [f"resultant (degree {report['resultant_degree']}) = {report['resultant']}"]
        if report.get("path") == "prop34":
            lines.append(f"cond_a = {report['cond_a']}, cond_b = {report['cond_b']}")
    else:
        lines = [f"vanishes on image: {report['vanishes_on_image']}"]
    bad = [k for k, v in report.get("checks", {}).items() if v == "fail"]
    if bad:
        lines.append("FAILED checks: " + ", ".join(bad))
    lines += [f"warning: {w}" for w in report.get("warnings", [])]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="implicitkit",
                                     description="Implicit equations of rational curves and surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("implicitize", "resultant", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="JSON job file ('-' for stdin)")
        p.add_argument("--nu", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--ext-bound", type=int, dest="extension_bound")
        p.add_argument("--mode", choices=[MinorMode.RANDOMIZED, MinorMode.EXHAUSTIVE])
        p.add_argument("--quiet", action="store_true")
        if name == "implicitize":
            p.add_argument("--fiber-check", action="store_true", dest="fiber_check")
        if name == "resultant":
            p.add_argument("--prop34", action="store_true")
        if name == "verify":
            p.add_argument("--candidate")
    return parser


def run(argv=None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                data = json.load(fh)
        job = JobSpec.from_dict(data)
        for key in ("nu", "seed", "extension_bound", "mode"):
            value = getattr(args, key)
            if value is not None:
                setattr(job, key, value)
        if getattr(args, "fiber_check", False):
            job.fiber_check = True
        job.field = field_from_spec(job.field)
        if args.command == "implicitize":
            report = cmd_implicitize(job)
        elif args.command == "resultant":
            report = cmd_resultant(job, prop34=args.prop34)
        else:
            report = cmd_verify(job, args.candidate)
        code = EXIT_INTERNAL if "fail" in report.get("checks", {}).values() else EXIT_OK
    except (errors.ImplicitError, json.JSONDecodeError, OSError, TypeError) as exc:
        if isinstance(exc, TypeError):
            exc = errors.InputError(str(exc))
        code = _exit_code(exc)
        report = {"command": args.command,
                  "error": {"code": _error_code(exc), "message": str(exc), "exit_code": code}}
    return code, report


def main(argv=None) -> int:
    args_quiet = "--quiet" in (argv if argv is not None else sys.argv[1:])
    code, report = run(argv)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if not args_quiet:
        print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
