"""Batch command line interface.

JSON in, JSON out.  One input file describes the objects a command needs
(presentation, representation, invariant polynomial, family, cocycles); the
command writes a report with every tolerance it used echoed back, plus a
timestamp.  Reports are rendered with sorted keys so identical seeds and
inputs reproduce byte-identical files apart from the timestamp line.

Exit codes: 0 for PASS/success, 1 for a computational failure (a suite that
ran but failed its bound, or a solver that did not converge), 2 for invalid
input.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import sys

import numpy as np

from .charts import Chart, eta_coefficients, fd_exterior_derivative, free_group_demo
from .cohomology import cocycle_space, fundamental_two_cycle
from .errors import CharformsError, InvalidInput, NoConvergence, RankInstability
from .families import family_from_json, family_pullback
from .forms import (
    conjugation_invariance,
    contraction_suite,
    eta,
    gram_matrix,
    make_context,
    random_cocycle,
)
from .invariants import check_invariance, polynomial_from_json, trace_form
from .matgroup import (
    GroupSpec,
    Representation,
    TangentVector,
    evaluate_word,
    matrix_exp,
    representation_from_json,
)
from .numeric import Tolerances
from .words import Presentation

__all__ = ["main"]


def _tolerances(args) -> Tolerances:
    return Tolerances(rank_rel=args.tol_rank, newton_tol=args.tol_newton,
                      fd_step=args.fd_step)


def _load_input(path: str) -> dict:
    if path is None:
        raise InvalidInput("this command requires --input")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read input file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"input is not valid JSON: {exc}") from exc


def _presentation(data: dict) -> Presentation:
    if "presentation" not in data:
        raise InvalidInput("input needs a 'presentation' object")
    return Presentation.from_json(data["presentation"])


def _representation(data: dict, tol: Tolerances) -> Representation:
    if "representation" not in data:
        raise InvalidInput("input needs a 'representation' object")
    pres = _presentation(data)
    return representation_from_json(data["representation"], pres, tol=tol)


def _phi(data: dict):
    if "phi" in data:
        return polynomial_from_json(data["phi"])
    return trace_form()


def _rng(args):
    if args.seed is None:
        raise InvalidInput("--seed is mandatory for randomized commands")
    return np.random.default_rng(args.seed)


def _json_clean(obj):
    """Recursively render complex scalars as [re, im] and arrays as lists."""
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _json_clean(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    return obj


def _write_report(args, tol: Tolerances, report: dict) -> None:
    report = dict(report)
    report["tolerances"] = {"rank_rel": tol.rank_rel,
                            "newton_tol": tol.newton_tol,
                            "fd_step": tol.fd_step}
    report["timestamp"] = datetime.datetime.now(
        datetime.timezone.utc).isoformat()
    text = json.dumps(_json_clean(report), sort_keys=True, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    report: dict = {"command": "validate"}
    rho = _representation(data, tol)
    residuals = {}
    n = rho.group.n
    for i, r in enumerate(rho.presentation.relators):
        residuals[f"relator_{i}"] = float(
            np.linalg.norm(evaluate_word(rho, r) - np.eye(n)))
    report["relator_residuals"] = residuals
    report["group"] = {"kind": rho.group.kind, "n": rho.group.n}
    report["generators"] = list(rho.presentation.generator_names)
    if "family" in data:
        fam = family_from_json(data["family"], rho.presentation, rho.group)
        report["family_residual"] = fam.validate()
    report["pass"] = True
    return 0, report


def cmd_cohomology(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    space = cocycle_space(rho, tol)
    report = space.report()
    report["command"] = "cohomology"
    if len(rho.presentation.relators) == 1:
        report["dim_h2"] = space.h2_dim()
    report["pass"] = True
    return 0, report


def cmd_goldman(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    ctx = make_context(rho, _phi(data))
    space = cocycle_space(rho, tol)
    g, rank = gram_matrix(ctx, space.basis_h1, tol)
    norm = np.linalg.norm(g)
    skew = float(np.linalg.norm(g + g.T) / norm) if norm > 0 else 0.0
    report = {
        "command": "goldman",
        "dims": list(space.dims),
        "gram": g,
        "gram_rank": rank,
        "skewness": skew,
        "skewness_tol": 1e-10,
        "pass": bool(skew <= 1e-10),
    }
    return (0 if report["pass"] else 1), report


def cmd_eta(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    ctx = make_context(rho, _phi(data))
    n = ctx.degree
    values = []
    if "cocycles" in data:
        sigmas = []
        for entry in data["cocycles"]:
            rows = []
            for name in rho.presentation.generator_names:
                if name not in entry:
                    raise InvalidInput(f"cocycle missing generator {name!r}")
                rows.append([complex(re, im) for re, im in entry[name]])
            sigmas.append(TangentVector.of(np.array(rows)))
        if len(sigmas) != n:
            raise InvalidInput(f"need {n} cocycles for a degree-{n} form")
        values.append(eta(ctx, *sigmas))
    else:
        rng = _rng(args)
        space = cocycle_space(rho, tol)
        for _ in range(args.trials):
            sigmas = [random_cocycle(space, rng) for _ in range(n)]
            values.append(eta(ctx, *sigmas))
    report = {"command": "eta", "degree": n, "values": values, "pass": True}
    return 0, report


def cmd_suite_basic(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    ctx = make_context(rho, _phi(data))
    report = contraction_suite(ctx, args.trials, _rng(args), tol)
    report["command"] = "suite-basic"
    report["bound"] = 1e-9
    return (0 if report["pass"] else 1), report


def cmd_suite_invariance(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    phi = _phi(data)
    ctx = make_context(rho, phi)
    rng = _rng(args)
    worst = 0.0
    for _ in range(args.trials):
        x = rng.standard_normal(rho.dim_g) + 1j * rng.standard_normal(rho.dim_g)
        g = matrix_exp(rho.basis.matrix_from_coords(
            x / max(np.linalg.norm(x), 1.0)))
        worst = max(worst, conjugation_invariance(ctx, g, 3, rng, tol))
    phi_dev = check_invariance(phi, rho.basis, args.trials, rng)
    report = {
        "command": "suite-invariance",
        "check": "conjugation-invariance",
        "max_dev": worst,
        "phi_invariance_dev": phi_dev,
        "bound": 1e-9,
        "trials": args.trials,
        "pass": bool(worst <= 1e-9 and phi_dev <= 1e-9),
    }
    return (0 if report["pass"] else 1), report


def cmd_closedness(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    rho = _representation(data, tol)
    phi = _phi(data)
    space = cocycle_space(rho, tol)
    if len(space.basis_h1) < 3:
        raise InvalidInput("closedness needs dim H^1 >= 3 for a 3-dim chart")
    chart = Chart(rho, space.basis_h1[:3], tol)
    cycle = fundamental_two_cycle(rho.presentation).chain
    coeffs = eta_coefficients(chart, phi, cycle)
    fd = fd_exterior_derivative(chart.dim, coeffs, args.fd_chart_step)
    passed = fd["max_d"] <= 1e-5 * fd["scale"]
    report = {
        "command": "closedness",
        "check": "fd-exterior-derivative",
        "max_d": fd["max_d"],
        "scale": fd["scale"],
        "h": fd["h"],
        "bound": 1e-5,
        "pass": bool(passed),
    }
    return (0 if passed else 1), report


def cmd_family(args, tol: Tolerances) -> tuple:
    data = _load_input(args.input)
    pres = _presentation(data)
    if "group" not in data:
        raise InvalidInput("input needs a 'group' object for family mode")
    group = GroupSpec(data["group"]["kind"], int(data["group"]["n"]))
    if "family" not in data:
        raise InvalidInput("input needs a 'family' object")
    fam = family_from_json(data["family"], pres, group)
    fam.validate()
    report = family_pullback(fam, _phi(data), grid=args.grid,
                             h=args.fd_step, tol=tol)
    report["command"] = "family"
    if args.output and args.output.endswith(".json"):
        csv_path = args.output[:-5] + ".csv"
    else:
        csv_path = (args.output or "family") + ".csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        pairs = sorted({key for smp in report["samples"]
                        for key in smp["coefficients"]})
        writer.writerow([f"re_{p}" for p in fam.params]
                        + [f"im_{p}" for p in fam.params]
                        + [f"re_w_{k}" for k in pairs]
                        + [f"im_w_{k}" for k in pairs])
        for smp in report["samples"]:
            row = [z.real for z in smp["s"]] + [z.imag for z in smp["s"]]
            row += [smp["coefficients"][k].real for k in pairs]
            row += [smp["coefficients"][k].imag for k in pairs]
            writer.writerow(row)
    report["csv"] = csv_path
    return (0 if report["pass"] else 1), report


def cmd_demo_free_group(args, tol: Tolerances) -> tuple:
    group = GroupSpec("SL", 2)
    report = free_group_demo(2, group, rng=_rng(args), tol=tol)
    report["command"] = "demo-free-group"
    report["pass"] = bool(report["nonclosed"]
                          and report["cycle_pairing"] <= 1e-8)
    return (0 if report["pass"] else 1), report


_COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "goldman": cmd_goldman,
    "eta": cmd_eta,
    "suite-basic": cmd_suite_basic,
    "suite-invariance": cmd_suite_invariance,
    "closedness": cmd_closedness,
    "family": cmd_family,
    "demo-free-group": cmd_demo_free_group,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charforms",
        description="Twisted cohomology and characteristic forms on "
                    "representation varieties.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--input", help="input JSON file")
    parser.add_argument("--output", help="report JSON file (default stdout)")
    parser.add_argument("--seed", type=int, default=None,
                        help="rng seed; mandatory for randomized commands")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--grid", type=int, default=3)
    parser.add_argument("--tol-rank", type=float, default=1e-10)
    parser.add_argument("--tol-newton", type=float, default=1e-12)
    parser.add_argument("--fd-step", type=float, default=1e-4)
    parser.add_argument("--fd-chart-step", type=float, default=3e-2,
                        help="outer step for chart closedness differencing")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    tol = _tolerances(args)
    try:
        code, report = _COMMANDS[args.command](args, tol)
    except InvalidInput as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)},
                         sort_keys=True))
        return 2
    except (NoConvergence, RankInstability) as exc:
        _write_report(args, tol, {"command": args.command, "pass": False,
                                  "error": type(exc).__name__,
                                  "detail": str(exc)})
        return 1
    except CharformsError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)},
                         sort_keys=True))
        return 2
    _write_report(args, tol, report)
    return code


if __name__ == "__main__":
    sys.exit(main())
