"""Command-line front end.

Subcommands: validate, identity, spectrum, radical, bowtie, prop-check, fuzz.
Reports are JSON on standard output unless ``-o`` redirects them to a file.
Reports are byte-reproducible for fixed inputs and seed; wall-clock timings
are only included when explicitly requested with ``--timings``.

Exit status: 0 when everything agrees, 1 when some checker reports a
mismatch, 2 on invalid input (schema violation or failed axioms).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .algcore import find_identity, find_left_identities, is_commutative, validate
from .bimodule import algebraic_report, is_symmetric, validate_bimodule
from .bowtie import (
    check_commutativity_criterion,
    check_identity_criterion,
    check_left_identity_criterion,
    build_bowtie,
)
from .config import DEFAULT_TOL, Tolerances
from .duality import verify_bidual_isomorphism, verify_center_decomposition
from .errors import BalgError, GenerationError, SchemaError
from .fuzz import FAMILIES, Instance, instance_stream
from .io import load_action, load_algebra, save_algebra
from .spectrum import (
    characters,
    check_semisimplicity_criterion,
    jacobson_radical,
    verify_gelfand_decomposition,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2


def _default_seed() -> int:
    try:
        return int(os.environ.get("BALG_SEED", "0"))
    except ValueError:
        return 0


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOL
    if getattr(args, "tol", None) is not None:
        tol = tol.with_validation_tol(args.tol)
    return tol


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(command: str, seed: int | None = None, **payload) -> dict:
    head = {"tool": "balg", "version": __version__, "command": command}
    if seed is not None:
        head["seed"] = seed
    head.update(payload)
    return head


def run_battery(instance: Instance, *, seed: int, tol: Tolerances) -> tuple[dict, bool]:
    """Run every applicable checker on a built instance.

    Returns the per-check report dict and an overall agreement flag.  The
    semisimplicity criterion only runs when its hypotheses (commutative
    factors, symmetric action) hold; otherwise it is reported as skipped.
    """
    bow = instance.bowtie
    a, b, action = instance.algebra_a, instance.algebra_b, instance.action
    checks: dict[str, dict] = {}

    rep = validate(bow.carrier, tol)
    checks["bowtie_valid"] = rep.as_dict()
    ok = rep.passed

    for verdict in (
        check_commutativity_criterion(bow, tol),
        check_identity_criterion(bow, tol),
        check_left_identity_criterion(bow, tol),
    ):
        checks[verdict.name] = _sanitize(verdict.as_dict())
        ok = ok and verdict.agree

    gelf = verify_gelfand_decomposition(a, b, action, seed=seed, tol=tol)
    checks[gelf.name] = _sanitize(gelf.as_dict())
    ok = ok and gelf.equal

    if is_commutative(a, tol) and is_commutative(b, tol) and is_symmetric(action, tol):
        semi = check_semisimplicity_criterion(a, b, action, tol)
        checks[semi.name] = _sanitize(semi.as_dict())
        ok = ok and semi.agree
    else:
        checks["semisimplicity"] = {
            "name": "semisimplicity",
            "verdict": "skipped",
            "reason": "hypotheses not met (needs commutative factors and symmetric action)",
        }

    bidual = verify_bidual_isomorphism(a, b, action, tol=tol)
    checks["bidual_isomorphism"] = _sanitize(bidual.as_dict())
    ok = ok and bidual.agree

    center = verify_center_decomposition(a, b, action, tol=tol)
    checks["center_decomposition"] = _sanitize(center.as_dict())
    ok = ok and center.agree

    return checks, ok


def _sanitize(obj):
    """Make a report JSON-ready and deterministic."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return [float(obj.real), float(obj.imag)]
    return obj


def _load_triple(args, tol: Tolerances):
    a = load_algebra(args.algebra_a)
    b = load_algebra(args.algebra_b)
    action = load_action(args.action, a.dim, b.dim)
    failures = []
    for alg, name in ((a, "A"), (b, "B")):
        failures += [f"{name}:{f}" for f in validate(alg, tol).failed_names()]
    failures += list(validate_bimodule(a, b, action, tol).failed_names())
    failures += list(algebraic_report(a, b, action, tol).failed_names())
    if failures:
        raise SchemaError("input fails axioms: " + ", ".join(failures))
    return a, b, action


def _cmd_validate(args) -> int:
    tol = _tolerances(args)
    if args.files and len(args.files) == 1 and not args.action:
        alg = load_algebra(args.files[0])
        rep = validate(alg, tol)
        _emit(_envelope("validate", file=args.files[0], report=rep.as_dict()), args)
        return EXIT_OK if rep.passed else EXIT_MISMATCH
    if len(args.files) == 2 and args.action:
        a = load_algebra(args.files[0])
        b = load_algebra(args.files[1])
        action = load_action(args.action, a.dim, b.dim)
        reports = {
            "algebra_a": validate(a, tol).as_dict(),
            "algebra_b": validate(b, tol).as_dict(),
            "bimodule": validate_bimodule(a, b, action, tol).as_dict(),
            "algebraic": algebraic_report(a, b, action, tol).as_dict(),
        }
        passed = all(r["passed"] for r in reports.values())
        _emit(_envelope("validate", files=list(args.files) + [args.action], reports=reports), args)
        return EXIT_OK if passed else EXIT_MISMATCH
    raise SchemaError("validate needs one algebra file, or two algebra files with --action")


def _cmd_identity(args) -> int:
    tol = _tolerances(args)
    alg = load_algebra(args.file)
    ident = find_identity(alg, tol)
    lefts = find_left_identities(alg, tol)
    report = _envelope(
        "identity",
        file=args.file,
        identity=_sanitize(ident) if ident is not None else None,
        left_identities=None
        if lefts is None
        else {
            "point": _sanitize(lefts.point),
            "directions": _sanitize(lefts.directions),
            "dim": lefts.dim,
        },
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    tol = _tolerances(args)
    alg = load_algebra(args.file)
    rep = validate(alg, tol)
    if not rep.passed:
        raise SchemaError("algebra fails axioms: " + ", ".join(rep.failed_names()))
    gel = characters(alg, seed=args.seed, tol=tol)
    _emit(_envelope("spectrum", seed=args.seed, file=args.file, spectrum=gel.as_dict()), args)
    return EXIT_OK


def _cmd_radical(args) -> int:
    tol = _tolerances(args)
    alg = load_algebra(args.file)
    rep = validate(alg, tol)
    if not rep.passed:
        raise SchemaError("algebra fails axioms: " + ", ".join(rep.failed_names()))
    rad = jacobson_radical(alg, tol)
    _emit(
        _envelope(
            "radical",
            file=args.file,
            radical_dim=rad.dim,
            semisimple=rad.dim == 0,
            basis=_sanitize(rad.basis),
        ),
        args,
    )
    return EXIT_OK


def _cmd_bowtie(args) -> int:
    tol = _tolerances(args)
    a, b, action = _load_triple(args, tol)
    bow = build_bowtie(a, b, action, tol)
    text = save_algebra(bow.carrier, args.output)
    if not args.output:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_prop_check(args) -> int:
    tol = _tolerances(args)
    started = time.perf_counter()
    a, b, action = _load_triple(args, tol)
    bow = build_bowtie(a, b, action, tol)
    inst = Instance("custom", a, b, action, bow, args.seed)
    checks, ok = run_battery(inst, seed=args.seed, tol=tol)
    report = _envelope(
        "prop-check",
        seed=args.seed,
        inputs={"a": args.algebra_a, "b": args.algebra_b, "action": args.action},
        dims=[a.dim, b.dim],
        checks=checks,
        ok=ok,
    )
    if args.timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, args)
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_fuzz(args) -> int:
    tol = _tolerances(args)
    started = time.perf_counter()
    for name, value in (("dim-a", args.dim_a), ("dim-b", args.dim_b)):
        if value is not None and not 0 <= value <= 8:
            raise SchemaError(f"--{name} must be between 0 and 8")
    instances = []
    all_ok = True
    agree_count = 0
    for idx, item in instance_stream(
        args.family, args.count, args.seed, dim_a=args.dim_a, dim_b=args.dim_b, tol=tol
    ):
        if isinstance(item, GenerationError):
            instances.append({"index": idx, "generated": False, "error": str(item)})
            all_ok = False
            continue
        checks, ok = run_battery(item, seed=item.seed, tol=tol)
        instances.append(
            {
                "index": idx,
                "family": item.family,
                "dims": [item.algebra_a.dim, item.algebra_b.dim],
                "instance_seed": item.seed,
                "generated": True,
                "ok": ok,
                "checks": checks,
            }
        )
        agree_count += 1 if ok else 0
        all_ok = all_ok and ok
    report = _envelope(
        "fuzz",
        seed=args.seed,
        family=args.family,
        count=args.count,
        agree_count=agree_count,
        instances=instances,
        ok=all_ok,
    )
    if args.timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, args)
    return EXIT_OK if all_ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balg",
        description="workbench for bowtie products of finite-dimensional Banach algebras",
    )
    parser.add_argument("--version", action="version", version=f"balg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--tol", type=float, default=None, help="validation tolerance override")
        p.add_argument("-o", "--output", default=None, help="write the report to a file")
        if seed:
            p.add_argument(
                "--seed", type=int, default=_default_seed(), help="random seed (env BALG_SEED)"
            )

    p = sub.add_parser("validate", help="validate an algebra file, or a pair with an action")
    p.add_argument("files", nargs="+")
    p.add_argument("--action", default=None, help="action file for pair validation")
    common(p, seed=False)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("identity", help="identity and left identities of an algebra")
    p.add_argument("file")
    common(p, seed=False)
    p.set_defaults(func=_cmd_identity)

    p = sub.add_parser("spectrum", help="characters of an algebra")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("radical", help="Jacobson radical of an algebra")
    p.add_argument("file")
    common(p, seed=False)
    p.set_defaults(func=_cmd_radical)

    p = sub.add_parser("bowtie", help="assemble the product of two algebras along an action")
    p.add_argument("algebra_a")
    p.add_argument("algebra_b")
    p.add_argument("action")
    common(p, seed=False)
    p.set_defaults(func=_cmd_bowtie)

    p = sub.add_parser("prop-check", help="run every characterization checker on an instance")
    p.add_argument("algebra_a")
    p.add_argument("algebra_b")
    p.add_argument("action")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common(p)
    p.set_defaults(func=_cmd_prop_check)

    p = sub.add_parser("fuzz", help="generate random instances and check them")
    p.add_argument("--family", choices=FAMILIES + ("all",), default="all")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--dim-a", type=int, default=None)
    p.add_argument("--dim-b", type=int, default=None)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common(p)
    p.set_defaults(func=_cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except BalgError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
