"""Command-line front end.

Deterministic: the only randomness flows through a single generator seeded by
--seed (falling back to the PARAHARM_SEED environment variable, then 0), so a
fixed command line produces byte-identical output on one platform.  JSON goes
to stdout with sorted keys; tables are CSV.  Exit codes: 0 success, 2 usage
or domain error, 3 numerical-check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import algebra
from .algebra import AlgebraTag
from .errors import DomainError, OrbitError, ParaharmError, QuadratureError, UnsupportedDescriptorError
from .heisenberg import NGroupSpec, n_from_coords
from .orbits import (
    CentralParam,
    CharParam,
    N0Char,
    classify_central_orbit,
    classify_char_orbit,
    classify_orbit_p0,
    dual_central_act,
    dual_char_act,
    orbit_representative,
    p0_dual_act,
    p0_transitivity_witness,
    random_central_stabilizer_element,
    random_char_stabilizer_element,
    stabilizer_fixed_point,
    stabilizer_membership,
    transitivity_witness,
)
from .parabolic import P3x3Chart, PMatrixElement, random_ma_element
from .reps import (
    RegularCoefficient,
    char_eval,
    decay_radius,
    gaussian_coefficient,
)
from .selftest import CHECKS, run_selftest
from .verdicts import plancherel_density, verdict


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _parse_floats(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise DomainError(f"cannot parse {text!r} as a comma-separated float list")


def _parse_spec(args) -> NGroupSpec:
    missing = [name for name, val in (("--algebra", args.algebra), ("--n", args.n)) if val is None]
    if missing:
        raise DomainError(f"this family needs {' and '.join(missing)}")
    return NGroupSpec(AlgebraTag.from_letter(args.algebra), args.n)


def _char_param(spec: NGroupSpec, coeffs) -> CharParam:
    d, k = spec.tag.dim, spec.w_len
    if len(coeffs) != d * k:
        raise DomainError(f"expected {d * k} coefficients for a character parameter")
    entries = tuple(
        algebra.AlgebraElement(spec.tag, tuple(coeffs[i * d : (i + 1) * d])) for i in range(k)
    )
    return CharParam(spec, algebra.FVector(spec.tag, entries))


def _central_param(spec: NGroupSpec, coeffs) -> CentralParam:
    d = spec.tag.dim
    if len(coeffs) == d - 1:
        coeffs = [0.0] + list(coeffs)
    if len(coeffs) != d:
        raise DomainError(f"expected {d - 1} or {d} coefficients for a central parameter")
    return CentralParam(spec, algebra.AlgebraElement(spec.tag, tuple(coeffs)))


def _element_json(x) -> list:
    return [float(c) for c in x.coeffs]


def _vector_json(v) -> list:
    return [_element_json(e) for e in v.entries]


def _ma_json(g) -> dict:
    return {
        "alpha": g.alpha,
        "beta": _element_json(g.beta),
        "u": [[_element_json(e) for e in row] for row in g.u],
    }


def _dual_point_json(p):
    if isinstance(p, N0Char):
        return [p.s, p.t]
    if isinstance(p, CharParam):
        return _vector_json(p.v)
    return _element_json(p.m)


# ---------------------------------------------------------------------------
# Subcommands.

def _cmd_orbits(args) -> int:
    if args.family == "P3x3":
        s, t = _parse_floats(args.point)
        nu = N0Char(s, t)
        orbit = classify_orbit_p0(nu)
        rep = orbit_representative(orbit)
        _emit_json({"input": [s, t], "orbit": orbit.index, "representative": [rep.s, rep.t]})
        return 0
    spec = _parse_spec(args)
    if args.family == "char":
        p = _char_param(spec, _parse_floats(args.point))
        orbit = classify_char_orbit(p)
    elif args.family == "central":
        p = _central_param(spec, _parse_floats(args.point))
        orbit = classify_central_orbit(p)
    else:
        raise DomainError(f"unknown orbit family {args.family!r}")
    record = {"input": _dual_point_json(p), "orbit": orbit.index, "family": orbit.family}
    try:
        record["representative"] = _dual_point_json(orbit_representative(orbit))
    except DomainError:
        record["representative"] = None
    _emit_json(record)
    return 0


def _cmd_stabilizer(args, rng) -> int:
    if args.family == "P3x3":
        s, t = _parse_floats(args.point)
        nu = N0Char(s, t)
        record = {
            "point": [s, t],
            "stabilizer": "P0" if (s == 0 and t == 0) else ("P1" if s == 0 else "trivial"),
        }
        if args.lam is not None:
            g = PMatrixElement(args.lam, args.a or 0.0, 0.0, 0.0)
            record["element"] = {"lam": args.lam, "a": args.a or 0.0}
            record["member"] = stabilizer_membership(g, nu)
        _emit_json(record)
        return 0
    spec = _parse_spec(args)
    if args.family == "char":
        point = _char_param(spec, _parse_floats(args.point)) if args.point else CharParam(
            spec, algebra.standard_basis_vector(spec.tag, spec.w_len, 0)
        )
        condition = "alpha = 1 and the compact part fixes v"
        sampler = random_char_stabilizer_element
    elif args.family == "central":
        point = _central_param(spec, _parse_floats(args.point)) if args.point else CentralParam(
            spec, algebra.basis_unit(spec.tag, 1)
        )
        condition = "alpha = 1 and beta commutes with m"
        sampler = random_central_stabilizer_element
    else:
        raise DomainError(f"unknown stabilizer family {args.family!r}")
    agree = members = 0
    for i in range(args.samples):
        g = sampler(point, rng) if i % 2 == 0 else random_ma_element(spec, rng)
        alg = stabilizer_membership(g, point)
        agree += alg == stabilizer_fixed_point(g, point)
        members += alg
    _emit_json(
        {
            "point": _dual_point_json(point),
            "condition": condition,
            "samples": args.samples,
            "members": members,
            "algebraic_vs_fixed_point_agreement": agree,
        }
    )
    return 0 if agree == args.samples else 3


def _cmd_witness(args) -> int:
    if args.family == "P3x3":
        s, t = _parse_floats(args.target)
        nu = N0Char(s, t)
        wit = p0_transitivity_witness(nu)
        orbit = classify_orbit_p0(nu)
        rep = orbit_representative(orbit)
        moved = p0_dual_act(wit, rep)
        residual = max(abs(moved.s - nu.s), abs(moved.t - nu.t))
        _emit_json(
            {
                "input": [s, t],
                "orbit": orbit.index,
                "representative": [rep.s, rep.t],
                "witness": {"lam": wit.lam, "a": wit.a},
                "residual": residual,
            }
        )
        return 0 if residual < 1e-10 else 3
    spec = _parse_spec(args)
    if args.family == "char":
        target = _char_param(spec, _parse_floats(args.target))
        orbit = classify_char_orbit(target)
        wit = transitivity_witness(spec, target)
        moved = dual_char_act(wit, orbit_representative(orbit))
        residual = max(
            abs(float(a - b))
            for e1, e2 in zip(moved.v.entries, target.v.entries)
            for a, b in zip(e1.coeffs, e2.coeffs)
        )
    elif args.family == "central":
        target = _central_param(spec, _parse_floats(args.target))
        orbit = classify_central_orbit(target)
        wit = transitivity_witness(spec, target)
        moved = dual_central_act(wit, orbit_representative(orbit))
        residual = max(abs(float(a - b)) for a, b in zip(moved.m.coeffs, target.m.coeffs))
    else:
        raise DomainError(f"unknown witness family {args.family!r}")
    _emit_json(
        {
            "input": _dual_point_json(target),
            "orbit": orbit.index,
            "representative": _dual_point_json(orbit_representative(orbit)),
            "witness": _ma_json(wit),
            "residual": residual,
        }
    )
    return 0 if residual < 1e-10 else 3


def _gaussian_vector(x):
    return np.exp(-0.5 * np.sum(np.atleast_2d(x) ** 2, axis=1))


def _cmd_coefficient(args, rng) -> int:
    writer = sys.stdout
    if args.rep == "regular":
        if args.group != "P3x3":
            raise DomainError("regular coefficients are exposed on the P3x3 chart")
        chart = P3x3Chart(log_scale=True)
        reg = RegularCoefficient(
            chart, _gaussian_vector, _gaussian_vector, [(-5.0, 5.0)] * 4, nodes=20
        )
        writer.write("l,a,b,c,re,im\n")
        axis = np.linspace(-args.extent, args.extent, args.grid)
        for l in axis:
            for a in axis:
                value = reg(np.array([l, a, 0.0, 0.0]))
                writer.write(
                    f"{float(l)!r},{float(a)!r},0.0,0.0,{float(value.real)!r},{float(value.imag)!r}\n"
                )
        return 0
    spec = _parse_spec(args)
    chartn = None
    from .parabolic import NChart

    chartn = NChart(spec)
    axis = np.linspace(-args.extent, args.extent, args.grid)
    if args.rep == "char":
        if args.v is None:
            raise DomainError("--rep char needs --v")
        v = _char_param(spec, _parse_floats(args.v))
        evaluate = lambda x: char_eval(v, x)
    elif args.rep == "gaussian":
        m = _central_param(spec, [args.mu])
        evaluate = lambda x: gaussian_coefficient(m, x)
    else:
        raise DomainError(f"unknown rep {args.rep!r}")
    writer.write(",".join(f"c{k}" for k in range(chartn.dim)) + ",re,im\n")
    coords = np.zeros(chartn.dim)
    for c0 in axis:
        for c1 in axis:
            coords[:] = 0.0
            coords[0] = c0
            coords[-1] = c1
            value = evaluate(chartn.to_element(coords))
            cols = ",".join(repr(float(c)) for c in coords)
            writer.write(f"{cols},{value.real!r},{value.imag!r}\n")
    return 0


def _cmd_decay(args, rng) -> int:
    chart = P3x3Chart(log_scale=True)
    sigma = args.sigma
    vec = lambda x: np.exp(-np.sum(np.atleast_2d(x) ** 2, axis=1) / (2.0 * sigma**2))
    reg = RegularCoefficient(chart, vec, vec, [(-4.0, 4.0)] * 4, nodes=24)
    try:
        report = decay_radius(
            lambda pts: np.array([abs(reg(p)) for p in pts]),
            dim=4,
            epsilon=args.epsilon,
            rng=rng,
            r_start=2.0,
            samples_per_shell=args.samples,
        )
    except QuadratureError as exc:
        sys.stderr.write(f"decay sweep failed: {exc}\n")
        return 3
    report["group"] = "P3x3"
    report["sigma"] = sigma
    _emit_json(report)
    return 0


def _cmd_plancherel(args) -> int:
    spec = NGroupSpec(AlgebraTag.COMPLEX, args.n)
    if args.family not in ("SU", "N"):
        raise DomainError("density tables are exposed for the complex family (SU / its N)")
    sys.stdout.write("m,density\n")
    for k in range(1, args.steps + 1):
        mu = args.upper * k / args.steps
        dens = plancherel_density(spec, algebra.element(AlgebraTag.COMPLEX, (0.0, mu)))
        sys.stdout.write(f"{mu!r},{dens!r}\n")
    return 0


def _cmd_verdict(args) -> int:
    v = verdict(args.family, args.subgroup, args.n)
    _emit_json(
        {
            "family": v.family,
            "subgroup": v.subgroup,
            "n": v.n,
            "answer": v.answer,
            "reasons": list(v.reasons),
        }
    )
    return 0


def _cmd_selftest(args, seed: int) -> int:
    names = args.only.split(",") if args.only else None
    results = run_selftest(seed=seed, names=names)
    if names:
        unknown = set(names) - {name for name, _ in CHECKS}
        if unknown:
            sys.stderr.write(f"unknown check names: {sorted(unknown)}\n")
            return 2
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{status} {r.name} ({r.seconds:.2f}s): {r.detail}\n")
        failures += not r.passed
    sys.stdout.write(f"{len(results) - failures}/{len(results)} checks passed\n")
    return 0 if failures == 0 else 3


# ---------------------------------------------------------------------------
# Parser.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paraharm",
        description="Dual orbits, representation coefficients, Plancherel data, "
        "and the Fourier-algebra decision table for rank-one parabolic groups.",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed (fallback: PARAHARM_SEED, then 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="classify a dual point into its orbit")
    p.add_argument("--family", required=True, choices=["P3x3", "char", "central"])
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    p.add_argument("--algebra", choices=["R", "C", "H", "O"])
    p.add_argument("--n", type=int)

    p = sub.add_parser("stabilizer", help="stabilizer conditions and membership")
    p.add_argument("--family", required=True, choices=["P3x3", "char", "central"])
    p.add_argument("--point", help="dual point coordinates (defaults to the representative)")
    p.add_argument("--algebra", choices=["R", "C", "H", "O"])
    p.add_argument("--n", type=int)
    p.add_argument("--lam", type=float, help="P3x3 only: element diagonal")
    p.add_argument("--a", type=float, help="P3x3 only: element shear")
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("witness", help="construct a transitivity witness onto a target")
    p.add_argument("--family", required=True, choices=["P3x3", "char", "central"])
    p.add_argument("--target", required=True, help="coordinates; use --target=-3,7 for leading minus")
    p.add_argument("--algebra", choices=["R", "C", "H", "O"])
    p.add_argument("--n", type=int)

    p = sub.add_parser("coefficient", help="matrix-coefficient tables (CSV)")
    p.add_argument("--group", default="P3x3", choices=["P3x3", "N"])
    p.add_argument("--rep", required=True, choices=["regular", "char", "gaussian"])
    p.add_argument("--algebra", choices=["R", "C", "H", "O"])
    p.add_argument("--n", type=int)
    p.add_argument("--v", help="character parameter coefficients")
    p.add_argument("--mu", type=float, default=1.0, help="central parameter i*mu")
    p.add_argument("--grid", type=int, default=7)
    p.add_argument("--extent", type=float, default=2.0)

    p = sub.add_parser("decay", help="decay-radius report for the regular coefficient (JSON)")
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=24)

    p = sub.add_parser("plancherel", help="density table over the central parameter (CSV)")
    p.add_argument("--family", default="SU")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--upper", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=20)

    p = sub.add_parser("verdict", help="the decision-table answer for (family, subgroup)")
    p.add_argument("--family", required=True, choices=["SO0", "SU", "Sp", "F4", "P3x3"])
    p.add_argument("--subgroup", required=True, choices=["N", "MN", "AN", "P"])
    p.add_argument("--n", type=int)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated check names")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("PARAHARM_SEED", "0"))
    rng = np.random.default_rng(seed)
    try:
        if args.command == "orbits":
            return _cmd_orbits(args)
        if args.command == "stabilizer":
            return _cmd_stabilizer(args, rng)
        if args.command == "witness":
            return _cmd_witness(args)
        if args.command == "coefficient":
            return _cmd_coefficient(args, rng)
        if args.command == "decay":
            return _cmd_decay(args, rng)
        if args.command == "plancherel":
            return _cmd_plancherel(args)
        if args.command == "verdict":
            return _cmd_verdict(args)
        if args.command == "selftest":
            return _cmd_selftest(args, seed)
        parser.error(f"unknown command {args.command!r}")
    except (DomainError, OrbitError, UnsupportedDescriptorError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except QuadratureError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
