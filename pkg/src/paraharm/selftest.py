"""The acceptance suite: ten named checks, each a deterministic function of a
seeded generator, shared by the command line (`paraharm selftest`) and the
pytest suite.  Every check records what it measured, so a failure names the
quantity and the tolerance it missed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import algebra
from .algebra import AlgebraTag
from .errors import OrbitError
from .heisenberg import NElement, NGroupSpec, n_multiply, random_n_element
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
    random_central_stabilizer_element,
    random_char_stabilizer_element,
    stabilizer_fixed_point,
    stabilizer_membership,
    transitivity_witness,
)
from .parabolic import (
    AxBChart,
    GroupDescriptor,
    MAElement,
    NChart,
    P3x3Chart,
    PMatrixElement,
    fmat_identity,
    ma_act_n,
    ma_inverse,
    modular_function,
    random_ma_element,
)
from .quadrature import left_invariance_residual, product_grid
from .reps import (
    InducedRep3x3,
    RegularCoefficient,
    central_exponent,
    char_coefficient,
    char_eval,
    decay_radius,
    eta_op,
    gaussian_coefficient,
    gaussian_coefficient_fn,
    gaussian_coefficient_modulus,
    gaussian_coefficient_quadrature,
    phase_space_distance,
    positive_definite_check,
)
from .verdicts import FAMILIES, SUBGROUPS, howe_moore_pair, plancherel_density, verdict


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name: str, t0: float, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, passed, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# 1. Five orbits of the plane dual, exactly and invariantly.

def check_five_orbit_classification(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    npts, nacts = 10_000, 100
    s = rng.uniform(-10.0, 10.0, npts)
    t = rng.uniform(-10.0, 10.0, npts)
    # Sample away from the orbit boundaries s = 0, t = 0.
    s = np.where(np.abs(s) < 0.05, np.sign(s) * 0.05 + s, s)
    t = np.where(np.abs(t) < 0.05, np.sign(t) * 0.05 + t, t)
    codes = np.where(s > 0, 1, np.where(s < 0, 2, 0))
    oracle = [classify_orbit_p0(N0Char(float(a), float(b))).index for a, b in zip(s[:200], t[:200])]
    sign_ok = all(o == f"O{c}" for o, c in zip(oracle, codes[:200]))
    lam = rng.uniform(0.2, 5.0, nacts)
    shear = rng.uniform(-3.0, 3.0, nacts)
    s2 = s[None, :] / lam[:, None]
    t2 = -shear[:, None] * s[None, :] + lam[:, None] * t[None, :]
    codes2 = np.where(s2 > 0, 1, np.where(s2 < 0, 2, 0))
    invariant = bool(np.all(codes2 == codes[None, :]))
    # Boundary orbits, deterministically.
    boundary_ok = True
    for nu, expect in [
        (N0Char(0.0, 2.0), "O3"),
        (N0Char(0.0, -7.0), "O4"),
        (N0Char(0.0, 0.0), "O5"),
    ]:
        boundary_ok &= classify_orbit_p0(nu).index == expect
        for lam_b, a_b in zip(rng.uniform(0.2, 5.0, 50), rng.uniform(-3, 3, 50)):
            moved = p0_dual_act(PMatrixElement(float(lam_b), float(a_b), 0.0, 0.0), nu)
            boundary_ok &= classify_orbit_p0(moved).index == expect
    elapsed = time.perf_counter() - t0
    passed = sign_ok and invariant and boundary_ok and elapsed < 5.0
    return _result(
        "five-orbit-classification",
        t0,
        passed,
        f"{npts} points x {nacts} actions, sign-exact={sign_ok}, "
        f"invariant={invariant}, boundary={boundary_ok}, runtime={elapsed:.2f}s (<5s)",
    )


# ---------------------------------------------------------------------------
# 2. Algebraic vs fixed-point stabilizer membership.

def _stabilizer_family_cases(rng: np.random.Generator):
    c, h, r = AlgebraTag.COMPLEX, AlgebraTag.QUATERNION, AlgebraTag.REAL
    cases = []
    for tag, n in [(r, 3), (c, 2), (h, 2), (h, 3)]:
        spec = NGroupSpec(tag, n)
        point = CharParam(spec, algebra.standard_basis_vector(tag, spec.w_len, 0))
        cases.append((f"char:{tag.letter}:{n}", spec, point, random_char_stabilizer_element))
    for tag in (c, h):
        spec = NGroupSpec(tag, 2)
        point = CentralParam(spec, algebra.basis_unit(tag, 1))
        cases.append((f"central:{tag.letter}:2", spec, point, random_central_stabilizer_element))
    return cases


def check_stabilizer_agreement(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    per_family = 1000
    disagreements = 0
    members_seen = 0
    # The 3x3 family at the half-axis representative: members are lam = 1.
    nu = N0Char(0.0, 1.0)
    for i in range(per_family):
        if i % 2 == 0:
            g = PMatrixElement(1.0, float(rng.normal(0, 2)), 0.0, 0.0)
        else:
            g = PMatrixElement(float(np.exp(rng.uniform(0.1, 1.5)) ** rng.choice([-1, 1])),
                               float(rng.normal(0, 2)), 0.0, 0.0)
        alg = stabilizer_membership(g, nu)
        fix = stabilizer_fixed_point(g, nu)
        disagreements += alg != fix
        members_seen += alg
    for label, spec, point, sampler in _stabilizer_family_cases(rng):
        for i in range(per_family):
            if i % 2 == 0:
                g = sampler(point, rng)
            else:
                g = random_ma_element(spec, rng)
            alg = stabilizer_membership(g, point)
            fix = stabilizer_fixed_point(g, point)
            disagreements += alg != fix
            members_seen += alg
    passed = disagreements == 0 and members_seen > 3000
    return _result(
        "stabilizer-agreement",
        t0,
        passed,
        f"7 families x {per_family} elements: {disagreements} disagreements, "
        f"{members_seen} members exercised",
    )


# ---------------------------------------------------------------------------
# 3. Duality consistency of the character dual action.

def check_duality_consistency(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    sup_err = 0.0
    combos = [(tag, n) for tag in (AlgebraTag.REAL, AlgebraTag.COMPLEX, AlgebraTag.QUATERNION)
              for n in (2, 3)]
    for tag, n in combos:
        spec = NGroupSpec(tag, n)
        for _ in range(1000):
            g = random_ma_element(spec, rng)
            v = CharParam(spec, algebra.random_fvector(tag, spec.w_len, rng))
            x = random_n_element(spec, rng)
            lhs = char_eval(dual_char_act(g, v), x)
            rhs = char_eval(v, ma_act_n(ma_inverse(g), x))
            sup_err = max(sup_err, abs(lhs - rhs))
    passed = sup_err < 1e-12
    return _result(
        "duality-consistency",
        t0,
        passed,
        f"sup error {sup_err:.2e} over 6 x 1000 triples (tol 1e-12)",
    )


# ---------------------------------------------------------------------------
# 4. Transitivity witnesses, including the sign-split refusal.

def check_transitivity_witnesses(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    h = AlgebraTag.QUATERNION
    for n in (2, 3):
        spec = NGroupSpec(h, n)
        for _ in range(1000):
            v = algebra.random_fvector(h, spec.w_len, rng)
            if algebra.vector_norm(v) < 1e-3:
                continue
            target = CharParam(spec, v)
            wit = transitivity_witness(spec, target)
            moved = dual_char_act(wit, orbit_representative(classify_char_orbit(target)))
            worst = max(
                worst,
                max(
                    abs(float(a - b))
                    for e1, e2 in zip(moved.v.entries, target.v.entries)
                    for a, b in zip(e1.coeffs, e2.coeffs)
                ),
            )
    c = AlgebraTag.COMPLEX
    spec_c = NGroupSpec(c, 2)
    for sign in (1.0, -1.0):
        for _ in range(1000):
            mu = sign * float(np.exp(rng.uniform(-3, 3)))
            target = CentralParam(spec_c, algebra.element(c, (0.0, mu)))
            wit = transitivity_witness(spec_c, target)
            moved = dual_central_act(wit, orbit_representative(classify_central_orbit(target)))
            worst = max(worst, max(abs(float(a - b)) for a, b in zip(moved.m.coeffs, target.m.coeffs)))
    # The one-dimensional real family refuses cross-sign targets.
    spec_r = NGroupSpec(AlgebraTag.REAL, 2)
    neg = CharParam(spec_r, algebra.fvector(AlgebraTag.REAL, [algebra.scalar(AlgebraTag.REAL, -2.0)]))
    pos_rep = CharParam(spec_r, algebra.fvector(AlgebraTag.REAL, [algebra.one(AlgebraTag.REAL)]))
    try:
        transitivity_witness(spec_r, neg, representative=pos_rep)
        refused = False
    except OrbitError:
        refused = True
    same_sign = dual_char_act(
        transitivity_witness(spec_r, neg),
        orbit_representative(classify_char_orbit(neg)),
    )
    within = abs(float(same_sign.v.entries[0].coeffs[0]) + 2.0) < 1e-10
    passed = worst < 1e-10 and refused and within
    return _result(
        "transitivity-witnesses",
        t0,
        passed,
        f"worst witness residual {worst:.2e} (tol 1e-10); cross-sign refusal={refused}, "
        f"same-sign witness ok={within}",
    )


# ---------------------------------------------------------------------------
# 5. Exactness of the phase-space model.

def check_schrodinger_model(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    c = AlgebraTag.COMPLEX
    spec = NGroupSpec(c, 2)
    m = CentralParam(spec, algebra.element(c, (0.0, 1.0)))
    m2 = CentralParam(spec, algebra.element(c, (0.0, -0.7)))
    hom_worst = 0.0
    for mm in (m, m2):
        for _ in range(5000):
            x = random_n_element(spec, rng, 2.0)
            y = random_n_element(spec, rng, 2.0)
            lhs = eta_op(mm, x).compose(eta_op(mm, y))
            rhs = eta_op(mm, n_multiply(x, y))
            hom_worst = max(hom_worst, phase_space_distance(lhs, rhs))
    central_exact = True
    for _ in range(200):
        z = algebra.random_imaginary(c, rng, 3.0)
        xc = NElement(spec, algebra.zero_vector(c, 1), z)
        op = eta_op(m, xc)
        central_exact &= op.q == (0.0,) and op.xi == (0.0,)
        central_exact &= op.theta == central_exponent(m, z)
        # The modulus factor is exactly 1; the complex value rounds through
        # cos/sin, so it only reaches the unit circle to machine precision.
        central_exact &= gaussian_coefficient_modulus(m, xc) == 1.0
        central_exact &= abs(abs(gaussian_coefficient(m, xc)) - 1.0) < 1e-14
    quad_worst = 0.0
    for _ in range(100):
        x = random_n_element(spec, rng, 1.0)
        closed = gaussian_coefficient(m, x)
        quad = gaussian_coefficient_quadrature(m, x)
        quad_worst = max(quad_worst, abs(closed - quad) / abs(quad))
    passed = hom_worst < 1e-12 and central_exact and quad_worst < 1e-6
    return _result(
        "schrodinger-model-exactness",
        t0,
        passed,
        f"homomorphism worst {hom_worst:.2e} over 10^4 pairs (tol 1e-12); "
        f"central identity exact={central_exact}; closed-vs-quadrature worst "
        f"rel {quad_worst:.2e} on 100 points (tol 1e-6)",
    )


# ---------------------------------------------------------------------------
# 6. Induction is exactly trivial on the corner wall.

def check_induction_triviality(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    model = InducedRep3x3(s=0.0, t=1.0, rho=float(rng.normal()))

    def section(lam: float) -> complex:
        return complex(math.exp(-0.5 * math.log(lam) ** 2), math.sin(lam))

    grid = np.exp(np.linspace(-2.0, 2.0, 1000))
    base = [complex(section(l)) for l in grid]
    exact = True
    for _ in range(100):
        x = PMatrixElement(1.0, 0.0, 0.0, float(rng.normal(0, 5)))
        vals = [model.translate(x, section, float(l)) for l in grid]
        exact &= all(a == b for a, b in zip(vals, base))
    mover = PMatrixElement(1.0, 0.0, float(rng.uniform(0.5, 2.0)), 0.0)
    moved = sum(
        1 for l, b in zip(grid, base) if model.translate(mover, section, float(l)) != b
    )
    passed = exact and moved >= 1
    return _result(
        "induction-triviality",
        t0,
        passed,
        f"100 wall elements leave 1000 grid samples bitwise fixed={exact}; "
        f"a generic element moves {moved}/1000 samples",
    )


# ---------------------------------------------------------------------------
# 7. Plancherel density against its analytic integral.

def check_plancherel_density(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4):
        spec = NGroupSpec(AlgebraTag.COMPLEX, n)
        for upper in (1.0, 10.0):
            integral, _ = integrate.quad(
                lambda mu: plancherel_density(spec, algebra.element(AlgebraTag.COMPLEX, (0.0, mu))),
                0.0,
                upper,
            )
            exact = upper**n / n
            worst = max(worst, abs(integral - exact) / exact)
    passed = worst < 1e-8
    return _result(
        "plancherel-density",
        t0,
        passed,
        f"worst rel error {worst:.2e} over n in (2,3,4), M in (1,10) (tol 1e-8)",
    )


# ---------------------------------------------------------------------------
# 8. The decision table, all twenty combinations.

_EXPECTED_VERDICTS = {
    ("P3x3", "P"): "Equal",
    ("P3x3", "N"): "NotEqual",
    ("P3x3", "MN"): "NotEqual",
    ("P3x3", "AN"): "Equal",
    ("SO0", "P"): "Equal",
    ("SU", "P"): "Equal",
    ("Sp", "P"): "Equal",
    ("F4", "P"): "Equal",
    ("SU", "AN"): "Equal",
    ("SU", "N"): "NotEqual",
    ("SU", "MN"): "NotEqual",
    ("Sp", "N"): "NotEqual",
    ("Sp", "MN"): "NotEqual",
    ("Sp", "AN"): "NotEqual",
    ("F4", "N"): "NotEqual",
    ("F4", "MN"): "NotEqual",
    ("F4", "AN"): "NotEqual",
}

_EXPECTED_HM = {"P3x3": "N1", "SO0": "N", "SU": "Z(N)", "Sp": "Z(N)", "F4": "Z(N)"}


def check_verdict_table(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    mismatches = []
    checked = 0
    for family in FAMILIES:
        ns = (2, 3, 7) if family in ("SO0", "SU", "Sp") else (None,)
        for n in ns:
            for subgroup in SUBGROUPS:
                v = verdict(family, subgroup, n)
                checked += 1
                if family == "SO0" and subgroup in ("N", "MN", "AN"):
                    expected = "Equal" if (subgroup == "AN" and n == 2) else "NotEqual"
                else:
                    expected = _EXPECTED_VERDICTS[(family, subgroup)]
                if v.answer != expected:
                    mismatches.append((family, subgroup, n, v.answer, expected))
                if not v.reasons:
                    mismatches.append((family, subgroup, n, "no-reasons", "reasons"))
    for family, expected_h in _EXPECTED_HM.items():
        info = howe_moore_pair(family, 2 if family in ("SO0", "SU", "Sp") else None)
        if info.name != expected_h or not info.normal or info.compact or not info.splits_dual:
            mismatches.append((family, "HM", None, info.name, expected_h))
    passed = not mismatches
    return _result(
        "verdict-table",
        t0,
        passed,
        f"{checked} verdicts + 5 mixing pairs checked, mismatches: {mismatches or 'none'}",
    )


# ---------------------------------------------------------------------------
# 9. Coefficient analytics: positivity, decay, support.

def _gaussian_vector(x):
    return np.exp(-0.5 * np.sum(np.atleast_2d(x) ** 2, axis=1))


def check_coefficient_analytics(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    c = AlgebraTag.COMPLEX
    spec = NGroupSpec(c, 2)
    pts_n = [random_n_element(spec, rng) for _ in range(50)]
    v = CharParam(spec, algebra.random_fvector(c, 1, rng))
    m = CentralParam(spec, algebra.element(c, (0.0, 1.0)))
    eig_char = positive_definite_check(char_coefficient(v), pts_n)
    eig_gauss = positive_definite_check(gaussian_coefficient_fn(m), pts_n)

    chart_a = AxBChart(log_scale=True)
    reg_a = RegularCoefficient(chart_a, _gaussian_vector, _gaussian_vector, [(-16, 16)] * 2, nodes=160)
    pts_a = [rng.uniform(-0.6, 0.6, 2) for _ in range(50)]
    gram_a = reg_a.gram(pts_a)
    eig_reg_a = float(np.linalg.eigvalsh(0.5 * (gram_a + gram_a.conj().T))[0])

    chart_p = P3x3Chart(log_scale=True)
    reg_p = RegularCoefficient(chart_p, _gaussian_vector, _gaussian_vector, [(-5.0, 5.0)] * 4, nodes=24)
    pts_p = [rng.uniform(-0.3, 0.3, 4) for _ in range(50)]
    gram_p = reg_p.gram(pts_p)
    eig_reg_p = float(np.linalg.eigvalsh(0.5 * (gram_p + gram_p.conj().T))[0])

    psd_ok = min(eig_char, eig_gauss, eig_reg_a, eig_reg_p) >= -1e-10

    # Decay of the regular coefficient on the 3x3 group.  Narrow vectors
    # (sigma = 1/2) keep the slowest (shear-axis) direction inside the range
    # the quadrature grid resolves; the sweep samples those axes explicitly.
    sigma = 0.5
    narrow = lambda x: np.exp(-np.sum(np.atleast_2d(x) ** 2, axis=1) / (2 * sigma**2))
    reg_d = RegularCoefficient(chart_p, narrow, narrow, [(-4.0, 4.0)] * 4, nodes=28)
    report = decay_radius(
        lambda pts: np.array([abs(reg_d(p)) for p in pts]),
        dim=4,
        epsilon=1e-6,
        rng=rng,
        r_start=4.0,
        samples_per_shell=32,
    )
    radius = report["radius"]
    dirs = rng.normal(size=(92, 4))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    dirs = np.concatenate([np.eye(4), -np.eye(4), dirs])
    radii = rng.uniform(radius, 3.0 * radius, len(dirs))
    outside_vals = np.array([abs(reg_d(r * d)) for r, d in zip(radii, dirs)])
    decay_ok = bool(np.all(outside_vals < 1e-6))

    # Exact support arithmetic on the ax+b group (raw coordinates).
    support_ok, phi_e = _support_arithmetic_case(rng)

    passed = psd_ok and decay_ok and support_ok and phi_e > 0
    return _result(
        "coefficient-analytics",
        t0,
        passed,
        f"gram min eigs: char {eig_char:.1e}, gaussian {eig_gauss:.1e}, "
        f"regular-axb {eig_reg_a:.1e}, regular-3x3 {eig_reg_p:.1e} (tol -1e-10); "
        f"decay radius {radius} with max outside {outside_vals.max():.1e} (<1e-6); "
        f"compact support exact={support_ok}, phi(e)={phi_e:.2e}>0",
    )


def _interval_mul(x, y):
    vals = [a * b for a in x for b in y]
    return (min(vals), max(vals))


def _support_arithmetic_case(rng: np.random.Generator):
    from .quadrature import box_bump

    chart = AxBChart(log_scale=False)
    box_f = [(0.6, 1.8), (-0.9, 0.9)]
    box_h = [(0.8, 1.5), (-0.5, 0.6)]
    f = lambda x: box_bump(x, box_f)
    h = lambda x: box_bump(x, box_h)
    reg = RegularCoefficient(chart, f, h, box_h, nodes=60)
    phi_e = float(abs(reg(chart.identity())))
    # supp phi is contained in supp h . (supp f)^-1 by the convolution bound.
    af, bf = box_f
    ah, bh = box_h
    a_range = (ah[0] / af[1], ah[1] / af[0])
    minus_bf_over_af = _interval_mul((-bf[1], -bf[0]), (1.0 / af[1], 1.0 / af[0]))
    shift = _interval_mul(ah, minus_bf_over_af)
    b_range = (shift[0] + bh[0], shift[1] + bh[1])
    ok = True
    for _ in range(200):
        # Only elements strictly outside the support bound count here.
        a = float(rng.uniform(0.05, 6.0))
        b = float(rng.uniform(-8.0, 8.0))
        inside = a_range[0] <= a <= a_range[1] and b_range[0] <= b <= b_range[1]
        if inside:
            continue
        ok &= reg(np.array([a, b])) == 0.0
    ok &= abs(reg(np.array([1.0, 0.0]))) > 0
    return ok, phi_e


# ---------------------------------------------------------------------------
# 10. Haar and modular data.

def check_haar_modular(rng: np.random.Generator) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    cases = [
        (AxBChart(log_scale=True), [(-0.8, 0.8), (-1.0, 1.0)], 48, 3),
        (NChart(NGroupSpec(AlgebraTag.COMPLEX, 2)), [(-1.0, 1.0)] * 3, 32, 3),
        (P3x3Chart(log_scale=True), [(-0.7, 0.7)] * 4, 22, 2),
        (AxBChart(log_scale=False), [(0.6, 1.9), (-1.0, 1.0)], 48, 1),
        (P3x3Chart(log_scale=False), [(0.6, 1.8)] + [(-0.7, 0.7)] * 3, 22, 1),
    ]
    for chart, box, nodes, repeats in cases:
        for _ in range(repeats):
            g0 = np.array([0.5 * (lo + hi) for lo, hi in box]) + rng.uniform(-0.2, 0.2, chart.dim)
            worst = max(worst, left_invariance_residual(chart, g0, box, nodes))
    invariance_ok = worst < 1e-6

    # Modular function: Delta == 1 on N and MN; Delta != 1 on ax+b, checked
    # against the right-translation mass ratio int f(x g0) dmu / int f dmu = 1/Delta(g0).
    desc_n = GroupDescriptor("N", AlgebraTag.COMPLEX, 2)
    desc_mn = GroupDescriptor("MN", AlgebraTag.COMPLEX, 2)
    flat_ok = all(
        modular_function(desc_n, tuple(rng.normal(0, 2, 3))) == 1.0
        and modular_function(desc_mn, tuple(rng.normal(0, 2, 3))) == 1.0
        for _ in range(20)
    )
    ratio_n = _right_translation_ratio(
        NChart(NGroupSpec(AlgebraTag.COMPLEX, 2)), np.array([0.4, -0.3, 0.5]), [(-1, 1)] * 3, 32
    )
    ratio_a = _right_translation_ratio(
        AxBChart(log_scale=False), np.array([1.7, 0.4]), [(0.5, 2.1), (-1.2, 1.2)], 64
    )
    delta_a = modular_function(GroupDescriptor("AXB"), (1.7, 0.4))
    n_unimodular = abs(ratio_n - 1.0) < 1e-6
    axb_witness = abs(ratio_a - 1.0 / delta_a) < 1e-6 * abs(1.0 / delta_a) and abs(delta_a - 1.0) > 0.1
    passed = invariance_ok and flat_ok and n_unimodular and axb_witness
    return _result(
        "haar-modular",
        t0,
        passed,
        f"worst invariance residual {worst:.2e} (tol 1e-6); Delta=1 on N/MN={flat_ok}; "
        f"N right-mass ratio {ratio_n:.8f}; ax+b ratio {ratio_a:.6f} vs 1/Delta "
        f"{1.0 / delta_a:.6f} with Delta={delta_a:.4f}!=1",
    )


def _right_translation_ratio(chart, g0, box, nodes: int) -> float:
    from .quadrature import box_bump, translate_box

    pts, wts = product_grid(box, nodes)
    base = float(np.sum(wts * chart.density(pts) * box_bump(pts, box)))
    # supp f(. g0) = (supp f) g0^-1; bound the integration box by corners.
    class _RightMul:
        def __init__(self, chart):
            self.chart = chart

        def multiply(self, g, x):
            return self.chart.multiply(x, g)

    shifted_box = translate_box(_RightMul(chart), chart.inverse(np.asarray(g0, float)), box)
    pts2, wts2 = product_grid(shifted_box, nodes)
    moved = float(
        np.sum(wts2 * chart.density(pts2) * box_bump(chart.multiply(pts2, np.asarray(g0, float)), box))
    )
    return moved / base


# ---------------------------------------------------------------------------
# Runner.

CHECKS = (
    ("five-orbit-classification", check_five_orbit_classification),
    ("stabilizer-agreement", check_stabilizer_agreement),
    ("duality-consistency", check_duality_consistency),
    ("transitivity-witnesses", check_transitivity_witnesses),
    ("schrodinger-model-exactness", check_schrodinger_model),
    ("induction-triviality", check_induction_triviality),
    ("plancherel-density", check_plancherel_density),
    ("verdict-table", check_verdict_table),
    ("coefficient-analytics", check_coefficient_analytics),
    ("haar-modular", check_haar_modular),
)


def run_selftest(seed: int = 0, names=None) -> list:
    results = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        rng = np.random.default_rng(seed)
        results.append(fn(rng))
    return results
