"""Verification suites for the rigidity of W1([0,1] + {q}) and W2(R^2 + {q}).

Each suite recomputes, with the exact solver, the finite identities and
counterexamples the rigidity arguments rest on. Statements quantified over
all measures are only sampled on generated families; such checks say
"finite-family evidence" in their description.
"""

from __future__ import annotations

import math


from ..errors import ConfigError
from ..ground import GroundSpace, PlaneRigidMotion, Q
from ..maps import (
    MeasureMap,
    collapse_plan,
    flip_J,
    geodesic_point,
    isometry_distortion,
    kloeckner,
    lift,
    projection_P,
    slice_action,
)
from ..measures import (
    DiscreteMeasure,
    barycenter,
    collapsed,
    dirac,
    make_measure,
    q_mixture,
    recompose,
    slice_decompose,
    slice_mass,
)
from ..ot import (
    MINUS_INF,
    DualPotentials,
    brute_force_oracle,
    check_coupling,
    check_dual_certificate,
    kr_lower_bound,
    solve_exact,
    w1_interval_closed_form,
)
from .report import SuiteReport
from .sampling import (
    GRID,
    random_base_measure,
    random_measure,
    random_rational_measure,
    suite_rng,
)

TOL = 1e-9
MARGIN = 1e-9
FAMILY = "finite-family evidence"


def _check_D(D: float) -> float:
    D = float(D)
    if not math.isfinite(D) or D <= 1.0:
        raise ConfigError(f"D must be > 1, got {D!r}")
    return D


def _w1(mu, nu):
    return solve_exact(mu, nu, 1).distance


def _w2(mu, nu):
    return solve_exact(mu, nu, 2).distance


# -- interval plus a far point -------------------------------------------


def _apex_candidates(space: GroundSpace) -> list[DiscreteMeasure]:
    fam = [dirac(space, Q)]
    fam += [dirac(space, k / GRID) for k in range(GRID + 1)]
    fam.append(make_measure(space, [(0.0, 0.5), (1.0, 0.5)]))
    for a in (0.25, 0.5, 0.75):
        for x in (0.0, 0.5, 1.0):
            fam.append(q_mixture(space, a, x))
    return fam


def _realises_triple(mu: DiscreteMeasure, family: list[DiscreteMeasure], D: float) -> int:
    """Number of pairs in ``family`` at distance ``D`` from ``mu`` and 1 from each other."""
    far = [nu for nu in family if abs(_w1(mu, nu) - D) <= TOL]
    hits = 0
    for i, a in enumerate(far):
        for b in far[i + 1 :]:
            if abs(_w1(a, b) - 1.0) <= TOL:
                hits += 1
    return hits


def verify_delta_q_characterization(D: float = 10.0, samples: int = 50, seed: int = 42) -> SuiteReport:
    """``δ_q`` is the only apex of a (D, D, 1) distance triangle."""
    D = _check_D(D)
    space = GroundSpace.interval_q(D)
    rng = suite_rng(seed, "delta_q")
    rep = SuiteReport("delta_q_characterization")
    dq, d0, d1 = dirac(space, Q), dirac(space, 0.0), dirac(space, 1.0)
    rep.close(
        "witness triple W1(δ_q,δ_0), W1(δ_q,δ_1), W1(δ_0,δ_1)",
        "delta_q.witness_triple",
        [_w1(dq, d0), _w1(dq, d1), _w1(d0, d1)],
        [D, D, 1.0],
        TOL,
    )
    family = _apex_candidates(space)
    rep.holds(
        "candidate family detects the triple at δ_q",
        "delta_q.family_sanity",
        _realises_triple(dq, family, D) > 0,
    )
    apexes = [dirac(space, 0.5)]
    while len(apexes) < max(samples, 50):
        mu = random_measure(rng, space)
        if mu != dq:
            apexes.append(mu)
    hits = sum(_realises_triple(mu, family, D) for mu in apexes)
    rep.close(
        f"no apex other than δ_q realises (D, D, 1) over {len(apexes)} measures ({FAMILY})",
        "delta_q.uniqueness",
        [hits],
        [0],
        0.0,
    )
    return rep


def verify_mass_identity(D: float = 10.0, samples: int = 200, seed: int = 42) -> SuiteReport:
    """Base mass equals ``W1(δ_q, mu) / D``."""
    D = _check_D(D)
    space = GroundSpace.interval_q(D)
    rng = suite_rng(seed, "mass_identity")
    rep = SuiteReport("mass_identity")
    dq = dirac(space, Q)
    example = make_measure(space, [(Q, 0.25), (0.5, 0.75)])
    rep.close(
        "0.25δ_q + 0.75δ_0.5: base mass and distance",
        "slices.mass_identity.example",
        [example.base_mass, _w1(dq, example)],
        [0.75, 0.75 * D],
        TOL,
    )
    measures = [dq, dirac(space, 0.3), example]
    measures += [random_measure(rng, space) for _ in range(samples)]
    worst = max(abs(mu.base_mass - _w1(dq, mu) / D) for mu in measures)
    rep.worst(f"max |mu([0,1]) - W1(δ_q, mu)/D| over {len(measures)} measures", "slices.mass_identity", worst, TOL)

    def witness(x):
        return D if x is Q else 0.0

    worst_kr = max(abs(kr_lower_bound(witness, mu, dq) - D * mu.base_mass) for mu in measures)
    rep.worst("Lipschitz witness f(q)=D, f=0 on [0,1] is tight", "slices.mass_identity.kr_witness", worst_kr, TOL)
    return rep


def verify_slice_scaling(D: float = 10.0, samples: int = 200, seed: int = 42) -> SuiteReport:
    """Within a slice the distance is ``t`` times the distance of the base parts."""
    D = _check_D(D)
    space = GroundSpace.interval_q(D)
    rng = suite_rng(seed, "slice_scaling")
    rep = SuiteReport("slice_scaling")
    base0, base1 = dirac(space.base, 0.0), dirac(space.base, 1.0)
    rep.close(
        "t = 1/2, δ_0 vs δ_1",
        "slices.scaling.example",
        [_w1(recompose(space, 0.5, base0), recompose(space, 0.5, base1))],
        [0.5],
        TOL,
    )
    worst = worst_cf = 0.0
    for _ in range(samples):
        t = float(1.0 - rng.random())
        a = random_base_measure(rng, space)
        b = random_base_measure(rng, space)
        base = _w1(a, b)
        worst_cf = max(worst_cf, abs(base - w1_interval_closed_form(a, b)))
        worst = max(worst, abs(_w1(recompose(space, t, a), recompose(space, t, b)) - t * base))
    rep.worst(f"max |W1 in slice - t W1(base)| over {samples} triples", "slices.scaling", worst, TOL)
    rep.worst("base distances agree with the CDF closed form", "slices.scaling.closed_form", worst_cf, TOL)
    return rep


def verify_interval_counterexample(
    D: float = 10.0, t: float = 0.6, seed: int = 42, grid: int = 5
) -> SuiteReport:
    """The flip cannot act on any slice, and reflections cannot vary across slices."""
    D = _check_D(D)
    if not 0.0 < t <= 1.0:
        raise ConfigError(f"t must lie in (0, 1], got {t!r}")
    space = GroundSpace.interval_q(D)
    rep = SuiteReport("interval_counterexample")
    mu = make_measure(space, [(Q, 1 - t), (0.0, t / 2), (1.0, t / 2)])
    nu = q_mixture(space, 2 * t / 3, 0.0)
    d_before = _w1(mu, nu)
    rep.close("W1(mu, nu) = t(D/3 + 1/6)", "interval.counterexample.before", [d_before], [t * (D / 3 + 1 / 6)], TOL)

    image_mu = q_mixture(space, t, 0.5)
    flip = slice_action(lambda s: "J", space)
    rep.holds("flip on the slice sends mu to (1-t)δ_q + tδ_1/2", "interval.counterexample.image", flip(mu) == image_mu)
    after = []
    for tip in (0.0, 1.0):
        image_nu = q_mixture(space, 2 * t / 3, tip)
        after.append(_w1(image_mu, image_nu))
    rep.close(
        "both candidate images of nu give W1 = t(D/3 + 1/3)",
        "interval.counterexample.after",
        after,
        [t * (D / 3 + 1 / 3)] * 2,
        TOL,
    )
    rep.exceeds("images are farther apart than the originals", "interval.counterexample.gap", min(after), d_before, MARGIN)
    for key in ("J", "rJ"):
        act = slice_action(lambda s, key=key: key, space)
        gap = isometry_distortion(act, [(mu, nu)], 1).max_distortion
        rep.close(f"slice action by {key} distorts the pair by t/6", f"interval.counterexample.distortion.{key}", [gap], [t / 6], TOL)
    for key in ("id", "r"):
        act = slice_action(lambda s, key=key: key, space)
        gap = isometry_distortion(act, [(mu, nu)], 1).max_distortion
        rep.worst(f"slice action by {key} preserves the pair", f"interval.counterexample.distortion.{key}", gap, TOL)

    ts = [(k + 1) / grid for k in range(grid)]
    dev_same = dev_cross = 0.0
    min_sep = math.inf
    for a in ts:
        for b in ts:
            left = q_mixture(space, a, 0.0)
            same = _w1(left, q_mixture(space, b, 0.0))
            cross = _w1(left, q_mixture(space, b, 1.0))
            dev_same = max(dev_same, abs(same - D * abs(a - b)))
            # the cross pair also pays for the overlap moved from 0 to 1
            dev_cross = max(dev_cross, abs(cross - (D * abs(a - b) + min(a, b))))
            min_sep = min(min_sep, cross - same)
    rep.worst(f"W1(mu_t, mu_t') = D|t-t'| on a {grid}x{grid} grid", "interval.slices.same_end", dev_same, TOL)
    rep.worst(
        f"W1(mu_t, nu_t') = D|t-t'| + min(t,t') on a {grid}x{grid} grid",
        "interval.slices.opposite_end",
        dev_cross,
        TOL,
    )
    rep.exceeds(
        "mixing id and r across slices changes some distance",
        "interval.slices.separation",
        min_sep,
        0.0,
        MARGIN,
    )
    return rep


def verify_flip_isometry(samples: int = 200, seed: int = 42, involution_samples: int = 1000) -> SuiteReport:
    """Properties of the flip of W1([0, 1])."""
    space = GroundSpace.interval()
    rng = suite_rng(seed, "flip")
    rep = SuiteReport("flip_isometry")
    half = dirac(space, 0.5)
    rep.holds("J(δ_1/2) = ½δ_0 + ½δ_1", "flip.example", flip_J(half) == make_measure(space, [(0.0, 0.5), (1.0, 0.5)]))
    rep.holds("J(δ_0) = δ_1", "flip.endpoint", flip_J(dirac(space, 0.0)) == dirac(space, 1.0))

    bad = 0
    for _ in range(involution_samples):
        mu = random_base_measure(rng, space, 6, dyadic=True)
        if flip_J(flip_J(mu)) != mu:
            bad += 1
    rep.close(f"J(J(mu)) = mu exactly on {involution_samples} dyadic measures", "flip.involution", [bad], [0], 0.0)

    pairs = [(random_base_measure(rng, space), random_base_measure(rng, space)) for _ in range(samples)]
    gap = isometry_distortion(MeasureMap("flip", flip_J), pairs, 1).max_distortion
    rep.worst(f"W1 distortion of J over {samples} pairs", "flip.isometry", gap, TOL)

    xs = [float(x) for x in rng.uniform(0.0, 1.0, size=max(20, samples // 10)) if 0.0 < x < 1.0]
    sizes = [len(flip_J(dirac(space, x))) for x in xs]
    rep.holds("J(δ_x) has two atoms for x in (0,1)", "flip.not_dirac", all(s == 2 for s in sizes), [min(sizes), max(sizes)], [2, 2])
    return rep


# -- plane plus a point above the origin -------------------------------------


def _ref_potentials() -> DualPotentials:
    return DualPotentials(
        psi=lambda x: 0.0 if x is Q else -(x[0] * x[0] + x[1] * x[1]),
        phi=lambda z: 0.0 if (z is Q or z == (0.0, 0.0)) else MINUS_INF,
        extra_points=(Q, (0.0, 0.0)),
    )


def verify_collapse_plan_optimality(samples: int = 200, seed: int = 42) -> SuiteReport:
    """The plan fixing q and sending the base to the origin is optimal, certified by potentials."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "collapse_plan")
    rep = SuiteReport("collapse_plan_optimality")
    cases = [
        (0.5, make_measure(space.base, [((3.0, 4.0), 1.0)])),
        (0.7, make_measure(space.base, [((0.0, 0.0), 1.0)])),
        (1.0, make_measure(space.base, [((1.0, 0.0), 0.5), ((0.0, 1.0), 0.5)])),
    ]
    cases += [(float(rng.uniform(0.01, 1.0)), random_base_measure(rng, space)) for _ in range(samples)]
    worst_primal = worst_dual = worst_solver = worst_feas = worst_marg = 0.0
    failures = 0
    first = None
    pot = _ref_potentials()
    for t, rest in cases:
        mu = recompose(space, t, rest)
        plan = collapse_plan(mu)
        expected = t * math.fsum(w * (x[0] ** 2 + x[1] ** 2) for x, w in rest.atoms)
        primal = plan.cost(2)
        cert = check_dual_certificate(pot, plan, p=2)
        solver = solve_exact(mu, plan.nu, 2).cost
        worst_marg = max(worst_marg, check_coupling(plan).worst_violation)
        worst_primal = max(worst_primal, abs(primal - expected))
        worst_dual = max(worst_dual, abs((cert.dual_value if cert.dual_value is not None else math.inf) - primal))
        worst_solver = max(worst_solver, abs(solver - primal))
        worst_feas = max(worst_feas, cert.worst_feasibility_violation)
        failures += not cert.passed
        if first is None:
            first = (primal, cert.dual_value, solver)
    rep.close("t=1/2, δ_(3,4): primal, dual, solver", "plane.collapse.example", list(first), [12.5] * 3, TOL)
    n = len(cases)
    rep.worst(f"cost equals t * mean squared norm over {n} instances", "plane.collapse.primal", worst_primal, TOL)
    rep.worst("collapse plan is a coupling", "plane.collapse.coupling", worst_marg, 1e-10)
    rep.worst("dual value equals the plan cost", "plane.collapse.dual", worst_dual, TOL)
    rep.worst("solver optimum equals the plan cost", "plane.collapse.solver", worst_solver, TOL)
    rep.close("potentials are feasible everywhere evaluated", "plane.collapse.feasibility", [worst_feas], [0.0], 1e-10)
    rep.close("number of instances whose dual certificate fails", "plane.collapse.certificate", [failures], [0], 0.0)
    return rep


def verify_mass_holder_bound(samples: int = 500, seed: int = 42) -> SuiteReport:
    """``W2^2 >= |difference of base masses|``: moved mass travels at least distance one."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "mass_holder")
    rep = SuiteReport("mass_holder_bound")
    dq, d0 = dirac(space, Q), dirac(space, (0.0, 0.0))
    rep.close("equality case δ_q vs δ_0", "plane.holder.tight", [solve_exact(dq, d0, 2).cost], [1.0], TOL)
    far = make_measure(space, [(Q, 0.5), ((3.0, 4.0), 0.5)])
    rep.close("δ_q vs ½δ_q + ½δ_(3,4)", "plane.holder.example", [solve_exact(dq, far, 2).cost], [13.0], TOL)
    slack = math.inf
    for _ in range(samples):
        mu = random_measure(rng, space)
        nu = random_measure(rng, space)
        sq = solve_exact(mu, nu, 2).cost
        slack = min(slack, sq - abs(slice_mass(mu) - slice_mass(nu)))
    rep.add(
        f"min of W2^2 - |Δ base mass| over {samples} pairs",
        "plane.holder",
        [slack],
        [0.0],
        1e-10,
        slack >= -1e-10,
    )
    return rep


def _slice_candidates(rng, space: GroundSpace, t: float, count: int) -> list[DiscreteMeasure]:
    """Measures of the ``t``-slice whose base part is not ``δ_0``."""
    out = []
    lattice = [(i / GRID, j / GRID) for i in range(-2, 3) for j in range(-2, 3) if (i, j) != (0, 0)]
    for k in range(count):
        if k < len(lattice):
            rest = make_measure(space.base, [((0.0, 0.0), 0.5), (lattice[k], 0.5)])
        else:
            rest = random_base_measure(rng, space, 4, radius=1.0)
            if rest == dirac(space.base, (0.0, 0.0)):
                rest = dirac(space.base, (1.0 / GRID, 0.0))
        out.append(recompose(space, t, rest))
    return out


def verify_slice_minimizer(samples: int = 20, seed: int = 42, grid_step: float = 0.04) -> SuiteReport:
    """``(1-t)δ_q + tδ_0`` is the unique point of its slice nearest ``δ_q``, at distance ``sqrt(t)``."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "slice_minimizer")
    rep = SuiteReport("slice_minimizer")
    dq = dirac(space, Q)
    n = int(round(1.0 / grid_step))
    ts = [k / n for k in range(n + 1)]
    dists = [_w2(collapsed(space, t), dq) for t in ts]
    rep.close(f"W2(ν_t, δ_q) = sqrt(t) on {len(ts)} grid values", "plane.minimizer.sqrt_law", dists, [math.sqrt(t) for t in ts], 1e-10)
    rep.exceeds("sqrt(t) strictly increases along the grid", "plane.minimizer.monotone", min(b - a for a, b in zip(dists, dists[1:])), 0.0, MARGIN)
    margin = math.inf
    count = max(samples, 20)
    for t, d in zip(ts, dists):
        if t == 0.0:
            continue  # the zero slice is the single measure δ_q
        for cand in _slice_candidates(rng, space, t, count):
            margin = min(margin, _w2(cand, dq) - d)
    rep.exceeds(f"{count} other slice members per t are strictly farther ({FAMILY})", "plane.minimizer.unique", margin, 0.0, MARGIN)
    far = dirac(space, (0.1, 0.0))
    rep.close("δ_(0.1,0) sits at sqrt(1.01)", "plane.minimizer.example", [_w2(far, dq)], [math.sqrt(1.01)], 1e-12)
    return rep


def _speed_deviation(mu: DiscreteMeasure, s_grid: list[float]) -> float:
    plan = collapse_plan(mu)
    speed = _w2(mu, plan.nu)
    path = [geodesic_point(plan, s) for s in s_grid]
    dev = 0.0
    for i, a in enumerate(path):
        for j in range(i + 1, len(path)):
            dev = max(dev, abs(_w2(a, path[j]) - abs(s_grid[j] - s_grid[i]) * speed))
    return dev


def _midpoint_family(rng, space: GroundSpace, mu: DiscreteMeasure, count: int) -> list[DiscreteMeasure]:
    """Mixtures of δ_q with grid-supported base parts, plus seeded perturbations."""
    bases = [dirac(space.base, (0.0, 0.0))]
    dec = slice_decompose(mu)
    if dec.rest is not None:
        bases.append(dec.rest)
        plan = collapse_plan(mu)
        half = slice_decompose(geodesic_point(plan, 0.5)).rest
        if half is not None:
            bases.append(half)
    family = []
    for a_k in range(GRID + 1):
        for b in bases:
            family.append(recompose(space, a_k / GRID, b))
    for _ in range(count):
        family.append(recompose(space, float(rng.uniform(0, 1)), random_base_measure(rng, space, 3, radius=0.5)))
    return family


def _midpoints_found(mu, target, family, tol=1e-6) -> int:
    half = _w2(mu, target) / 2
    found = 0
    for sigma in family:
        if abs(_w2(mu, sigma) - half) <= tol and abs(_w2(sigma, target) - half) <= tol:
            found += 1
    return found


def verify_geodesic_slice_characterization(samples: int = 50, seed: int = 42, s_points: int = 11) -> SuiteReport:
    """Displacement interpolation of the collapse plan is a constant-speed geodesic,
    while no midpoint joins measures of different slices at small scale."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "geodesics")
    rep = SuiteReport("geodesic_slice_characterization")
    s_grid = [k / (s_points - 1) for k in range(s_points)]

    example = make_measure(space, [(Q, 0.5), ((3.0, 4.0), 0.5)])
    rep.worst("½δ_q + ½δ_(3,4) toward ν_1/2: speed deviation", "plane.geodesic.example", _speed_deviation(example, s_grid), 1e-8)
    mid = geodesic_point(collapse_plan(example), 0.5)
    rep.holds("midpoint is ½δ_q + ½δ_(1.5,2)", "plane.geodesic.midpoint", mid == make_measure(space, [(Q, 0.5), ((1.5, 2.0), 0.5)]))
    const = collapsed(space, 0.3)
    rep.worst("ν_t toward itself is a constant path", "plane.geodesic.constant", _speed_deviation(const, s_grid), 1e-8)

    worst = 0.0
    for _ in range(samples):
        t = float(rng.uniform(0.05, 1.0))
        rest = random_base_measure(rng, space, 4)
        worst = max(worst, _speed_deviation(recompose(space, t, rest), s_grid))
    rep.worst(f"max speed deviation over {samples} slice measures on {s_points} parameters", "plane.geodesic.constant_speed", worst, 1e-8)

    # across slices: a midpoint sigma would satisfy |m(sigma) - t| <= d^2/4 and
    # |m(sigma) - t'| <= d^2/4, impossible once d^2/2 < |t - t'|
    start, target = dirac(space, (0.0, 0.0)), collapsed(space, 0.5)
    fam = [recompose(space, a / GRID, dirac(space.base, (0.0, 0.0))) for a in range(GRID + 1)]
    rep.close("δ_0 vs ν_1/2: q-mixtures with δ_0 contain no midpoint", "plane.geodesic.no_midpoint.example", [_midpoints_found(start, target, fam)], [0], 0.0)

    found = 0
    margins = []
    pairs = max(5, samples // 5)
    ts = [k / 8 for k in range(1, 9)]
    for _ in range(pairs):
        t, t2 = rng.choice(ts, size=2, replace=False)
        t, t2 = float(t), float(t2)
        mu = recompose(space, t, random_base_measure(rng, space, 3, radius=0.25))
        target = collapsed(space, t2)
        sq = solve_exact(mu, target, 2).cost
        margins.append(abs(t - t2) - sq / 2)
        found += _midpoints_found(mu, target, _midpoint_family(rng, space, mu, 20))
    rep.exceeds("sampled cross-slice pairs lie in the mass-obstructed regime", "plane.geodesic.obstruction_regime", min(margins), 0.0, MARGIN)
    rep.close(f"no candidate midpoint across slices in {pairs} families ({FAMILY})", "plane.geodesic.no_midpoint", [found], [0], 0.0)
    return rep


def verify_plane_counterexample(n_angles: int = 36, samples: int = 50, seed: int = 42) -> SuiteReport:
    """Rotating about the barycentre is incompatible with projecting the q-mass to the origin."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "plane_counterexample")
    rep = SuiteReport("plane_counterexample")
    origin = (0.0, 0.0)
    base_part = make_measure(space, [(origin, 1 / 3), ((1.0, 0.0), 2 / 3)])
    mu = make_measure(space, [(Q, 1 / 3), ((1.0, 0.0), 2 / 3)])
    rep.holds("P(⅓δ_q + ⅔δ_(1,0)) = ⅓δ_0 + ⅔δ_(1,0)", "plane.counterexample.projection", projection_P(mu) == base_part)
    rep.close("barycentre of the projected measure", "plane.counterexample.barycenter", list(barycenter(base_part)), [2 / 3, 0.0], 1e-15)
    required = mu.q_mass

    rep.holds("angle 0 leaves the measure unchanged", "plane.counterexample.identity", kloeckner(PlaneRigidMotion(0.0), base_part) == base_part)
    half_turn = kloeckner(PlaneRigidMotion(math.pi), base_part)
    masses = [half_turn.weight_of(p) for p in half_turn.points]
    rep.close(
        "half turn: ⅓δ_(4/3,0) + ⅔δ_(1/3,0)",
        "plane.counterexample.half_turn",
        [half_turn.points[0][0], half_turn.points[0][1], half_turn.points[1][0], half_turn.points[1][1], *masses],
        [1 / 3, 0.0, 4 / 3, 0.0, 2 / 3, 1 / 3],
        1e-12,
    )

    origin_mass = []
    bary_dev = 0.0
    for k in range(1, n_angles + 1):
        theta = 2 * math.pi * k / (n_angles + 1)
        img = kloeckner(PlaneRigidMotion(theta), base_part)
        origin_mass.append(img.weight_of(origin))
        g = barycenter(img)
        bary_dev = max(bary_dev, abs(g[0] - 2 / 3), abs(g[1]))
    rep.close(f"rotated images carry no mass at the origin for {n_angles} angles in (0, 2π)", "plane.counterexample.origin_mass", [max(origin_mass)], [0.0], 0.0)
    rep.worst("rotation preserves the barycentre", "plane.counterexample.barycenter_kept", bary_dev, 1e-12)

    least = math.inf
    for _ in range(samples):
        rest = random_base_measure(rng, space, 4)
        sigma = recompose(space, 2 / 3, rest)
        least = min(least, projection_P(sigma).weight_of(origin))
    rep.add(
        f"projection of {samples} measures in the 2/3-slice keeps origin mass >= 1/3 ({FAMILY})",
        "plane.counterexample.required_mass",
        [least],
        [required],
        1e-15,
        least >= required - 1e-15,
    )
    rep.holds(
        "commutation with the projection fails for every nonzero angle",
        "plane.counterexample.commutation",
        all(m < required for m in origin_mass),
        [max(origin_mass)],
        [required],
    )
    return rep


def _motions(rng, count: int) -> list[PlaneRigidMotion]:
    ms = [PlaneRigidMotion(0.0), PlaneRigidMotion(math.pi / 2), PlaneRigidMotion(0.0, reflect=True)]
    ms += [PlaneRigidMotion(float(rng.uniform(0, 2 * math.pi)), reflect=bool(rng.random() < 0.5)) for _ in range(count)]
    return ms


def verify_projection_commutes(samples: int = 200, seed: int = 42) -> SuiteReport:
    """Projection onto the full slice commutes with lifted origin-fixing motions."""
    space = GroundSpace.plane_q()
    rng = suite_rng(seed, "projection")
    rep = SuiteReport("projection_commutes")
    quarter = lift(PlaneRigidMotion(math.pi / 2))
    mu = make_measure(space, [(Q, 1 / 3), ((1.0, 0.0), 2 / 3)])
    want = make_measure(space, [((0.0, 0.0), 1 / 3), ((0.0, 1.0), 2 / 3)])
    rep.holds("quarter turn: both orders give ⅓δ_0 + ⅔δ_(0,1)", "plane.projection.quarter_turn",
              projection_P(quarter(mu)) == want and quarter(projection_P(mu)) == want)
    flip = lift(PlaneRigidMotion(0.0, reflect=True))
    mu2 = make_measure(space, [(Q, 0.5), ((1.0, 1.0), 0.5)])
    want2 = make_measure(space, [((0.0, 0.0), 0.5), ((1.0, -1.0), 0.5)])
    rep.holds("x-axis reflection: both orders give ½δ_0 + ½δ_(1,-1)", "plane.projection.reflection",
              projection_P(flip(mu2)) == want2 and flip(projection_P(mu2)) == want2)

    motions = _motions(rng, 5)
    mismatches = slice_changes = not_idempotent = 0
    for _ in range(samples):
        m = random_measure(rng, space)
        pm = projection_P(m)
        not_idempotent += projection_P(pm) != pm
        for motion in motions:
            phi = lift(motion)
            img = phi(m)
            mismatches += projection_P(img) != phi(pm)
            slice_changes += slice_mass(img) != slice_mass(m)
    total = samples * len(motions)
    rep.close(f"P(Φ mu) = Φ(P mu) exactly on {total} cases", "plane.projection.commutes", [mismatches], [0], 0.0)
    rep.close("lifted motions keep every slice", "plane.projection.slices_kept", [slice_changes], [0], 0.0)
    rep.close("projection is idempotent", "plane.projection.idempotent", [not_idempotent], [0], 0.0)

    margin = math.inf
    for _ in range(max(5, samples // 20)):
        t = float(rng.uniform(0.1, 0.9))
        m = recompose(space, t, random_base_measure(rng, space, 3, radius=1.0))
        pm = projection_P(m)
        best = _w2(m, pm)
        for cand in _projection_rivals(rng, space, m, 20):
            margin = min(margin, _w2(m, cand) - best)
    rep.exceeds(f"projection is the unique nearest full-slice measure ({FAMILY})", "plane.projection.argmin", margin, 0.0, MARGIN)
    return rep


def _projection_rivals(rng, space, mu, count):
    dec = slice_decompose(mu)
    out = []
    for k in range(count):
        eps = (k % 4 + 1) / GRID
        ang = float(rng.uniform(0, 2 * math.pi))
        shift = (eps * math.cos(ang), eps * math.sin(ang))
        if k % 2 == 0:
            # q-mass relocated next to the origin instead of onto it
            atoms = [(shift, mu.q_mass)] + [(p, dec.t * w) for p, w in dec.rest.atoms]
        else:
            atoms = [((0.0, 0.0), mu.q_mass)] + [
                ((p[0] + shift[0], p[1] + shift[1]), dec.t * w) for p, w in dec.rest.atoms
            ]
        out.append(make_measure(space, atoms))
    return out


# -- solver self-checks --------------------------------------------------------

def verify_solver_oracles(samples: int = 500, seed: int = 42, D: float = 10.0) -> SuiteReport:
    """The transport solver against the unit-mass assignment oracle and the 1D closed form."""
    D = _check_D(D)
    rng = suite_rng(seed, "solver")
    rep = SuiteReport("solver_oracles")
    spaces = [GroundSpace.interval(), GroundSpace.interval_q(D), GroundSpace.plane(), GroundSpace.plane_q()]
    worst_marg = 0.0
    for space in spaces:
        worst = 0.0
        for k in range(samples):
            N = int(rng.integers(1, 7))
            p = 1.0 if k % 2 == 0 else 2.0
            mu = random_rational_measure(rng, space, N)
            nu = random_rational_measure(rng, space, N)
            res = solve_exact(mu, nu, p)
            ref = brute_force_oracle(mu, nu, p, N)
            worst = max(worst, abs(res.distance - ref) / (1.0 + ref))
            worst_marg = max(worst_marg, check_coupling(res.plan).worst_violation)
        rep.worst(f"{space.kind}: relative gap to the assignment oracle over {samples} instances", f"solver.oracle.{space.kind}", worst, TOL)
    interval = GroundSpace.interval()
    worst = 0.0
    for _ in range(samples):
        a = random_base_measure(rng, interval, 6)
        b = random_base_measure(rng, interval, 6)
        worst = max(worst, abs(solve_exact(a, b, 1).distance - w1_interval_closed_form(a, b)))
    rep.worst(f"interval: gap to the CDF closed form over {samples} instances", "solver.closed_form", worst, TOL)
    rep.worst("every returned plan is a coupling", "solver.coupling", worst_marg, 1e-10)
    return rep


__all__ = [
    "verify_delta_q_characterization",
    "verify_mass_identity",
    "verify_slice_scaling",
    "verify_interval_counterexample",
    "verify_flip_isometry",
    "verify_collapse_plan_optimality",
    "verify_mass_holder_bound",
    "verify_slice_minimizer",
    "verify_geodesic_slice_characterization",
    "verify_plane_counterexample",
    "verify_projection_commutes",
    "verify_solver_oracles",
]
