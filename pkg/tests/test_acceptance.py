"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.

Criterion 8 (autocorrelator ordering) FAILS BY DESIGN and is expected to
stay red: the exact survival probability of the mixed evolution crosses
above the pure-displacement curve at t ~ 1.27 (verified here against the
brute-force dense oracle before the ordering is asserted), so the encoded
pointwise-ordering claim is false for roughly half of the required grid.
The criterion is kept faithful to its statement rather than weakened.
"""

import math
import time

import numpy as np
import pytest

from krylovgrowth.algebra import LiouvillianSpec, build_liouvillian
from krylovgrowth.bch import apply_displacement_squeeze, decompose_exponential
from krylovgrowth.cli import SweepConfig, main, verify
from krylovgrowth.coherent import (
    DisplacementParams,
    SL2RWeight,
    autocorrelator_t,
    closed_form_params,
    complexity_closed,
    mehler_normalization_check,
    phi_series,
    schrodinger_complexity_t,
    scrambling_time,
    sl2r_profile,
)
from krylovgrowth.errors import TruncationOverflow
from krylovgrowth.fock import FockVector, TruncationConfig, evolve_state
from krylovgrowth.lanczos import chain_complexity, lanczos_tridiagonalize, project_onto_chain, propagate_chain

DIM_LADDER = (256, 512, 1152)
ALPHA_BETA_GRID = [
    (a, b)
    for a in (0.0, 0.25, 0.5, 1.0)
    for b in (0.0, 0.25, 0.5, 1.0)
    if (a, b) != (0.0, 0.0)
]
T_GRID = (0.25, 0.5, 1.0, 2.0)


def _report(criterion: int, passed: bool, detail: str):
    print(f"[criterion {criterion:>2}] {'PASS' if passed else 'FAIL'} - {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def _oracle_state(spec: LiouvillianSpec, t: float) -> FockVector:
    """Dense evolution of the vacuum, escalating dim until the guard band
    confirms the truncation holds the state."""
    last = None
    for dim in DIM_LADDER:
        cfg = TruncationConfig(dim=dim)
        L = build_liouvillian(spec, cfg)
        try:
            return evolve_state(L, t, FockVector.basis_state(dim, 0), cfg)
        except TruncationOverflow as err:
            last = err
    raise last


def test_criterion_01_oracle_equivalence():
    start = time.monotonic()
    worst = 0.0
    for alpha, beta in ALPHA_BETA_GRID:
        spec = LiouvillianSpec(alpha, beta)
        for t in T_GRID:
            psi = _oracle_state(spec, t)
            series = phi_series(closed_form_params(spec, t), tol=1e-12, max_k=16384)
            n = min(series.k_max + 1, psi.dim)
            closed = series.phi[:n]
            mask = np.abs(closed) ** 2 > 1e-14
            dev = float(np.max(np.abs(np.abs(closed[mask]) - np.abs(psi.amplitudes[:n][mask]))))
            worst = max(worst, dev)
    elapsed = time.monotonic() - start
    _report(
        1,
        worst <= 1e-8 and elapsed < 60.0,
        f"max |phi_k| deviation {worst:.3e} (tol 1e-8) over "
        f"{len(ALPHA_BETA_GRID) * len(T_GRID)} grid points in {elapsed:.1f}s (< 60s)",
    )


@pytest.fixture(scope="module")
def vw_grid_series():
    grid = {}
    for av in np.linspace(0.0, 4.0, 20):
        for aw in np.linspace(0.0, 3.0, 20):
            p = DisplacementParams(v=complex(av), w=1j * aw)
            grid[(av, aw)] = phi_series(p, tol=1e-12, max_k=16384)
    return grid


def test_criterion_02_normalization(vw_grid_series):
    worst_sum = max(abs(s.tail_bound) for s in vw_grid_series.values())
    worst_mehler = max(
        abs(mehler_normalization_check(s.params) - 1.0) for s in vw_grid_series.values()
    )
    worst = max(worst_sum, worst_mehler)
    _report(
        2,
        worst <= 1e-10,
        f"max |sum - 1| = {worst_sum:.3e} (series), {worst_mehler:.3e} (closed form); tol 1e-10",
    )


def test_criterion_03_complexity_closed_form(vw_grid_series):
    worst = 0.0
    for series in vw_grid_series.values():
        k = np.arange(series.k_max + 1)
        direct = float(np.sum(k * series.probabilities()))
        worst = max(worst, abs(direct - complexity_closed(series.params)))
    _report(3, worst <= 1e-8, f"max |sum k p_k - (|v|^2 + sinh^2|w|)| = {worst:.3e}; tol 1e-8")


def test_criterion_04_limit_recovery():
    exact = True
    for x in (0.5, 1.0, 2.0):  # power-of-two values keep float products exact
        for t in (0.25, 0.5, 1.0, 2.0):
            exact &= schrodinger_complexity_t(LiouvillianSpec(x, 0.0), t) == x**2 * t**2
            exact &= (
                schrodinger_complexity_t(LiouvillianSpec(0.0, x), t) == math.sinh(x * t) ** 2
            )
            p_hw = DisplacementParams(v=1j * (x * t), w=0.0)
            exact &= complexity_closed(p_hw) == (x * t) ** 2
            p_sq = DisplacementParams(v=0.0, w=1j * (x * t))
            exact &= complexity_closed(p_sq) == math.sinh(x * t) ** 2
    _report(4, exact, "K(alpha,0,t) = alpha^2 t^2 and K(0,beta,t) = sinh^2(beta t), exactly")


def test_criterion_05_early_time_law():
    worst_rel = 0.0
    for alpha, beta in [(1.0, 1.0), (0.5, 0.8)]:
        spec = LiouvillianSpec(alpha, beta)
        ts = np.linspace(0.0, 0.02, 21)
        coef = np.polyfit(ts, [schrodinger_complexity_t(spec, float(t)) for t in ts], 2)[0]
        worst_rel = max(worst_rel, abs(coef - (alpha**2 + beta**2)) / (alpha**2 + beta**2))
    _report(5, worst_rel <= 0.01, f"quadratic coefficient off by {worst_rel:.2e} rel (tol 1%)")


def test_criterion_06_scrambling_time():
    exact_log4 = scrambling_time(LiouvillianSpec(0.0, 1.0)) == math.log(4.0)
    boundary = max(
        abs(scrambling_time(LiouvillianSpec(beta * math.sqrt(1.5), beta))) for beta in (1.0, 0.7)
    )
    _report(
        6,
        exact_log4 and boundary <= 1e-15,
        f"t_s(0,1) = log 4 exactly; |t_s| at the sign-change boundary = {boundary:.1e}",
    )


def test_criterion_07_parity_and_weight_profile():
    series = phi_series(closed_form_params(LiouvillianSpec(0.0, 1.0), 1.0), tol=1e-12)
    probs = series.probabilities()
    worst_odd = float(np.max(probs[1::2]))
    sl2r, _ = sl2r_profile(SL2RWeight(0.25), 1.0, 1.0, tol=1e-12)
    sl2r_probs = sl2r.probabilities()
    n_pairs = min(series.k_max // 2, sl2r.k_max)
    worst_pair = float(
        np.max(np.abs(probs[0 : 2 * n_pairs + 1 : 2] - sl2r_probs[: n_pairs + 1]))
    )
    _report(
        7,
        worst_odd < 1e-12 and worst_pair <= 1e-10,
        f"max odd-k probability {worst_odd:.1e} (tol 1e-12); "
        f"max |even-k vs weight-profile| {worst_pair:.1e} (tol 1e-10)",
    )


def test_criterion_08_autocorrelator_ordering():
    """EXPECTED RED. The exact mixed autocorrelator is not pointwise below
    the pure-displacement curve: it crosses above it at t ~ 1.27 and stays
    above through t = 3. The value used here is validated against the dense
    oracle before the ordering is asserted, so the failure is a property of
    the dynamics, not of the implementation."""
    mixed = LiouvillianSpec(1.0, 1.0)
    psi = _oracle_state(mixed, 1.5)
    oracle_check = abs(autocorrelator_t(mixed, 1.5) - abs(psi.amplitudes[0]) ** 2)
    assert oracle_check <= 1e-10, "autocorrelator disagrees with the dense oracle"

    ts = np.linspace(0.1, 3.0, 30)
    violations = []
    for t in ts:
        t = float(t)
        a_mixed = autocorrelator_t(mixed, t)
        a_disp = autocorrelator_t(LiouvillianSpec(1.0, 0.0), t)
        a_sqz = autocorrelator_t(LiouvillianSpec(0.0, 1.0), t)
        if not (a_mixed <= a_disp + 1e-15 and a_mixed <= a_sqz + 1e-15):
            violations.append((t, a_mixed, a_disp, a_sqz))
    detail = (
        f"mixed curve exceeds a pure curve at {len(violations)}/30 grid points"
        + (
            f"; first at t={violations[0][0]:.2f} "
            f"(mixed {violations[0][1]:.3e} vs displacement {violations[0][2]:.3e}); "
            f"closed form matches dense oracle to {oracle_check:.1e}, so the "
            "encoded ordering claim itself is false beyond t ~ 1.27"
            if violations
            else ""
        )
    )
    _report(8, not violations, detail)


def test_criterion_09_group_element_consistency():
    worst_param = 0.0
    worst_state = 0.0
    for alpha in (0.5, 1.0):
        for beta in (0.5, 1.0):
            spec = LiouvillianSpec(alpha, beta)
            for t in (0.5, 1.0, 2.0):
                got = decompose_exponential(spec, t)
                ref = closed_form_params(spec, t)
                worst_param = max(
                    worst_param,
                    abs(got.v - ref.v), abs(got.w - ref.w), abs(got.theta - ref.theta),
                )
                psi = _oracle_state(spec, t)
                cfg = TruncationConfig(dim=psi.dim)
                group = apply_displacement_squeeze(ref, cfg)
                mask = np.abs(group.amplitudes) ** 2 > 1e-14
                worst_state = max(
                    worst_state,
                    float(np.max(np.abs(group.amplitudes[mask] - psi.amplitudes[mask]))),
                )
    _report(
        9,
        worst_param <= 1e-10 and worst_state <= 1e-8,
        f"factorization parameters off by {worst_param:.2e} (tol 1e-10); "
        f"composed group element off the dense evolution by {worst_state:.2e} (tol 1e-8)",
    )


def test_criterion_10_lanczos_cross_method():
    # at t=1.5 the dim=256 guard band holds 1.2e-8 of probability, well
    # inside this criterion's 1e-6 complexity bar, so the oracle runs with
    # the guard detector set to the matching level
    cfg = TruncationConfig(dim=256, tail_tolerance=1e-6)
    L = build_liouvillian(LiouvillianSpec(1.0, 1.0), cfg)
    seed = FockVector.basis_state(256, 0)
    chain = lanczos_tridiagonalize(L, seed, 120)
    ts = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5]
    worst = 0.0
    for wf in propagate_chain(chain, ts):
        psi = evolve_state(L, wf.t, seed, cfg)
        proj = project_onto_chain(chain, psi)
        K_proj = float(np.sum(np.arange(chain.m) * np.abs(proj) ** 2))
        worst = max(worst, abs(chain_complexity(wf) - K_proj))

    hw_chain = lanczos_tridiagonalize(
        build_liouvillian(LiouvillianSpec(1.0, 0.0), cfg), seed, 30
    )
    hw_dev = float(np.max(np.abs(hw_chain.b[:20] - np.sqrt(np.arange(1, 21)))))
    _report(
        10,
        worst <= 1e-6 and hw_dev <= 1e-9,
        f"chain vs projected-oracle complexity off by {worst:.2e} (tol 1e-6, m=120, dim=256); "
        f"pure-displacement hoppings off sqrt(n) by {hw_dev:.1e} (tol 1e-9)",
    )


def test_criterion_11_monotonicity_and_superadditivity():
    spec = LiouvillianSpec(1.0, 1.0)
    ts = np.linspace(0.0, 3.0, 601)
    K = np.array([schrodinger_complexity_t(spec, float(t)) for t in ts])
    min_slope = float(np.min(np.diff(K) / np.diff(ts)))
    excess = K - np.array([1.0 * t**2 + math.sinh(t) ** 2 for t in ts])
    min_excess = float(np.min(excess))
    _report(
        11,
        min_slope >= -1e-9 and min_excess >= -1e-12,
        f"min dK/dt = {min_slope:.3e} (>= -1e-9); "
        f"min K - (alpha^2 t^2 + sinh^2 beta t) = {min_excess:.3e} (>= -1e-12)",
    )


def test_criterion_12_documented_discrepancy_probes():
    cfg = SweepConfig(alpha=1.0, beta=1.0, t_min=0.0, t_max=2.0, steps=5, dim=256, mode="verify")
    report, ok = verify(cfg)
    disc = report["documented_discrepancies"]
    var_probe = disc["variance_alt_form_first_term"]
    auto_probe = disc["autocorrelator_alt_form"]
    exp_probe = disc["late_time_exponent"]
    probes_present = (
        var_probe["deviation"] > 0
        and len(auto_probe) == 3
        and all(row["deviation"] > 0 for row in auto_probe)
        and "measured_over_t_4_to_6" in exp_probe
    )
    exit_code = main(
        ["--mode", "verify", "--alpha", "1", "--beta", "1", "--tmax", "2",
         "--steps", "5", "--dim", "256", "--out", "/dev/null"]
    )
    _report(
        12,
        ok and probes_present and exit_code == 0,
        f"alt-variance deviation {var_probe['deviation']:.3f} at v=2i,w=0; "
        f"alt-autocorrelator deviation {auto_probe[0]['deviation']:.3f} at t=0.1; "
        f"measured late-time exponent {exp_probe['measured_over_t_4_to_6']:.3f}; "
        f"verify exit code {exit_code} (authoritative checks pass, probes report only)",
    )
