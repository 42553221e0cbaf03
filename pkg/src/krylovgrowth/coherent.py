"""Closed-form amplitudes, complexity and moments of displaced-squeezed states.

The evolution operator factorizes into a global phase, a displacement
exp(v a - conj(v) a^dag) and a squeeze exp((w/2) a^2 - (conj(w)/2) (a^dag)^2).
Acting on the vacuum this produces number-basis amplitudes phi_k that obey
the three-term recurrence

    sqrt(k+1) cosh|w| phi_{k+1}
      + sqrt(k) (conj(w)/|w|) sinh|w| phi_{k-1}
      + (conj(v) cosh|w| + v (conj(w)/|w|) sinh|w|) phi_k = 0,

equivalently the Hermite closed form
phi_k = (k!)^{-1/2} (conj(w) tanh|w| / (2|w|))^{k/2} H_k(s) phi_0.

The recurrence on phi_k itself is the workhorse (phi_k stays bounded while
H_k and sqrt(k!) overflow separately); the Hermite form is kept as a
cross-check. Direct summation over the series is the authoritative
definition of the complexity and all higher moments; every closed
expression is verified against it, and the two alternative closed forms
known to disagree (``variance_alt_closed_form``,
``autocorrelator_alt_closed_form``) are evaluated only for discrepancy
reporting.

All time dependence enters through :func:`closed_form_params`, which maps
the generator parameters (alpha, beta) and time t to (v, w, theta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .algebra import LiouvillianSpec
from .errors import NonConvergent

__all__ = [
    "DisplacementParams",
    "AmplitudeSeries",
    "MomentReport",
    "SL2RWeight",
    "hermite_argument",
    "closed_form_params",
    "phi_zero",
    "phi_series",
    "hermite_closed_form",
    "mehler_normalization_check",
    "complexity_closed",
    "moment_n",
    "moment_identity_value",
    "moment_report",
    "variance_closed",
    "variance_alt_closed_form",
    "hw_profile",
    "sl2r_profile",
    "schrodinger_complexity_t",
    "interaction_term",
    "scrambling_time",
    "autocorrelator_t",
    "autocorrelator_alt_closed_form",
    "late_time_growth_exponent",
]

DEFAULT_SERIES_TOL = 1e-10
DEFAULT_SERIES_CAP = 4096


def _phase_root(w: complex) -> complex:
    """Principal square root of conj(w)/|w|.

    The Hermite argument and the (.)^{k/2} prefactor each involve a square
    root of the squeeze phase; they only compose consistently (for every
    phase, including w on the negative real axis) when built from one and
    the same root, so this helper is the single source for it.
    """
    return cmath.sqrt(w.conjugate() / abs(w))


def hermite_argument(v: complex, w: complex) -> complex:
    """Argument s of the Hermite closed form (undefined at w = 0)."""
    if w == 0:
        raise ValueError("hermite argument is undefined on the w = 0 branch")
    xi = _phase_root(w)
    rz = math.sqrt(math.tanh(abs(w)))
    return -(v * xi * rz + v.conjugate() * xi.conjugate() / rz) / math.sqrt(2.0)


@dataclass(frozen=True)
class DisplacementParams:
    """Group-element parameters (v, w, theta) and the derived argument s.

    ``s`` is None on the pure-displacement branch w = 0, where every
    conj(w)/|w| factor is taken in the w -> 0 limit.
    """

    v: complex
    w: complex
    theta: complex = 1.0 + 0.0j
    s: Optional[complex] = None

    def __post_init__(self):
        object.__setattr__(self, "v", complex(self.v))
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "theta", complex(self.theta))
        if abs(abs(self.theta) - 1.0) > 1e-12:
            raise ValueError(f"|theta| must be 1, got {abs(self.theta)}")
        if self.w == 0:
            if self.s is not None:
                raise ValueError("s must be None on the w = 0 branch")
        else:
            expected = hermite_argument(self.v, self.w)
            if self.s is None:
                object.__setattr__(self, "s", expected)
            elif abs(self.s - expected) > 1e-12:
                raise ValueError(
                    f"s={self.s} inconsistent with (v, w); expected {expected}"
                )


def _sinh_minus_arg(x: float) -> float:
    """sinh(x) - x without the cancellation that zeroes it for small x."""
    if abs(x) < 1e-3:
        x2 = x * x
        return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0))
    return math.sinh(x) - x


def closed_form_params(spec: LiouvillianSpec, t: float) -> DisplacementParams:
    """Map generator parameters and time to (v, w, theta).

    v = (alpha/beta)(1 - cosh(beta t)) + i (alpha/beta) sinh(beta t),
    w = i beta t,
    theta = exp[i (alpha/beta)^2 (sinh(beta t) - beta t)],
    with the beta -> 0 limit v = i alpha t, w = 0, theta = 1. The real part
    of v is evaluated as -2 (alpha/beta) sinh^2(beta t / 2), which stays
    accurate where 1 - cosh loses all digits.
    """
    alpha, beta = spec.alpha, spec.beta
    if beta == 0 or t == 0:
        return DisplacementParams(v=1j * alpha * t, w=0.0)
    bt = beta * t
    ab = alpha / beta
    v = -2.0 * ab * math.sinh(0.5 * bt) ** 2 + 1j * ab * math.sinh(bt)
    w = 1j * bt
    theta = cmath.exp(1j * ab * ab * _sinh_minus_arg(bt))
    return DisplacementParams(v=v, w=w, theta=theta)


def phi_zero(p: DisplacementParams) -> complex:
    """Vacuum amplitude phi_0 = <0| theta D(v) S(w) |0>."""
    gauss = cmath.exp(-abs(p.v) ** 2 / 2.0)
    if p.w == 0:
        return p.theta * gauss
    aw = abs(p.w)
    mubar = p.w.conjugate() / aw
    return (
        p.theta
        * gauss
        / math.sqrt(math.cosh(aw))
        * cmath.exp(-0.5 * p.v * p.v * mubar * math.tanh(aw))
    )


@dataclass(frozen=True, eq=False)
class AmplitudeSeries:
    """Amplitudes phi_0..phi_{k_max} with truncation metadata."""

    params: DisplacementParams
    k_max: int
    phi: np.ndarray = field(repr=False)
    tail_bound: float

    def __post_init__(self):
        arr = np.asarray(self.phi, dtype=complex)
        if arr.shape != (self.k_max + 1,):
            raise ValueError(f"phi length {arr.shape} does not match k_max {self.k_max}")
        arr.setflags(write=False)
        object.__setattr__(self, "phi", arr)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.phi) ** 2


def _recurrence(p: DisplacementParams, k_max: int) -> np.ndarray:
    phi = np.zeros(k_max + 1, dtype=complex)
    phi[0] = phi_zero(p)
    rk = np.sqrt(np.arange(k_max + 1, dtype=float))
    if p.w == 0:
        vb = -p.v.conjugate()
        for k in range(k_max):
            phi[k + 1] = vb * phi[k] / rk[k + 1]
        return phi
    aw = abs(p.w)
    mubar = p.w.conjugate() / aw
    ch, sh = math.cosh(aw), math.sinh(aw)
    mix = p.v.conjugate() * ch + p.v * mubar * sh
    hop = mubar * sh
    for k in range(k_max):
        prev = phi[k - 1] if k >= 1 else 0.0
        phi[k + 1] = -(rk[k] * hop * prev + mix * phi[k]) / (rk[k + 1] * ch)
    return phi


def phi_series(
    p: DisplacementParams,
    tol: float = DEFAULT_SERIES_TOL,
    max_k: int = DEFAULT_SERIES_CAP,
) -> AmplitudeSeries:
    """Amplitudes by forward recurrence, truncated adaptively.

    ``k_max`` starts at 64 and doubles until the missing probability
    1 - sum |phi_k|^2 is at most ``tol`` in magnitude; exceeding ``max_k``
    raises :class:`NonConvergent`.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    k_max = min(64, max_k)
    while True:
        phi = _recurrence(p, k_max)
        tail = 1.0 - float(np.sum(np.abs(phi) ** 2))
        if abs(tail) <= tol:
            return AmplitudeSeries(params=p, k_max=k_max, phi=phi, tail_bound=tail)
        if k_max >= max_k:
            raise NonConvergent(
                f"series tail {tail:.3e} still above tol {tol:.1e} at cap k_max={max_k}",
                tail=tail,
                k_max=max_k,
            )
        k_max = min(2 * k_max, max_k)


def hermite_closed_form(p: DisplacementParams, k_max: int) -> np.ndarray:
    """Amplitudes from the Hermite closed form (cross-check route).

    Valid for w != 0 and k_max <= 170 (float factorial range); beyond that
    use the recurrence, which evaluates the same function stably.
    """
    if p.w == 0:
        raise ValueError("closed form requires w != 0; use the recurrence branch")
    if k_max > 170:
        raise ValueError("k_max above float factorial range (170)")
    s = p.s if p.s is not None else hermite_argument(p.v, p.w)
    c = _phase_root(p.w) * math.sqrt(math.tanh(abs(p.w)) / 2.0)
    H = np.zeros(k_max + 1, dtype=complex)
    H[0] = 1.0
    if k_max >= 1:
        H[1] = 2.0 * s
    for k in range(1, k_max):
        H[k + 1] = 2.0 * s * H[k] - 2.0 * k * H[k - 1]
    p0 = phi_zero(p)
    ks = np.arange(k_max + 1)
    root_fact = np.sqrt(np.array([float(math.factorial(int(k))) for k in ks]))
    return c ** ks * H / root_fact * p0


def mehler_normalization_check(p: DisplacementParams) -> float:
    """Total probability via the bilinear Hermite generating function.

    Returns sum_k |phi_k|^2 evaluated in closed form; the contract is that
    the result equals 1 to 1e-10.
    """
    if p.w == 0:
        return abs(phi_zero(p)) ** 2 * math.exp(abs(p.v) ** 2)
    s = p.s if p.s is not None else hermite_argument(p.v, p.w)
    z = math.tanh(abs(p.w))
    num = 2.0 * abs(s) ** 2 * z - 2.0 * (s * s).real * z * z
    return (
        math.cosh(abs(p.w))
        * math.exp(num / (1.0 - z * z))
        * abs(phi_zero(p)) ** 2
    )


def complexity_closed(p: DisplacementParams) -> float:
    """Krylov complexity of the displaced-squeezed state: |v|^2 + sinh^2|w|."""
    return abs(p.v) ** 2 + math.sinh(abs(p.w)) ** 2


def moment_n(
    p: DisplacementParams,
    n: int,
    *,
    tol: float = 1e-13,
    max_k: int = 2 * DEFAULT_SERIES_CAP,
) -> float:
    """n-th position moment sum_k k^n |phi_k|^2 by direct summation.

    Direct summation is the authoritative route; the tight default ``tol``
    keeps the k^n-weighted tail negligible.
    """
    if n < 0:
        raise ValueError("moment order must be >= 0")
    series = phi_series(p, tol=tol, max_k=max_k)
    k = np.arange(series.k_max + 1, dtype=float)
    return float(np.sum(k ** n * series.probabilities()))


def _fixed_s_norm_factor(p: DisplacementParams):
    """|phi_0|^{-2} as a function of u = |w| at fixed Hermite argument s.

    F(u) = cosh(u) * exp(|s|^2 sinh(2u) - 2 Re(s^2) sinh^2(u)); the moment
    generator is K_(n) = |phi_0|^2 [ (sinh(2u)/2 d/du)^n F ](u0).
    """
    s = p.s if p.s is not None else hermite_argument(p.v, p.w)
    s_abs2 = abs(s) ** 2
    s_sq_re = (s * s).real

    def F(u: float) -> float:
        return math.cosh(u) * math.exp(
            s_abs2 * math.sinh(2.0 * u) - 2.0 * s_sq_re * math.sinh(u) ** 2
        )

    return F, s_abs2, s_sq_re


def moment_identity_value(
    p: DisplacementParams, n: int, step: Optional[float] = None
) -> float:
    """K_(n) via the fixed-s derivative identity, for n in {1, 2}.

    With ``step`` None the logarithmic derivatives of F are evaluated in
    closed form; otherwise nested central finite differences with the given
    step are used (the step-limited route loses accuracy for n = 2 at
    large |s|, |w| because of the 1/step^2 roundoff floor).
    """
    if n not in (1, 2):
        raise ValueError("identity evaluation implemented for n in {1, 2}")
    if p.w == 0:
        raise ValueError("identity evaluation requires w != 0")
    u0 = abs(p.w)
    F, s_abs2, s_sq_re = _fixed_s_norm_factor(p)
    half_s2 = 0.5 * math.sinh(2.0 * u0)
    if step is None:
        # log-derivatives: F'/F = h, F''/F = h' + h^2
        h = (
            math.tanh(u0)
            + 2.0 * s_abs2 * math.cosh(2.0 * u0)
            - 2.0 * s_sq_re * math.sinh(2.0 * u0)
        )
        if n == 1:
            return half_s2 * h
        hp = (
            1.0 / math.cosh(u0) ** 2
            + 4.0 * s_abs2 * math.sinh(2.0 * u0)
            - 4.0 * s_sq_re * math.cosh(2.0 * u0)
        )
        return half_s2 * (math.cosh(2.0 * u0) * h + half_s2 * (hp + h * h))
    hstep = step

    def DF(u: float) -> float:
        return 0.5 * math.sinh(2.0 * u) * (F(u + hstep) - F(u - hstep)) / (2.0 * hstep)

    if n == 1:
        return DF(u0) / F(u0)
    return half_s2 * (DF(u0 + hstep) - DF(u0 - hstep)) / (2.0 * hstep) / F(u0)


@dataclass(frozen=True)
class MomentReport:
    """Complexity, variance, and requested higher moments."""

    K: float
    sigma2: float
    moments: Dict[int, float]


def moment_report(p: DisplacementParams, orders=(1, 2)) -> MomentReport:
    """Assemble K, sigma^2 and the requested moments by direct summation."""
    orders = sorted(set(orders) | {1, 2})
    moments = {n: moment_n(p, n) for n in orders}
    K = moments[1]
    return MomentReport(K=K, sigma2=moments[2] - K * K, moments=moments)


def variance_closed(p: DisplacementParams) -> float:
    """Variance sigma^2 = K_(2) - K_(1)^2 by direct summation (authoritative)."""
    m1 = moment_n(p, 1)
    m2 = moment_n(p, 2)
    return m2 - m1 * m1


def variance_alt_closed_form(p: DisplacementParams) -> float:
    """Alternative closed variance expression, evaluated for comparison only.

    Reads |v| cosh(2|w|) + sinh|w| cosh|w| (sinh(2|w|) - (conj(v)^2 w
    + v^2 conj(w))/|w|). Its first term disagrees with the Poisson limit
    (|v|^2 at w = 0); the verify report quantifies the deviation from the
    direct summation, which remains the authoritative value.
    """
    aw = abs(p.w)
    if aw == 0:
        return abs(p.v)
    cross = ((p.v.conjugate() ** 2 * p.w + p.v ** 2 * p.w.conjugate()) / aw).real
    return abs(p.v) * math.cosh(2 * aw) + math.sinh(aw) * math.cosh(aw) * (
        math.sinh(2 * aw) - cross
    )


def hw_profile(
    alpha: float, t: float, *, tol: float = DEFAULT_SERIES_TOL
) -> tuple[AmplitudeSeries, float]:
    """Pure-displacement profile: Poisson |phi_n|^2 with K = (alpha t)^2."""
    series = phi_series(DisplacementParams(v=1j * alpha * t, w=0.0), tol=tol)
    return series, alpha ** 2 * t ** 2


@dataclass(frozen=True)
class SL2RWeight:
    """Lowest-weight label of the sl(2,R) sector (1/4 in the oscillator
    realization, where the module states live on even Fock levels)."""

    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"weight h must be positive, got {self.h}")


def sl2r_profile(
    h: SL2RWeight,
    beta: float,
    t: float,
    *,
    tol: float = DEFAULT_SERIES_TOL,
    max_n: int = DEFAULT_SERIES_CAP,
) -> tuple[AmplitudeSeries, float]:
    """Lowest-weight-module amplitudes and complexity K = 2h sinh^2(beta t).

    phi_n = sqrt(Gamma(2h+n) / (n! Gamma(2h))) tanh^n(beta t) / cosh^{2h}(beta t)
    over the weight-basis index n. The ``params`` attached to the returned
    series carry the oscillator-realization group element (v=0, w=i beta t),
    which corresponds to these amplitudes only at h = 1/4 (on even Fock
    levels k = 2n); for other h the params are a bookkeeping label only.
    """
    params = DisplacementParams(v=0.0, w=1j * beta * t)
    bt = beta * t
    K = 2.0 * h.h * math.sinh(bt) ** 2
    z = math.tanh(bt)
    n_max = min(64, max_n)
    while True:
        weights = np.empty(n_max + 1, dtype=float)
        weights[0] = 1.0
        for n in range(n_max):
            weights[n + 1] = weights[n] * (2.0 * h.h + n) / (n + 1.0)
        phi = np.sqrt(weights) * z ** np.arange(n_max + 1) / math.cosh(bt) ** (2 * h.h)
        tail = 1.0 - float(np.sum(phi ** 2))
        if abs(tail) <= tol:
            return (
                AmplitudeSeries(
                    params=params, k_max=n_max, phi=phi.astype(complex), tail_bound=tail
                ),
                K,
            )
        if n_max >= max_n:
            raise NonConvergent(
                f"weight-module series tail {tail:.3e} above tol at cap {max_n}",
                tail=tail,
                k_max=max_n,
            )
        n_max = min(2 * n_max, max_n)


def schrodinger_complexity_t(spec: LiouvillianSpec, t: float) -> float:
    """Complexity K(t) for the full generator.

    Equals alpha^2 t^2 + sinh^2(beta t) plus the non-negative interaction
    term; evaluated in the cancellation-free form
    sinh^2(beta t) + alpha^2 * 4 cosh(beta t) sinh^2(beta t / 2) / beta^2.
    """
    alpha, beta = spec.alpha, spec.beta
    if beta == 0:
        return alpha ** 2 * t ** 2
    bt = beta * t
    return math.sinh(bt) ** 2 + alpha ** 2 * (
        4.0 * math.cosh(bt) * math.sinh(bt / 2.0) ** 2 / beta ** 2
    )


def interaction_term(spec: LiouvillianSpec, t: float) -> float:
    """Excess of K(t) over the sum of the pure-sector complexities (>= 0)."""
    alpha, beta = spec.alpha, spec.beta
    if beta == 0:
        return 0.0
    bt = beta * t
    return alpha ** 2 * (
        4.0 * math.cosh(bt) * math.sinh(bt / 2.0) ** 2 / beta ** 2 - t ** 2
    )


def scrambling_time(spec: LiouvillianSpec) -> float:
    """t_s = (1/beta) log[4 beta^2 / (beta^2 + 2 alpha^2)]; requires beta > 0.

    Negative for alpha > beta sqrt(3/2), zero exactly at the boundary.
    """
    if spec.beta <= 0:
        raise ValueError(f"scrambling time defined only for beta > 0, got {spec.beta}")
    a2, b2 = spec.alpha ** 2, spec.beta ** 2
    return math.log(4.0 * b2 / (b2 + 2.0 * a2)) / spec.beta


def autocorrelator_t(spec: LiouvillianSpec, t: float) -> float:
    """Survival probability |phi_0(t)|^2 of the initial operator state."""
    return abs(phi_zero(closed_form_params(spec, t))) ** 2


def autocorrelator_alt_closed_form(spec: LiouvillianSpec, t: float) -> float:
    """Alternative closed autocorrelator expression, for comparison only.

    Reads exp[-alpha^2 (e^{2 beta t} - 1)^2 / (8 beta^2) + 2 beta t]
    / cosh(2 beta t). It is inconsistent with the small-t expansion of the
    survival probability (it even carries a term linear in t); the verify
    report quantifies its deviation from :func:`autocorrelator_t`.
    """
    alpha, beta = spec.alpha, spec.beta
    if beta == 0:
        return math.exp(-(alpha ** 2) * t ** 2)
    num = -(alpha ** 2) * (math.expm1(2.0 * beta * t)) ** 2 / (8.0 * beta ** 2)
    return math.exp(num + 2.0 * beta * t) / math.cosh(2.0 * beta * t)


def late_time_growth_exponent(
    spec: LiouvillianSpec, t_lo: float = 4.0, t_hi: float = 6.0, points: int = 41
) -> float:
    """Empirical exponent of K(t) ~ e^{lambda t}: linear fit of log K."""
    ts = np.linspace(t_lo, t_hi, points)
    lnk = np.log([schrodinger_complexity_t(spec, float(t)) for t in ts])
    return float(np.polyfit(ts, lnk, 1)[0])
