"""Oscillator realization of the two-dimensional Schrodinger symmetry algebra.

All generators are polynomials in the truncated ladder matrices. The set
closes the defining relations

    [P, G] = -M
    [D, H] = -2H,  [D, K] = 2K,  [H, K] = D
    [D, P] = -P,   [D, G] = G

on the non-guard block, with M acting as the identity (central extension).
In physical terms H is the free-particle Hamiltonian p^2/2, K the special
conformal generator, D the dilatation, P and G translation and boost, and
the sl(2,R) triple L0, L+1, L-1 realizes the squeeze sector on even Fock
states. The generator of time evolution studied by the rest of the library
is the independent ladder polynomial built by :func:`build_liouvillian`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator

import numpy as np

from .errors import DimensionMismatch
from .fock import OperatorMatrix, TruncationConfig, build_ladders

__all__ = [
    "LiouvillianSpec",
    "QuadraticHamiltonian",
    "GeneratorSet",
    "GENERATOR_LABELS",
    "build_generators",
    "commutator",
    "build_liouvillian",
    "hamiltonian_to_matrix",
]


@dataclass(frozen=True)
class LiouvillianSpec:
    """Physical parameters of the evolution generator.

    ``alpha`` multiplies the linear part (a^dag + a); ``beta`` multiplies
    the two-photon part ((a^dag)^2 + a^2)/2.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError(f"alpha, beta must be finite, got ({self.alpha}, {self.beta})")


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """Generic quadratic ladder polynomial
    eta*(a^dag a + 1/2) + delta + R*(a^dag)^2 + L*a^2 + r*a^dag + l*a."""

    eta: complex = 0.0
    delta: complex = 0.0
    R_coef: complex = 0.0
    L_coef: complex = 0.0
    r_coef: complex = 0.0
    l_coef: complex = 0.0

    def is_hermitian(self, tol: float = 1e-14) -> bool:
        return (
            abs(complex(self.eta).imag) <= tol
            and abs(complex(self.delta).imag) <= tol
            and abs(self.L_coef - complex(self.R_coef).conjugate()) <= tol
            and abs(self.l_coef - complex(self.r_coef).conjugate()) <= tol
        )


GENERATOR_LABELS = (
    "a", "a_dagger", "P", "G", "M", "H", "K", "D",
    "L0", "L_plus1", "L_minus1", "number",
)


@dataclass(frozen=True)
class GeneratorSet:
    """Named map of symmetry generators at a common truncation size."""

    dim: int
    generators: Dict[str, OperatorMatrix]

    def __getitem__(self, label: str) -> OperatorMatrix:
        return self.generators[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self.generators)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.generators)


def build_generators(cfg: TruncationConfig) -> GeneratorSet:
    """Construct every generator from the ladder matrices.

    P = (a^dag - a)/sqrt(2)        translation
    G = (a^dag + a)/sqrt(2)        boost
    M = a a^dag - a^dag a          central extension (identity off the guard band)
    H = -(a - a^dag)^2 / 4         free Hamiltonian p^2/2
    K = -(a + a^dag)^2 / 4         special conformal -x^2/2
    D = (a^2 - (a^dag)^2) / 2      dilatation
    L0 = (a^dag a + a a^dag)/4,  L+1 = a^2/2,  L-1 = (a^dag)^2/2
    """
    if cfg.dim < 8:
        raise ValueError(f"dim must be >= 8 for the generator set, got {cfg.dim}")
    a_op, ad_op = build_ladders(cfg)
    a, ad = a_op.entries, ad_op.entries
    sq2 = math.sqrt(2.0)
    mk = OperatorMatrix.from_entries
    gens = {
        "a": a_op,
        "a_dagger": ad_op,
        "P": mk((ad - a) / sq2),
        "G": mk((ad + a) / sq2),
        "M": mk(a @ ad - ad @ a),
        "H": mk(-0.25 * (a - ad) @ (a - ad)),
        "K": mk(-0.25 * (a + ad) @ (a + ad)),
        "D": mk(0.5 * (a @ a - ad @ ad)),
        "L0": mk(0.25 * (ad @ a + a @ ad)),
        "L_plus1": mk(0.5 * a @ a),
        "L_minus1": mk(0.5 * ad @ ad),
        "number": mk(ad @ a),
    }
    return GeneratorSet(cfg.dim, gens)


def commutator(X: OperatorMatrix, Y: OperatorMatrix) -> OperatorMatrix:
    """[X, Y] = XY - YX."""
    if X.dim != Y.dim:
        raise DimensionMismatch(f"dims {X.dim} and {Y.dim} differ")
    return OperatorMatrix.from_entries(X.entries @ Y.entries - Y.entries @ X.entries)


def build_liouvillian(spec: LiouvillianSpec, cfg: TruncationConfig) -> OperatorMatrix:
    """Evolution generator alpha*(a^dag + a) + (beta/2)*((a^dag)^2 + a^2).

    Hermitian for real parameters; pentadiagonal (bandwidth 2) when beta
    is nonzero, tridiagonal (bandwidth 1) when only alpha is.
    """
    if cfg.dim < 4:
        raise ValueError(f"dim must be >= 4 for the Liouvillian, got {cfg.dim}")
    a_op, ad_op = build_ladders(cfg)
    a, ad = a_op.entries, ad_op.entries
    ent = spec.alpha * (ad + a) + 0.5 * spec.beta * (ad @ ad + a @ a)
    return OperatorMatrix.from_entries(ent)


def hamiltonian_to_matrix(h: QuadraticHamiltonian, cfg: TruncationConfig) -> OperatorMatrix:
    """Realize a :class:`QuadraticHamiltonian` as a truncated matrix."""
    if cfg.dim < 4:
        raise ValueError(f"dim must be >= 4, got {cfg.dim}")
    a_op, ad_op = build_ladders(cfg)
    a, ad = a_op.entries, ad_op.entries
    eye = np.eye(cfg.dim, dtype=complex)
    ent = (
        h.eta * (ad @ a + 0.5 * eye)
        + h.delta * eye
        + h.R_coef * (ad @ ad)
        + h.L_coef * (a @ a)
        + h.r_coef * ad
        + h.l_coef * a
    )
    return OperatorMatrix.from_entries(ent)
