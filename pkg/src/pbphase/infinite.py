"""Closed-form matrix elements for the planar rotor in infinite dimensions.

No infinite matrices are built. Every quantity is a single matrix element
between Fourier modes ``e^{in phi}`` under the inner product
``(f, g) = (1/2pi) * integral_0^{2pi} conj(f) g dphi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .limits import LimitEstimate, estimate_limit, geometric_schedule

__all__ = [
    "WindingFunction",
    "overlap_c",
    "phi_matrix_element",
    "naive_commutator_element",
    "r_element_infinite",
    "canonical_limit_element",
    "boundary_defect",
    "analytic_limit",
]

# |m + s - n| below this is the removable point of the overlap.
SINGULAR_ATOL = 1e-14

_NORM = 1.0 / math.sqrt(2.0 * math.pi)


def _expm1i(x: float) -> complex:
    return complex(-2.0 * math.sin(0.5 * x) ** 2, math.sin(x))


def _as_int(v, name: str) -> int:
    if isinstance(v, bool) or int(v) != v:
        raise ValueError(f"{name} must be an integer, got {v!r}")
    return int(v)


@dataclass(frozen=True)
class WindingFunction:
    """``u(phi) = e^{i(m+s)phi} / sqrt(2pi)``, so ``u(2pi) = e^{2 pi i s} u(0)``."""

    m: int
    s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _as_int(self.m, "m"))
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"winding s must lie in [0, 1], got {self.s}")

    @property
    def mu(self) -> float:
        return self.m + self.s

    def __call__(self, phi):
        return _NORM * np.exp(1j * self.mu * np.asarray(phi))

    def lz_image(self, phi):
        """``-i u'(phi)``."""
        return self.mu * self(phi)


def overlap_c(n: int, m: int, s: float) -> complex:
    """``(e^{in phi}, e^{i(m+s) phi})``."""
    s = float(s)
    alpha = _as_int(m, "m") - _as_int(n, "n") + s
    if abs(alpha) < SINGULAR_ATOL:
        return 1.0 + 0.0j
    # e^{2 pi i alpha} only sees s mod 1; integer alpha gives exactly 0
    frac = s - round(s)
    return _expm1i(2.0 * math.pi * frac) / (2j * math.pi * alpha)


def phi_matrix_element(n: int, m: int) -> complex:
    k = _as_int(m, "m") - _as_int(n, "n")
    if k == 0:
        return complex(math.pi)
    return 1.0 / (1j * k)


def naive_commutator_element(n: int, m: int) -> complex:
    """``(n, [phi, L_z] m)`` evaluated as if ``L_z`` were symmetric on ``phi e^{im phi}``.

    Gives 0 on the diagonal and ``-i`` everywhere off it, which is not the
    canonical ``i delta_{mn}``.
    """
    return (_as_int(m, "m") - _as_int(n, "n")) * phi_matrix_element(n, m)


def r_element_infinite(n: int, m: int, s: float) -> complex:
    # m*c from e^{is phi} L_z, (m+s)*c from L_z(s) e^{is phi}
    if not s > 0.0:
        raise ValueError(f"shift must be positive, got {s}")
    return -s * overlap_c(n, m, s)


def canonical_limit_element(
    n: int, m: int, schedule: Sequence[float] | None = None
) -> LimitEstimate:
    """Extrapolate ``(n, R m) / (i s)`` to ``s -> 0``; the limit is ``i delta_{nm}``."""
    _as_int(n, "n")
    _as_int(m, "m")
    if schedule is None:
        schedule = geometric_schedule()
    return estimate_limit(lambda s: r_element_infinite(n, m, s) / (1j * s), schedule)


def boundary_defect(u2: WindingFunction, u1: WindingFunction) -> complex:
    """Surface term of ``(u2, L_z u1) - (L_z u2, u1)``.

    Equal to ``-(i/2pi) (e^{2 pi i (s1 - s2)} - 1) conj(u2(0)) u1(0)``; it
    vanishes whenever the windings differ by an integer.
    """
    u0 = complex(np.conj(u2(0.0)) * u1(0.0))
    ds = u1.s - u2.s
    ds -= round(ds)
    return -1j / (2.0 * math.pi) * _expm1i(2.0 * math.pi * ds) * u0


def analytic_limit(n: int, m: int) -> complex:
    return 1j if n == m else 0j

