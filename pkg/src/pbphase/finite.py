"""Finite (2l+1)-dimensional phase / angular-momentum algebra.

Basis conventions: the angular basis vector ``|m>`` sits at index ``m + l``,
and the phase grid is ``phi_n = 2*pi*n/d`` for ``n = 0..2l``, so that
``<m|phi_n> = exp(-i m phi_n) / sqrt(d)``.

A fractional label ``mu`` names the state ``|mu> = d**-0.5 * sum_n
exp(i mu phi_n) |phi_n>``. Labels differing by a multiple of ``d`` give the
same vector, which is how the wrapped column of the shift unitary is
represented without a special case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .limits import LimitEstimate, estimate_limit, geometric_schedule
from .linalg import ComplexMatrix, frozen

__all__ = ["FiniteSpace", "OperatorSet", "CommutatorTable", "LABEL_ATOL"]

# |mu - n| below this (mod d) is treated as an exact label match.
LABEL_ATOL = 1e-14


def _expm1i(x: float) -> complex:
    """``exp(i x) - 1`` without cancellation for small ``x``."""
    return complex(-2.0 * math.sin(0.5 * x) ** 2, math.sin(x))


def _check_shift(s: float) -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"shift parameter must lie in [0, 1], got {s}")
    return s


@dataclass(frozen=True)
class OperatorSet:
    phi_op: ComplexMatrix
    lz_op: ComplexMatrix
    lz_s_op: ComplexMatrix
    shift_unitary: ComplexMatrix
    r_op: ComplexMatrix


@dataclass(frozen=True)
class CommutatorTable:
    """Closed-form commutator; ``degenerate`` is set for ``l = 0``."""

    matrix: ComplexMatrix
    degenerate: bool


@dataclass(frozen=True)
class FiniteSpace:
    l: int

    def __post_init__(self) -> None:
        if isinstance(self.l, bool) or int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a nonnegative integer, got {self.l!r}")
        object.__setattr__(self, "l", int(self.l))

    @property
    def d(self) -> int:
        return 2 * self.l + 1

    @cached_property
    def labels(self) -> np.ndarray:
        return frozen(np.arange(-self.l, self.l + 1))

    @cached_property
    def phase_grid(self) -> np.ndarray:
        return frozen(2.0 * np.pi * np.arange(self.d) / self.d)

    @cached_property
    def _phase_states(self) -> ComplexMatrix:
        # column n holds |phi_n> in the angular basis; m*n is reduced mod d
        # in integers so every exponent stays inside [0, 2pi)
        turns = np.mod(np.outer(self.labels, np.arange(self.d)), self.d)
        return frozen(np.exp(-2j * np.pi * turns / self.d) / math.sqrt(self.d))

    def sigma(self, s: float) -> float:
        """Effective shift of the top state, ``-2l-1+s``."""
        return _check_shift(s) - self.d

    def index(self, m: int) -> int:
        """Array index of angular label ``m``."""
        if int(m) != m or not -self.l <= m <= self.l:
            raise ValueError(f"angular label {m!r} outside [-{self.l}, {self.l}] (l={self.l})")
        return int(m) + self.l

    def angular_basis(self, m: int) -> np.ndarray:
        v = np.zeros(self.d, dtype=np.complex128)
        v[self.index(m)] = 1.0
        return v

    def phase_state(self, n: int) -> np.ndarray:
        if int(n) != n or not 0 <= n < self.d:
            raise ValueError(f"phase index {n!r} outside [0, {self.d - 1}] (l={self.l})")
        return self._phase_states[:, int(n)].copy()

    def _label_phases(self, mus) -> np.ndarray:
        """``exp(i mu phi_n) / sqrt(d)`` with rows n and one column per label."""
        mus = np.atleast_1d(np.asarray(mus, dtype=float))
        whole = np.floor(mus)
        n = np.arange(self.d)[:, None]
        # integer part reduced exactly; only the fractional part is rounded
        turns = np.mod(np.mod(whole.astype(np.int64) * n, self.d) + (mus - whole) * n, self.d)
        return np.exp(2j * np.pi * turns / self.d) / math.sqrt(self.d)

    def shifted_state(self, mu: float) -> np.ndarray:
        """State ``|mu>`` for a real label, in the angular basis."""
        return self._phase_states @ self._label_phases(float(mu))[:, 0]

    def overlap_shifted(self, n: int, mu: float) -> complex:
        """Closed form of ``<n|mu>`` as a normalised geometric sum."""
        self.index(n)
        d = self.d
        delta = float(mu) - n
        r = delta - d * round(delta / d)
        if abs(r) < LABEL_ATOL:
            return 1.0 + 0.0j
        return _expm1i(2.0 * np.pi * r) / (d * _expm1i(2.0 * np.pi * r / d))

    def phase_operator(self) -> ComplexMatrix:
        P = self._phase_states
        return (P * self.phase_grid) @ P.conj().T

    def lz_operator(self) -> ComplexMatrix:
        return np.diag(self.labels.astype(np.complex128))

    def _shifted_labels(self, s: float) -> np.ndarray:
        # m - 1 + s for m = -l..l; eigenvalues of L_z(s)
        return self.labels - 1.0 + _check_shift(s)

    def _shifted_states(self, mus: Sequence[float]) -> ComplexMatrix:
        return self._phase_states @ self._label_phases(mus)

    def lz_s_operator(self, s: float) -> ComplexMatrix:
        mus = self._shifted_labels(s)
        V = self._shifted_states(mus)
        return (V * mus) @ V.conj().T

    def shift_unitary_sum(self, s: float) -> ComplexMatrix:
        """Dyadic assembly: ``|m+s><m|`` for m < l plus ``|-l-1+s><l|``."""
        s = _check_shift(s)
        targets = np.append(self.labels[:-1] + s, -self.l - 1 + s)
        return self._shifted_states(targets)

    def shift_unitary_exp(self, s: float) -> ComplexMatrix:
        """Spectral assembly of ``exp(i s phi_op)`` from the phase eigenpairs."""
        s = _check_shift(s)
        P = self._phase_states
        return (P * np.exp(1j * s * self.phase_grid)) @ P.conj().T

    def commutator_closed_form(self) -> CommutatorTable:
        """Closed form of ``[phi_op, lz_op]``.

        Entry ``(m', m)`` is ``(2 pi/d) (m - m') / (exp(2 pi i (m - m')/d) - 1)``
        off the diagonal and zero on it.
        """
        d = self.d
        diff = self.labels[None, :] - self.labels[:, None]  # m - m'
        out = np.zeros((d, d), dtype=np.complex128)
        off = diff != 0
        # the root of unity only sees diff mod d; reducing it keeps the
        # angle small and expm1 avoids cancellation near diff = +-(d - 1)
        reduced = diff[off] - d * np.round(diff[off] / d)
        theta = 2.0 * np.pi * reduced / d
        denom = -2.0 * np.sin(0.5 * theta) ** 2 + 1j * np.sin(theta)
        out[off] = (2.0 * np.pi / d) * diff[off] / denom
        return CommutatorTable(out, degenerate=self.l == 0)

    def r_matrix(self, s: float) -> ComplexMatrix:
        U = self.shift_unitary_exp(s)
        return U @ self.lz_operator() - self.lz_s_operator(s) @ U

    def operators(self, s: float) -> OperatorSet:
        U = self.shift_unitary_exp(s)
        lz = self.lz_operator()
        lz_s = self.lz_s_operator(s)
        return OperatorSet(
            phi_op=frozen(self.phase_operator()),
            lz_op=frozen(lz),
            lz_s_op=frozen(lz_s),
            shift_unitary=frozen(U),
            r_op=frozen(U @ lz - lz_s @ U),
        )

    def r_element_closed(self, n: int, k: int, s: float) -> complex:
        """``<n|R|k>``: ``-s <n|k+s>`` below the top, ``-sigma <n|l+sigma>`` at it."""
        self.index(n)
        self.index(k)
        s = _check_shift(s)
        if k < self.l:
            return -s * self.overlap_shifted(n, k + s)
        sig = self.sigma(s)
        return -sig * self.overlap_shifted(n, self.l + sig)

    def effective_shift(self, k: int, s: float) -> float:
        """Shift actually applied to ``|k>`` by the shift unitary."""
        self.index(k)
        return self.sigma(s) if k == self.l else _check_shift(s)

    def naive_quotient(self, n: int, k: int, s: float) -> complex:
        """``<n|R|k> / (i s)`` regardless of which column is involved."""
        return self.r_element_closed(n, k, s) / (1j * s)

    def normalized_quotient(self, n: int, k: int, s: float) -> complex:
        """``<n|R|k>`` divided by ``i`` times the shift that column experiences."""
        return self.r_element_closed(n, k, s) / (1j * self.effective_shift(k, s))

    def normalized_limit(
        self, n: int, k: int, schedule: Sequence[float] | None = None
    ) -> LimitEstimate:
        self.index(n)
        self.index(k)
        if schedule is None:
            schedule = geometric_schedule()
        return estimate_limit(lambda s: self.normalized_quotient(n, k, s), schedule)
