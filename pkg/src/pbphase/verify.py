"""Invariant checks run by ``pbphase verify``.

Each check reduces to a worst deviation compared against its own
tolerance. Checks whose natural tolerance is the algebraic default take the
user-supplied ``tol``; the rest carry fixed tolerances (quadrature 1e-9,
limits 1e-6, convergence order 0.1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import infinite as inf
from . import quadrature as quad
from .finite import FiniteSpace
from .limits import geometric_schedule
from .linalg import (
    DEFAULT_TOL,
    QUADRATURE_TOL,
    commutator,
    hermiticity_defect,
    max_abs_diff,
    unitarity_defect,
)

__all__ = ["VerifyOutcome", "run_checks", "S_GRID"]

S_GRID = tuple(round(0.1 * i, 1) for i in range(11))
LIMIT_TOL = 1e-6
ORDER_TOL = 0.1
DIAGONAL_TOL = 1e-13
PERIODICITY_TOL = 1e-13
MODULUS_TOL = 1e-15
DEFECT_ZERO_TOL = 1e-14
DIVERGENCE_TOL = 1e-3
MODE_RANGE = range(-10, 11)
QUAD_SHIFTS = (0.1, 0.25, 0.5, 0.9)


@dataclass(frozen=True)
class VerifyOutcome:
    check_name: str
    passed: bool
    worst_deviation: float
    context: str

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _outcome(name: str, worst: float, tol: float, context: str) -> VerifyOutcome:
    worst = float(worst)
    return VerifyOutcome(name, bool(worst <= tol), worst, f"{context}; tol={tol:.1e}")


def _order_dev(order: float | None) -> float:
    return float("inf") if order is None else abs(order - 1.0)


def _finite_checks(l_max: int, tol: float) -> Iterator[tuple[str, Callable[[], float], float, str]]:
    spaces = [FiniteSpace(l) for l in range(l_max + 1)]
    ctx = f"l<={l_max}"
    schedule = geometric_schedule()

    def modulus():
        return max(
            np.max(np.abs(np.abs(np.column_stack([F.phase_state(n) for n in range(F.d)])) - F.d**-0.5))
            for F in spaces
        )

    def phase_completeness():
        worst = 0.0
        for F in spaces:
            P = np.column_stack([F.phase_state(n) for n in range(F.d)])
            worst = max(worst, max_abs_diff(P @ P.conj().T, np.eye(F.d)))
        return worst

    def shifted_completeness():
        worst = 0.0
        for F, s in itertools.product(spaces, S_GRID):
            V = np.column_stack([F.shifted_state(m - 1 + s) for m in F.labels])
            worst = max(worst, max_abs_diff(V @ V.conj().T, np.eye(F.d)))
        return worst

    def periodicity():
        return max(
            max_abs_diff(F.shifted_state(mu)[:, None], F.shifted_state(mu + F.d)[:, None])
            for F in spaces
            for mu in (-1.7, -0.5, 0.0, 0.3, 2.25)
        )

    def phase_hermitian():
        return max(hermiticity_defect(F.phase_operator()) for F in spaces)

    def phase_eigen():
        worst = 0.0
        for F in spaces:
            A = F.phase_operator()
            for n in range(F.d):
                v = F.phase_state(n)
                worst = max(worst, float(np.max(np.abs(A @ v - F.phase_grid[n] * v))))
        return worst

    def lz_s_hermitian():
        return max(hermiticity_defect(F.lz_s_operator(s)) for F in spaces for s in S_GRID)

    def lz_s_eigen():
        worst = 0.0
        for F, s in itertools.product(spaces, S_GRID):
            A = F.lz_s_operator(s)
            for m in F.labels:
                mu = m - 1 + s
                v = F.shifted_state(mu)
                worst = max(worst, float(np.max(np.abs(A @ v - mu * v))))
        return worst

    def route_equality():
        return max(
            max_abs_diff(F.shift_unitary_sum(s), F.shift_unitary_exp(s))
            for F in spaces
            for s in S_GRID
        )

    def unitarity():
        return max(
            max(unitarity_defect(F.shift_unitary_exp(s)), unitarity_defect(F.shift_unitary_sum(s)))
            for F in spaces
            for s in S_GRID
        )

    def permutation():
        return max(max_abs_diff(F.shift_unitary_exp(1.0), np.roll(np.eye(F.d), 1, axis=0)) for F in spaces)

    def commutator_equality():
        return max(
            max_abs_diff(F.commutator_closed_form().matrix, commutator(F.phase_operator(), F.lz_operator()))
            for F in spaces
        )

    def diagonal():
        return max(
            float(np.max(np.abs(np.diag(commutator(F.phase_operator(), F.lz_operator())))))
            for F in spaces
        )

    def overlap_closed():
        worst = 0.0
        for F in spaces:
            for n, mu in itertools.product(F.labels, (-0.75, 0.0, 0.5, 1.3, F.l + 0.9)):
                direct = np.vdot(F.angular_basis(n), F.shifted_state(mu))
                worst = max(worst, abs(F.overlap_shifted(n, mu) - direct))
        return worst

    def r_elements():
        worst = 0.0
        for F, s in itertools.product(spaces, (0.1, 0.5, 1.0)):
            R = F.r_matrix(s)
            closed = np.array([[F.r_element_closed(n, k, s) for k in F.labels] for n in F.labels])
            worst = max(worst, max_abs_diff(R, closed))
        return worst

    def case_i():
        worst = 0.0
        for F in spaces:
            for n, k in itertools.product(F.labels, F.labels[:-1]):
                est = F.normalized_limit(n, k, schedule)
                target = inf.analytic_limit(n, k)
                worst = max(worst, abs(est.value - target), abs(est.samples[-1] - target))
        return worst

    def case_i_order():
        return max(
            (
                _order_dev(F.normalized_limit(n, k, schedule).observed_order)
                for F in spaces
                for n, k in itertools.product(F.labels, F.labels[:-1])
            ),
            default=0.0,
        )

    def case_ii():
        worst = 0.0
        for F in spaces:
            for n in F.labels:
                est = F.normalized_limit(n, F.l, schedule)
                target = inf.analytic_limit(n, F.l)
                worst = max(worst, abs(est.value - target), abs(est.samples[-1] - target))
        return worst

    def divergence():
        s = 1e-5
        return max(abs(abs(F.naive_quotient(F.l, F.l, s)) * s / F.d - 1.0) for F in spaces)

    yield "conjugate_basis_modulus", modulus, MODULUS_TOL, ctx
    yield "phase_completeness", phase_completeness, tol, ctx
    yield "shifted_completeness", shifted_completeness, tol, ctx + "; s in 0..1 step 0.1"
    yield "shifted_label_periodicity", periodicity, PERIODICITY_TOL, ctx
    yield "phase_operator_hermitian", phase_hermitian, tol, ctx
    yield "phase_operator_eigenrelation", phase_eigen, tol, ctx
    yield "lz_s_hermitian", lz_s_hermitian, tol, ctx + "; s in 0..1 step 0.1"
    yield "lz_s_eigenrelation", lz_s_eigen, tol, ctx + "; s in 0..1 step 0.1"
    yield "shift_unitary_route_equality", route_equality, tol, ctx + "; s in 0..1 step 0.1"
    yield "shift_unitary_unitarity", unitarity, tol, ctx + "; s in 0..1 step 0.1"
    yield "shift_unitary_s1_cyclic", permutation, tol, ctx
    yield "commutator_closed_form", commutator_equality, tol, ctx
    yield "commutator_diagonal_vanishing", diagonal, DIAGONAL_TOL, ctx
    yield "overlap_shifted_closed_form", overlap_closed, PERIODICITY_TOL, ctx
    yield "r_matrix_closed_elements", r_elements, tol, ctx + "; s in {0.1,0.5,1}"
    yield "finite_limit_case_i", case_i, LIMIT_TOL, ctx + "; k<l"
    yield "finite_limit_case_i_order", case_i_order, ORDER_TOL, ctx + "; k<l"
    yield "finite_limit_case_ii", case_ii, LIMIT_TOL, ctx + "; k=l, sigma-normalized"
    yield "naive_limit_divergence", divergence, DIVERGENCE_TOL, ctx + "; n=k=l, s=1e-5"


def _infinite_checks(tol: float) -> Iterator[tuple[str, Callable[[], float], float, str]]:
    modes = list(itertools.product(MODE_RANGE, MODE_RANGE))
    ctx = "|n|,|m|<=10"
    schedule = geometric_schedule()

    def overlap():
        return max(
            abs(inf.overlap_c(n, m, s) - quad.overlap_quad(n, m, s)) for (n, m) in modes for s in QUAD_SHIFTS
        )

    def phi():
        return max(abs(inf.phi_matrix_element(n, m) - quad.phi_element_quad(n, m)) for n, m in modes)

    def r_elem():
        return max(
            abs(inf.r_element_infinite(n, m, s) - quad.r_element_quad(n, m, s))
            for (n, m) in modes
            for s in QUAD_SHIFTS
        )

    def translation():
        rng = np.random.default_rng(0)
        worst = 0.0
        for _ in range(50):
            n, m = (int(v) for v in rng.integers(-20, 21, size=2))
            shift = int(rng.integers(-20, 21))
            s = float(rng.uniform(0.0, 1.0))
            worst = max(worst, abs(inf.overlap_c(n, m, s) - inf.overlap_c(n + shift, m + shift, s)))
        return worst

    def paradox():
        worst = 0.0
        for n, m in modes:
            expected = 0j if n == m else -1j
            worst = max(worst, abs(inf.naive_commutator_element(n, m) - expected))
        return worst

    def canonical():
        worst = 0.0
        for n, m in modes:
            est = inf.canonical_limit_element(n, m, schedule)
            target = inf.analytic_limit(n, m)
            worst = max(worst, abs(est.value - target), abs(est.samples[-1] - target))
        return worst

    def canonical_order():
        return max(_order_dev(inf.canonical_limit_element(n, m, schedule).observed_order) for n, m in modes)

    windings = [inf.WindingFunction(m, s) for m in (-2, 0, 3) for s in (0.0, 0.25, 0.5, 0.9, 1.0)]

    def defect_zero():
        return max(abs(inf.boundary_defect(u2, u1)) for u2 in windings for u1 in windings if u1.s == u2.s)

    def defect_self_quad():
        return max(abs(quad.lz_form_difference_quad(u, u)) for u in windings)

    def defect_quad():
        return max(
            abs(inf.boundary_defect(u2, u1) - quad.lz_form_difference_quad(u2, u1))
            for u2 in windings
            for u1 in windings
        )

    yield "overlap_c_vs_quadrature", overlap, QUADRATURE_TOL, ctx + "; s in {0.1,0.25,0.5,0.9}; 4096 nodes"
    yield "phi_element_vs_quadrature", phi, QUADRATURE_TOL, ctx + "; 4096 nodes"
    yield "r_element_infinite_vs_quadrature", r_elem, QUADRATURE_TOL, ctx + "; s in {0.1,0.25,0.5,0.9}"
    yield "overlap_c_translation_invariance", translation, tol, "50 random pairs, seed 0"
    yield "naive_commutator_paradox", paradox, tol, ctx
    yield "canonical_limit", canonical, LIMIT_TOL, ctx
    yield "canonical_limit_order", canonical_order, ORDER_TOL, ctx
    yield "boundary_defect_matching_windings", defect_zero, DEFECT_ZERO_TOL, "modes {-2,0,3}"
    yield "boundary_defect_self_quadrature", defect_self_quad, QUADRATURE_TOL, "modes {-2,0,3}"
    yield "boundary_defect_vs_quadrature", defect_quad, QUADRATURE_TOL, "modes {-2,0,3}; 4096 nodes"


def run_checks(l_max: int, tol: float = DEFAULT_TOL) -> list[VerifyOutcome]:
    if l_max < 0:
        raise ValueError(f"l_max must be nonnegative, got {l_max}")
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    checks = itertools.chain(_finite_checks(l_max, tol), _infinite_checks(tol))
    return [_outcome(name, fn(), check_tol, ctx) for name, fn, check_tol, ctx in checks]
