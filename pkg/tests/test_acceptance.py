"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""

import cmath
import itertools
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from pbphase import quadrature as quad
from pbphase.finite import FiniteSpace
from pbphase.infinite import (
    WindingFunction,
    boundary_defect,
    canonical_limit_element,
    naive_commutator_element,
    overlap_c,
    phi_matrix_element,
    r_element_infinite,
)
from pbphase.limits import geometric_schedule
from pbphase.linalg import commutator, max_abs_diff, unitarity_defect

from conftest import ACCEPTANCE_LINES

# 1e-2 down to 1e-7 in decades
TO_1E7 = geometric_schedule(1e-2, 0.1, 6)
S_GRID = [round(0.1 * i, 1) for i in range(11)]
MODES = range(-10, 11)


def record(number, title, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def delta(a, b):
    return 1j if a == b else 0j


def test_1_closed_form_commutator():
    start = time.perf_counter()
    worst = 0.0
    for l in range(1, 51):
        F = FiniteSpace(l)
        direct = commutator(F.phase_operator(), F.lz_operator())
        worst = max(worst, max_abs_diff(F.commutator_closed_form().matrix, direct))
    elapsed = time.perf_counter() - start
    record(1, "closed-form commutator, l=1..50", worst <= 1e-12 and elapsed <= 10.0,
           f"max diff {worst:.2e} <= 1e-12, {elapsed:.2f}s <= 10s")


def test_2_diagonal_vanishing():
    worst = 0.0
    for l in range(0, 51):
        F = FiniteSpace(l)
        worst = max(worst, float(np.max(np.abs(np.diag(commutator(F.phase_operator(), F.lz_operator()))))))
    record(2, "diagonal commutator elements vanish, l<=50", worst <= 1e-13, f"max |diag| {worst:.2e} <= 1e-13")


def test_3_dual_route_unitary():
    route = unit = perm = 0.0
    for l in range(0, 21):
        F = FiniteSpace(l)
        for s in S_GRID:
            Us, Ue = F.shift_unitary_sum(s), F.shift_unitary_exp(s)
            route = max(route, max_abs_diff(Us, Ue))
            unit = max(unit, unitarity_defect(Us), unitarity_defect(Ue))
        cyclic = np.zeros((F.d, F.d))
        for m in F.labels:
            cyclic[F.index(m + 1 if m < l else -l), F.index(m)] = 1.0
        perm = max(perm, max_abs_diff(F.shift_unitary_sum(1.0), cyclic), max_abs_diff(F.shift_unitary_exp(1.0), cyclic))
    ok = route <= 1e-12 and unit <= 1e-12 and perm <= 1e-12
    record(3, "sum and spectral shift unitaries agree, l<=20", ok,
           f"route {route:.2e}, unitarity {unit:.2e}, s=1 cyclic {perm:.2e}; all <= 1e-12")


def test_4_finite_case_i_limit():
    F = FiniteSpace(5)
    worst_res = worst_order = 0.0
    for n, k in itertools.product(F.labels, F.labels[:-1]):
        est = F.normalized_limit(n, k, TO_1E7)
        target = delta(n, k)
        worst_res = max(worst_res, abs(est.samples[-1] - target), abs(est.value - target))
        worst_order = max(worst_order, abs(est.observed_order - 1.0))
    assert TO_1E7[-1] == pytest.approx(1e-7)
    record(4, "finite case (i) limit, l=5, k<l", worst_res <= 1e-6 and worst_order <= 0.1,
           f"residual {worst_res:.2e} <= 1e-6 at s=1e-7, |order-1| {worst_order:.3f} <= 0.1")


def test_5_finite_case_ii_limit():
    F = FiniteSpace(5)
    worst = 0.0
    for n in F.labels:
        est = F.normalized_limit(n, F.l, TO_1E7)
        worst = max(worst, abs(est.samples[-1] - delta(n, F.l)), abs(est.value - delta(n, F.l)))
    s = 1e-5
    ratio = abs(F.naive_quotient(F.l, F.l, s)) * s / F.d
    ok = worst <= 1e-6 and 0.999 <= ratio <= 1.001
    record(5, "finite case (ii) sigma-normalized limit, l=5, k=l", ok,
           f"residual {worst:.2e} <= 1e-6; naive |v| s/d = {ratio:.6f} in [0.999, 1.001]")


def test_6_infinite_canonical_elements():
    worst = 0.0
    paradox = 0.0
    for n, m in itertools.product(MODES, MODES):
        est = canonical_limit_element(n, m, TO_1E7)
        worst = max(worst, abs(est.samples[-1] - delta(n, m)), abs(est.value - delta(n, m)))
        naive = naive_commutator_element(n, m)
        paradox = max(paradox, abs(naive - (0 if n == m else -1j)))
    ok = worst <= 1e-6 and paradox == 0.0
    record(6, "infinite canonical elements i*delta, |n|,|m|<=10", ok,
           f"residual {worst:.2e} <= 1e-6; naive elements 0 / -i exactly (dev {paradox:.1e})")


def test_7_surface_term():
    windings = [WindingFunction(m, s) for m in (-3, 0, 1, 4) for s in (0.0, 0.2, 0.5, 0.75, 1.0)]
    zero = 0.0
    closed = 0.0
    quadrature = 0.0
    for u2, u1 in itertools.product(windings, windings):
        value = boundary_defect(u2, u1)
        if u1.s == u2.s:
            zero = max(zero, abs(value))
            continue
        explicit = -1j / (2 * math.pi) * (
            np.conj(u2(2 * math.pi)) * u1(2 * math.pi) - np.conj(u2(0.0)) * u1(0.0)
        )
        closed = max(closed, abs(value - explicit))
        quadrature = max(quadrature, abs(value - quad.lz_form_difference_quad(u2, u1)))
    ok = zero <= 1e-14 and closed <= 1e-9 and quadrature <= 1e-9
    record(7, "surface term", ok,
           f"matching windings {zero:.1e} <= 1e-14; closed form {closed:.1e}, quadrature {quadrature:.1e} <= 1e-9")


def test_8_quadrature_oracles():
    assert quad.DEFAULT_QUADRATURE.node_count == 4096
    ov = r = 0.0
    for n, m, s in itertools.product(MODES, MODES, (0.1, 0.25, 0.5, 0.9)):
        ov = max(ov, abs(overlap_c(n, m, s) - quad.overlap_quad(n, m, s)))
        r = max(r, abs(r_element_infinite(n, m, s) - quad.r_element_quad(n, m, s)))
    ph = max(abs(phi_matrix_element(n, m) - quad.phi_element_quad(n, m)) for n, m in itertools.product(MODES, MODES))
    ok = max(ov, ph, r) <= 1e-9
    record(8, "closed forms vs 4096-node quadrature", ok,
           f"overlap {ov:.1e}, phi {ph:.1e}, R {r:.1e}; all <= 1e-9")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "pbphase", *args], capture_output=True)
    return proc.returncode, proc.stdout


def test_9_determinism():
    commands = [
        ("verify", "--l-max", "10"),
        ("finite-limit", "--l", "5", "7", "--n", "5", "--k", "5"),
        ("infinite-limit", "--n", "1", "--k", "-2", "--format", "json"),
        ("commutator", "--l", "4"),
    ]
    identical = []
    for cmd in commands:
        first, second = _cli(*cmd), _cli(*cmd)
        identical.append(first == second and first[0] == 0 and first[1])
    record(9, "byte-identical repeated runs", all(identical),
           f"{sum(map(bool, identical))}/{len(commands)} commands identical, exit 0")
