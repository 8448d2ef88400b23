import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbphase import quadrature as quad
from pbphase.infinite import (
    WindingFunction,
    boundary_defect,
    canonical_limit_element,
    naive_commutator_element,
    overlap_c,
    phi_matrix_element,
    r_element_infinite,
)

MODES = range(-10, 11)
SHIFTS = (0.1, 0.25, 0.5, 0.9)


class TestOverlap:
    def test_examples(self):
        assert overlap_c(3, 3, 0) == 1
        assert overlap_c(3, 5, 0) == 0
        assert abs(overlap_c(2, 2, 0.5) - 2j / math.pi) <= 1e-15
        assert abs(overlap_c(2, 2, 0.5) - quad.overlap_quad(2, 2, 0.5)) <= 1e-12

    @pytest.mark.parametrize("s", SHIFTS)
    def test_against_quadrature(self, s):
        worst = max(abs(overlap_c(n, m, s) - quad.overlap_quad(n, m, s)) for n, m in itertools.product(MODES, MODES))
        assert worst <= 1e-9

    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.floats(0, 1))
    def test_translation_invariance(self, n, m, shift, s):
        assert overlap_c(n, m, s) == overlap_c(n + shift, m + shift, s)

    def test_removable_point(self):
        # m + s - n = 0 only when s is an integer
        assert overlap_c(4, 3, 1.0) == 1


class TestPhiElement:
    def test_examples(self):
        assert phi_matrix_element(2, 2) == math.pi
        assert abs(phi_matrix_element(0, 1) - (-1j)) <= 1e-15
        assert abs(quad.phi_element_quad(0, 0) - math.pi) <= 1e-12
        assert abs(quad.phi_element_quad(0, 1) - (-1j)) <= 1e-12

    def test_against_quadrature(self):
        worst = max(abs(phi_matrix_element(n, m) - quad.phi_element_quad(n, m)) for n, m in itertools.product(MODES, MODES))
        assert worst <= 1e-9

    @given(st.integers(-30, 30), st.integers(-30, 30))
    def test_conjugate_symmetry(self, n, m):
        assert phi_matrix_element(n, m) == phi_matrix_element(m, n).conjugate()


class TestNaiveCommutator:
    @pytest.mark.parametrize("sep", [1, 2, 5, -3])
    def test_off_diagonal_constant(self, sep):
        assert naive_commutator_element(0, sep) == -1j
        oracle = sep * quad.phi_element_quad(0, sep)
        assert abs(oracle - (-1j)) <= 1e-9

    def test_diagonal_zero(self):
        assert all(naive_commutator_element(n, n) == 0 for n in MODES)


class TestRElement:
    def test_examples(self):
        assert abs(r_element_infinite(1, 1, 0.5) - (-1j / math.pi)) <= 1e-15
        assert abs(r_element_infinite(3, 1, 1e-6)) <= 1e-6

    def test_requires_positive_shift(self):
        with pytest.raises(ValueError):
            r_element_infinite(0, 0, 0.0)

    @pytest.mark.parametrize("s", SHIFTS)
    def test_against_split_quadrature(self, s):
        worst = max(
            abs(r_element_infinite(n, m, s) - quad.r_element_quad(n, m, s)) for n, m in itertools.product(MODES, MODES)
        )
        assert worst <= 1e-9

    @given(st.integers(-20, 20), st.integers(-20, 20), st.floats(1e-6, 1.0))
    def test_off_diagonal_bound(self, n, m, s):
        if n == m or m + s == n:
            return
        bound = s * 2 * abs(math.sin(math.pi * s)) / (2 * math.pi * abs(m + s - n))
        assert abs(r_element_infinite(n, m, s)) <= bound * (1 + 1e-12)
        # |e^{2 pi i s} - 1| <= 2 pi s, |m + s - n| >= |m - n| - 1
        if abs(m - n) > 1:
            assert abs(r_element_infinite(n, m, s)) <= s**2 / (abs(m - n) - 1) * (1 + 1e-12)


class TestCanonicalLimit:
    def test_diagonal_and_off_diagonal(self):
        schedule = [10.0**-p for p in range(2, 8)]
        diag = canonical_limit_element(0, 0, schedule)
        off = canonical_limit_element(0, 3, schedule)
        assert abs(diag.value - 1j) <= 1e-6 and abs(diag.samples[-1] - 1j) <= 1e-6
        assert abs(off.value) <= 1e-6 and abs(off.samples[-1]) <= 1e-6
        assert abs(diag.observed_order - 1) <= 0.1
        assert abs(off.observed_order - 1) <= 0.1

    def test_paradox_side_by_side(self):
        for n in (-2, 0, 7):
            assert naive_commutator_element(n, n) == 0
            assert abs(canonical_limit_element(n, n).value - 1j) <= 1e-6

    def test_rejects_bad_schedule(self):
        with pytest.raises(ValueError):
            canonical_limit_element(0, 0, [0.1, 0.1])


class TestBoundaryDefect:
    def test_winding_boundary_condition(self):
        u = WindingFunction(2, 0.3)
        assert abs(u(2 * math.pi) - cmath.exp(2j * math.pi * 0.3) * u(0.0)) <= 1e-14

    @pytest.mark.parametrize("m1,m2", [(0, 0), (1, -3), (4, 2)])
    @pytest.mark.parametrize("s", [0.0, 0.25, 0.6, 1.0])
    def test_matching_windings_vanish(self, m1, m2, s):
        u1, u2 = WindingFunction(m1, s), WindingFunction(m2, s)
        assert abs(boundary_defect(u2, u1)) <= 1e-14
        assert abs(quad.lz_form_difference_quad(u2, u1)) <= 1e-9

    def test_half_winding_value(self):
        u1, u2 = WindingFunction(0, 0.5), WindingFunction(0, 0.0)
        value = boundary_defect(u2, u1)
        assert abs(value - 0.050660591821168885722j) <= 1e-16
        assert abs(value - quad.lz_form_difference_quad(u2, u1)) <= 1e-9

    def test_integer_winding_difference_invisible(self):
        assert boundary_defect(WindingFunction(0, 0.0), WindingFunction(3, 1.0)) == 0

    @pytest.mark.parametrize("m1,s1,m2,s2", [(1, 0.1, 0, 0.7), (-2, 0.9, 3, 0.25), (5, 0.0, -5, 0.5)])
    def test_against_quadrature(self, m1, s1, m2, s2):
        u1, u2 = WindingFunction(m1, s1), WindingFunction(m2, s2)
        assert abs(boundary_defect(u2, u1) - quad.lz_form_difference_quad(u2, u1)) <= 1e-9

    def test_rejects_bad_winding(self):
        with pytest.raises(ValueError):
            WindingFunction(0, 1.5)
        with pytest.raises(ValueError):
            WindingFunction(0.5, 0.1)
