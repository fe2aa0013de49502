"""Effort measure algebra: atoms, segments, mixing, shifting, integration."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rpfcontest.errors import DomainError, InputFormatError
from rpfcontest.measures import DensitySegment, EffortMeasure, dirac


def two_atom(e1=1.0, m1=0.5, e2=2.0, m2=0.5):
    return EffortMeasure.from_atoms([(e1, m1), (e2, m2)])


class TestConstruction:
    def test_dirac_is_unit_atom(self):
        p = dirac(1.0)
        assert p.locations.tolist() == [1.0]
        assert p.masses.tolist() == [1.0]

    def test_dirac_total_mass(self):
        assert dirac(2.5).total_mass == pytest.approx(1.0)

    def test_dirac_rejects_nonpositive_effort(self):
        with pytest.raises(DomainError):
            dirac(0.0)
        with pytest.raises(DomainError):
            dirac(-1.0)

    def test_duplicate_atoms_merge(self):
        p = EffortMeasure.from_atoms([(1.0, 0.25), (2.0, 0.3), (1.0, 0.25)])
        assert p.locations.tolist() == [1.0, 2.0]
        assert p.masses.tolist() == [0.5, 0.3]

    def test_mass_must_be_in_unit_interval(self):
        with pytest.raises(DomainError):
            EffortMeasure.from_atoms([(1.0, 1.5)])
        with pytest.raises(DomainError):
            EffortMeasure.from_atoms([(1.0, 0.7), (2.0, 0.7)])

    def test_atom_mass_strictly_positive(self):
        with pytest.raises(DomainError):
            EffortMeasure(np.array([1.0]), np.array([0.0]))

    def test_segment_grid_validation(self):
        with pytest.raises(DomainError):
            DensitySegment(np.array([1.0, 0.5]), np.array([1.0, 1.0]))
        with pytest.raises(DomainError):
            DensitySegment(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        with pytest.raises(DomainError):
            DensitySegment(np.array([1.0, 2.0]), np.array([-0.1, 1.0]))


class TestMassAndIntegration:
    def test_two_atoms_mass_adds(self):
        assert two_atom(1.0, 0.5, 2.0, 0.3).total_mass == pytest.approx(0.8)

    def test_uniform_segment_mass(self):
        p = EffortMeasure.uniform(1.0, 2.0, mass=0.6)
        assert p.total_mass == pytest.approx(0.6, abs=1e-12)

    def test_integrate_dirac_identity(self):
        assert dirac(2.0).integrate(lambda e: e) == pytest.approx(2.0)

    def test_integrate_atom_average(self):
        p = EffortMeasure.from_atoms([(1.0, 0.5), (3.0, 0.5)])
        assert p.integrate(lambda e: e) == pytest.approx(2.0)

    def test_integrate_quadratic_against_closed_form(self):
        # uniform unit mass just above 0 up to 1; integral of e^2 is 1/3
        p = EffortMeasure.uniform(1e-9, 1.0, mass=1.0, n=10_000)
        assert p.integrate(lambda e: e**2) == pytest.approx(1.0 / 3.0, abs=1e-6)

    def test_mean_effort(self):
        assert two_atom().mean_effort() == pytest.approx(1.5)


class TestMix:
    def test_boundary_weights_return_inputs(self):
        p, q = dirac(1.0), dirac(3.0)
        assert p.mix(1.0, q) is p
        assert p.mix(0.0, q) is q

    def test_even_mix_of_diracs(self):
        m = dirac(1.0).mix(0.5, dirac(3.0))
        assert m.locations.tolist() == [1.0, 3.0]
        assert m.masses.tolist() == [0.5, 0.5]

    def test_mass_is_linear(self):
        p = dirac(1.0)
        q = EffortMeasure.from_atoms([(2.0, 0.8)])
        assert p.mix(0.25, q).total_mass == pytest.approx(0.25 * 1.0 + 0.75 * 0.8)

    def test_mix_weight_validated(self):
        with pytest.raises(DomainError):
            dirac(1.0).mix(1.2, dirac(2.0))

    @given(st.floats(0.0, 1.0), st.floats(0.2, 5.0), st.floats(0.2, 5.0))
    @settings(max_examples=100, deadline=None)
    def test_integrate_linear_in_mixing(self, alpha, e1, e2):
        p = dirac(e1)
        q = EffortMeasure.from_atoms([(e2, 0.6)])
        g = lambda e: np.log1p(e) * e
        lhs = p.mix(alpha, q).integrate(g)
        rhs = alpha * p.integrate(g) + (1.0 - alpha) * q.integrate(g)
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestRightShift:
    def test_dirac_shift(self):
        assert dirac(1.0).right_shift(2.0).locations.tolist() == [3.0]

    def test_two_atom_shift(self):
        p = two_atom().right_shift(1.0)
        assert p.locations.tolist() == [2.0, 3.0]
        assert p.masses.tolist() == [0.5, 0.5]

    def test_mass_preserved(self):
        p = EffortMeasure.from_atoms([(0.5, 0.3), (4.0, 0.45)])
        assert p.right_shift(7.7).total_mass == pytest.approx(p.total_mass, abs=1e-15)

    def test_shift_must_be_positive(self):
        with pytest.raises(DomainError):
            dirac(1.0).right_shift(0.0)
        with pytest.raises(DomainError):
            dirac(1.0).right_shift(-1.0)

    @given(st.floats(0.1, 10.0), st.floats(0.1, 10.0))
    @settings(max_examples=100, deadline=None)
    def test_change_of_variables(self, e0, a):
        p = EffortMeasure.from_atoms([(e0, 0.4), (e0 + 1.0, 0.35)])
        g = lambda e: np.sqrt(e) + 1.0 / e
        lhs = p.right_shift(a).integrate(g)
        rhs = p.integrate(lambda e: g(e + a))
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_segments_translate(self):
        p = EffortMeasure.uniform(1.0, 2.0, mass=0.5)
        s = p.right_shift(3.0)
        assert s.segments[0].grid[0] == pytest.approx(4.0)
        assert s.total_mass == pytest.approx(0.5, abs=1e-12)

    def test_mix_and_shift_commute(self):
        p = two_atom()
        q = EffortMeasure.from_atoms([(0.7, 0.9)])
        a, alpha = 1.3, 0.4
        left = p.mix(alpha, q).right_shift(a)
        right = p.right_shift(a).mix(alpha, q.right_shift(a))
        assert left.allclose(right)


class TestSerialization:
    def test_json_round_trip(self):
        p = EffortMeasure(
            np.array([1.0, 2.5]), np.array([0.2, 0.3]),
            (DensitySegment(np.linspace(3.0, 4.0, 9), np.full(9, 0.4)),),
        )
        q = EffortMeasure.from_json(p.to_json())
        assert q.allclose(p)

    def test_dict_schema(self):
        d = two_atom().to_dict()
        assert d == {"atoms": [[1.0, 0.5], [2.0, 0.5]], "segments": []}

    def test_csv_ingestion(self, tmp_path):
        f = tmp_path / "atoms.csv"
        f.write_text("effort,mass\n1.0,0.5\n2.0,0.25\n")
        p = EffortMeasure.from_csv(f)
        assert p.locations.tolist() == [1.0, 2.0]
        assert p.total_mass == pytest.approx(0.75)

    def test_csv_errors_carry_line_numbers(self, tmp_path):
        f = tmp_path / "bad.csv"
        f.write_text("effort,mass\n1.0,0.5\n2.0\n")
        with pytest.raises(InputFormatError, match=r":3"):
            EffortMeasure.from_csv(f)

    def test_malformed_dict(self):
        with pytest.raises(InputFormatError):
            EffortMeasure.from_dict({"atoms": [[1.0, 0.5]], "segments": [{"grid": [1, 2]}]})


class TestDiscretize:
    def test_preserves_mass_and_moments(self):
        p = EffortMeasure.uniform(1.0, 3.0, mass=0.8, n=2049)
        d = p.discretize(points_per_segment=513)
        assert d.is_atomic()
        assert d.total_mass == pytest.approx(0.8, abs=1e-10)
        assert d.integrate(lambda e: e) == pytest.approx(p.integrate(lambda e: e), abs=1e-4)

    def test_atomic_measure_passes_through(self):
        p = two_atom()
        assert p.discretize() is p
