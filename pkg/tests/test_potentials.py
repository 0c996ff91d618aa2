"""Potential family, presets, and their parameter maps."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from miespec.potentials import (MiePreset, PotentialParams, coulomb,
                                eval_mie_general, eval_potential, kratzer_fues,
                                modified_kratzer)

positive = st.floats(min_value=0.05, max_value=50.0, allow_nan=False)


def test_constant_potential():
    assert eval_potential(PotentialParams(0.0, 0.0, 5.0), 2.0) == 5.0


def test_direct_arithmetic():
    assert eval_potential(PotentialParams(1.0, -2.0, 0.0), 1.0) == -1.0


def test_kratzer_minimum_depth():
    params = kratzer_fues(5.0, 1.0)
    assert eval_potential(params, 1.0) == pytest.approx(-5.0, rel=1e-14)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_radius_domain_error(r):
    with pytest.raises(ValueError):
        eval_potential(PotentialParams(0.0, -1.0, 0.0), r)
    with pytest.raises(ValueError):
        eval_mie_general(MiePreset(1.0, 1.0, 2.0, 1.0), r)


class TestMieGeneral:
    def test_depth_at_equilibrium(self):
        preset = MiePreset(d0=5.0, r0=2.0, a=2.0, b=1.0)
        assert eval_mie_general(preset, 2.0) == pytest.approx(-5.0, rel=1e-14)

    def test_vanishes_monotonically_at_infinity(self):
        preset = MiePreset(d0=3.0, r0=1.0, a=4.0, b=2.0)
        r = np.linspace(5.0, 500.0, 50)
        values = eval_mie_general(preset, r)
        assert np.all(np.diff(np.abs(values)) < 0.0)
        assert abs(values[-1]) < 1e-4

    def test_matches_kratzer_map_on_log_grid(self):
        d0, r0 = 5.0, 1.3
        preset = MiePreset(d0=d0, r0=r0, a=2.0, b=1.0)
        params = kratzer_fues(d0, r0)
        r = np.logspace(np.log10(0.01 * r0), np.log10(100.0 * r0), 200)
        mie = eval_mie_general(preset, r)
        closed = eval_potential(params, r)
        scale = np.maximum(np.abs(mie), np.abs(closed))
        assert np.all(np.abs(mie - closed) <= 1e-12 * scale)

    @given(d0=positive, r0=positive, r=positive)
    def test_two_exponent_form_equals_abc_form(self, d0, r0, r):
        preset = MiePreset(d0=d0, r0=r0, a=2.0, b=1.0)
        params = kratzer_fues(d0, r0)
        got = eval_mie_general(preset, r)
        want = eval_potential(params, r)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_equal_exponents_rejected(self):
        with pytest.raises(ValueError):
            MiePreset(1.0, 1.0, 2.0, 2.0)


class TestPresetMaps:
    def test_kratzer_unit_parameters(self):
        params = kratzer_fues(1.0, 1.0)
        assert (params.A, params.B, params.C) == (1.0, -2.0, 0.0)

    def test_kratzer_arithmetic(self):
        params = kratzer_fues(5.0, 2.0)
        assert (params.A, params.B, params.C) == (20.0, -20.0, 0.0)

    @given(d0=positive, r0=positive)
    def test_kratzer_always_attractive(self, d0, r0):
        assert kratzer_fues(d0, r0).B < 0.0

    def test_modified_paper_literal_map(self):
        params = modified_kratzer(1.0, 1.0, convention="paper-literal")
        assert (params.A, params.B, params.C) == (-1.0, 2.0, -1.0)
        assert eval_potential(params, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_modified_standard_map(self):
        params = modified_kratzer(1.0, 1.0)
        assert (params.A, params.B, params.C) == (1.0, -2.0, 1.0)
        assert eval_potential(params, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_modified_conventions_differ_in_binding(self):
        assert modified_kratzer(1.0, 1.0).B < 0.0
        assert modified_kratzer(1.0, 1.0, convention="paper-literal").B > 0.0

    def test_standard_form_is_nonnegative(self):
        params = modified_kratzer(2.0, 1.5)
        r = np.linspace(0.05, 30.0, 400)
        values = eval_potential(params, r)
        assert np.all(values >= 0.0)
        assert eval_potential(params, 1.5) == pytest.approx(0.0, abs=1e-12)
        away = np.abs(r - 1.5) > 0.05
        assert np.all(values[away] > 0.0)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            modified_kratzer(1.0, 1.0, convention="mystery")

    def test_coulomb_map(self):
        params = coulomb(-1.0)
        assert (params.A, params.B, params.C) == (0.0, -1.0, 0.0)
        assert eval_potential(params, 2.0) == -0.5

    @pytest.mark.parametrize("d0,r0", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
    def test_preset_parameter_gates(self, d0, r0):
        with pytest.raises(ValueError):
            kratzer_fues(d0, r0)
        with pytest.raises(ValueError):
            modified_kratzer(d0, r0)

    def test_units_gate(self):
        with pytest.raises(ValueError):
            PotentialParams(0.0, -1.0, 0.0, mass=0.0)
        with pytest.raises(ValueError):
            PotentialParams(0.0, -1.0, 0.0, hbar=-1.0)
