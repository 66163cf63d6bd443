"""Generators, bracket relations, flow invariance, reduced phase space."""

from __future__ import annotations

import io
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyads.resonance import (
    GeneratorSet,
    PhaseCurvePoint,
    ResonanceSpec,
    ad_h0,
    flow_h0,
    generators,
    h0_polynomial,
    phase_curve,
    phase_curve_residual,
    syzygy_residual,
    verify_bracket_table,
    write_phase_curve_csv,
)

COPRIME_PAIRS = [(p, q) for p in range(1, 5) for q in range(1, p + 1)
                 if math.gcd(p, q) == 1]


class TestResonanceSpec:
    def test_defaults_are_commensurate(self):
        spec = ResonanceSpec(n=4, p=3, q=2)
        w = spec.exact_omegas()
        assert w[1] / w[0] == Fraction_like(3, 2)
        assert len(w) == 4
        assert all(x > 0 for x in w)

    @pytest.mark.parametrize("kwargs", [
        dict(n=1, p=2, q=1),
        dict(n=2, p=2, q=2),
        dict(n=2, p=1, q=2),
        dict(n=2, p=0, q=1),
        dict(n=2, p=2, q=1, omega=(1.0,)),
        dict(n=2, p=2, q=1, omega=(1.0, -2.0)),
        dict(n=2, p=2, q=1, omega=(1.0, 3.0)),
        dict(n=3, p=2, q=1, omega=(1.0, 2.0, 2.0)),
    ])
    def test_rejects_bad_input(self, kwargs):
        with pytest.raises(ValueError):
            ResonanceSpec(**kwargs)

    def test_accepts_matching_ratio(self):
        spec = ResonanceSpec(n=2, p=2, q=1, omega=(440.0, 880.0))
        assert spec.float_omegas() == (440.0, 880.0)

    def test_equal_frequencies_allowed_only_for_unison(self):
        ResonanceSpec(n=2, p=1, q=1, omega=(3.0, 3.0))
        with pytest.raises(ValueError):
            ResonanceSpec(n=3, p=1, q=1, omega=(3.0, 3.0, 3.0))


def Fraction_like(a, b):
    from fractions import Fraction
    return Fraction(a, b)


class TestGenerators:
    @pytest.mark.parametrize("p,q", COPRIME_PAIRS)
    def test_degrees(self, p, q):
        spec = ResonanceSpec(n=3, p=p, q=q)
        gens = generators(spec)
        assert gens[-1].degree() == p + q
        assert gens[0].degree() == p + q
        for k in range(1, 4):
            assert gens[k].degree() == 2

    def test_ids_cover_mixed_pair_and_actions(self):
        gens = generators(ResonanceSpec(n=3, p=2, q=1))
        assert gens.ids() == [-1, 0, 1, 2, 3]
        assert isinstance(gens, GeneratorSet)

    def test_action_values_are_moduli(self):
        spec = ResonanceSpec(n=2, p=1, q=1)
        gens = generators(spec)
        z = (0.6 + 0.8j, 0.3 - 0.4j)
        assert gens[1].evaluate(z) == pytest.approx(abs(z[0]) ** 2)
        assert gens[2].evaluate(z) == pytest.approx(abs(z[1]) ** 2)

    def test_mixed_generators_are_conjugate_values(self):
        spec = ResonanceSpec(n=2, p=2, q=1)
        gens = generators(spec)
        z = (0.5 + 0.2j, -0.3 + 0.7j)
        vm = gens[-1].evaluate(z)
        v0 = gens[0].evaluate(z)
        assert vm == pytest.approx(v0.conjugate())

    @pytest.mark.parametrize("p,q", COPRIME_PAIRS)
    def test_generators_span_kernel_of_h0_bracket(self, p, q):
        spec = ResonanceSpec(n=3, p=p, q=q)
        gens = generators(spec)
        for k in gens.ids():
            assert ad_h0(gens[k], spec).is_zero()

    def test_h0_self_commutes(self):
        spec = ResonanceSpec(n=2, p=3, q=2)
        h0 = h0_polynomial(spec)
        assert ad_h0(h0, spec).is_zero()


class TestBracketTable:
    @pytest.mark.parametrize("p,q", COPRIME_PAIRS)
    def test_every_pair_matches_closed_form(self, p, q):
        checks = verify_bracket_table(ResonanceSpec(n=3, p=p, q=q))
        assert len(checks) == 10  # 5 generators, unordered pairs
        for chk in checks:
            assert chk.ok, f"pair {chk.pair} disagrees for p={p} q={q}"

    @pytest.mark.parametrize("p,q", COPRIME_PAIRS)
    def test_syzygy_residual_vanishes(self, p, q):
        assert syzygy_residual(ResonanceSpec(n=2, p=p, q=q)).is_zero()
        assert syzygy_residual(ResonanceSpec(n=4, p=p, q=q)).is_zero()


class TestFlow:
    def test_time_zero_is_identity(self):
        spec = ResonanceSpec(n=3, p=2, q=1)
        z0 = (1 + 2j, 3 - 1j, 0.5j)
        assert flow_h0(z0, 0.0, spec) == z0

    def test_flow_composes_additively(self):
        spec = ResonanceSpec(n=2, p=3, q=1)
        z0 = (0.3 + 0.1j, -0.2 + 0.9j)
        a = flow_h0(flow_h0(z0, 0.7, spec), 1.1, spec)
        b = flow_h0(z0, 1.8, spec)
        for x, y in zip(a, b):
            assert x == pytest.approx(y, abs=1e-15)

    def test_moduli_preserved_exactly_enough(self):
        spec = ResonanceSpec(n=2, p=2, q=1)
        rng = random.Random(11)
        for _ in range(25):
            z0 = tuple(complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                       for _ in range(2))
            t = rng.uniform(-30, 30)
            zt = flow_h0(z0, t, spec)
            for a, b in zip(z0, zt):
                assert abs(b) == pytest.approx(abs(a), rel=1e-13)

    @settings(max_examples=50, deadline=None)
    @given(
        seed=st.integers(0, 2**32 - 1),
        t=st.floats(-50, 50, allow_nan=False),
    )
    def test_generator_values_conserved(self, seed, t):
        spec = ResonanceSpec(n=3, p=3, q=2)
        rng = random.Random(seed)
        z0 = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                   for _ in range(3))
        zt = flow_h0(z0, t, spec)
        gens = generators(spec)
        for k in gens.ids():
            v0 = gens[k].evaluate(z0)
            vt = gens[k].evaluate(zt)
            assert abs(vt - v0) <= 1e-12 * max(abs(v0), 1.0)


class TestPhaseCurve:
    def test_unison_curve_peaks_at_half(self):
        spec = ResonanceSpec(n=2, p=1, q=1)
        points = phase_curve(spec, 1.0, (), samples=201)
        top = max(pt.sigma0p for pt in points)
        assert top == pytest.approx(0.5, abs=1e-12)
        peak = max(points, key=lambda pt: pt.sigma0p)
        assert peak.sigma1 == pytest.approx(0.5, abs=1e-12)

    def test_endpoints_touch_zero(self):
        spec = ResonanceSpec(n=2, p=2, q=1)
        points = phase_curve(spec, 3.0, (), samples=51)
        assert points[0].sigma0p == 0.0
        assert points[-1].sigma0p == pytest.approx(0.0, abs=1e-12)

    def test_residuals_tiny_on_curve(self):
        spec = ResonanceSpec(n=3, p=3, q=2)
        points = phase_curve(spec, 5.0, (0.25,), samples=87)
        for pt in points:
            assert abs(phase_curve_residual(spec, 5.0, (0.25,), pt)) < 1e-12

    def test_residual_detects_off_curve_point(self):
        spec = ResonanceSpec(n=2, p=1, q=1)
        bogus = PhaseCurvePoint(sigma1=0.5, sigma0p=0.9, sigmam1p=0.0)
        assert abs(phase_curve_residual(spec, 1.0, (), bogus)) > 0.1

    def test_zero_budget_degenerates_to_origin(self):
        spec = ResonanceSpec(n=2, p=1, q=1)
        assert phase_curve(spec, 0.0, ()) == [PhaseCurvePoint(0.0, 0.0, 0.0)]

    def test_validation_errors(self):
        spec = ResonanceSpec(n=3, p=1, q=1)
        with pytest.raises(ValueError):
            phase_curve(spec, 1.0, (0.1,), samples=1)
        with pytest.raises(ValueError):
            phase_curve(spec, 1.0, (), samples=10)  # missing fixed action
        with pytest.raises(ValueError):
            phase_curve(spec, 1.0, (-0.5,))
        with pytest.raises(ValueError):
            phase_curve(spec, 0.1, (5.0,))  # infeasible budget

    def test_csv_shape_and_rows(self):
        spec = ResonanceSpec(n=2, p=1, q=1)
        buf = io.StringIO()
        rows = write_phase_curve_csv(buf, spec, 1.0, (), samples=11)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "sigma1,sigma0p_plus,sigma0p_minus,residual"
        assert rows == 11
        assert len(lines) == 12
        for line in lines[1:]:
            s1, plus, minus, res = map(float, line.split(","))
            assert plus >= 0.0 >= minus
            assert abs(res) < 1e-12
