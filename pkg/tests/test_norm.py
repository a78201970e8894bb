"""
Tests for the Luxemburg norm and the embedding comparison.
"""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.helpers import UNIT, constant, split, step_exponents
from varbv.core.model import StepExponent

HALF = Fraction(1, 2)
TOL = 1e-8


def spikes(mapping):
    from varbv.core.model import SpikeFunction

    return SpikeFunction.from_mapping(UNIT, mapping)


class TestModularAtScale:
    def test_scale_must_be_positive(self):
        from varbv.core.errors import NonpositiveScale
        from varbv.core.model import Grid, StepFunction
        from varbv.norm.luxemburg import modular_at_scale

        f = StepFunction.jump(UNIT, HALF, 1)
        for bad in (0, -1.0, math.inf):
            with pytest.raises(NonpositiveScale):
                modular_at_scale(constant(2), f, bad, Grid.of([0, HALF, 1]))

    def test_homogeneous_for_constant_exponent(self):
        from varbv.core.model import Grid, StepFunction
        from varbv.norm.luxemburg import modular_at_scale

        f = StepFunction.jump(UNIT, HALF, 1)
        assert modular_at_scale(constant(3), f, 2.0, Grid.of([0, HALF, 1])) == 0.125


class TestLuxemburgNorm:
    @pytest.mark.parametrize("height", [Fraction(3, 4), Fraction(5), Fraction(1, 1000)])
    def test_single_jump_constant_exponent(self, height):
        from varbv.core.model import StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        result = luxemburg_norm(constant(2), StepFunction.jump(UNIT, HALF, height), TOL)
        assert abs(result.norm - float(height)) <= TOL
        lo, hi = result.bracket
        assert lo <= float(height) <= hi
        assert result.modular_at_norm <= 1.0

    def test_zero_function(self):
        from varbv.core.model import StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        result = luxemburg_norm(split(2, 10), StepFunction.zero(UNIT))
        assert result.norm == 0.0
        assert result.bracket == (0.0, 0.0)

    def test_underflowed_modular_is_not_zero_norm(self):
        from varbv.core.model import StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        # (1e-4)^100 underflows at λ = 1
        result = luxemburg_norm(StepExponent.constant(UNIT, 100), StepFunction.jump(UNIT, HALF, 1e-4), TOL)
        assert abs(result.norm - 1e-4) <= TOL
        lo, hi = result.bracket
        assert 0.0 < lo <= 1e-4 <= hi
        assert result.evaluations > 1

    def test_zero_function_on_custom_grid(self):
        from varbv.core.model import Grid, StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        f = StepFunction.from_pieces([0, HALF, 1], [Fraction(1, 3), Fraction(1, 3)], [Fraction(1, 3)] * 3)
        result = luxemburg_norm(constant(2), f, grid=Grid.of([0, Fraction(1, 4), HALF, 1]))
        assert result.norm == 0.0
        assert result.evaluations == 0

    @pytest.mark.parametrize(
        "exponent, mapping, mode",
        [
            (constant(2), {Fraction(1, 4): HALF, Fraction(3, 4): HALF}, "plain"),
            (split(2, 4), {Fraction(1, 4): HALF, Fraction(3, 4): Fraction(1, 3)}, "plain"),
            (split(3, Fraction(3, 2)), {HALF: Fraction(5, 2)}, "plain"),
            (StepExponent.constant(UNIT, 4, {HALF: 2}), {HALF: HALF}, "tagged"),
        ],
    )
    def test_unit_ball_consistency(self, exponent, mapping, mode):
        from varbv.norm.luxemburg import luxemburg_norm, modular_at_scale

        f = spikes(mapping)
        result = luxemburg_norm(exponent, f, TOL, mode=mode)
        assert modular_at_scale(exponent, f, result.norm + TOL, result.grid, mode) <= 1.0
        assert modular_at_scale(exponent, f, result.norm - TOL, result.grid, mode) > 1.0 - 1e-9

    def test_two_spikes(self):
        from varbv.norm.luxemburg import luxemburg_norm

        # four increments of 1/2: 4·(1/(2λ))² = 1 at λ = 1
        result = luxemburg_norm(constant(2), spikes({Fraction(1, 4): HALF, Fraction(3, 4): HALF}), TOL)
        assert abs(result.norm - 1.0) <= TOL

    @pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
    def test_homogeneity(self, c):
        """Each norm is within TOL of its true value, so c·base carries c·TOL of that error."""
        from varbv.core.model import Grid
        from varbv.norm.luxemburg import luxemburg_norm

        p = split(2, 4)
        f = spikes({Fraction(1, 4): HALF, Fraction(3, 4): Fraction(1, 3)})
        grid = Grid.of([Fraction(k, 16) for k in range(17)])
        base = luxemburg_norm(p, f, TOL, grid=grid)
        scaled = luxemburg_norm(p, f.scaled(c), TOL, grid=grid)
        assert abs(scaled.norm - c * base.norm) <= (1 + c) * TOL

    def test_tagged_norm_dominates_plain(self):
        from varbv.norm.luxemburg import luxemburg_norm

        p = StepExponent.constant(UNIT, 4, {HALF: 2})
        f = spikes({HALF: HALF})
        plain = luxemburg_norm(p, f, TOL)
        tagged = luxemburg_norm(p, f, TOL, mode="tagged")
        assert tagged.norm >= plain.norm - TOL

    def test_no_finite_bracket(self):
        from varbv.config.schema import NormConfig
        from varbv.core.errors import NoFiniteBracket
        from varbv.core.model import StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        config = NormConfig(scale_cap_log2=4)
        with pytest.raises(NoFiniteBracket):
            luxemburg_norm(constant(1), StepFunction.jump(UNIT, HALF, 1000), config=config)
        with pytest.raises(NoFiniteBracket):
            luxemburg_norm(constant(1), StepFunction.jump(UNIT, HALF, Fraction(1, 1000)), config=config)

    def test_nonpositive_tolerance(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import StepFunction
        from varbv.norm.luxemburg import luxemburg_norm

        with pytest.raises(InvalidModel):
            luxemburg_norm(constant(2), StepFunction.jump(UNIT, HALF, 1), tol=0.0)


class TestEmbeddingCompare:
    def test_ordered_pair(self):
        from varbv.norm.luxemburg import embedding_compare

        f = spikes({Fraction(1, 4): HALF, Fraction(3, 4): HALF})
        report = embedding_compare(constant(2), split(2, 4), f, TOL)
        assert report.holds
        assert report.norm_large.norm <= report.norm_small.norm + TOL
        assert report.norm_small.grid == report.norm_large.grid

    def test_unordered_pair(self):
        from varbv.core.errors import NotPointwiseOrdered
        from varbv.norm.luxemburg import embedding_compare

        f = spikes({Fraction(1, 4): HALF})
        with pytest.raises(NotPointwiseOrdered) as exc:
            embedding_compare(split(2, 4), constant(2), f)
        assert exc.value.field == "values.1"

    @pytest.mark.slow
    @settings(max_examples=100, deadline=None)
    @given(
        step_exponents(max_pieces=3, overrides=False),
        st.lists(st.sampled_from([0, 1, 2]), min_size=3, max_size=3),
        st.dictionaries(st.integers(1, 11), st.sampled_from([Fraction(1, 4), HALF, Fraction(3, 2)]), min_size=1, max_size=3),
    )
    def test_norm_ordering_for_random_pairs(self, p, bumps, heights):
        from varbv.config.schema import EngineConfig
        from varbv.norm.luxemburg import embedding_compare

        larger = StepExponent(p.domain, p.breakpoints, tuple(v + b for v, b in zip(p.values, bumps)))
        f = spikes({Fraction(k, 12): h for k, h in heights.items()})
        report = embedding_compare(p, larger, f, 1e-6, EngineConfig(max_points=60))
        assert report.holds
