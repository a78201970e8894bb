"""
Tests for grid refinement and the variation function F(x) = V_a^x.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.helpers import UNIT, constant, functions, split, step_exponents

HALF = Fraction(1, 2)


def small_engine(**kwargs):
    from varbv.config.schema import EngineConfig

    return EngineConfig(**{"max_points": 200, **kwargs})


class TestInitialGrid:
    def test_collects_every_feature(self):
        from varbv.core.model import SpikeFunction
        from varbv.engine.refine import initial_grid

        p = split(10, 2).with_overrides({Fraction(1, 5): 3})
        f = SpikeFunction.from_mapping(UNIT, {Fraction(2, 3): 1})
        grid = initial_grid(p, f, [Fraction(1, 7)])
        assert set(grid.points) == {Fraction(0), Fraction(1, 7), Fraction(1, 5), HALF, Fraction(2, 3), Fraction(1)}

    def test_domain_mismatch(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import Interval, StepFunction
        from varbv.engine.refine import initial_grid

        with pytest.raises(InvalidModel) as exc:
            initial_grid(constant(2), StepFunction.zero(Interval(0, 2)))
        assert exc.value.field == "domain"


class TestRefineVariation:
    def test_constant_exponent_jump(self):
        from varbv.core.model import StepFunction
        from varbv.engine.refine import refine_variation

        result = refine_variation(constant(3), StepFunction.jump(UNIT, HALF, Fraction(1, 2)))
        assert result.lower_bound == 0.125
        assert result.converged

    def test_crossing_intervals_approach_smaller_exponent(self):
        from varbv.core.model import StepFunction
        from varbv.engine.refine import refine_variation

        f = StepFunction.jump(UNIT, HALF, Fraction(1, 4))
        result = refine_variation(split(2, 10), f, small_engine(max_points=2000))
        # the best interval starts far left of the jump, where p = 2
        assert 0.25**2.1 < result.lower_bound <= 0.0625
        assert result.rounds >= 1

    def test_cap_below_initial_grid(self):
        from varbv.core.model import SpikeFunction
        from varbv.engine.refine import refine_variation

        f = SpikeFunction.from_mapping(UNIT, {Fraction(k, 10): 1 for k in range(1, 10)})
        result = refine_variation(constant(2), f, small_engine(max_points=4))
        assert not result.converged
        assert result.rounds == 0
        assert result.lower_bound == 2.0

    def test_sampled_function_is_evaluated_once(self):
        from varbv.core.model import SampledFunction
        from varbv.engine.refine import refine_variation

        f = SampledFunction(UNIT, (0, Fraction(1, 3), 1), (0, 1, 0))
        result = refine_variation(split(2, 10), f)
        assert result.converged
        assert result.rounds == 0
        assert result.grid_size == 3

    def test_tagged_mode(self):
        from varbv.core.model import SpikeFunction, StepExponent
        from varbv.engine.refine import refine_variation

        p = StepExponent.constant(UNIT, 4, {HALF: 2})
        f = SpikeFunction.from_mapping(UNIT, {HALF: Fraction(1, 2)})
        plain = refine_variation(p, f, mode="plain")
        tagged = refine_variation(p, f, mode="tagged")
        assert plain.lower_bound == 2 * 0.5**4
        assert tagged.lower_bound == 2 * 0.5**2


class TestVariationFunction:
    def test_jump(self):
        from varbv.core.model import StepFunction
        from varbv.engine.refine import variation_function

        f = StepFunction.jump(UNIT, HALF, 1)
        values = variation_function(constant(2), f, [0, Fraction(1, 4), HALF, Fraction(3, 4), 1])
        assert values == [0.0, 0.0, 0.0, 1.0, 1.0]

    def test_unsorted_points(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import StepFunction
        from varbv.engine.refine import variation_function

        with pytest.raises(InvalidModel) as exc:
            variation_function(constant(2), StepFunction.zero(UNIT), [HALF, 0])
        assert exc.value.field == "xs"

    @settings(max_examples=100, deadline=None)
    @given(step_exponents(), functions(), st.lists(st.integers(0, 24), min_size=10, max_size=10))
    def test_nondecreasing(self, p, f, ticks):
        from varbv.engine.refine import trace_variation

        xs = [Fraction(k, 24) for k in sorted(ticks)]
        trace = trace_variation(p, f, xs, small_engine(max_points=120))
        assert all(u <= v for u, v in zip(trace.exact, trace.exact[1:]))
        assert all(u <= v for u, v in zip(trace.values, trace.values[1:]))
        assert trace.exact[-1] <= trace.result.exact_total
