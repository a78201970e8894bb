"""
Tests for the core domain types: intervals, exponents, point functions,
partitions and grids.
"""
from fractions import Fraction

import pytest

from tests.helpers import UNIT, split


class TestRational:
    def test_accepts_exact_literals(self):
        from varbv.core.model import rational

        assert rational("3/4") == Fraction(3, 4)
        assert rational(2) == Fraction(2)
        assert rational(" -1/3 ") == Fraction(-1, 3)

    def test_rejects_floats_and_decimals(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import rational

        with pytest.raises(InvalidModel):
            rational(0.5)
        with pytest.raises(InvalidModel):
            rational("0.5")
        with pytest.raises(InvalidModel):
            rational(True)


class TestInterval:
    def test_reversed_interval_rejected(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import Interval

        with pytest.raises(InvalidModel):
            Interval(1, 0)

    def test_require_outside_raises(self):
        from varbv.core.errors import OutOfDomain

        with pytest.raises(OutOfDomain) as exc:
            UNIT.require(Fraction(3, 2), "x")
        assert exc.value.field == "x"

    def test_mirror(self):
        assert UNIT.mirror(Fraction(1, 4)) == Fraction(3, 4)
        assert UNIT.midpoint == Fraction(1, 2)


class TestStepExponent:
    def test_left_closed_pieces(self):
        p = split(10, 2)
        assert p.value_at(0) == 10
        assert p.value_at(Fraction(1, 2)) == 2
        assert p.value_at(1) == 2

    def test_override_wins_pointwise(self):
        from varbv.core.model import StepExponent

        p = StepExponent.constant(UNIT, 4, {Fraction(1, 3): 2})
        assert p.value_at(Fraction(1, 3)) == 2
        assert p.value_at(Fraction(1, 4)) == 4
        assert p.essential_min == 4

    def test_invalid_values(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import StepExponent

        with pytest.raises(InvalidModel) as exc:
            StepExponent.from_pieces([0, 1], [Fraction(1, 2)])
        assert exc.value.field == "values"
        with pytest.raises(InvalidModel):
            StepExponent.from_pieces([0, 1], [2, 3])
        with pytest.raises(InvalidModel):
            StepExponent.from_pieces([0, 1, 1], [2, 3])

    def test_evaluation_outside_domain(self):
        from varbv.core.errors import OutOfDomain

        with pytest.raises(OutOfDomain):
            split(10, 2).value_at(2)

    def test_restrict_keeps_values(self):
        p = split(10, 2).with_overrides({Fraction(3, 4): 5})
        left = p.restrict(0, Fraction(1, 2))
        right = p.restrict(Fraction(1, 4), 1)
        assert left.values == (Fraction(10),)
        assert left.overrides == ()
        assert right.breakpoints == (Fraction(1, 4), Fraction(1, 2), Fraction(1))
        assert right.values == (Fraction(10), Fraction(2))
        assert right.value_at(Fraction(3, 4)) == 5

    def test_reflect(self):
        p = split(10, 2, at=Fraction(1, 3)).reflect()
        assert p.breakpoints == (Fraction(0), Fraction(2, 3), Fraction(1))
        assert p.values == (Fraction(2), Fraction(10))

    def test_on_breakpoints_is_same_function(self):
        p = split(10, 2)
        q = p.on_breakpoints([Fraction(1, 4), Fraction(3, 4)])
        assert len(q.values) == 4
        for k in range(9):
            x = Fraction(k, 8)
            assert p.value_at(x) == q.value_at(x)


class TestPointFunctions:
    def test_step_default_point_values(self):
        from varbv.core.model import StepFunction

        f = StepFunction.from_pieces([0, Fraction(1, 2), 1], [1, 3])
        assert f.value_at(0) == 1
        assert f.value_at(Fraction(1, 2)) == 1
        assert f.value_at(Fraction(3, 4)) == 3
        assert f(1) == 3.0

    def test_jump(self):
        from varbv.core.model import StepFunction

        f = StepFunction.jump(UNIT, Fraction(1, 2), Fraction(1, 4))
        assert f.value_at(Fraction(1, 2)) == 0
        assert f.value_at(Fraction(1, 2) + Fraction(1, 10**9)) == Fraction(1, 4)
        assert f.anchored

    def test_anchor_requires_zero_at_a(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import SpikeFunction

        with pytest.raises(InvalidModel) as exc:
            SpikeFunction.from_mapping(UNIT, {0: 1}, anchored=True)
        assert exc.value.field == "anchored"

    def test_spikes_over_base(self):
        from varbv.core.model import SpikeFunction, StepFunction

        base = StepFunction.from_pieces([0, 1], [2])
        f = SpikeFunction.from_mapping(UNIT, {Fraction(1, 3): 0.5}, base=base)
        assert f.value_at(Fraction(1, 3)) == 0.5
        assert f.value_at(Fraction(1, 2)) == 2
        assert Fraction(1, 3) in f.grid_points()

    def test_sampled_rejects_unsampled_points(self):
        from varbv.core.errors import UnsampledPoint
        from varbv.core.model import SampledFunction

        f = SampledFunction(UNIT, (0, Fraction(1, 2), 1), (0, 1, 0))
        assert f.value_at(Fraction(1, 2)) == 1
        with pytest.raises(UnsampledPoint):
            f.value_at(Fraction(1, 3))

    def test_restrict_reads_original_endpoint_values(self):
        from varbv.core.model import StepFunction

        f = StepFunction.jump(UNIT, Fraction(1, 2), 1)
        right = f.restrict(Fraction(1, 2), 1)
        assert right.value_at(Fraction(1, 2)) == 0
        assert right.value_at(1) == 1
        assert not right.anchored

    def test_reflect_and_scale(self):
        from varbv.core.model import SpikeFunction

        f = SpikeFunction.from_mapping(UNIT, {Fraction(1, 4): Fraction(1, 2)})
        assert f.reflect().value_at(Fraction(3, 4)) == Fraction(1, 2)
        assert f.scaled(2).value_at(Fraction(1, 4)) == 1


class TestPartitions:
    def test_tag_outside_interval(self):
        from varbv.core.errors import InvalidTag
        from varbv.core.model import Partition, TaggedPartition

        partition = Partition.of([0, Fraction(1, 2), 1])
        with pytest.raises(InvalidTag) as exc:
            TaggedPartition(partition, (Fraction(1, 4), Fraction(1, 4)))
        assert exc.value.field == "tags.1"

    def test_tag_on_endpoint_allowed(self):
        from varbv.core.model import Partition, TaggedPartition

        tagged = TaggedPartition(Partition.of([0, Fraction(1, 2), 1]), (Fraction(1, 2), Fraction(1, 2)))
        assert len(list(tagged.tagged_intervals())) == 2

    def test_partition_must_increase(self):
        from varbv.core.errors import InvalidModel
        from varbv.core.model import Partition

        with pytest.raises(InvalidModel):
            Partition.of([0, 0, 1])


class TestGrid:
    def test_refined_adds_midpoints_and_offsets(self):
        from varbv.core.model import Grid

        grid = Grid.of([0, 1])
        finer = grid.refined(UNIT, Fraction(1, 8))
        assert finer.points == (Fraction(0), Fraction(1, 8), Fraction(1, 2), Fraction(7, 8), Fraction(1))
        assert finer.generation == 1
        assert all(t in finer for t in grid)

    def test_restrict(self):
        from varbv.core.model import Grid

        grid = Grid.of([0, Fraction(1, 4), Fraction(1, 2), 1])
        assert grid.restrict(Fraction(1, 4), 1).points == (Fraction(1, 4), Fraction(1, 2), Fraction(1))
