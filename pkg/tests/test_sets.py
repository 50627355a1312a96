"""Containedness, display, and bounds of the symbolic set types."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from probdist import sets
from probdist.errors import DimensionError
from probdist.sets import (
    FiniteSet,
    Integers,
    Interval,
    Naturals,
    Naturals0,
    Power,
    PositiveReals,
    Reals,
    Union,
    bounds,
    extended_union,
    numeric_mask,
)

INF = float("inf")


class TestContains:
    def test_naturals0_rejects_negative(self):
        assert Naturals0().contains([-1]) == [False]

    def test_closed_interval_endpoints(self):
        assert Interval(0, 1).contains([0, 0.5, 1, 1.5]) == [True, True, True, False]

    def test_union_with_symbolic_token(self):
        s = Union((FiniteSet(("uniform",)), Interval(0, 1)))
        assert s.contains(["uniform"]) == [True]
        assert s.contains([0.5, 2.0]) == [True, False]

    def test_integers_accept_whole_doubles(self):
        assert Integers().contains([3.0, 3.5, -2.0]) == [True, False, True]

    def test_reals_only_finite(self):
        assert Reals().contains([1.5, INF, -INF, float("nan")]) == [True, False, False, False]

    def test_open_ends_exclude_infinities(self):
        s = Interval(-INF, INF, "open")
        assert s.contains([-INF, 0.0, INF]) == [False, True, False]

    def test_interval_closures(self):
        assert Interval(0, 1, "left-open").contains([0, 1]) == [False, True]
        assert Interval(0, 1, "right-open").contains([0, 1]) == [True, False]
        assert Interval(0, 1, "open").contains([0, 1]) == [False, False]

    def test_positive_reals_zero_flag(self):
        assert PositiveReals().contains([0.0]) == [False]
        assert PositiveReals(include_zero=True).contains([0.0]) == [True]

    def test_power_tuples(self):
        p = Power(Reals(), 2)
        assert p.contains([(1, 2), (1, INF)]) == [True, False]
        with pytest.raises(DimensionError):
            p.contains([1.0])

    def test_power_exponent_one_is_base(self):
        assert Power(Naturals0(), 1).contains([2, -1]) == [True, False]

    def test_arity_mismatch_errors(self):
        with pytest.raises(DimensionError):
            Reals().contains([(1, 2)])

    def test_finite_set_numeric_and_token(self):
        s = FiniteSet((1, 2, "a"))
        assert s.contains([1.0, 2, 3, "a", "b"]) == [True, True, False, True, False]


class TestDisplay:
    def test_interval(self):
        assert Interval(0, 1).display() == "[0,1]"
        assert Interval(0, 1, "left-open").display() == "(0,1]"

    def test_core_sets(self):
        assert Reals().display() == "R"
        assert PositiveReals().display() == "R+"
        assert Naturals0().display() == "N0"
        assert Integers().display() == "Z"

    def test_finite_set_elides_long_runs(self):
        assert FiniteSet(range(1, 11)).display() == "{1, 2,...,9, 10}"
        assert FiniteSet((1, 2, 3)).display() == "{1, 2, 3}"

    def test_union_rendering(self):
        s = Union((FiniteSet(("uniform",)), Interval(0, 1)))
        assert s.display() == "{uniform} U [0,1]"

    def test_power_rendering(self):
        assert Power(Reals(), 3).display() == "R^3"


class TestExtendedUnion:
    def test_display(self):
        assert extended_union(Reals()).display() == "R U {-Inf, +Inf}"

    def test_contains_infinities(self):
        assert extended_union(Reals()).contains([INF]) == [True]
        assert extended_union(Interval(0, 1)).contains([-INF]) == [True]

    def test_rejects_other_sets(self):
        with pytest.raises(ValueError):
            extended_union(Naturals0())


class TestInvariants:
    def test_interval_sampled_members(self):
        rng = np.random.default_rng(7)
        iv = Interval(-2.0, 3.0)
        inner = rng.uniform(-2.0, 3.0, size=50)
        assert all(iv.contains(inner))
        outer = np.concatenate((inner - 10.0, inner + 10.0))
        assert not any(iv.contains(outer))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=4, unique=True),
           st.floats(-6, 6))
    def test_union_is_elementwise_or(self, elements, x):
        members = (FiniteSet(elements), Interval(-1.0, 1.0))
        u = Union(members)
        expected = any(m.contains([x])[0] for m in members)
        assert u.contains([x]) == [expected]

    @given(st.floats(allow_nan=False, allow_infinity=False, width=32))
    def test_integers_iff_zero_fraction(self, x):
        assert Integers().contains([x])[0] == (abs(x - round(x)) <= 1e-12)

    @given(st.floats(-100, 100))
    def test_numeric_mask_matches_contains(self, x):
        for s in (Reals(), PositiveReals(), Naturals0(), Integers(),
                  Interval(-1, 4, "left-open"), FiniteSet((0, 2.5, 7))):
            assert bool(numeric_mask(s, np.array([x]))[0]) == s.contains([x])[0]


class TestValidationAndBounds:
    def test_interval_ordering_enforced(self):
        with pytest.raises(ValueError):
            Interval(2, 1)
        with pytest.raises(ValueError):
            Interval(1, 1, "open")

    def test_finite_set_uniqueness(self):
        with pytest.raises(ValueError):
            FiniteSet((1, 1))

    def test_power_exponent(self):
        with pytest.raises(ValueError):
            Power(Reals(), 0)

    def test_bounds(self):
        assert bounds(Reals()) == (-INF, INF)
        assert bounds(PositiveReals()) == (0.0, INF)
        assert bounds(Naturals()) == (1.0, INF)
        assert bounds(Interval(-2, 5)) == (-2.0, 5.0)
        assert bounds(FiniteSet((3, 1, 2))) == (1.0, 3.0)
        assert bounds(Union((Interval(0, 1), FiniteSet((4,))))) == (0.0, 4.0)

    def test_is_discrete_set(self):
        assert sets.is_discrete_set(Naturals0())
        assert sets.is_discrete_set(FiniteSet((1, 2)))
        assert not sets.is_discrete_set(Interval(0, 1))
        assert not sets.is_discrete_set(Reals())
