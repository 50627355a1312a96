"""Parameter sets: propagation groups, conflicts, and prefixed collections."""

import math

import pytest
from hypothesis import given, strategies as st

from probdist.errors import (
    ParameterConflictError,
    ParameterError,
    ParameterWarning,
    SupportViolationError,
    UnknownParameterError,
)
from probdist.params import (
    ParameterDef,
    ParameterizationGroup,
    ParameterSet,
    ParameterSetCollection,
    collect,
    normalize_weights,
)
from probdist.sets import Interval, PositiveReals, Reals


def normal_defs():
    pos = PositiveReals()
    return [
        ParameterDef("mean", 0.0, Reals(), description="Mean"),
        ParameterDef("var", 1.0, pos, description="Variance"),
        ParameterDef("sd", 1.0, pos, description="Standard Deviation"),
        ParameterDef("prec", 1.0, pos, description="Precision"),
    ]


def normal_group():
    return ParameterizationGroup(
        ("var", "sd", "prec"), "var",
        to_canonical={"sd": lambda s: s * s, "prec": lambda p: 1.0 / p},
        from_canonical={"sd": math.sqrt, "prec": lambda v: 1.0 / v},
    )


def normal_set(**values):
    return ParameterSet(normal_defs(), [normal_group()], values=values)


def gamma_set(**values):
    pos = PositiveReals()
    defs = [
        ParameterDef("shape", 1.0, pos),
        ParameterDef("rate", 1.0, pos),
        ParameterDef("scale", 1.0, pos),
    ]
    group = ParameterizationGroup(
        ("rate", "scale"), "rate",
        to_canonical={"scale": lambda s: 1.0 / s},
        from_canonical={"scale": lambda r: 1.0 / r},
    )
    return ParameterSet(defs, [group], values=values)


class TestConstruction:
    def test_precision_propagates_to_siblings(self):
        ps = normal_set(prec=4)
        assert ps.values() == {"mean": 0.0, "var": 0.25, "sd": 0.5, "prec": 4}

    def test_conflicting_parameterisations_error(self):
        with pytest.raises(ParameterConflictError) as err:
            normal_set(var=1, prec=2)
        assert "{var, sd, prec}" in str(err.value)

    def test_conflict_is_order_independent(self):
        with pytest.raises(ParameterConflictError):
            normal_set(prec=2, var=1)

    def test_defaults(self):
        ps = normal_set()
        assert ps.values() == {"mean": 0.0, "var": 1.0, "sd": 1.0, "prec": 1.0}

    def test_unknown_argument(self):
        with pytest.raises(UnknownParameterError):
            normal_set(nope=1)

    def test_support_violation(self):
        with pytest.raises(SupportViolationError):
            normal_set(var=-1)


class TestGetSet:
    def test_get_value(self):
        assert gamma_set(shape=1, rate=1).get_value("shape") == 1

    def test_get_unknown(self):
        with pytest.raises(UnknownParameterError):
            normal_set().get_value("nope")

    def test_set_then_scale_updates_rate(self):
        ps = gamma_set(shape=1, rate=1)
        ps.set_values(shape=1, rate=2)
        assert ps.get_value("rate") == 2
        ps.set_values(scale=2)
        assert ps.get_value("rate") == 0.5

    def test_sd_updates_precision(self):
        ps = normal_set()
        ps.set_values(sd=2)
        assert ps.get_value("prec") == pytest.approx(0.25, rel=1e-12)

    def test_same_call_same_group_warns_last_wins(self):
        ps = normal_set()
        with pytest.warns(ParameterWarning):
            ps.set_values(var=9, sd=2)
        assert ps.get_value("var") == 4
        assert ps.get_value("sd") == 2

    def test_no_partial_mutation_on_failure(self):
        ps = normal_set()
        with pytest.raises(SupportViolationError):
            ps.set_values(mean=5, var=-1)
        assert ps.get_value("mean") == 0.0

    def test_setting_outside_group_is_isolated(self):
        ps = normal_set()
        ps.set_values(mean=3)
        assert ps.get_value("var") == 1.0

    def test_non_settable(self):
        defs = [ParameterDef("n", 5, PositiveReals(), settable=False)]
        ps = ParameterSet(defs)
        with pytest.raises(ParameterError):
            ps.set_values(n=6)

    def test_cross_parameter_check(self):
        def ordered(values):
            if not values["lower"] < values["upper"]:
                raise ParameterError("lower must be < upper")
        defs = [ParameterDef("lower", 0.0, Reals()), ParameterDef("upper", 1.0, Reals())]
        ps = ParameterSet(defs, check=ordered)
        with pytest.raises(ParameterError):
            ps.set_values(lower=2.0)
        assert ps.get_value("lower") == 0.0

    @given(st.lists(st.sampled_from(["var", "sd", "prec"]), min_size=1, max_size=6),
           st.floats(0.25, 4.0))
    def test_group_consistency_after_any_sequence(self, order, value):
        ps = normal_set()
        for name in order:
            ps.set_values(**{name: value})
        var = ps.get_value("var")
        assert ps.get_value("sd") == pytest.approx(math.sqrt(var), rel=1e-12)
        assert ps.get_value("prec") == pytest.approx(1.0 / var, rel=1e-12)


class TestAsTable:
    def test_normal_rows(self):
        rows = normal_set().as_table()
        assert [r["id"] for r in rows] == ["mean", "var", "sd", "prec"]
        assert rows[1]["support"] == "R+"
        assert rows[0]["description"] == "Mean"

    def test_empty(self):
        assert ParameterSet([]).as_table() == []


class TestCollection:
    def build(self):
        inner1 = normal_set()
        inner2 = gamma_set()
        return inner1, inner2, collect([("Norm1", inner1), ("Gamma2", inner2)])

    def test_prefixed_ids(self):
        _, _, coll = self.build()
        assert coll.ids()[:4] == ["Norm1_mean", "Norm1_var", "Norm1_sd", "Norm1_prec"]
        assert "Gamma2_rate" in coll.ids()

    def test_delegation(self):
        inner1, _, coll = self.build()
        coll.set_values({"Norm1_mean": 5})
        assert inner1.get_value("mean") == 5
        assert coll.get_value("Norm1_mean") == 5

    def test_propagation_through_collection(self):
        inner1, _, coll = self.build()
        coll.set_values({"Norm1_sd": 2})
        assert inner1.get_value("prec") == pytest.approx(0.25)

    def test_duplicate_prefix_errors(self):
        with pytest.raises(ParameterError):
            collect([("a", normal_set()), ("a", gamma_set())])

    def test_nested_collection_and_unprefixed_entry(self):
        bounds = ParameterSet([ParameterDef("trunc_lower", -1.0, Reals()),
                               ParameterDef("trunc_upper", 1.0, Reals())])
        inner = ParameterSetCollection([("T", gamma_set()), (None, bounds)])
        outer = ParameterSetCollection([("mix", inner)])
        assert outer.ids() == ["mix_T_shape", "mix_T_rate", "mix_T_scale",
                               "mix_trunc_lower", "mix_trunc_upper"]
        outer.set_values({"mix_T_scale": 2.0})
        assert outer.get_value("mix_T_rate") == 0.5

    def test_as_table_order(self):
        _, _, coll = self.build()
        rows = coll.as_table()
        assert rows[0]["id"] == "Norm1_mean"
        assert rows[-1]["id"] == "Gamma2_scale"

    def test_unknown_flat_id(self):
        _, _, coll = self.build()
        with pytest.raises(UnknownParameterError):
            coll.get_value("Norm9_mean")


class TestWeights:
    def test_uniform_token_passes(self):
        assert normalize_weights("uniform") == "uniform"

    def test_renormalizes_with_warning(self):
        with pytest.warns(ParameterWarning):
            w = normalize_weights([1, 1], n=2)
        assert w == [0.5, 0.5]

    def test_close_sum_silent(self):
        assert normalize_weights([0.5, 0.5]) == [0.5, 0.5]

    def test_negative_rejected(self):
        with pytest.raises(SupportViolationError):
            normalize_weights([-0.5, 1.5])

    def test_length_checked(self):
        with pytest.raises(ParameterError):
            normalize_weights([0.5, 0.5], n=3)
