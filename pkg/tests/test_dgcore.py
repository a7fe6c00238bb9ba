import pytest
from hypothesis import given

from dgglue.dgcore import (
    CategoryError,
    FinDGCategory,
    category_violations,
    path_category,
    unit_category,
    validate_category,
)
from dgglue.exactlin import Cochain, cohomology_dims
from dgglue.randomized import random_dg_category, random_directed_category

from .conftest import rng_for, seeds


def test_kronecker_homs(kronecker):
    assert kronecker.dim("v0", "v1", 0) == 2
    assert kronecker.dim("v1", "v0", 0) == 0
    assert kronecker.hom("v0", "v0").dims == {0: 1}


def test_path_category_zero_relation():
    Q = path_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")], [("f", "g")])
    assert Q.dim("a", "c", 0) == 0
    validate_category(Q)
    Q2 = path_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    assert Q2.dim("a", "c", 0) == 1
    assert Q2.label("a", "c", 0, 0) == "g*f"


def test_cycle_rejected():
    with pytest.raises(ValueError):
        path_category(["a", "b"], [("f", "a", "b"), ("g", "b", "a")])


def test_unit_category():
    U = validate_category(unit_category())
    assert U.objects == ("*",) and U.hom("*", "*").dims == {0: 1}


def _broken(kind):
    homs = {("a", "a"): Cochain({0: 1}), ("a", "b"): Cochain({0: 1}), ("b", "b"): Cochain({0: 1})}
    comp = {("a", "a", "a"): {(0, 0): {(0, 0): {0: 1}}},
            ("a", "a", "b"): {(0, 0): {(0, 0): {0: 1}}},
            ("a", "b", "b"): {(0, 0): {(0, 0): {0: 1}}},
            ("b", "b", "b"): {(0, 0): {(0, 0): {0: 1}}}}
    units = {"a": {0: 1}, "b": {0: 1}}
    if kind == "unit":
        comp[("a", "b", "b")] = {(0, 0): {(0, 0): {0: 2}}}
    if kind == "missing unit":
        units = {"a": {0: 1}}
    if kind == "d2":
        homs[("a", "b")] = Cochain({0: 1, 1: 1, 2: 1}, {0: [{0: 1}], 1: [{0: 1}]})
    return FinDGCategory(["a", "b"], homs, comp, units)


def test_violations_are_named():
    assert category_violations(_broken(None)) == []
    assert {v.axiom for v in category_violations(_broken("unit"))} >= {"unit not neutral"}
    assert {v.axiom for v in category_violations(_broken("missing unit"))} >= {"missing unit"}
    assert "d^2 != 0" in {v.axiom for v in category_violations(_broken("d2"))}
    with pytest.raises(CategoryError) as err:
        validate_category(_broken("unit"))
    assert err.value.violations


def test_leibniz_violation_detected():
    # Hom(a,b) = k in degrees 0 and 1 with d = id; Hom(b,b) spanned by the unit and a closed
    # degree-0 element e with e o u0 = u1, which breaks the Leibniz rule
    homs = {("a", "a"): Cochain({0: 1}), ("b", "b"): Cochain({0: 2}),
            ("a", "b"): Cochain({0: 1, 1: 1}, {0: [{0: 1}]})}
    comp = {("a", "a", "a"): {(0, 0): {(0, 0): {0: 1}}},
            ("b", "b", "b"): {(0, 0): {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}},
            ("a", "a", "b"): {(0, 0): {(0, 0): {0: 1}}, (1, 0): {(0, 0): {0: 1}}},
            ("a", "b", "b"): {(0, 0): {(0, 0): {0: 1}, (1, 0): {0: 1}}, (0, 1): {(0, 0): {0: 1}}}}
    cat = FinDGCategory(["a", "b"], homs, comp, {"a": {0: 1}, "b": {0: 1}})
    axioms = {v.axiom for v in category_violations(cat)}
    assert "Leibniz rule fails" in axioms


def test_equality_by_content(kronecker):
    again = path_category(["v0", "v1"], [("x", "v0", "v1"), ("y", "v0", "v1")], name="other")
    assert again == kronecker and hash(again) == hash(kronecker)
    assert path_category(["v0", "v1"], [("x", "v0", "v1")]) != kronecker


@given(seeds)
def test_random_directed_categories_valid(seed):
    cat = random_directed_category(rng_for(seed))
    assert category_violations(cat) == []
    assert all(sum(c.dims.values()) <= 4 for c in cat.homs.values())


@given(seeds)
def test_random_dg_categories_valid(seed):
    cat = random_dg_category(rng_for(seed))
    assert category_violations(cat) == []
    for c in cat.homs.values():
        assert not c.d_squared_violations()
        cohomology_dims(c)
