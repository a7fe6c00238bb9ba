import pytest
from hypothesis import given

from dgglue.dgcore import path_category, unit_category
from dgglue.exactlin import Cochain, cohomology_dims, euler_of_dims
from dgglue.glue import identity_morphism, upper_triangular, widetilde
from dgglue.randomized import random_cochain, random_directed_category, random_gluing, random_twisted_complex
from dgglue.sod import (
    EvaluationModule,
    ExplicitModule,
    HomModule,
    ResolutionDepthExceeded,
    basis_presentation,
    check_condition,
    check_perfectness,
    ks_partner,
    module_violations,
    proof_chain_tables,
    resolution_is_quasi_iso,
    semi_free_resolution,
    verify_fully_faithful,
)
from dgglue.twcx import k0_class, hom_cohomology, representable

from .conftest import rng_for, seeds


def _passing(seed):
    rng = rng_for(seed)
    while True:
        g = random_gluing(rng)
        if check_condition(g.S, g.T, g.phi).passed:
            C = upper_triangular(g.A, g.B, g.S)
            return g, C, widetilde(C, g.T, g.phi)


def test_identity_always_passes():
    g = random_gluing(rng_for(11), kind="id")
    rep = check_condition(g.S, g.T, g.phi)
    assert rep.passed and not rep.failures()
    assert "representable" in rep.note


def test_zero_map_into_nonzero_target_fails():
    for seed in range(50):
        g = random_gluing(rng_for(seed), kind="zero")
        if any(len(g.S(y)) for y in g.B.objects) and any(len(g.T(y)) for y in g.B.objects):
            rep = check_condition(g.S, g.T, g.phi)
            if not rep.passed:
                C = upper_triangular(g.A, g.B, g.S)
                ff = verify_fully_faithful(C, widetilde(C, g.T, g.phi))
                assert not ff.passed and ff.mismatches()
                return
    pytest.fail("no failing instance found")


@given(seeds)
def test_condition_implies_full_faithfulness_and_proof_chain(seed):
    g, C, W = _passing(seed)
    assert verify_fully_faithful(C, W).passed
    assert proof_chain_tables(C, g.T, g.phi, WT=W).passed


# -- modules and resolutions --------------------------------------------------


@given(seeds)
def test_basis_presentation_over_the_point(seed):
    U = unit_category()
    c = random_cochain(rng_for(seed))
    M = ExplicitModule(U, {"*": c})
    assert module_violations(M) == []
    res = basis_presentation(M)
    assert resolution_is_quasi_iso(res)
    assert len(res.complex) == sum(c.dims.values())
    minimal = semi_free_resolution(M)
    assert resolution_is_quasi_iso(minimal)
    # a minimal model over the point has one generator per cohomology class
    assert len(minimal.complex) == sum(cohomology_dims(c).values())
    assert k0_class(minimal.complex) == k0_class(res.complex) == (euler_of_dims(cohomology_dims(c)),)


def test_cokernel_module_on_two_objects():
    # a -f-> b; the simple module at b is the cokernel of h_a -> h_b
    Q = path_category(["a", "b"], [("f", "a", "b")])
    M = ExplicitModule(Q, {"b": Cochain({0: 1})})
    assert module_violations(M) == []
    res = semi_free_resolution(M)
    assert resolution_is_quasi_iso(res)
    assert sorted(res.complex.generators) == [("a", 1), ("b", 0)]
    assert k0_class(res.complex) == (-1, 1)
    assert res.rounds == 2


def test_broken_module_action_detected():
    Q = path_category(["a", "b"], [("f", "a", "b")])
    # f acts M(b) -> M(a) but is not compatible with the differential of M(a)
    M = ExplicitModule(Q, {"a": Cochain({0: 1, 1: 1}, {0: [{0: 1}]}), "b": Cochain({0: 1})},
                       {("a", "b"): {(0, 0): {0: [{0: 1}]}}})
    assert any(v.axiom == "module action breaks Leibniz" for v in module_violations(M))


def test_depth_cap_zero_raises():
    Q = path_category(["a", "b"], [("f", "a", "b")])
    M = ExplicitModule(Q, {"b": Cochain({0: 1})})
    with pytest.raises(ResolutionDepthExceeded) as err:
        semi_free_resolution(M, depth_cap=0)
    assert err.value.rounds == 0 and err.value.remaining
    with pytest.raises(ResolutionDepthExceeded):
        semi_free_resolution(M, depth_cap=1)


def test_basis_presentation_needs_the_point():
    Q = path_category(["a", "b"], [("f", "a", "b")])
    with pytest.raises(ValueError):
        semi_free_resolution(ExplicitModule(Q, {}), minimal=False)


@given(seeds)
def test_resolving_evaluation_modules(seed):
    rng = rng_for(seed)
    cat = random_directed_category(rng)
    Z = random_twisted_complex(rng, cat)
    M = EvaluationModule(Z)
    assert module_violations(M) == []
    res = semi_free_resolution(M)
    assert resolution_is_quasi_iso(res)
    assert k0_class(res.complex) == k0_class(Z)
    # quasi-isomorphic semi-free modules are homotopy equivalent
    for x in cat.objects:
        h = representable(cat, x)
        assert hom_cohomology(res.complex, h) == hom_cohomology(Z, h)


@given(seeds)
def test_hom_modules_are_modules(seed):
    g, C, W = _passing(seed)
    for G in C.objects:
        assert module_violations(HomModule(W, representable(C, G))) == []


# -- perfectness and the partner -------------------------------------------------


def test_perfectness_unverified_at_depth_zero():
    g, C, W = _passing(3)
    rep = check_perfectness(C, W, depth_cap=0)
    assert rep.status == "unverified" and not rep.passed and rep.unresolved
    with pytest.raises(ResolutionDepthExceeded):
        ks_partner(C, W, depth_cap=0)


@given(seeds)
def test_partner_is_orthogonal_complement(seed):
    g, C, W = _passing(seed)
    perf = check_perfectness(C, W)
    assert perf.passed
    p = ks_partner(C, W, perfectness=perf)
    assert p.orthogonal
    assert p.k0_rank == len(g.A.objects)
    assert set(p.sources) | set(p.dropped) == set(C.objects)


def test_partner_with_identity_gluing_is_a():
    g = random_gluing(rng_for(21), kind="id")
    C = upper_triangular(g.A, g.B, g.S)
    W = widetilde(C, g.S, identity_morphism(g.S))
    p = ks_partner(C, W)
    assert p.k0_rank == len(g.A.objects)
