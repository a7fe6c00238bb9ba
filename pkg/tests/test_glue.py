import itertools

import pytest
from hypothesis import given, settings

from dgglue.dgcore import unit_category
from dgglue.glue import (
    Bimodule,
    BimoduleMorphism,
    embed,
    free_bimodule,
    identity_morphism,
    point_bimodule,
    restrict,
    restriction_bimodule,
    tensor,
    tensor_morphism,
    underline,
    upper_triangular,
    validate_bimodule,
    validate_bimodule_morphism,
    bimodule_violations,
    bimodule_morphism_violations,
    widetilde,
    BimoduleError,
)
from dgglue.randomized import random_closed_morphism, random_gluing, random_twisted_complex
from dgglue.scenarios import skyscraper
from dgglue.twcx import (
    TwMorphism,
    cone,
    differential,
    evaluation_cohomology,
    hom_cohomology,
    identity,
    is_acyclic_module,
    representable,
    scale_morphism,
    twcx_violations,
)

from .conftest import rng_for, seeds


def _glued(seed, dg=False):
    g = random_gluing(rng_for(seed), dg=dg)
    return g, upper_triangular(g.A, g.B, g.S)


def test_point_bimodule_gluing(kronecker):
    sky = skyscraper((1, 0), kronecker)
    S = validate_bimodule(point_bimodule(kronecker, sky))
    C = upper_triangular(kronecker, S.source, S)
    assert C.objects == ("v0", "v1", "*")
    assert C.hom("*", "v0").is_zero() and C.hom("*", "v1").is_zero()
    assert hom_cohomology(representable(C, "v0"), representable(C, "*")) == {0: 1}
    assert hom_cohomology(representable(C, "v1"), representable(C, "*")) == {0: 1}


def test_name_clash_gets_prefixes():
    U = unit_category("x")
    S = point_bimodule(U, representable(U, "x"), unit_category("x"))
    C = upper_triangular(U, S.source, S)
    assert set(C.objects) == {"A:x", "B:x"}
    assert C.side["A:x"] == "A" and C.from_b("x") == "B:x"


def test_broken_bimodule_detected(kronecker):
    h = representable(kronecker, "v0")
    U = unit_category()
    bad = Bimodule(U, kronecker, {"*": h}, {("*", "*"): {0: [scale_morphism(identity(h), 2)]}})
    assert any(v.axiom == "unit not sent to the identity" for v in bimodule_violations(bad))
    with pytest.raises(BimoduleError):
        validate_bimodule(bad)


def test_non_natural_morphism_detected():
    for seed in range(200):
        g = random_gluing(rng_for(seed), kind="id")
        arrows = [(x, y) for x, y in itertools.permutations(g.B.objects, 2)
                  if any(m.entries for per in g.S.actions.get((x, y), {}).values() for m in per)]
        if arrows:
            break
    comps = dict(g.phi.components)
    y = arrows[0][1]
    comps[y] = scale_morphism(comps[y], 2)
    bad = BimoduleMorphism(g.S, g.T, comps)
    assert any(v.axiom == "not natural" for v in bimodule_morphism_violations(bad))


@given(seeds)
def test_random_bimodules_valid(seed):
    g = random_gluing(rng_for(seed))
    validate_bimodule(g.S)
    validate_bimodule(g.T)
    validate_bimodule_morphism(g.phi)


def _sod_properties(C):
    for b in C.b_names.values():
        for a in C.a_names.values():
            assert C.hom(b, a).is_zero() and (b, a) not in C.homs
    for side, src in (("A", C.A), ("B", C.B)):
        for x, y in itertools.product(src.objects, repeat=2):
            hx, hy = representable(src, x), representable(src, y)
            assert hom_cohomology(embed(C, side, hx), embed(C, side, hy)) == hom_cohomology(hx, hy)


@given(seeds)
def test_gluing_is_semi_orthogonal(seed):
    rng = rng_for(seed)
    g, C = _glued(seed)
    _sod_properties(C)
    # embedding also preserves Homs between non-representable twisted complexes
    Z, W = random_twisted_complex(rng, g.A), random_twisted_complex(rng, g.A)
    assert hom_cohomology(embed(C, "A", Z), embed(C, "A", W)) == hom_cohomology(Z, W)
    N = random_twisted_complex(rng, g.B)
    assert hom_cohomology(embed(C, "B", N), embed(C, "A", Z)) == {}


@settings(max_examples=20)
@given(seeds)
def test_gluing_is_semi_orthogonal_with_differentials(seed):
    _, C = _glued(seed, dg=True)
    _sod_properties(C)


@given(seeds)
def test_tensor_preserves_mc_and_closedness(seed):
    rng = rng_for(seed)
    g, C = _glued(seed)
    N = random_twisted_complex(rng, g.B)
    assert twcx_violations(tensor(N, g.S)) == []
    N2 = random_twisted_complex(rng, g.B)
    f = random_closed_morphism(rng, N, N2)
    tf = tensor_morphism(f, g.S)
    assert differential(tf).is_zero()
    # tensor commutes with cones
    assert hom_cohomology(tensor(cone(f), g.S), tensor(cone(f), g.S)) == \
        hom_cohomology(cone(tf), cone(tf))
    R = restriction_bimodule(C)
    validate_bimodule(R)
    Zc = embed(C, "A", random_twisted_complex(rng, g.A))
    assert twcx_violations(tensor(Zc, R)) == []


@given(seeds)
def test_restriction_of_embedding(seed):
    rng = rng_for(seed)
    g, C = _glued(seed)
    Z = random_twisted_complex(rng, g.A)
    back = restrict(C, "A", embed(C, "A", Z))
    for x in g.A.objects:
        assert evaluation_cohomology(back, x) == evaluation_cohomology(Z, x)
    N = random_twisted_complex(rng, g.B)
    assert restrict(C, "B", embed(C, "B", N)) == N
    # restricting a B-representable to A gives S
    for y in g.B.objects:
        r = restrict(C, "A", representable(C, C.from_b(y)))
        for x in g.A.objects:
            assert evaluation_cohomology(r, x) == evaluation_cohomology(g.S(y), x)


@given(seeds)
def test_underline_vanishes_on_a(seed):
    rng = rng_for(seed)
    g, C = _glued(seed)
    N = random_twisted_complex(rng, g.B)
    U = underline(C, N)
    for x in g.A.objects:
        assert evaluation_cohomology(U, C.from_a(x)) == {}
    for y in g.B.objects:
        assert evaluation_cohomology(U, C.from_b(y)) == evaluation_cohomology(N, y)


@given(seeds)
def test_widetilde_with_identity_recovers_representables(seed):
    g, C = _glued(seed)
    WS = widetilde(C, g.S, identity_morphism(g.S))
    validate_bimodule(WS)
    for j in g.B.objects:
        img = tensor(representable(g.B, j), WS)
        hj = representable(C, C.from_b(j))
        for c in C.objects:
            h = representable(C, c)
            assert hom_cohomology(h, img) == hom_cohomology(h, hj)
            assert hom_cohomology(img, h) == hom_cohomology(hj, h)


@given(seeds)
def test_widetilde_restricts_to_target_bimodule(seed):
    g, C = _glued(seed)
    W = widetilde(C, g.T, g.phi)
    validate_bimodule(W)
    for y in g.B.objects:
        r = restrict(C, "A", W(y))
        for x in g.A.objects:
            assert evaluation_cohomology(r, x) == evaluation_cohomology(g.T(y), x)
        assert list(restrict(C, "B", W(y)).generators) == [(y, 0)]


def test_widetilde_of_zero_is_acyclic_on_a(kronecker):
    S = point_bimodule(kronecker, representable(kronecker, "v1"))
    C = upper_triangular(kronecker, S.source, S)
    v = underline(C, representable(C.B, "*"))
    assert not is_acyclic_module(v)
    assert evaluation_cohomology(v, "v0") == {} and evaluation_cohomology(v, "v1") == {}
    assert evaluation_cohomology(v, "*") == {0: 1}
