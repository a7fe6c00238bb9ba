import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgglue.exactlin import cohomology_dims, euler_of_dims, nullspace, rank
from dgglue.euler import representable_euler_matrix
from dgglue.randomized import (
    random_closed_morphism,
    random_dg_category,
    random_directed_category,
    random_twisted_complex,
)
from dgglue.twcx import (
    Evaluation,
    HomComplex,
    TwistedComplex,
    TwistedComplexError,
    TwMorphism,
    add_morphisms,
    compose_morphisms,
    cone,
    cone_morphism,
    differential,
    direct_sum,
    euler_pairing,
    evaluation_cohomology,
    hom_cohomology,
    identity,
    inclusion,
    is_acyclic_module,
    is_closed,
    k0_class,
    maurer_cartan_defect,
    projection,
    representable,
    scale_morphism,
    shift,
    shift_morphism,
    twcx_violations,
    validate_twcx,
)

from .conftest import rng_for, seeds


def setting(seed):
    """A random category (directed or with differentials) and a generator for its objects."""
    rng = rng_for(seed)
    cat = random_directed_category(rng) if rng.random() < 0.5 else random_dg_category(rng, max_objects=2)
    return rng, cat


def test_representable_hom_is_category_hom(kronecker):
    h0, h1 = representable(kronecker, "v0"), representable(kronecker, "v1")
    assert hom_cohomology(h0, h1) == {0: 2}
    assert hom_cohomology(h1, h0) == {}
    # Hom(A, B[1]) = Hom(A, B)[1]: degree-0 maps land in degree -1
    assert hom_cohomology(h0, shift(h1, 1)) == {-1: 2}
    assert hom_cohomology(shift(h0, 1), h1) == {1: 2}


def test_mc_violation_reported(kronecker):
    # delta from h^v0 to h^v1 with the wrong degree
    bad = TwistedComplex(kronecker, [("v0", 0), ("v1", 0)], {(1, 0): {0: 1}})
    assert any(v.axiom == "delta entry has the wrong degree" for v in twcx_violations(bad))
    with pytest.raises(TwistedComplexError):
        validate_twcx(bad)
    loop = TwistedComplex(kronecker, [("v0", 0), ("v0", 1)], {(0, 1): {0: 1}, (1, 0): {0: 1}})
    assert twcx_violations(loop)


def test_cone_requires_closed_degree_zero(kronecker):
    h0 = representable(kronecker, "v0")
    with pytest.raises(ValueError):
        cone(TwMorphism(h0, h0, 1))


def test_skyscraper_like_cone(kronecker):
    f = TwMorphism(representable(kronecker, "v0"), representable(kronecker, "v1"), 0, {(0, 0): {0: 1, 1: -1}})
    Z = cone(f)
    assert k0_class(Z) == (-1, 1)
    assert hom_cohomology(Z, Z) == {0: 1, 1: 1}
    assert evaluation_cohomology(Z, "v0") == {0: 1}
    assert evaluation_cohomology(Z, "v1") == {0: 1}
    assert not is_acyclic_module(Z)
    # cone of an isomorphism is contractible
    h = representable(kronecker, "v1")
    assert is_acyclic_module(cone(identity(h)))
    assert hom_cohomology(cone(identity(h)), cone(identity(h))) == {}


@given(seeds)
def test_mc_preserved_by_constructions(seed):
    rng, cat = setting(seed)
    Z = random_twisted_complex(rng, cat)
    W = random_twisted_complex(rng, cat)
    assert not maurer_cartan_defect(Z) and twcx_violations(Z) == []
    for n in (-1, 1, 2):
        assert twcx_violations(shift(Z, n)) == []
    assert twcx_violations(direct_sum(Z, W)) == []
    f = random_closed_morphism(rng, Z, W)
    assert is_closed(f)
    assert twcx_violations(cone(f)) == []


@given(seeds)
def test_hom_differential_squares_to_zero(seed):
    rng, cat = setting(seed)
    Z = random_twisted_complex(rng, cat)
    W = random_twisted_complex(rng, cat)
    hc = HomComplex(Z, W)
    assert hc.cochain.d_squared_violations() == []
    # the matrix differential agrees with the formula on morphisms
    for n, basis in hc.basis.items():
        for k in range(len(basis)):
            f = hc.morphism(n, {k: 1})
            assert hc.vector(differential(f)) == hc.cochain.d(n, {k: 1})
            assert differential(differential(f)).is_zero()


@given(seeds)
def test_leibniz_for_composition(seed):
    rng, cat = setting(seed)
    Z, W, V = (random_twisted_complex(rng, cat, max_steps=1) for _ in range(3))
    for p in (-1, 0, 1):
        for q in (-1, 0):
            hf, hg = HomComplex(Z, W), HomComplex(W, V)
            if not hf.basis.get(p) or not hg.basis.get(q):
                continue
            f = hf.morphism(p, {rng.randrange(len(hf.basis[p])): 1})
            g = hg.morphism(q, {rng.randrange(len(hg.basis[q])): 1})
            lhs = differential(compose_morphisms(g, f))
            rhs = add_morphisms(compose_morphisms(differential(g), f),
                                compose_morphisms(g, differential(f)), (-1) ** (q % 2))
            assert lhs == rhs


@given(seeds)
def test_shift_is_a_functor(seed):
    rng, cat = setting(seed)
    Z, W = random_twisted_complex(rng, cat), random_twisted_complex(rng, cat)
    hc = HomComplex(Z, W)
    for n, basis in hc.basis.items():
        f = hc.morphism(n, {k: rng.randint(-2, 2) for k in range(len(basis))})
        for m in (1, -1, 2):
            assert differential(shift_morphism(f, m)) == shift_morphism(differential(f), m)
    assert hom_cohomology(shift(Z, 1), shift(W, 1)) == hom_cohomology(Z, W)
    assert identity(shift(Z, 3)) == shift_morphism(identity(Z), 3)


@given(seeds)
def test_yoneda(seed):
    rng, cat = setting(seed)
    Z = random_twisted_complex(rng, cat)
    for X in cat.objects:
        assert evaluation_cohomology(Z, X) == hom_cohomology(representable(cat, X), Z)
        ev = Evaluation(Z, X)
        hc = HomComplex(representable(cat, X), Z)
        for n, basis in ev.basis.items():
            for k in range(len(basis)):
                f = ev.element(n, {k: 1})
                assert ev.vector(f) == {k: 1}
                assert ev.vector(differential(f)) == ev.cochain.d(n, {k: 1})
                assert hc.vector(f) and len(hc.vector(f)) == 1


def _induced_rank(f: TwMorphism, X: TwistedComplex, n: int) -> int:
    """Rank of H^n Hom(X, Z) -> H^n Hom(X, W) induced by post-composition."""
    src, tgt = HomComplex(X, f.source), HomComplex(X, f.target)
    cz = src.cochain
    dim = cz.dim(n)
    if not dim:
        return 0
    cocycles = nullspace(cz.diff[n]) if n in cz.diff else [{k: 1} for k in range(dim)]
    images = [tgt.vector(compose_morphisms(f, src.morphism(n, z))) for z in cocycles]
    bounds = [c for c in tgt.cochain.diff.get(n - 1, []) if c]
    return rank(bounds + images) - rank(bounds)


def les_check(seed):
    """Cohomology of Hom(X, cone f) predicted from the long exact sequence."""
    rng, cat = setting(seed)
    Z = random_twisted_complex(rng, cat, max_steps=1)
    W = random_twisted_complex(rng, cat, max_steps=1)
    X = random_twisted_complex(rng, cat, max_steps=1)
    f = random_closed_morphism(rng, Z, W)
    hz, hw, hc = hom_cohomology(X, Z), hom_cohomology(X, W), hom_cohomology(X, cone(f))
    degrees = set(hz) | set(hw) | set(hc) | {n - 1 for n in hz}
    for n in degrees:
        want = (hw.get(n, 0) - _induced_rank(f, X, n)) + (hz.get(n + 1, 0) - _induced_rank(f, X, n + 1))
        assert hc.get(n, 0) == want


@settings(max_examples=200)
@given(seeds)
def test_long_exact_sequence_oracle(seed):
    les_check(seed)


@given(seeds)
def test_euler_pairing_bilinear_through_k0(seed):
    rng = rng_for(seed)
    cat = random_directed_category(rng)
    chi = representable_euler_matrix(cat).rows()
    Z, W = random_twisted_complex(rng, cat), random_twisted_complex(rng, cat)
    a, b = k0_class(Z), k0_class(W)
    form = sum(a[i] * chi[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))
    assert euler_pairing(Z, W) == form == euler_of_dims(hom_cohomology(Z, W))
    assert k0_class(direct_sum(Z, W)) == tuple(x + y for x, y in zip(a, b))
    assert k0_class(shift(Z, 1)) == tuple(-x for x in a)


@given(seeds)
def test_euler_characteristic_invariance(seed):
    rng, cat = setting(seed)
    Z, W = random_twisted_complex(rng, cat), random_twisted_complex(rng, cat)
    assert euler_pairing(Z, W) == euler_of_dims(hom_cohomology(Z, W))
    assert HomComplex(Z, W).cochain.euler_characteristic() == euler_pairing(Z, W)


def test_inclusion_projection_and_cone_morphism(kronecker):
    h0, h1 = representable(kronecker, "v0"), representable(kronecker, "v1")
    i0, p0 = inclusion([h0, h1], 0), projection([h0, h1], 0)
    assert compose_morphisms(p0, i0) == identity(h0)
    assert compose_morphisms(projection([h0, h1], 1), i0).is_zero()
    f = TwMorphism(h0, h1, 0, {(0, 0): {0: 1}})
    C = cone(f)
    m = cone_morphism(identity(h0), identity(h1), C, C)
    assert m == identity(C) and is_closed(m)
    two = cone_morphism(scale_morphism(identity(h0), 2), scale_morphism(identity(h1), 2), C, C)
    assert is_closed(two)
