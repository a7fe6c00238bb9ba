"""Bimodules, upper-triangular gluing and the functors attached to it.

A bimodule ``S`` from ``B`` to ``A`` is a strict DG functor from ``B`` into
twisted complexes over ``A``: each ``B``-object goes to a twisted complex and
each basis morphism of ``B`` to a morphism of the same degree.  The glued
category ``A x_S B`` has the objects of both sides, ``Hom(a, b) = S(b)(a)``
for ``a`` from ``A`` and ``b`` from ``B``, and nothing from ``B`` to ``A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dgcore import FinDGCategory, ValidationError, Violation, validate_category
from .exactlin import Cochain, vadd
from .twcx import (
    Evaluation,
    TwistedComplex,
    TwMorphism,
    add_morphisms,
    block_morphism,
    compose_morphisms,
    cone,
    cone_morphism,
    differential,
    direct_sum,
    identity,
    morphism_violations,
    representable,
    scale_morphism,
    shift,
    twcx_violations,
    zero_complex,
)


class BimoduleError(ValidationError):
    def __init__(self, violations):
        super().__init__("bimodule", violations)


class BimoduleMorphismError(ValidationError):
    def __init__(self, violations):
        super().__init__("bimodule morphism", violations)


def _basis(cat: FinDGCategory, x, y):
    for n in cat.hom_degrees(x, y):
        for k in range(cat.dim(x, y, n)):
            yield n, k


class Bimodule:
    """A strict DG functor ``source -> Tw(target)``.

    ``values[x]`` is the twisted complex for the source object ``x`` and
    ``actions[(x, y)][n][k]`` the morphism assigned to basis vector ``k`` of
    ``Hom(x, y)^n``.  Missing actions are zero.
    """

    def __init__(self, source: FinDGCategory, target: FinDGCategory, values, actions=None, name: str = "S"):
        self.source = source
        self.target = target
        self.values = dict(values)
        self.actions = {k: {int(n): list(ms) for n, ms in v.items()} for k, v in (actions or {}).items()}
        self.name = name

    def __call__(self, x) -> TwistedComplex:
        return self.values[x]

    def basis_action(self, x, y, n: int, k: int) -> TwMorphism:
        ms = self.actions.get((x, y), {}).get(n)
        if ms is None:
            return TwMorphism(self.values[x], self.values[y], n)
        return ms[k]

    def apply(self, x, y, n: int, vec) -> TwMorphism:
        out = TwMorphism(self.values[x], self.values[y], n)
        for k, c in vec.items():
            out = add_morphisms(out, self.basis_action(x, y, n, k), c)
        return out

    def __repr__(self):
        return f"Bimodule({self.name}: {self.source.name} -> Tw({self.target.name}))"


def bimodule_violations(S: Bimodule) -> list[Violation]:
    B, A = S.source, S.target
    bad = []
    for x in B.objects:
        Z = S.values.get(x)
        if Z is None:
            bad.append(Violation("missing value", f"{S.name}({x})"))
            continue
        if Z.category != A:
            bad.append(Violation("value over the wrong category", f"{S.name}({x})"))
            continue
        bad.extend(Violation(v.axiom, f"{S.name}({x}): {v.location}") for v in twcx_violations(Z))
    if bad:
        return bad
    for (x, y), per_degree in S.actions.items():
        for n, ms in per_degree.items():
            if len(ms) != B.dim(x, y, n):
                bad.append(Violation("wrong number of action morphisms", f"Hom({x},{y})^{n}"))
                continue
            for k, m in enumerate(ms):
                if m.source != S(x) or m.target != S(y) or m.degree != n:
                    bad.append(Violation("action morphism has the wrong shape", B.label(x, y, n, k)))
                else:
                    bad.extend(Violation(v.axiom, B.label(x, y, n, k)) for v in morphism_violations(m))
    if bad:
        return bad
    for x in B.objects:
        if S.apply(x, x, 0, B.unit(x)) != identity(S(x)):
            bad.append(Violation("unit not sent to the identity", f"{S.name}(1_{x})"))
    for x, y in itertools.product(B.objects, repeat=2):
        for n, k in _basis(B, x, y):
            m = S.basis_action(x, y, n, k)
            if differential(m) != S.apply(x, y, n + 1, B.d(x, y, n, {k: 1})):
                bad.append(Violation("action does not commute with d", B.label(x, y, n, k)))
    for x, y, z in itertools.product(B.objects, repeat=3):
        if not B.hom(x, y).dims or not B.hom(y, z).dims:
            continue
        for p, g in _basis(B, y, z):
            Sg = S.basis_action(y, z, p, g)
            for q, f in _basis(B, x, y):
                lhs = S.apply(x, z, p + q, B.compose(x, y, z, p, {g: 1}, q, {f: 1}))
                if lhs != compose_morphisms(Sg, S.basis_action(x, y, q, f)):
                    bad.append(Violation("not functorial",
                                         f"{B.label(y, z, p, g)} o {B.label(x, y, q, f)}"))
    return bad


def validate_bimodule(S: Bimodule) -> Bimodule:
    validate_category(S.source)
    validate_category(S.target)
    bad = bimodule_violations(S)
    if bad:
        raise BimoduleError(bad)
    return S


@dataclass
class BimoduleMorphism:
    source: Bimodule
    target: Bimodule
    components: dict  # source object -> closed degree-0 TwMorphism


def bimodule_morphism_violations(phi: BimoduleMorphism) -> list[Violation]:
    S, T = phi.source, phi.target
    B = S.source
    bad = []
    if S.source != T.source or S.target != T.target:
        return [Violation("bimodules over different categories", f"{S.name} vs {T.name}")]
    for x in B.objects:
        f = phi.components.get(x)
        if f is None:
            bad.append(Violation("missing component", f"phi_{x}"))
            continue
        if f.source != S(x) or f.target != T(x) or f.degree != 0:
            bad.append(Violation("component has the wrong shape", f"phi_{x}"))
            continue
        bad.extend(Violation(v.axiom, f"phi_{x}") for v in morphism_violations(f))
        if not differential(f).is_zero():
            bad.append(Violation("component not closed", f"phi_{x}"))
    if bad:
        return bad
    for x, y in itertools.product(B.objects, repeat=2):
        for n, k in _basis(B, x, y):
            lhs = compose_morphisms(phi.components[y], S.basis_action(x, y, n, k))
            rhs = compose_morphisms(T.basis_action(x, y, n, k), phi.components[x])
            if lhs != rhs:
                bad.append(Violation("not natural", B.label(x, y, n, k)))
    return bad


def validate_bimodule_morphism(phi: BimoduleMorphism) -> BimoduleMorphism:
    bad = bimodule_morphism_violations(phi)
    if bad:
        raise BimoduleMorphismError(bad)
    return phi


# ---------------------------------------------------------------------------
# bimodule builders


def point_bimodule(A: FinDGCategory, Z: TwistedComplex, B: FinDGCategory | None = None,
                   name: str = "S") -> Bimodule:
    """Bimodule out of a one-object category with scalar endomorphisms."""
    from .dgcore import unit_category

    B = B or unit_category()
    if len(B.objects) != 1 or B.hom(B.objects[0], B.objects[0]).dims != {0: 1}:
        raise ValueError("point_bimodule needs a one-object category with End = k")
    x = B.objects[0]
    return Bimodule(B, A, {x: Z}, {(x, x): {0: [identity(Z)]}}, name=name)


def zero_bimodule(B: FinDGCategory, A: FinDGCategory, name: str = "0") -> Bimodule:
    return Bimodule(B, A, {x: zero_complex(A) for x in B.objects}, {}, name=name)


def free_bimodule(B: FinDGCategory, A: FinDGCategory, generators, name: str = "S") -> Bimodule:
    """``S(y) = sum_x Hom_B(x, y) (x) M_x`` for ``generators = {x: M_x}``.

    A basis vector ``e`` of ``Hom_B(x, y)^p`` contributes a copy of ``M_x``
    shifted by ``-p``; ``d e`` and left composition act by identity blocks.
    """
    layout = {}  # y -> list of (x, p, k, offset)
    values = {}
    for y in B.objects:
        blocks, parts, off = [], [], 0
        for x in B.objects:
            M = generators.get(x)
            if M is None or not len(M):
                continue
            for p, k in _basis(B, x, y):
                blocks.append((x, p, k, off))
                parts.append(shift(M, -p))
                off += len(M)
        layout[y] = blocks
        Z = direct_sum(*parts) if parts else zero_complex(A)
        where = {(x, p, k): o for x, p, k, o in blocks}
        delta = dict(Z.delta)
        for x, p, k, o in blocks:
            for kk, c in B.d(x, y, p, {k: 1}).items():
                o2 = where[(x, p + 1, kk)]
                for i, (a, _) in enumerate(generators[x].generators):
                    vadd(delta.setdefault((o2 + i, o + i), {}), A.unit(a), c)
        values[y] = TwistedComplex(A, Z.generators, delta)
        layout[y] = where
    actions = {}
    for y, z in itertools.product(B.objects, repeat=2):
        per_degree = {}
        for q, g in _basis(B, y, z):
            e = {}
            for (x, p, k), o in layout[y].items():
                for kk, c in B.compose(x, y, z, q, {g: 1}, p, {k: 1}).items():
                    o2 = layout[z][(x, p + q, kk)]
                    for i, (a, _) in enumerate(generators[x].generators):
                        vadd(e.setdefault((o2 + i, o + i), {}), A.unit(a), c)
            per_degree.setdefault(q, []).append(TwMorphism(values[y], values[z], q, e))
        if per_degree:
            actions[(y, z)] = per_degree
    S = Bimodule(B, A, values, actions, name=name)
    S.free_layout = layout
    S.free_generators = dict(generators)
    return S


def free_morphism(S: Bimodule, T: Bimodule, maps) -> BimoduleMorphism:
    """Morphism of free bimodules induced by closed degree-0 maps ``{x: M_x -> N_x}``."""
    B = S.source
    comps = {}
    for y in B.objects:
        e: dict = {}
        for (x, p, k), o in S.free_layout[y].items():
            f = maps.get(x)
            if f is None:
                continue
            o2 = T.free_layout[y][(x, p, k)]
            for (i, j), v in f.entries.items():
                vadd(e.setdefault((o2 + i, o + j), {}), v)
        comps[y] = TwMorphism(S(y), T(y), 0, e)
    return BimoduleMorphism(S, T, comps)


def identity_morphism(S: Bimodule) -> BimoduleMorphism:
    return BimoduleMorphism(S, S, {x: identity(S(x)) for x in S.source.objects})


def zero_bimodule_morphism(S: Bimodule, T: Bimodule) -> BimoduleMorphism:
    return BimoduleMorphism(S, T, {x: TwMorphism(S(x), T(x), 0) for x in S.source.objects})


# ---------------------------------------------------------------------------
# the glued category


class GluedCategory(FinDGCategory):
    """``A x_S B`` with provenance tags ``side[obj] in {"A", "B"}``."""

    def __init__(self, A, B, S, objects, homs, composition, units, a_names, b_names, name):
        super().__init__(objects, homs, composition, units, name=name)
        self.A, self.B, self.S = A, B, S
        self.a_names = a_names  # A-object -> C-object
        self.b_names = b_names
        self.side = {c: "A" for c in a_names.values()}
        self.side.update({c: "B" for c in b_names.values()})
        self.origin = {c: x for x, c in a_names.items()}
        self.origin.update({c: y for y, c in b_names.items()})

    def from_a(self, x):
        return self.a_names[x]

    def from_b(self, y):
        return self.b_names[y]


def upper_triangular(A: FinDGCategory, B: FinDGCategory, S: Bimodule, name: str | None = None,
                     check: bool = True) -> GluedCategory:
    if S.source != B or S.target != A:
        raise ValueError("bimodule does not go from B to Tw(A)")
    if check:
        validate_bimodule(S)
    clash = set(A.objects) & set(B.objects)
    a_names = {x: (f"A:{x}" if x in clash else x) for x in A.objects}
    b_names = {y: (f"B:{y}" if y in clash else y) for y in B.objects}
    objects = [a_names[x] for x in A.objects] + [b_names[y] for y in B.objects]
    homs, comp, units = {}, {}, {}
    for (x, y), c in A.homs.items():
        homs[(a_names[x], a_names[y])] = c
    for (x, y), c in B.homs.items():
        homs[(b_names[x], b_names[y])] = c
    evals = {}
    for y in B.objects:
        for x in A.objects:
            ev = Evaluation(S(y), x)
            evals[(x, y)] = ev
            ch = ev.cochain
            labels = {n: [f"{S.name}({y})#{i}:{A.label(x, S(y).obj(i), n + S(y).shift_of(i), k)}"
                          for i, k in bs] for n, bs in ev.basis.items()}
            homs[(a_names[x], b_names[y])] = Cochain(ch.dims, ch.diff, labels)
    for key, tables in A.composition.items():
        comp[tuple(a_names[o] for o in key)] = tables
    for key, tables in B.composition.items():
        comp[tuple(b_names[o] for o in key)] = tables
    # A, A, B: x o alpha (right action of A)
    for x0, x1 in itertools.product(A.objects, repeat=2):
        if not A.hom(x0, x1).dims:
            continue
        for y in B.objects:
            ev1, ev0 = evals[(x1, y)], evals[(x0, y)]
            tables = {}
            for p, bs in ev1.basis.items():
                for q, k in _basis(A, x0, x1):
                    for g in range(len(bs)):
                        v = ev1.act(ev0, p, {g: 1}, q, {k: 1})
                        if v:
                            tables.setdefault((p, q), {})[(g, k)] = v
            if tables:
                comp[(a_names[x0], a_names[x1], b_names[y])] = tables
    # A, B, B: beta o x (left action through S)
    for x in A.objects:
        for y0, y1 in itertools.product(B.objects, repeat=2):
            if not B.hom(y0, y1).dims:
                continue
            ev0, ev1 = evals[(x, y0)], evals[(x, y1)]
            tables = {}
            for p, g in _basis(B, y0, y1):
                Sg = S.basis_action(y0, y1, p, g)
                if Sg.is_zero():
                    continue
                for q, bs in ev0.basis.items():
                    for f in range(len(bs)):
                        v = ev1.vector(compose_morphisms(Sg, ev0.element(q, {f: 1})))
                        if v:
                            tables.setdefault((p, q), {})[(g, f)] = v
            if tables:
                comp[(a_names[x], b_names[y0], b_names[y1])] = tables
    for x in A.objects:
        units[a_names[x]] = A.unit(x)
    for y in B.objects:
        units[b_names[y]] = B.unit(y)
    name = name or f"{A.name}x{B.name}"
    C = GluedCategory(A, B, S, objects, homs, comp, units, a_names, b_names, name)
    C._evals = evals
    if check:
        validate_category(C)
    return C


def embed(C: GluedCategory, side: str, Z: TwistedComplex) -> TwistedComplex:
    """The fully faithful inclusion of ``Tw(A)`` or ``Tw(B)`` into ``Tw(C)``."""
    if side not in ("A", "B"):
        raise ValueError("side must be 'A' or 'B'")
    src = C.A if side == "A" else C.B
    if Z.category != src:
        raise ValueError(f"twisted complex does not live over side {side}")
    names = C.a_names if side == "A" else C.b_names
    return TwistedComplex(C, [(names[a], s) for a, s in Z.generators], Z.delta)


def embed_morphism(C: GluedCategory, side: str, f: TwMorphism) -> TwMorphism:
    return TwMorphism(embed(C, side, f.source), embed(C, side, f.target), f.degree, f.entries)


def restriction_bimodule(C: GluedCategory) -> Bimodule:
    """``C -> Tw(A)`` sending ``a`` to ``h^a`` and ``b`` to ``S(b)``."""
    A, B, S = C.A, C.B, C.S
    values = {}
    for x in A.objects:
        values[C.from_a(x)] = representable(A, x)
    for y in B.objects:
        values[C.from_b(y)] = S(y)
    actions = {}
    for x0, x1 in itertools.product(A.objects, repeat=2):
        per = {}
        for n, k in _basis(A, x0, x1):
            per.setdefault(n, []).append(TwMorphism(values[C.from_a(x0)], values[C.from_a(x1)], n,
                                                    {(0, 0): {k: 1}}))
        if per:
            actions[(C.from_a(x0), C.from_a(x1))] = per
    for y0, y1 in itertools.product(B.objects, repeat=2):
        if (y0, y1) in S.actions:
            actions[(C.from_b(y0), C.from_b(y1))] = S.actions[(y0, y1)]
    for x in A.objects:
        for y in B.objects:
            ev = C._evals[(x, y)]
            per = {n: [ev.element(n, {f: 1}) for f in range(len(bs))] for n, bs in ev.basis.items()}
            if per:
                actions[(C.from_a(x), C.from_b(y))] = per
    return Bimodule(C, A, values, actions, name="res")


def restrict(C: GluedCategory, side: str, Z: TwistedComplex) -> TwistedComplex:
    if Z.category != C:
        raise ValueError("twisted complex does not live over the glued category")
    if side == "B":
        keep = [i for i, (c, _) in enumerate(Z.generators) if C.side[c] == "B"]
        pos = {i: n for n, i in enumerate(keep)}
        gens = [(C.origin[Z.generators[i][0]], Z.generators[i][1]) for i in keep]
        delta = {(pos[i], pos[j]): v for (i, j), v in Z.delta.items() if i in pos and j in pos}
        return TwistedComplex(C.B, gens, delta)
    if side == "A":
        return tensor(Z, restriction_bimodule(C))
    raise ValueError("side must be 'A' or 'B'")


# ---------------------------------------------------------------------------
# tensor with a bimodule


def _block_offsets(N: TwistedComplex, P: Bimodule):
    offs, off = [], 0
    for b, _ in N.generators:
        offs.append(off)
        off += len(P(b))
    return offs


def tensor(N: TwistedComplex, P: Bimodule) -> TwistedComplex:
    """``N (x) P`` for a twisted complex ``N`` over the source of ``P``."""
    if N.category != P.source:
        raise ValueError("twisted complex and bimodule live over different categories")
    cat = P.target
    offs = _block_offsets(N, P)
    gens, delta = [], {}
    for j, (b, s) in enumerate(N.generators):
        block = shift(P(b), s)
        gens.extend(block.generators)
        for (i1, i2), v in block.delta.items():
            delta[(offs[j] + i1, offs[j] + i2)] = v
    for (j, k), v in N.delta.items():
        m = P.apply(N.obj(k), N.obj(j), N.entry_degree(j, k), v)
        for (i1, i2), w in m.entries.items():
            vadd(delta.setdefault((offs[j] + i1, offs[k] + i2), {}), w)
    return TwistedComplex(cat, gens, delta)


def tensor_morphism(f: TwMorphism, P: Bimodule, source=None, target=None) -> TwMorphism:
    source = source or tensor(f.source, P)
    target = target or tensor(f.target, P)
    so, to = _block_offsets(f.source, P), _block_offsets(f.target, P)
    e: dict = {}
    for (i, j), v in f.entries.items():
        m = P.apply(f.source.obj(j), f.target.obj(i), f.entry_degree(i, j), v)
        for (a, b), w in m.entries.items():
            vadd(e.setdefault((to[i] + a, so[j] + b), {}), w)
    return TwMorphism(source, target, f.degree, e)


# ---------------------------------------------------------------------------
# cones of bimodule morphisms and the widetilde bimodule


def bimodule_cone(phi: BimoduleMorphism, name: str = "R") -> Bimodule:
    S, T = phi.source, phi.target
    B = S.source
    values = {x: cone(phi.components[x]) for x in B.objects}
    actions = {}
    for x, y in itertools.product(B.objects, repeat=2):
        per = {}
        for n, k in _basis(B, x, y):
            per.setdefault(n, []).append(
                cone_morphism(S.basis_action(x, y, n, k), T.basis_action(x, y, n, k), values[x], values[y]))
        if per:
            actions[(x, y)] = per
    return Bimodule(B, S.target, values, actions, name=name)


def unit_section(C: GluedCategory, y) -> TwMorphism:
    """The closed degree-0 map ``embed(A, S(y)) -> h^y`` picking the identity of ``S(y)``."""
    Sy = C.S(y)
    src = embed(C, "A", Sy)
    tgt = representable(C, C.from_b(y))
    ev = C._evals
    e = {}
    for i, (a, s) in enumerate(Sy.generators):
        idx = ev[(a, y)].index.get(-s, {})
        v = {idx[(i, k)]: c for k, c in C.A.unit(a).items()}
        e[(0, i)] = v
    return TwMorphism(src, tgt, 0, e)


def widetilde(C: GluedCategory, T: Bimodule, phi: BimoduleMorphism, name: str | None = None) -> Bimodule:
    """The bimodule ``B -> Tw(C)`` gluing ``h^y`` to ``T(y)`` along ``S(y)``.

    ``value(y) = cone(embed(S(y)) --(u, -phi)--> h^y + embed(T(y)))`` where
    ``u`` picks the identity of ``S(y)``.
    """
    B, S = C.B, C.S
    if phi.source.source != B or phi.target is not T:
        raise ValueError("phi must be a morphism S -> T over the glued category's B")
    values, tops, bottoms = {}, {}, {}
    for y in B.objects:
        Es = embed(C, "A", S(y))
        H = representable(C, C.from_b(y))
        Et = embed(C, "A", T(y))
        target = direct_sum(H, Et)
        u = unit_section(C, y)
        f = block_morphism(Es, target, 0, {
            (0, 0): u,
            (1, 0): scale_morphism(embed_morphism(C, "A", phi.components[y]), -1),
        })
        values[y] = cone(f)
        tops[y], bottoms[y] = Es, target
    actions = {}
    for y0, y1 in itertools.product(B.objects, repeat=2):
        per = {}
        for n, k in _basis(B, y0, y1):
            top = embed_morphism(C, "A", S.basis_action(y0, y1, n, k))
            h = TwMorphism(representable(C, C.from_b(y0)), representable(C, C.from_b(y1)), n, {(0, 0): {k: 1}})
            t = embed_morphism(C, "A", T.basis_action(y0, y1, n, k))
            bottom = block_morphism(bottoms[y0], bottoms[y1], n, {(0, 0): h, (1, 1): t})
            per.setdefault(n, []).append(cone_morphism(top, bottom, values[y0], values[y1]))
        if per:
            actions[(y0, y1)] = per
    return Bimodule(B, C, values, actions, name=name or f"~{T.name}")


def underline(C: GluedCategory, N: TwistedComplex) -> TwistedComplex:
    """Extension by zero of a ``B``-module: vanishes on every ``A``-object."""
    Z = zero_bimodule(C.B, C.A)
    return tensor(N, widetilde(C, Z, zero_bimodule_morphism(C.S, Z), name="~0"))
