"""Random small instances for property tests and benchmarks.

Everything takes a :class:`random.Random` so runs are reproducible.  Twisted
complexes are grown by cones of random closed morphisms, which keeps the
Maurer-Cartan equation true by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dgcore import FinDGCategory, path_category
from .exactlin import Cochain, nullspace, vadd
from .glue import Bimodule, BimoduleMorphism, free_bimodule, free_morphism
from .twcx import (
    HomComplex,
    TwistedComplex,
    TwMorphism,
    cone,
    direct_sum,
    identity,
    projection,
    representable,
    tw_subcategory,
)


def random_cochain(rng: random.Random, max_dim: int = 3, degrees=(-1, 0, 1, 2)) -> Cochain:
    """A complex with d^2 = 0 by construction.

    In each degree the first ``r`` coordinates span the image of the previous
    map and are killed by the next one; the remaining coordinates map onto
    triangular combinations of the next degree's first coordinates.
    """
    dims = {n: rng.randint(0, max_dim) for n in degrees}
    diff = {}
    image = 0  # coordinates 0..image-1 of the current degree are boundaries
    for n in degrees:
        nxt = n + 1
        free = dims[n] - image
        r = rng.randint(0, min(free, dims.get(nxt, 0))) if free > 0 and nxt in dims else 0
        if r:
            cols = [{} for _ in range(dims[n])]
            targets = []
            for t in range(r):
                v = {t: rng.choice((-2, -1, 1, 2))}
                for s in range(t + 1, r):
                    c = rng.randint(-2, 2)
                    if c:
                        v[s] = c
                targets.append(v)
            for t in range(r):
                cols[image + t] = targets[t]
            for c in range(image + r, dims[n]):
                if rng.random() < 0.5:
                    v: dict = {}
                    for t in range(r):
                        vadd(v, targets[t], rng.randint(-1, 1))
                    cols[c] = v
            diff[n] = cols
        image = r
    return Cochain(dims, diff)


def random_directed_category(rng: random.Random, max_objects: int = 3, max_hom_dim: int = 4,
                             name: str = "R") -> FinDGCategory:
    """Path category of a random acyclic quiver with every Hom of dimension <= max_hom_dim."""
    while True:
        n = rng.randint(1, max_objects)
        verts = [f"{name.lower()}{i}" for i in range(n)]
        arrows = []
        for i in range(n):
            for j in range(i + 1, n):
                for m in range(rng.randint(0, 2)):
                    arrows.append((f"{name.lower()}{i}{j}_{m}", verts[i], verts[j]))
        rels = []
        if len(verts) == 3 and rng.random() < 0.3:
            first = [a for a in arrows if a[1] == verts[0] and a[2] == verts[1]]
            second = [a for a in arrows if a[1] == verts[1] and a[2] == verts[2]]
            if first and second:
                rels.append((rng.choice(first)[0], rng.choice(second)[0]))
        cat = path_category(verts, arrows, rels, name=name)
        if all(sum(c.dims.values()) <= max_hom_dim for c in cat.homs.values()):
            return cat


def random_closed_morphism(rng: random.Random, Z: TwistedComplex, W: TwistedComplex, degree: int = 0,
                           coeff: int = 2) -> TwMorphism:
    hc = HomComplex(Z, W)
    dim = hc.cochain.dim(degree)
    if not dim:
        return TwMorphism(Z, W, degree)
    cols = hc.cochain.diff.get(degree)
    cycles = nullspace(cols) if cols else [{k: 1} for k in range(dim)]
    v: dict = {}
    for z in cycles:
        c = rng.randint(-coeff, coeff)
        if c:
            vadd(v, z, c)
    return hc.morphism(degree, v)


def random_twisted_complex(rng: random.Random, cat: FinDGCategory, max_steps: int = 2,
                           shifts=(-1, 0, 1), min_steps: int = 0) -> TwistedComplex:
    """Shifted representables combined by random sums and cones."""
    objs = list(cat.objects)

    def rep():
        return representable(cat, rng.choice(objs), rng.choice(shifts))

    Z = rep()
    for _ in range(rng.randint(min_steps, max(min_steps, max_steps))):
        W = rep()
        move = rng.random()
        if move < 0.25:
            Z = direct_sum(Z, W)
        elif move < 0.6:
            Z = cone(random_closed_morphism(rng, Z, W))
        else:
            Z = cone(random_closed_morphism(rng, W, Z))
    return Z


def random_dg_category(rng: random.Random, max_objects: int = 3) -> FinDGCategory:
    """A category with non-trivial differentials: a few random twisted complexes
    over a random directed category, with their Hom complexes."""
    base = random_directed_category(rng, max_objects=2, max_hom_dim=3, name="Q")
    k = rng.randint(1, max_objects)
    objs = [random_twisted_complex(rng, base, max_steps=2, min_steps=1) for _ in range(k)]
    return tw_subcategory(objs, [f"E{i}" for i in range(k)], name="TwQ")


def _renamed(cat: FinDGCategory, prefix: str) -> FinDGCategory:
    ren = {x: f"{prefix}{i}" for i, x in enumerate(cat.objects)}
    return FinDGCategory([ren[x] for x in cat.objects],
                         {(ren[x], ren[y]): c for (x, y), c in cat.homs.items()},
                         {(ren[x], ren[y], ren[z]): t for (x, y, z), t in cat.composition.items()},
                         {ren[x]: u for x, u in cat.units.items()}, name=cat.name + "'")


@dataclass
class GluingInstance:
    A: FinDGCategory
    B: FinDGCategory
    S: Bimodule
    T: Bimodule
    phi: BimoduleMorphism
    kind: str


def random_gluing(rng: random.Random, kind: str | None = None, dg: bool = False) -> GluingInstance:
    """Free bimodules over random directed categories with a morphism of a random kind.

    Kinds: ``id``, ``zero``, ``projection`` (split off a summand that maps
    to nothing of the target) and ``closed`` (a random closed map).  With
    ``dg=True`` both sides have non-trivial differentials.
    """
    if dg:
        A = random_dg_category(rng, max_objects=2)
        B = _renamed(random_dg_category(rng, max_objects=2), "F")
    else:
        A = random_directed_category(rng, name="A")
        B = random_directed_category(rng, name="B")
    kind = kind or rng.choice(["id", "zero", "projection", "closed"])
    a_objs = list(A.objects)
    steps = 0 if dg else 1  # dg sides already have large Hom complexes
    M, N, psi = {}, {}, {}
    for x in B.objects:
        if rng.random() < 0.25:
            continue
        if kind == "projection" and len(a_objs) >= 2:
            cut = rng.randint(1, len(a_objs) - 1)
            low = representable(A, rng.choice(a_objs[:cut]), rng.choice((-1, 0, 1)))
            high = representable(A, rng.choice(a_objs[cut:]), rng.choice((-1, 0, 1)))
            M[x] = direct_sum(high, low)
            N[x] = low
            psi[x] = projection([high, low], 1)
        else:
            Mx = random_twisted_complex(rng, A, max_steps=steps)
            M[x] = Mx
            if kind in ("id", "projection"):
                N[x] = Mx
                psi[x] = identity(Mx)
            elif kind == "zero":
                N[x] = random_twisted_complex(rng, A, max_steps=steps)
                psi[x] = TwMorphism(Mx, N[x], 0)
            else:
                N[x] = random_twisted_complex(rng, A, max_steps=steps)
                psi[x] = random_closed_morphism(rng, Mx, N[x])
    S = free_bimodule(B, A, M, name="S")
    T = free_bimodule(B, A, N, name="T")
    phi = free_morphism(S, T, psi)
    return GluingInstance(A, B, S, T, phi, kind)


__all__ = [
    "GluingInstance",
    "random_closed_morphism",
    "random_cochain",
    "random_dg_category",
    "random_directed_category",
    "random_gluing",
    "random_twisted_complex",
]
