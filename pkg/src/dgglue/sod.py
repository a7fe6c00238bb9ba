"""Checks attached to a gluing: the vanishing condition on the cone of
``phi``, full faithfulness of ``- (x) ~T``, semi-free resolutions of
levelwise modules and the complementary (KS partner) category.

Convention for decompositions: the second component never maps to the
first, i.e. ``Hom(second, first)`` is acyclic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dgcore import FinDGCategory, ValidationError, Violation
from .exactlin import (
    Cochain,
    Echelon,
    cohomology_dims,
    cohomology_representatives,
    nullspace,
    vadd,
    vscale,
)
from .glue import (
    Bimodule,
    BimoduleMorphism,
    GluedCategory,
    bimodule_cone,
    restrict,
    tensor,
    widetilde,
)
from .twcx import (
    Evaluation,
    HomComplex,
    TwistedComplex,
    TwMorphism,
    cone,
    euler_pairing,
    hom_cohomology,
    is_acyclic_module,
    k0_class,
    representable,
    evaluation_cohomology,
)

REPRESENTABLE_NOTE = ("vanishing checked on representable generators only; the statement for "
                      "arbitrary DG modules is not machine-checked")


def _basis(cat: FinDGCategory, x, y):
    for n in cat.hom_degrees(x, y):
        for k in range(cat.dim(x, y, n)):
            yield n, k


# ---------------------------------------------------------------------------
# the vanishing condition and full faithfulness


@dataclass
class ConditionReport:
    table: dict  # (B_j, B_k) -> cohomology dims of Hom(R(B_j), T(B_k))
    passed: bool
    note: str = REPRESENTABLE_NOTE

    def failures(self):
        return {k: v for k, v in self.table.items() if v}


def check_condition(S: Bimodule, T: Bimodule, phi: BimoduleMorphism) -> ConditionReport:
    R = bimodule_cone(phi)
    B = S.source
    table = {}
    for j, k in itertools.product(B.objects, repeat=2):
        table[(j, k)] = hom_cohomology(R(j), T(k))
    return ConditionReport(table, all(not v for v in table.values()))


@dataclass
class FullFaithfulReport:
    glued: dict  # (B_j, B_k) -> H* Hom(~T(B_j), ~T(B_k))
    original: dict  # (B_j, B_k) -> H* Hom_B(B_j, B_k)
    passed: bool

    def mismatches(self):
        return {k: (self.glued[k], self.original[k]) for k in self.glued if self.glued[k] != self.original[k]}


def verify_fully_faithful(C: GluedCategory, W: Bimodule) -> FullFaithfulReport:
    B = C.B
    glued, original = {}, {}
    for j, k in itertools.product(B.objects, repeat=2):
        glued[(j, k)] = hom_cohomology(W(j), W(k))
        original[(j, k)] = cohomology_dims(B.hom(j, k), check=False)
    return FullFaithfulReport(glued, original, glued == original)


@dataclass
class ProofChainReport:
    """The three Hom tables ``(T, T)``, ``(S, T)`` and ``(S, S)`` over generator pairs."""

    tt: dict
    st: dict
    ss: dict
    restriction: dict  # B_j -> (evaluations of restrict(A, ~T(B_j)), evaluations of T(B_j))
    passed: bool


def proof_chain_tables(C: GluedCategory, T: Bimodule, phi: BimoduleMorphism,
                       WT: Bimodule | None = None, WS: Bimodule | None = None) -> ProofChainReport:
    from .glue import identity_morphism

    B, A = C.B, C.A
    WT = WT or widetilde(C, T, phi)
    WS = WS or widetilde(C, C.S, identity_morphism(C.S))
    tt, st, ss, res = {}, {}, {}, {}
    for j, k in itertools.product(B.objects, repeat=2):
        tt[(j, k)] = hom_cohomology(WT(j), WT(k))
        st[(j, k)] = hom_cohomology(WS(j), WT(k))
        ss[(j, k)] = hom_cohomology(WS(j), WS(k))
    ok = tt == st == ss
    for j in B.objects:
        lhs = restrict(C, "A", tensor(representable(B, j), WT))
        got = {x: evaluation_cohomology(lhs, x) for x in A.objects}
        want = {x: evaluation_cohomology(T(j), x) for x in A.objects}
        res[j] = (got, want)
        ok = ok and got == want
    return ProofChainReport(tt, st, ss, res, ok)


# ---------------------------------------------------------------------------
# levelwise modules


class LevelModule:
    """A right DG module over a finite DG category, given objectwise.

    Subclasses provide ``complex(y)`` and ``act(y1, y0, n, vec, p, k)``:
    the action of basis vector ``k`` of ``Hom(y0, y1)^p`` on ``vec`` in
    degree ``n`` of ``M(y1)``, landing in degree ``n + p`` of ``M(y0)``.
    Leibniz reads ``D(m.b) = D(m).b + (-1)^|m| m.d(b)``.
    """

    category: FinDGCategory

    def complex(self, y) -> Cochain:
        raise NotImplementedError

    def act(self, y1, y0, n: int, vec, p: int, k: int) -> dict:
        raise NotImplementedError

    def act_vec(self, y1, y0, n: int, vec, p: int, beta) -> dict:
        out: dict = {}
        for k, c in beta.items():
            vadd(out, self.act(y1, y0, n, vec, p, k), c)
        return out

    def total_cohomology(self) -> dict:
        return {y: cohomology_dims(self.complex(y), check=False) for y in self.category.objects}


class ExplicitModule(LevelModule):
    """``actions[(y0, y1)][(p, k)][n]`` lists the images of the basis of ``M(y1)^n``."""

    def __init__(self, category: FinDGCategory, complexes, actions=None):
        self.category = category
        self.complexes = {y: complexes.get(y, Cochain({})) for y in category.objects}
        self.actions = actions or {}

    def complex(self, y):
        return self.complexes[y]

    def act(self, y1, y0, n, vec, p, k):
        if y0 == y1 and p == 0 and self.category.unit(y0) == {k: 1} and \
                (p, k) not in self.actions.get((y0, y1), {}):
            return dict(vec)
        cols = self.actions.get((y0, y1), {}).get((p, k), {}).get(n)
        out: dict = {}
        if cols is None:
            return out
        for i, c in vec.items():
            vadd(out, cols[i], c)
        return out


class HomModule(LevelModule):
    """``y -> Hom(W(y), G)`` acted on by precomposition with ``W(b)``."""

    def __init__(self, W: Bimodule, G: TwistedComplex):
        self.category = W.source
        self.bimodule, self.target = W, G
        self._hc = {y: HomComplex(W(y), G) for y in self.category.objects}

    def complex(self, y):
        return self._hc[y].cochain

    def hom(self, y) -> HomComplex:
        return self._hc[y]

    def act(self, y1, y0, n, vec, p, k):
        if not vec:
            return {}
        m = self._hc[y1].morphism(n, vec)
        from .twcx import compose_morphisms

        return self._hc[y0].vector(compose_morphisms(m, self.bimodule.basis_action(y0, y1, p, k)))


class EvaluationModule(LevelModule):
    """The module ``y -> Z(y)`` of a twisted complex."""

    def __init__(self, Z: TwistedComplex):
        self.category = Z.category
        self.twisted = Z
        self._ev = {y: Evaluation(Z, y) for y in self.category.objects}

    def complex(self, y):
        return self._ev[y].cochain

    def act(self, y1, y0, n, vec, p, k):
        return self._ev[y1].act(self._ev[y0], n, vec, p, {k: 1})


def module_violations(M: LevelModule) -> list[Violation]:
    """Leibniz, unit and associativity of the action on basis vectors."""
    B = M.category
    bad = []
    for y1, y0 in itertools.product(B.objects, repeat=2):
        c1, c0 = M.complex(y1), M.complex(y0)
        for p, k in _basis(B, y0, y1):
            db = B.d(y0, y1, p, {k: 1})
            for n, dim in c1.dims.items():
                for i in range(dim):
                    m = {i: 1}
                    lhs = c0.d(n + p, M.act(y1, y0, n, m, p, k))
                    rhs = M.act(y1, y0, n + 1, c1.d(n, m), p, k)
                    vadd(rhs, M.act_vec(y1, y0, n, m, p + 1, db), (-1) ** (n % 2))
                    if lhs != rhs:
                        bad.append(Violation("module action breaks Leibniz", f"{y1}->{y0} degree {n} basis {i}"))
    for y in B.objects:
        c = M.complex(y)
        for n, dim in c.dims.items():
            for i in range(dim):
                if M.act_vec(y, y, n, {i: 1}, 0, B.unit(y)) != {i: 1}:
                    bad.append(Violation("unit acts non-trivially", f"{y} degree {n} basis {i}"))
    for y2, y1, y0 in itertools.product(B.objects, repeat=3):
        for q, g in _basis(B, y1, y2):
            for p, f in _basis(B, y0, y1):
                gf = B.compose(y0, y1, y2, q, {g: 1}, p, {f: 1})
                c2 = M.complex(y2)
                for n, dim in c2.dims.items():
                    for i in range(dim):
                        lhs = M.act(y1, y0, n + q, M.act(y2, y1, n, {i: 1}, q, g), p, f)
                        rhs = M.act_vec(y2, y0, n, {i: 1}, p + q, gf)
                        if lhs != rhs:
                            bad.append(Violation("module action not associative", f"{y2}->{y1}->{y0}"))
    return bad


# ---------------------------------------------------------------------------
# semi-free resolutions


class ResolutionDepthExceeded(RuntimeError):
    def __init__(self, rounds: int, remaining: dict):
        self.rounds = rounds
        self.remaining = remaining
        super().__init__(f"resolution not finished after {rounds} rounds; cone cohomology left: {remaining}")


@dataclass
class Resolution:
    """A twisted complex ``complex`` with a levelwise quasi-isomorphism to ``module``.

    ``witness[e]`` is the image in ``module(b_e)`` (degree ``-s_e``) of the
    generator ``e = (b_e, s_e)``.
    """

    module: LevelModule
    complex: TwistedComplex
    witness: list
    rounds: int


class _MappingCone:
    """``cone(Q -> M)`` at one object: degree n is ``Q(y)^(n+1) + M(y)^n``."""

    def __init__(self, M: LevelModule, Q: TwistedComplex, witness, y):
        self.ev = Evaluation(Q, y)
        self.mc = M.complex(y)
        evc = self.ev.cochain
        degrees = set(self.mc.dims) | {n - 1 for n in evc.dims}
        self.qdim = {n: evc.dim(n + 1) for n in degrees}
        dims = {n: self.qdim[n] + self.mc.dim(n) for n in degrees}
        diff = {}
        for n in sorted(degrees):
            cols = []
            off_next = self.qdim.get(n + 1, 0)
            for pos, (i, k) in enumerate(self.ev.basis.get(n + 1, [])):
                col = {j: -x for j, x in evc.d(n + 1, {pos: 1}).items()}
                b, s = Q.generators[i]
                w = M.act(b, y, -s, witness[i], n + 1 + s, k)
                for j, x in w.items():
                    col[off_next + j] = col.get(off_next + j, 0) + x
                cols.append(col)
            for pos in range(self.mc.dim(n)):
                cols.append({off_next + j: x for j, x in self.mc.d(n, {pos: 1}).items()})
            if any(cols):
                diff[n] = cols
        self.cochain = Cochain(dims, diff)

    def split(self, n, vec):
        q = {j: x for j, x in vec.items() if j < self.qdim.get(n, 0)}
        m = {j - self.qdim.get(n, 0): x for j, x in vec.items() if j >= self.qdim.get(n, 0)}
        return q, m

    def join(self, n, q, m):
        out = dict(q)
        off = self.qdim.get(n, 0)
        out.update({off + j: x for j, x in m.items()})
        return out


def _closed_non_units(B: FinDGCategory, y0, y1):
    """A basis of closed elements of Hom(y0, y1), omitting the unit line."""
    out = []
    for p in B.hom_degrees(y0, y1):
        dim = B.dim(y0, y1, p)
        cols = [B.d(y0, y1, p, {k: 1}) for k in range(dim)]
        closed = nullspace(cols) if any(cols) else [{k: 1} for k in range(dim)]
        if y0 == y1 and p == 0:
            ech = Echelon()
            ech.add(B.unit(y0))
            closed = [v for v in closed if ech.add(v)]
        out.extend((p, v) for v in closed)
    return out


def semi_free_resolution(M: LevelModule, depth_cap: int = 8, minimal: bool = True) -> Resolution:
    """Resolve ``M`` by a twisted complex, killing the cone's cohomology round by round.

    Each round adjoins one generator per class in a minimal generating set
    of the cone's cohomology (classes modulo the action of closed non-unit
    morphisms), at every object and degree.  Round ``r`` may only start if
    ``r < depth_cap``; otherwise :class:`ResolutionDepthExceeded` is raised.
    """
    B = M.category
    if not minimal:
        return basis_presentation(M)
    gens, delta, witness = [], {}, []
    rounds = 0
    while True:
        Q = TwistedComplex(B, gens, delta)
        cones = {y: _MappingCone(M, Q, witness, y) for y in B.objects}
        coh = {y: cohomology_dims(c.cochain, check=False) for y, c in cones.items()}
        remaining = {y: h for y, h in coh.items() if h}
        if not remaining:
            return Resolution(M, Q, witness, rounds)
        if rounds >= depth_cap:
            raise ResolutionDepthExceeded(rounds, remaining)
        reps = {(y, n): cohomology_representatives(cones[y].cochain, n)
                for y, h in remaining.items() for n in h}
        new = []
        for (y, n), classes in sorted(reps.items(), key=lambda t: (B.index(t[0][0]), t[0][1])):
            c = cones[y]
            ech = Echelon()
            for col in c.cochain.diff.get(n - 1, ()):
                ech.add(col)
            for y1 in B.objects:
                c1 = cones[y1]
                for p, beta in _closed_non_units(B, y, y1):
                    for z in reps.get((y1, n - p), ()):
                        q, m = c1.split(n - p, z)
                        qa = {}
                        for k, x in beta.items():
                            vadd(qa, c1.ev.act(c.ev, n - p + 1, q, p, {k: 1}), x)
                        ma = M.act_vec(y1, y, n - p, m, p, beta)
                        ech.add(c.join(n, qa, ma))
            for z in classes:
                if ech.add(z):
                    new.append((y, n, z))
        if not new:
            y = next(iter(remaining))
            new = [(y, n, z) for (yy, n), cl in sorted(reps.items(), key=lambda t: t[0][1])
                   if yy == y for z in cl]
        for y, n, z in new:
            c = cones[y]
            q, m = c.split(n, z)
            e = len(gens)
            gens.append((y, -n))
            for pos, x in q.items():
                i, k = c.ev.basis[n + 1][pos]
                delta.setdefault((i, e), {})[k] = x
            witness.append(vscale(m, -1))
        rounds += 1


def basis_presentation(M: LevelModule) -> Resolution:
    """For a one-object base with scalar endomorphisms: one generator per basis vector."""
    B = M.category
    if len(B.objects) != 1 or B.hom(B.objects[0], B.objects[0]).dims != {0: 1}:
        raise ValueError("basis presentation needs a one-object base with End = k")
    y = B.objects[0]
    unit_index = next(iter(B.unit(y)))
    c = M.complex(y)
    gens, witness, where = [], [], {}
    for n, dim in c.dims.items():
        for i in range(dim):
            where[(n, i)] = len(gens)
            gens.append((y, -n))
            witness.append({i: 1})
    delta = {}
    for n, cols in c.diff.items():
        for i, col in enumerate(cols):
            for j, x in col.items():
                delta[(where[(n + 1, j)], where[(n, i)])] = {unit_index: x}
    return Resolution(M, TwistedComplex(B, gens, delta), witness, 1)


def resolution_is_quasi_iso(res: Resolution) -> bool:
    B = res.module.category
    return all(not cohomology_dims(_MappingCone(res.module, res.complex, res.witness, y).cochain, check=False)
               for y in B.objects)


# ---------------------------------------------------------------------------
# perfectness and the complementary category


@dataclass
class PerfectnessReport:
    status: str  # "pass" or "unverified"
    tensor_images_perfect: bool
    resolutions: dict  # C-object -> Resolution
    unresolved: dict  # C-object -> message
    note: str = "images of representables under - (x) ~T are twisted complexes, hence perfect"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_perfectness(C: GluedCategory, W: Bimodule, depth_cap: int = 8) -> PerfectnessReport:
    resolutions, unresolved = {}, {}
    for G in C.objects:
        try:
            resolutions[G] = semi_free_resolution(HomModule(W, representable(C, G)), depth_cap)
        except ResolutionDepthExceeded as exc:
            unresolved[G] = str(exc)
    status = "pass" if not unresolved else "unverified"
    return PerfectnessReport(status, True, resolutions, unresolved)


def counit(res: Resolution, W: Bimodule) -> TwMorphism:
    """``tensor(Q, W) -> G`` assembled from the resolution's witness."""
    M = res.module
    if not isinstance(M, HomModule):
        raise TypeError("counit needs a resolution of a Hom module")
    Q = res.complex
    src = tensor(Q, W)
    G = M.target
    e, off = {}, 0
    for g, (b, s) in enumerate(Q.generators):
        m = M.hom(b).morphism(-s, res.witness[g])
        for (i, j), v in m.entries.items():
            e[(i, off + j)] = v
        off += len(W(b))
    return TwMorphism(src, G, 0, e)


@dataclass
class KSPartner:
    generators: list  # retained cones, as twisted complexes over C
    sources: list  # C-object each generator came from
    dropped: list  # C-objects whose cone was contractible
    classes: list  # K0 classes in the representable basis of C
    gram: list  # chain-level Euler form among the retained generators
    orthogonal: bool  # Hom(~T(B_j), E) acyclic for all j and all E
    rounds: dict = field(default_factory=dict)

    def hom_table(self) -> dict:
        return {(a, b): hom_cohomology(x, y)
                for (a, x), (b, y) in itertools.product(zip(self.sources, self.generators), repeat=2)}

    @property
    def k0_rank(self) -> int:
        from .exactlin import integer_rank

        return integer_rank(self.classes) if self.classes else 0


def ks_partner(C: GluedCategory, W: Bimodule, depth_cap: int = 8,
               perfectness: PerfectnessReport | None = None) -> KSPartner:
    perfectness = perfectness or check_perfectness(C, W, depth_cap)
    if perfectness.unresolved:
        G, msg = next(iter(perfectness.unresolved.items()))
        raise ResolutionDepthExceeded(depth_cap, {G: msg})
    gens, sources, dropped, rounds = [], [], [], {}
    for G in C.objects:
        res = perfectness.resolutions[G]
        rounds[G] = res.rounds
        E = cone(counit(res, W))
        if is_acyclic_module(E):
            dropped.append(G)
            continue
        gens.append(E)
        sources.append(G)
    orthogonal = all(not hom_cohomology(W(y), E) for y in C.B.objects for E in gens)
    gram = [[euler_pairing(x, y) for y in gens] for x in gens]
    return KSPartner(gens, sources, dropped, [list(k0_class(E)) for E in gens], gram, orthogonal, rounds)
