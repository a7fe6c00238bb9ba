"""Twisted complexes over a finite DG category.

A twisted complex is a finitely generated semi-free module presented as
``(sum_i h^{a_i}[s_i], delta)``.  Conventions, fixed once for the package:

* a generator ``(a, s)`` stands for the shifted representable ``h^a[s]``;
* ``delta[(i, j)]`` (from generator ``j`` to generator ``i``) is an element of
  ``Hom(a_j, a_i)`` of degree ``1 + s_i - s_j``;
* an entry ``f[(i, j)]`` of a morphism of degree ``n`` lies in
  ``Hom(a_j, b_i)`` of degree ``n + t_i - s_j``;
* entries are stored unsigned, composition is the plain matrix product and
  the differential of a morphism is
  ``D f = d'(f) + delta_W f - (-1)^n f delta_Z`` with
  ``d'(f)[(i, j)] = (-1)^(t_i) d(f[(i, j)])`` (``t_i`` the target shift);
* Maurer-Cartan: ``(-1)^(s_i) d(delta_ij) + sum_k delta_ik delta_kj = 0``;
* ``shift(Z, n)`` adds ``n`` to every shift and multiplies ``delta`` by
  ``(-1)^n``; the shift functor multiplies a degree-``p`` morphism by
  ``(-1)^(n p)``;
* ``cone(f: Z -> W) = shift(Z, 1) + W`` with ``f`` as the connecting block.

The D^2 = 0, Leibniz and Yoneda test suites pin these signs.
"""

from __future__ import annotations

from collections import defaultdict

from .dgcore import FinDGCategory, ValidationError, Violation
from .exactlin import Cochain, cohomology_dims, current_field, vadd, vclean, vscale


class TwistedComplexError(ValidationError):
    def __init__(self, violations):
        super().__init__("twisted complex", violations)


class CategoryMismatch(ValueError):
    pass


def _same_category(a: FinDGCategory, b: FinDGCategory):
    if a is not b and a != b:
        raise CategoryMismatch(f"objects live over different categories ({a.name} vs {b.name})")


class TwistedComplex:
    """Generators ``(object, shift)`` plus a strictly triangular ``delta``."""

    __slots__ = ("category", "generators", "delta", "_key", "_out", "_in")

    def __init__(self, category: FinDGCategory, generators, delta=None):
        self.category = category
        self.generators = tuple((obj, int(s)) for obj, s in generators)
        d = {}
        for (i, j), v in (delta or {}).items():
            v = vclean(v)
            if v:
                d[(int(i), int(j))] = v
        self.delta = d
        self._key = None
        self._out = None
        self._in = None

    def __len__(self):
        return len(self.generators)

    def obj(self, i):
        return self.generators[i][0]

    def shift_of(self, i):
        return self.generators[i][1]

    def entry_degree(self, i, j) -> int:
        return 1 + self.generators[i][1] - self.generators[j][1]

    def out_edges(self, j):
        """``[(i, delta_ij)]``: the entries leaving generator ``j``."""
        if self._out is None:
            out = defaultdict(list)
            inn = defaultdict(list)
            for (i, jj), v in sorted(self.delta.items()):
                out[jj].append((i, v))
                inn[i].append((jj, v))
            self._out, self._in = dict(out), dict(inn)
        return self._out.get(j, ())

    def in_edges(self, i):
        """``[(j, delta_ij)]``: the entries arriving at generator ``i``."""
        if self._in is None:
            self.out_edges(0)
        return self._in.get(i, ())

    def key(self):
        if self._key is None:
            self._key = (self.category.digest, self.generators,
                         tuple(sorted((ij, tuple(sorted(v.items()))) for ij, v in self.delta.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, TwistedComplex):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        gens = ", ".join(f"{a}[{s}]" for a, s in self.generators)
        return f"TwistedComplex({gens}; {len(self.delta)} delta entries)"


def representable(cat: FinDGCategory, obj, shift: int = 0) -> TwistedComplex:
    cat.index(obj)
    return TwistedComplex(cat, [(obj, shift)])


def zero_complex(cat: FinDGCategory) -> TwistedComplex:
    return TwistedComplex(cat, [])


# ---------------------------------------------------------------------------
# validation


def maurer_cartan_defect(Z: TwistedComplex) -> dict:
    cat = Z.category
    mc: dict = {}
    for (i, j), v in Z.delta.items():
        dv = cat.d(Z.obj(j), Z.obj(i), Z.entry_degree(i, j), v)
        if dv:
            vadd(mc.setdefault((i, j), {}), dv, (-1) ** (Z.shift_of(i) % 2))
    for (k, j), v in Z.delta.items():
        for i, w in Z.out_edges(k):
            prod = cat.compose(Z.obj(j), Z.obj(k), Z.obj(i), Z.entry_degree(i, k), w,
                               Z.entry_degree(k, j), v)
            if prod:
                vadd(mc.setdefault((i, j), {}), prod)
    return {ij: v for ij, v in mc.items() if v}


def _has_cycle(n, edges) -> list[int] | None:
    succ = defaultdict(set)
    indeg = [0] * n
    for i, j in edges:
        if i not in succ[j]:
            succ[j].add(i)
            indeg[i] += 1
    ready = [k for k in range(n) if indeg[k] == 0]
    seen = 0
    while ready:
        k = ready.pop()
        seen += 1
        for i in succ[k]:
            indeg[i] -= 1
            if indeg[i] == 0:
                ready.append(i)
    if seen == n:
        return None
    return [k for k in range(n) if indeg[k] > 0]


def twcx_violations(Z: TwistedComplex) -> list[Violation]:
    cat = Z.category
    bad = []
    for obj, _ in Z.generators:
        if obj not in cat:
            bad.append(Violation("unknown object", repr(obj)))
    if bad:
        return bad
    n = len(Z)
    for (i, j), v in Z.delta.items():
        if not (0 <= i < n and 0 <= j < n):
            bad.append(Violation("delta index out of range", f"({i},{j})"))
            continue
        dim = cat.dim(Z.obj(j), Z.obj(i), Z.entry_degree(i, j))
        if max(v) >= dim or min(v) < 0:
            bad.append(Violation("delta entry has the wrong degree",
                                 f"({i},{j}) needs Hom({Z.obj(j)},{Z.obj(i)})^{Z.entry_degree(i, j)}"))
    if bad:
        return bad
    cyc = _has_cycle(n, Z.delta)
    if cyc is not None:
        bad.append(Violation("generator graph has a cycle", f"generators {cyc}"))
    for (i, j), v in sorted(maurer_cartan_defect(Z).items()):
        bad.append(Violation("Maurer-Cartan equation fails", f"entry ({i},{j}) defect {v}"))
    return bad


def validate_twcx(Z: TwistedComplex) -> TwistedComplex:
    bad = twcx_violations(Z)
    if bad:
        raise TwistedComplexError(bad)
    return Z


# ---------------------------------------------------------------------------
# constructions on objects


def shift(Z: TwistedComplex, n: int) -> TwistedComplex:
    sign = (-1) ** (n % 2)
    return TwistedComplex(Z.category, [(a, s + n) for a, s in Z.generators],
                          {ij: vscale(v, sign) for ij, v in Z.delta.items()})


def direct_sum(*Zs: TwistedComplex) -> TwistedComplex:
    if not Zs:
        raise ValueError("direct_sum needs at least one summand")
    cat = Zs[0].category
    gens, delta, off = [], {}, 0
    for Z in Zs:
        _same_category(cat, Z.category)
        gens.extend(Z.generators)
        for (i, j), v in Z.delta.items():
            delta[(i + off, j + off)] = v
        off += len(Z)
    return TwistedComplex(cat, gens, delta)


def k0_class(Z: TwistedComplex) -> tuple[int, ...]:
    cat = Z.category
    v = [0] * len(cat.objects)
    for a, s in Z.generators:
        v[cat.index(a)] += (-1) ** (s % 2)
    return tuple(v)


# ---------------------------------------------------------------------------
# morphisms


class TwMorphism:
    """A homogeneous morphism of twisted complexes of a given degree."""

    __slots__ = ("source", "target", "degree", "entries")

    def __init__(self, source: TwistedComplex, target: TwistedComplex, degree: int, entries=None):
        _same_category(source.category, target.category)
        self.source = source
        self.target = target
        self.degree = int(degree)
        e = {}
        for (i, j), v in (entries or {}).items():
            v = vclean(v)
            if v:
                e[(int(i), int(j))] = v
        self.entries = e

    def entry_degree(self, i, j) -> int:
        return self.degree + self.target.shift_of(i) - self.source.shift_of(j)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TwMorphism):
            return NotImplemented
        return (self.degree == other.degree and self.source == other.source
                and self.target == other.target and self.entries == other.entries)

    def __hash__(self):
        return hash((self.degree, len(self.entries)))

    def __repr__(self):
        return f"TwMorphism(degree={self.degree}, {len(self.entries)} entries)"


def morphism_violations(f: TwMorphism) -> list[Violation]:
    cat = f.source.category
    bad = []
    for (i, j), v in f.entries.items():
        if not (0 <= i < len(f.target) and 0 <= j < len(f.source)):
            bad.append(Violation("morphism index out of range", f"({i},{j})"))
            continue
        dim = cat.dim(f.source.obj(j), f.target.obj(i), f.entry_degree(i, j))
        if max(v) >= dim:
            bad.append(Violation("morphism entry has the wrong degree", f"({i},{j})"))
    return bad


def identity(Z: TwistedComplex) -> TwMorphism:
    cat = Z.category
    return TwMorphism(Z, Z, 0, {(i, i): cat.unit(a) for i, (a, _) in enumerate(Z.generators)})


def zero_morphism(Z: TwistedComplex, W: TwistedComplex, degree: int = 0) -> TwMorphism:
    return TwMorphism(Z, W, degree)


def add_morphisms(f: TwMorphism, g: TwMorphism, c=1) -> TwMorphism:
    """``f + c g``."""
    if f.degree != g.degree or f.source != g.source or f.target != g.target:
        raise ValueError("cannot add morphisms with different source, target or degree")
    e = {ij: dict(v) for ij, v in f.entries.items()}
    for ij, v in g.entries.items():
        vadd(e.setdefault(ij, {}), v, c)
    return TwMorphism(f.source, f.target, f.degree, e)


def scale_morphism(f: TwMorphism, c) -> TwMorphism:
    return TwMorphism(f.source, f.target, f.degree, {ij: vscale(v, c) for ij, v in f.entries.items()})


def compose_morphisms(g: TwMorphism, f: TwMorphism) -> TwMorphism:
    """``g o f`` (first ``f``, then ``g``)."""
    if f.target != g.source:
        raise CategoryMismatch("target of f differs from source of g")
    Z, W, V = f.source, f.target, g.target
    cat = Z.category
    by_col = defaultdict(list)
    for (i, k), v in g.entries.items():
        by_col[k].append((i, v))
    out: dict = {}
    for (k, j), fv in f.entries.items():
        for i, gv in by_col.get(k, ()):
            prod = cat.compose(Z.obj(j), W.obj(k), V.obj(i), g.entry_degree(i, k), gv,
                               f.entry_degree(k, j), fv)
            if prod:
                vadd(out.setdefault((i, j), {}), prod)
    return TwMorphism(Z, V, f.degree + g.degree, out)


def differential(f: TwMorphism) -> TwMorphism:
    """``D f = d'(f) + delta_W f - (-1)^n f delta_Z``."""
    Z, W, n = f.source, f.target, f.degree
    cat = Z.category
    out: dict = {}
    for (i, j), v in f.entries.items():
        aj, bi, p = Z.obj(j), W.obj(i), f.entry_degree(i, j)
        dv = cat.d(aj, bi, p, v)
        if dv:
            vadd(out.setdefault((i, j), {}), dv, (-1) ** (W.shift_of(i) % 2))
        for l, w in W.out_edges(i):
            prod = cat.compose(aj, bi, W.obj(l), W.entry_degree(l, i), w, p, v)
            if prod:
                vadd(out.setdefault((l, j), {}), prod)
        for m, w in Z.in_edges(j):
            prod = cat.compose(Z.obj(m), aj, bi, p, v, Z.entry_degree(j, m), w)
            if prod:
                vadd(out.setdefault((i, m), {}), prod, -((-1) ** (n % 2)))
    return TwMorphism(Z, W, n + 1, out)


def is_closed(f: TwMorphism) -> bool:
    return differential(f).is_zero()


def shift_morphism(f: TwMorphism, n: int) -> TwMorphism:
    """The shift functor on morphisms: ``shift(Z, n) -> shift(W, n)``."""
    sign = (-1) ** ((n * f.degree) % 2)
    return TwMorphism(shift(f.source, n), shift(f.target, n), f.degree,
                      {ij: vscale(v, sign) for ij, v in f.entries.items()})


def block_morphism(source: TwistedComplex, target: TwistedComplex, degree: int, blocks) -> TwMorphism:
    """Assemble a morphism from ``{(row_offset, col_offset): TwMorphism}``."""
    e: dict = {}
    for (ro, co), m in blocks.items():
        for (i, j), v in m.entries.items():
            vadd(e.setdefault((i + ro, j + co), {}), v)
    return TwMorphism(source, target, degree, e)


def inclusion(summands, k: int) -> TwMorphism:
    total = direct_sum(*summands)
    off = sum(len(Z) for Z in summands[:k])
    Zk = summands[k]
    cat = Zk.category
    return TwMorphism(Zk, total, 0, {(off + i, i): cat.unit(a) for i, (a, _) in enumerate(Zk.generators)})


def projection(summands, k: int) -> TwMorphism:
    total = direct_sum(*summands)
    off = sum(len(Z) for Z in summands[:k])
    Zk = summands[k]
    cat = Zk.category
    return TwMorphism(total, Zk, 0, {(i, off + i): cat.unit(a) for i, (a, _) in enumerate(Zk.generators)})


def cone(f: TwMorphism, check: bool = True) -> TwistedComplex:
    """``shift(Z, 1) + W`` twisted by ``f``; ``f`` must be closed of degree 0."""
    if f.degree != 0:
        raise ValueError(f"cone needs a degree-0 morphism, got degree {f.degree}")
    if check and not is_closed(f):
        raise ValueError("cone needs a closed morphism")
    Z, W = f.source, f.target
    off = len(Z)
    gens = [(a, s + 1) for a, s in Z.generators] + list(W.generators)
    delta = {ij: vscale(v, -1) for ij, v in Z.delta.items()}
    for (i, j), v in W.delta.items():
        delta[(i + off, j + off)] = v
    for (i, j), v in f.entries.items():
        delta[(i + off, j)] = v
    return TwistedComplex(Z.category, gens, delta)


def cone_morphism(top: TwMorphism, bottom: TwMorphism, source_cone: TwistedComplex,
                  target_cone: TwistedComplex) -> TwMorphism:
    """Morphism of cones induced by a strictly commuting square.

    ``top: Z -> Z'`` and ``bottom: W -> W'`` of the same degree ``p`` with
    ``g' top = bottom g``; the result is ``diag((-1)^p top, bottom)``.
    """
    p = top.degree
    sign = (-1) ** (p % 2)
    blocks = {(0, 0): scale_morphism(top, sign), (len(top.target), len(top.source)): bottom}
    return block_morphism(source_cone, target_cone, p, blocks)


# ---------------------------------------------------------------------------
# Hom complexes and evaluation


class HomComplex:
    """The complex ``Hom(Z, W)`` with basis ``(i, j, k)``: basis vector ``k``
    of ``Hom(a_j, b_i)`` in the degree fixed by the shifts."""

    def __init__(self, Z: TwistedComplex, W: TwistedComplex):
        _same_category(Z.category, W.category)
        self.source, self.target = Z, W
        cat = Z.category
        basis: dict = defaultdict(list)
        for i, (b, t) in enumerate(W.generators):
            for j, (a, s) in enumerate(Z.generators):
                for p in cat.hom_degrees(a, b):
                    n = p - t + s
                    for k in range(cat.dim(a, b, p)):
                        basis[n].append((i, j, k))
        self.basis = {n: basis[n] for n in sorted(basis)}
        self.index = {n: {b: pos for pos, b in enumerate(bs)} for n, bs in self.basis.items()}
        self._cochain = None

    @property
    def cochain(self) -> Cochain:
        if self._cochain is None:
            self._cochain = self._build()
        return self._cochain

    def _build(self) -> Cochain:
        Z, W = self.source, self.target
        cat = Z.category
        diff = {}
        for n, bs in self.basis.items():
            nxt = self.index.get(n + 1)
            if nxt is None:
                continue
            sign_n = -((-1) ** (n % 2))
            cols = []
            for i, j, k in bs:
                aj, bi = Z.obj(j), W.obj(i)
                p = n + W.shift_of(i) - Z.shift_of(j)
                e = {k: 1}
                col: dict = {}
                dv = cat.d(aj, bi, p, e)
                if dv:
                    s = (-1) ** (W.shift_of(i) % 2)
                    for kk, x in dv.items():
                        pos = nxt[(i, j, kk)]
                        col[pos] = col.get(pos, 0) + s * x
                for l, w in W.out_edges(i):
                    prod = cat.compose(aj, bi, W.obj(l), W.entry_degree(l, i), w, p, e)
                    for kk, x in prod.items():
                        pos = nxt[(l, j, kk)]
                        col[pos] = col.get(pos, 0) + x
                for m, w in Z.in_edges(j):
                    prod = cat.compose(Z.obj(m), aj, bi, p, e, Z.entry_degree(j, m), w)
                    for kk, x in prod.items():
                        pos = nxt[(i, m, kk)]
                        col[pos] = col.get(pos, 0) + sign_n * x
                cols.append({q: x for q, x in col.items() if x})
            if any(cols):
                diff[n] = cols
        dims = {n: len(bs) for n, bs in self.basis.items()}
        return Cochain(dims, diff)

    def vector(self, f: TwMorphism) -> dict:
        idx = self.index.get(f.degree, {})
        out = {}
        for (i, j), v in f.entries.items():
            for k, x in v.items():
                out[idx[(i, j, k)]] = x
        return out

    def morphism(self, n: int, vec) -> TwMorphism:
        e: dict = {}
        bs = self.basis.get(n, [])
        for pos, x in vec.items():
            i, j, k = bs[pos]
            e.setdefault((i, j), {})[k] = x
        return TwMorphism(self.source, self.target, n, e)


def hom_complex(Z: TwistedComplex, W: TwistedComplex) -> HomComplex:
    return HomComplex(Z, W)


_COHOMOLOGY_CACHE: dict = {}
_CACHE_LIMIT = 4096


def hom_cohomology(Z: TwistedComplex, W: TwistedComplex) -> dict[int, int]:
    """Cohomology dimensions of ``Hom(Z, W)`` (memoised by content)."""
    key = (Z.key(), W.key(), current_field())
    hit = _COHOMOLOGY_CACHE.get(key)
    if hit is not None:
        return dict(hit)
    h = cohomology_dims(HomComplex(Z, W).cochain, check=False)
    if len(_COHOMOLOGY_CACHE) >= _CACHE_LIMIT:
        _COHOMOLOGY_CACHE.clear()
    _COHOMOLOGY_CACHE[key] = h
    return dict(h)


def euler_pairing(Z: TwistedComplex, W: TwistedComplex) -> int:
    """sum_m (-1)^m dim Hom(Z, W)^m; equals the cohomological Euler form."""
    total = 0
    cat = Z.category
    for b, t in W.generators:
        for a, s in Z.generators:
            c = cat.hom(a, b)
            for p, d in c.dims.items():
                total += (-1) ** ((p - t + s) % 2) * d
    return total


class Evaluation:
    """The complex ``Z(X) = sum_i Hom(X, a_i)[s_i]`` with basis ``(i, k)``."""

    def __init__(self, Z: TwistedComplex, X):
        cat = Z.category
        cat.index(X)
        self.module, self.object = Z, X
        basis: dict = defaultdict(list)
        for i, (a, s) in enumerate(Z.generators):
            for p in cat.hom_degrees(X, a):
                for k in range(cat.dim(X, a, p)):
                    basis[p - s].append((i, k))
        self.basis = {n: basis[n] for n in sorted(basis)}
        self.index = {n: {b: pos for pos, b in enumerate(bs)} for n, bs in self.basis.items()}
        self._cochain = None

    @property
    def cochain(self) -> Cochain:
        if self._cochain is None:
            Z, X = self.module, self.object
            cat = Z.category
            diff = {}
            for n, bs in self.basis.items():
                nxt = self.index.get(n + 1)
                if nxt is None:
                    continue
                cols = []
                for i, k in bs:
                    a, s = Z.generators[i]
                    p = n + s
                    e = {k: 1}
                    col: dict = {}
                    dv = cat.d(X, a, p, e)
                    sgn = (-1) ** (s % 2)
                    for kk, x in dv.items():
                        pos = nxt[(i, kk)]
                        col[pos] = col.get(pos, 0) + sgn * x
                    for l, w in Z.out_edges(i):
                        prod = cat.compose(X, a, Z.obj(l), Z.entry_degree(l, i), w, p, e)
                        for kk, x in prod.items():
                            pos = nxt[(l, kk)]
                            col[pos] = col.get(pos, 0) + x
                    cols.append({q: x for q, x in col.items() if x})
                if any(cols):
                    diff[n] = cols
            self._cochain = Cochain({n: len(bs) for n, bs in self.basis.items()}, diff)
        return self._cochain

    def act(self, other: "Evaluation", n: int, vec, q: int, alpha) -> dict:
        """Right action ``x . alpha`` for ``alpha`` in ``Hom(other.object, self.object)^q``."""
        Z = self.module
        cat = Z.category
        X2, X = other.object, self.object
        bs = self.basis.get(n, [])
        out: dict = {}
        target = other.index.get(n + q, {})
        for pos, x in vec.items():
            i, k = bs[pos]
            a, s = Z.generators[i]
            prod = cat.compose(X2, X, a, n + s, {k: 1}, q, alpha)
            for kk, y in prod.items():
                t = target[(i, kk)]
                out[t] = out.get(t, 0) + x * y
        return {t: y for t, y in out.items() if y}

    def element(self, n: int, vec) -> TwMorphism:
        """The element as a morphism ``h^X -> Z`` of degree ``n``."""
        e: dict = {}
        bs = self.basis.get(n, [])
        for pos, x in vec.items():
            i, k = bs[pos]
            e.setdefault((i, 0), {})[k] = x
        return TwMorphism(representable(self.module.category, self.object), self.module, n, e)

    def vector(self, f: TwMorphism) -> dict:
        idx = self.index.get(f.degree, {})
        return {idx[(i, k)]: x for (i, _), v in f.entries.items() for k, x in v.items()}


def evaluate_at(Z: TwistedComplex, X) -> Evaluation:
    return Evaluation(Z, X)


def evaluation_cohomology(Z: TwistedComplex, X) -> dict[int, int]:
    return cohomology_dims(Evaluation(Z, X).cochain, check=False)


def is_acyclic_module(Z: TwistedComplex) -> bool:
    """True iff every evaluation is acyclic (for semi-free Z: contractible)."""
    return all(not evaluation_cohomology(Z, X) for X in Z.category.objects)


# ---------------------------------------------------------------------------
# full DG subcategories of twisted complexes


def tw_subcategory(objects, names=None, name: str = "Tw") -> FinDGCategory:
    """The full DG subcategory of twisted complexes on ``objects``."""
    objects = list(objects)
    names = list(names) if names is not None else [f"E{i}" for i in range(len(objects))]
    hcs = {(a, b): HomComplex(objects[a], objects[b])
           for a in range(len(objects)) for b in range(len(objects))}
    homs = {(names[a], names[b]): hc.cochain for (a, b), hc in hcs.items()}
    comp: dict = {}
    for a in range(len(objects)):
        for b in range(len(objects)):
            f_hc = hcs[(a, b)]
            if not f_hc.basis:
                continue
            for c in range(len(objects)):
                g_hc = hcs[(b, c)]
                out_hc = hcs[(a, c)]
                if not g_hc.basis:
                    continue
                tables: dict = {}
                for p, gb in g_hc.basis.items():
                    gms = [g_hc.morphism(p, {x: 1}) for x in range(len(gb))]
                    for q, fb in f_hc.basis.items():
                        fms = [f_hc.morphism(q, {y: 1}) for y in range(len(fb))]
                        table = {}
                        for x, gm in enumerate(gms):
                            for y, fm in enumerate(fms):
                                v = out_hc.vector(compose_morphisms(gm, fm))
                                if v:
                                    table[(x, y)] = v
                        if table:
                            tables[(p, q)] = table
                if tables:
                    comp[(names[a], names[b], names[c])] = tables
    units = {names[a]: hcs[(a, a)].vector(identity(objects[a])) for a in range(len(objects))}
    return FinDGCategory(names, homs, comp, units, name=name)
