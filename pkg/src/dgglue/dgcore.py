"""Finite DG categories and their axiom validator.

A :class:`FinDGCategory` has finitely many objects, a finite-dimensional
Hom complex for each ordered pair, composition given by sparse structure
constants per pair of degrees, and a unit in each ``End(X)^0``.

Structure constants are stored as ``composition[(X, Y, Z)][(p, q)]``, a dict
mapping ``(g, f)`` basis indices (``g`` in ``Hom(Y, Z)^p``, ``f`` in
``Hom(X, Y)^q``) to the sparse vector ``g o f`` in ``Hom(X, Z)^(p+q)``.
Missing entries are zero.

Sign convention (fixed once): d(g o f) = d(g) o f + (-1)^|g| g o d(f).
A right DG module is a functor from the opposite category, so it is
evaluated contravariantly in the object and acted on from the right.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from .exactlin import Cochain, format_scalar, vadd, vclean

ZERO_COCHAIN = Cochain({})


@dataclass(frozen=True)
class Violation:
    axiom: str
    location: str

    def __str__(self):
        return f"{self.axiom} at {self.location}"


class ValidationError(ValueError):
    """Raised with the full list of violated axioms."""

    def __init__(self, what: str, violations: list[Violation]):
        self.violations = list(violations)
        lines = "\n  ".join(str(v) for v in self.violations[:20])
        more = "" if len(self.violations) <= 20 else f"\n  ... {len(self.violations) - 20} more"
        super().__init__(f"invalid {what}:\n  {lines}{more}")


class CategoryError(ValidationError):
    def __init__(self, violations):
        super().__init__("DG category", violations)


class FinDGCategory:
    """A finite DG category with explicit bases.

    Treat instances as immutable once built; ``digest`` identifies the
    content and is what equality and hashing use.
    """

    def __init__(self, objects, homs, composition, units, name: str | None = None, labels=None):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object names")
        self._index = {x: i for i, x in enumerate(self.objects)}
        self.homs = {k: v for k, v in homs.items() if not v.is_zero()}
        self.composition = {}
        for key, tables in composition.items():
            clean = {}
            for pq, table in tables.items():
                t = {gf: vclean(v) for gf, v in table.items()}
                t = {gf: v for gf, v in t.items() if v}
                if t:
                    clean[pq] = t
            if clean:
                self.composition[key] = clean
        self.units = {x: vclean(v) for x, v in units.items()}
        self.name = name or "C"
        self._digest = None

    # -- basic access -------------------------------------------------------

    def __contains__(self, obj):
        return obj in self._index

    def index(self, obj) -> int:
        try:
            return self._index[obj]
        except KeyError:
            raise KeyError(f"unknown object {obj!r} in category {self.name}") from None

    def hom(self, x, y) -> Cochain:
        return self.homs.get((x, y), ZERO_COCHAIN)

    def dim(self, x, y, n: int) -> int:
        c = self.homs.get((x, y))
        return c.dims.get(n, 0) if c is not None else 0

    def hom_degrees(self, x, y) -> list[int]:
        c = self.homs.get((x, y))
        return list(c.dims) if c is not None else []

    def d(self, x, y, n: int, vec) -> dict:
        c = self.homs.get((x, y))
        if c is None or not vec:
            return {}
        return c.d(n, vec)

    def unit(self, x) -> dict:
        return self.units.get(x, {})

    def compose(self, x, y, z, p: int, g, q: int, f) -> dict:
        """``g o f`` for g in Hom(y, z)^p and f in Hom(x, y)^q."""
        if not g or not f:
            return {}
        tables = self.composition.get((x, y, z))
        if tables is None:
            return {}
        table = tables.get((p, q))
        if table is None:
            return {}
        out: dict = {}
        for a, ga in g.items():
            for b, fb in f.items():
                prod = table.get((a, b))
                if prod:
                    vadd(out, prod, ga * fb)
        return out

    def label(self, x, y, n, k) -> str:
        c = self.homs.get((x, y))
        if c is not None and n in c.labels:
            return c.labels[n][k]
        return f"{x}->{y}[{n}]#{k}"

    # -- identity -----------------------------------------------------------

    def canonical(self) -> dict:
        homs = []
        for (x, y), c in sorted(self.homs.items()):
            homs.append([x, y, sorted(c.dims.items()),
                         sorted((n, [sorted((k, format_scalar(v)) for k, v in col.items()) for col in cols])
                                for n, cols in c.diff.items())])
        comp = []
        for key, tables in sorted(self.composition.items()):
            for pq, table in sorted(tables.items()):
                for gf, v in sorted(table.items()):
                    comp.append([list(key), list(pq), list(gf), sorted((k, format_scalar(x)) for k, x in v.items())])
        units = sorted((x, sorted((k, format_scalar(c)) for k, c in v.items())) for x, v in self.units.items())
        return {"objects": list(self.objects), "homs": homs, "composition": comp, "units": units}

    @property
    def digest(self) -> str:
        if self._digest is None:
            blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
            self._digest = hashlib.sha256(blob.encode()).hexdigest()
        return self._digest

    def __eq__(self, other):
        if not isinstance(other, FinDGCategory):
            return NotImplemented
        return self is other or self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"FinDGCategory({self.name!r}, objects={list(self.objects)})"


# ---------------------------------------------------------------------------
# validation


def category_violations(cat: FinDGCategory, limit: int = 200) -> list[Violation]:
    """All axiom failures (structure, d^2, units, Leibniz, associativity)."""
    out: list[Violation] = []
    obs = cat.objects

    def full():
        return len(out) >= limit

    for (x, y), c in cat.homs.items():
        if x not in cat or y not in cat:
            out.append(Violation("unknown object", f"Hom({x},{y})"))
            continue
        for n, j in c.d_squared_violations():
            out.append(Violation("d^2 != 0", f"Hom({x},{y}) degree {n} basis {j}"))
    for (x, y, z), tables in cat.composition.items():
        for (p, q), table in tables.items():
            for (a, b), v in table.items():
                if not (0 <= a < cat.dim(y, z, p) and 0 <= b < cat.dim(x, y, q)):
                    out.append(Violation("composition index out of range", f"({x},{y},{z}) degrees {(p, q)} pair {(a, b)}"))
                elif v and max(v) >= cat.dim(x, z, p + q):
                    out.append(Violation("composition value out of range", f"({x},{y},{z}) degrees {(p, q)} pair {(a, b)}"))
    if out:
        return out

    def basis(x, y):
        for n in cat.hom_degrees(x, y):
            for k in range(cat.dim(x, y, n)):
                yield n, {k: 1}, k

    for x in obs:
        u = cat.unit(x)
        if not u or max(u) >= cat.dim(x, x, 0):
            out.append(Violation("missing unit", f"End({x})^0"))
            continue
        if cat.d(x, x, 0, u):
            out.append(Violation("unit not closed", f"End({x})"))
    if out:
        return out
    for x, y in itertools.product(obs, repeat=2):
        for n, f, k in basis(x, y):
            if cat.compose(x, y, y, 0, cat.unit(y), n, f) != f:
                out.append(Violation("unit not neutral", f"1_{y} o {cat.label(x, y, n, k)}"))
            if cat.compose(x, x, y, n, f, 0, cat.unit(x)) != f:
                out.append(Violation("unit not neutral", f"{cat.label(x, y, n, k)} o 1_{x}"))
            if full():
                return out
    for x, y, z in itertools.product(obs, repeat=3):
        if not cat.homs.get((x, y)) or not cat.homs.get((y, z)):
            continue
        for p, g, gi in basis(y, z):
            dg = cat.d(y, z, p, g)
            for q, f, fi in basis(x, y):
                lhs = cat.d(x, z, p + q, cat.compose(x, y, z, p, g, q, f))
                rhs = cat.compose(x, y, z, p + 1, dg, q, f)
                vadd(rhs, cat.compose(x, y, z, p, g, q + 1, cat.d(x, y, q, f)), (-1) ** (p % 2))
                if lhs != rhs:
                    out.append(Violation("Leibniz rule fails",
                                         f"{cat.label(y, z, p, gi)} o {cat.label(x, y, q, fi)}"))
                    if full():
                        return out
    for w, x, y, z in itertools.product(obs, repeat=4):
        if not (cat.homs.get((w, x)) and cat.homs.get((x, y)) and cat.homs.get((y, z))):
            continue
        for r, h, hi in basis(y, z):
            for p, g, gi in basis(x, y):
                hg = cat.compose(x, y, z, r, h, p, g)
                for q, f, fi in basis(w, x):
                    lhs = cat.compose(w, x, z, r + p, hg, q, f)
                    rhs = cat.compose(w, y, z, r, h, p + q, cat.compose(w, x, y, p, g, q, f))
                    if lhs != rhs:
                        out.append(Violation("associativity fails",
                                             f"({cat.label(y, z, r, hi)}, {cat.label(x, y, p, gi)}, "
                                             f"{cat.label(w, x, q, fi)})"))
                        if full():
                            return out
    return out


_VALIDATED: set[str] = set()


def validate_category(cat: FinDGCategory) -> FinDGCategory:
    """Return ``cat`` if every axiom holds, else raise :class:`CategoryError`."""
    if cat.digest in _VALIDATED:
        return cat
    bad = category_violations(cat)
    if bad:
        raise CategoryError(bad)
    _VALIDATED.add(cat.digest)
    return cat


# ---------------------------------------------------------------------------
# builders


def path_category(vertices, arrows, zero_relations=(), name: str | None = None) -> FinDGCategory:
    """Path category of an acyclic quiver, concentrated in degree 0.

    ``arrows`` is a list of ``(label, source, target)``.  A path is
    composed left to right as a tuple of arrow labels; ``zero_relations``
    lists paths (tuples of labels) that are set to zero together with every
    path containing them.
    """
    vertices = list(vertices)
    by_source: dict = {v: [] for v in vertices}
    for lab, s, t in arrows:
        if s not in by_source or t not in by_source:
            raise ValueError(f"arrow {lab} has an unknown endpoint")
        by_source[s].append((lab, t))
    rels = [tuple(r) for r in zero_relations]

    def killed(path):
        return any(path[i:i + len(r)] == r for r in rels for i in range(len(path) - len(r) + 1))

    paths: dict = {(v, v): [()] for v in vertices}
    frontier = [((), v, v) for v in vertices]
    depth = 0
    while frontier:
        depth += 1
        if depth > len(arrows) + 1:
            raise ValueError("quiver has an oriented cycle")
        nxt = []
        for path, s, t in frontier:
            for lab, t2 in by_source[t]:
                p2 = path + (lab,)
                if killed(p2):
                    continue
                paths.setdefault((s, t2), []).append(p2)
                nxt.append((p2, s, t2))
        frontier = nxt
    index = {key: {p: i for i, p in enumerate(ps)} for key, ps in paths.items()}
    homs = {}
    for (s, t), ps in paths.items():
        labels = {0: ["1_" + s if not p else "*".join(reversed(p)) for p in ps]}
        homs[(s, t)] = Cochain({0: len(ps)}, labels=labels)
    comp: dict = {}
    for (x, y), fs in paths.items():
        for (y2, z), gs in paths.items():
            if y2 != y:
                continue
            table = {}
            for b, f in enumerate(fs):
                for a, g in enumerate(gs):
                    fg = f + g
                    if killed(fg):
                        continue
                    table[(a, b)] = {index[(x, z)][fg]: 1}
            if table:
                comp[(x, y, z)] = {(0, 0): table}
    units = {v: {index[(v, v)][()]: 1} for v in vertices}
    return FinDGCategory(vertices, homs, comp, units, name=name)


def unit_category(obj: str = "*") -> FinDGCategory:
    """One object whose endomorphisms are the ground field in degree 0."""
    return path_category([obj], [], name="1")


def empty_category() -> FinDGCategory:
    return FinDGCategory([], {}, {}, {}, name="0")
