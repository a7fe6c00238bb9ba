"""Euler forms on K0 and congruence of integral bilinear forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dgcore import FinDGCategory
from .exactlin import (
    IntLattice,
    charpoly,
    cohomology_dims,
    determinant,
    euler_of_dims,
    hermite_normal_form,
    integer_rank,
    matmul,
    saturated_kernel,
    signature,
    smith_divisors,
    transpose,
    inverse,
)
from .twcx import euler_pairing, hom_cohomology


@dataclass(frozen=True)
class GramForm:
    matrix: tuple
    labels: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if any(len(r) != len(m) for r in m):
            raise ValueError("Gram matrix must be square")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(len(m)))
        if len(labels) != len(m):
            raise ValueError("one label per basis vector")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


def gram(matrix, labels=None) -> GramForm:
    return GramForm(tuple(tuple(r) for r in matrix), tuple(labels or ()))


def euler_matrix(objects, labels=None, method: str = "cohomology") -> GramForm:
    """``G[s][t] = sum_m (-1)^m dim H^m Hom(Z_s, Z_t)``.

    ``method="chain"`` uses the dimensions of the Hom complexes themselves,
    which gives the same numbers and avoids computing ranks.
    """
    objects = list(objects)
    if method == "cohomology":
        m = [[euler_of_dims(hom_cohomology(x, y)) for y in objects] for x in objects]
    elif method == "chain":
        m = [[euler_pairing(x, y) for y in objects] for x in objects]
    else:
        raise ValueError(f"unknown method {method!r}")
    return gram(m, labels or [f"Z{i}" for i in range(len(objects))])


def representable_euler_matrix(cat: FinDGCategory) -> GramForm:
    m = [[euler_of_dims(cohomology_dims(cat.hom(x, y), check=False)) for y in cat.objects] for x in cat.objects]
    return gram(m, cat.objects)


@dataclass
class ExceptionalityReport:
    passed: bool
    order: list
    failures: list = field(default_factory=list)


def exceptionality_check(cat: FinDGCategory) -> ExceptionalityReport:
    """Find an order with ``Hom(later, earlier)`` acyclic and every ``End`` equal to k."""
    obs = list(cat.objects)
    failures = []
    for x in obs:
        h = cohomology_dims(cat.hom(x, x), check=False)
        if h != {0: 1}:
            failures.append(f"End({x}) has cohomology {h}")
    succ = {x: [] for x in obs}
    indeg = {x: 0 for x in obs}
    for x, y in itertools.permutations(obs, 2):
        if cohomology_dims(cat.hom(x, y), check=False):
            succ[x].append(y)
            indeg[y] += 1
    order = []
    ready = [x for x in obs if indeg[x] == 0]
    while ready:
        ready.sort(key=cat.index)
        x = ready.pop(0)
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) < len(obs):
        stuck = [x for x in obs if x not in order]
        failures.append(f"non-vanishing Homs in both directions among {stuck}")
        order = []
    return ExceptionalityReport(not failures, order, failures)


def orthogonal_gram(chi: GramForm, left_classes) -> tuple[GramForm, IntLattice]:
    """Restrict ``chi`` to ``{v : chi(c, v) = 0 for all c in left_classes}``."""
    n = chi.size
    classes = [list(c) for c in left_classes]
    for c in classes:
        if len(c) != n or any(not isinstance(x, int) for x in c):
            raise ValueError(f"class {c} is not an integer vector of length {n}")
    if classes:
        rows = matmul(classes, chi.rows())
        lattice = saturated_kernel(rows)
    else:
        lattice = IntLattice(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    basis = [list(b) for b in lattice.basis]
    if not basis:
        return gram([], []), lattice
    g = matmul(matmul(basis, chi.rows()), transpose(basis))
    return gram(g, [f"v{i}" for i in range(len(basis))]), lattice


def lattice_basis_subset(classes) -> list[int] | None:
    """Indices of a subset of ``classes`` forming a Z-basis of their span, if one exists."""
    classes = [list(c) for c in classes]
    if not classes:
        return []
    r = integer_rank(classes)
    target = hermite_normal_form(classes)
    for idx in itertools.combinations(range(len(classes)), r):
        sub = [classes[i] for i in idx]
        if integer_rank(sub) == r and hermite_normal_form(sub) == target:
            return list(idx)
    return None


# ---------------------------------------------------------------------------
# congruence


def invariant_pack(G) -> dict:
    """Congruence invariants of an integral bilinear form, in comparison order."""
    G = [list(r) for r in (G.matrix if isinstance(G, GramForm) else G)]
    n = len(G)
    sym = [[G[i][j] + G[j][i] for j in range(n)] for i in range(n)]
    anti = [[G[i][j] - G[j][i] for j in range(n)] for i in range(n)]
    d = determinant(G) if n else 1
    pack = {
        "det": d,
        "rank(G+G^T)": integer_rank(sym) if n else 0,
        "signature(G+G^T)": signature(sym) if n else (0, 0),
        "smith(G+G^T)": smith_divisors(sym) if n else [],
        "smith(G-G^T)": smith_divisors(anti) if n else [],
    }
    if n and abs(d) == 1:
        pack["charpoly(G^-1 G^T)"] = charpoly(matmul(inverse(G), transpose(G)))
    return pack


@dataclass
class EquivalenceVerdict:
    kind: str  # "Equivalent", "Inequivalent" or "Undecided"
    certificate: list | None = None  # P with P^T G1 P = G2
    invariant: str | None = None
    values: tuple | None = None
    differences: dict = field(default_factory=dict)
    bound: int | None = None

    def __bool__(self):
        return self.kind == "Equivalent"

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.invariant is not None:
            out["invariant"] = self.invariant
            out["values"] = [_plain(v) for v in self.values]
            out["differences"] = {k: [_plain(a), _plain(b)] for k, (a, b) in self.differences.items()}
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, int):
        return v
    return str(v)


def is_congruence(G1, G2, P) -> bool:
    if abs(determinant(P)) != 1:
        return False
    return matmul(matmul(transpose(P), G1), P) == [list(r) for r in G2]


def default_bound(n: int) -> int:
    return 10 if n <= 2 else 3


def _search(G1, G2, bound):
    n = len(G1)

    def form(u, v):
        return sum(u[i] * G1[i][j] * v[j] for i in range(n) for j in range(n))

    # smallest entries first, then lexicographic: deterministic and short certificates
    vectors = sorted(itertools.product(range(-bound, bound + 1), repeat=n),
                     key=lambda v: (max(map(abs, v)), v))
    by_norm: dict = {}
    for v in vectors:
        by_norm.setdefault(form(v, v), []).append(v)
    cols: list = []

    def extend(j):
        if j == n:
            P = [list(r) for r in zip(*cols)]
            return P if abs(determinant(P)) == 1 else None
        for v in by_norm.get(G2[j][j], ()):
            if all(form(cols[i], v) == G2[i][j] and form(v, cols[i]) == G2[j][i] for i in range(j)):
                cols.append(v)
                if integer_rank([list(c) for c in cols]) == len(cols):
                    P = extend(j + 1)
                    if P is not None:
                        return P
                cols.pop()
        return None

    return extend(0)


def form_equivalence(G1, G2, search_bound: int | None = None) -> EquivalenceVerdict:
    G1 = [list(r) for r in (G1.matrix if isinstance(G1, GramForm) else G1)]
    G2 = [list(r) for r in (G2.matrix if isinstance(G2, GramForm) else G2)]
    if len(G1) != len(G2) or any(len(r) != len(G1) for r in G1) or any(len(r) != len(G2) for r in G2):
        raise ValueError("forms must be square of the same size")
    p1, p2 = invariant_pack(G1), invariant_pack(G2)
    diffs = {k: (p1.get(k), p2.get(k)) for k in p1.keys() | p2.keys() if p1.get(k) != p2.get(k)}
    if diffs:
        order = [k for k in p1 if k in diffs] + [k for k in p2 if k in diffs and k not in p1]
        first = order[0]
        ordered = {k: diffs[k] for k in order}
        return EquivalenceVerdict("Inequivalent", invariant=first, values=diffs[first], differences=ordered)
    bound = default_bound(len(G1)) if search_bound is None else search_bound
    P = _search(G1, G2, bound) if G1 else []
    if P is not None:
        if not is_congruence(G1, G2, P):
            raise AssertionError("congruence certificate failed re-verification")
        return EquivalenceVerdict("Equivalent", certificate=P)
    return EquivalenceVerdict("Undecided", bound=bound)


def chi_t(t: int) -> list[list[int]]:
    return [[t, 1], [-1, 0]]
