"""Exact scalars, cochain complexes, ranks and integer lattices.

Everything in the package computes through this module.  Scalars are Python
``int`` or :class:`fractions.Fraction` (integral fractions are normalised to
``int``); vectors are sparse dicts ``{index: scalar}`` with no zero values.
No floating point is used anywhere.

Ranks are computed by fraction-free elimination on rows cleared of
denominators (see :mod:`dgglue._backend`).  A prime field GF(p) can be
selected for rank and cohomology queries with :func:`field_context`.
"""

from __future__ import annotations

import contextvars
import itertools
import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import _backend

Scalar = int | Fraction
Vector = dict  # {index: Scalar}


# ---------------------------------------------------------------------------
# scalars and sparse vectors


def norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def parse_scalar(s) -> Scalar:
    """Parse ``"p/q"``, ``"n"`` or a number into an exact scalar."""
    if isinstance(s, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction):
        return norm(s)
    if isinstance(s, float):
        raise TypeError("floating point scalars are not accepted")
    return norm(Fraction(str(s).strip()))


def format_scalar(x) -> str:
    x = norm(x)
    return str(x)


def vadd(acc: dict, v: Mapping, c=1) -> dict:
    """``acc += c * v`` in place; returns ``acc``."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = norm(y)
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: norm(c * x) for k, x in v.items()}


def vclean(v: Mapping) -> dict:
    return {int(k): norm(x) for k, x in v.items() if x}


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Field:
    """The rational numbers (characteristic 0) or GF(p)."""

    characteristic: int = 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def GF(p: int) -> Field:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Field(p)


_FIELD = contextvars.ContextVar("dgglue_field", default=QQ)


def current_field() -> Field:
    return _FIELD.get()


@contextmanager
def field_context(field: Field):
    """Compute ranks and cohomology over ``field`` inside the block."""
    token = _FIELD.set(field)
    try:
        yield field
    finally:
        _FIELD.reset(token)


def reduce_mod(x, p: int) -> int:
    x = norm(x)
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
        return (x.numerator * pow(x.denominator, -1, p)) % p
    return x % p


# ---------------------------------------------------------------------------
# ranks


def _integral_rows(rows: Iterable[Mapping]) -> list[dict]:
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for x in row.values():
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den == 1:
            out.append({k: int(x) for k, x in row.items() if x})
        else:
            out.append({k: int(x * den) for k, x in row.items() if x})
    return out


def rank(rows: Iterable[Mapping], ncols: int | None = None, field: Field | None = None) -> int:
    """Rank of a matrix given as sparse rows (or, equivalently, columns)."""
    field = field or current_field()
    rows = list(rows)
    if ncols is None:
        ncols = 1 + max((k for r in rows for k in r), default=-1)
    if field.characteristic:
        p = field.characteristic
        red = []
        for r in rows:
            red.append({k: reduce_mod(x, p) for k, x in r.items()})
        return _backend.rank_mod_p(red, ncols, p)
    return _backend.rank_int(_integral_rows(rows), ncols)


# ---------------------------------------------------------------------------
# graded spaces and cochain complexes


def graded_space(dims: Mapping[int, int]) -> dict[int, int]:
    """Normalise a degree -> dimension map (drop zeros, reject negatives)."""
    out = {}
    for n, d in dims.items():
        if d < 0:
            raise ValueError(f"negative dimension {d} in degree {n}")
        if d:
            out[int(n)] = int(d)
    return dict(sorted(out.items()))


class CochainError(ValueError):
    pass


class Cochain:
    """A bounded cochain complex of finite-dimensional spaces.

    ``diff[n]`` is the list of images of the degree-``n`` basis vectors, each
    a sparse vector in degree ``n + 1``.  ``labels[n]`` optionally names the
    basis vectors.
    """

    __slots__ = ("dims", "diff", "labels")

    def __init__(self, dims, diff=None, labels=None):
        self.dims = graded_space(dims)
        self.diff = {}
        for n, cols in (diff or {}).items():
            n = int(n)
            if not any(cols):
                continue
            if len(cols) != self.dims.get(n, 0):
                raise CochainError(f"d_{n} has {len(cols)} columns, expected {self.dims.get(n, 0)}")
            target = self.dims.get(n + 1, 0)
            clean = []
            for col in cols:
                col = vclean(col)
                if col and (min(col) < 0 or max(col) >= target):
                    raise CochainError(f"d_{n} entry outside degree {n + 1} (dimension {target})")
                clean.append(col)
            self.diff[n] = clean
        self.labels = labels or {}

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int, vec: Mapping) -> dict:
        cols = self.diff.get(n)
        out: dict = {}
        if cols is None:
            return out
        for k, x in vec.items():
            vadd(out, cols[k], x)
        return out

    def d_squared_violations(self) -> list[tuple[int, int]]:
        bad = []
        for n, cols in self.diff.items():
            for j, col in enumerate(cols):
                if self.d(n + 1, col):
                    bad.append((n, j))
        return bad

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.dims.items())

    def is_zero(self) -> bool:
        return not self.dims

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.dims == other.dims and self.diff == other.diff

    def __repr__(self):
        return f"Cochain(dims={self.dims})"


def differential_rank(c: Cochain, n: int) -> int:
    cols = c.diff.get(n)
    if not cols:
        return 0
    return rank(cols, c.dim(n + 1))


def cohomology_dims(c: Cochain, check: bool = True) -> dict[int, int]:
    """Dimensions of the cohomology, zero entries omitted."""
    if check and c.d_squared_violations():
        raise CochainError("d o d != 0")
    ranks = {n: differential_rank(c, n) for n in c.diff}
    out = {}
    for n, d in c.dims.items():
        h = d - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if h:
            out[n] = h
    return out


def euler_of_dims(h: Mapping[int, int]) -> int:
    return sum((-1) ** (n % 2) * d for n, d in h.items())


# ---------------------------------------------------------------------------
# exact linear algebra over Q (small systems)


def primitive_integer(v: Mapping) -> dict:
    """Scale a rational vector to a primitive integer vector with positive lead."""
    if not v:
        return {}
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    w = {k: int(x * den) for k, x in v.items()}
    g = 0
    for x in w.values():
        g = math.gcd(g, x)
    lead = w[min(w)]
    if lead < 0:
        g = -g
    return {k: x // g for k, x in w.items()}


class Echelon:
    """Incrementally built reduced basis of a subspace of Q^n.

    Pivot rows are kept with leading coefficient 1 (rational).  ``add``
    reports whether the vector was independent of what is already stored.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        v = dict(v)
        while v:
            for c in sorted(v):
                if c in self.rows:
                    vadd(v, self.rows[c], -v[c])
                    break
            else:
                return v
        return v

    def add(self, v: Mapping) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        inv = Fraction(1) / r[c]
        self.rows[c] = vscale(r, inv)
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)


def nullspace(cols: list[Mapping], nrows: int | None = None) -> list[dict]:
    """Basis of {x : sum_j x_j cols[j] = 0}, as primitive integer vectors."""
    ncols = len(cols)
    # row-reduce the transpose-free system by building rows of the matrix
    rows: dict[int, dict] = {}
    for j, col in enumerate(cols):
        for i, x in col.items():
            rows.setdefault(i, {})[j] = x
    pivots: dict[int, dict] = {}  # pivot column -> row with leading 1
    for row in rows.values():
        v = dict(row)
        for c in sorted(pivots):
            if c in v:
                vadd(v, pivots[c], -v[c])
        if not v:
            continue
        c = min(v)
        v = vscale(v, Fraction(1) / v[c])
        for pc, prow in pivots.items():
            if c in prow:
                vadd(prow, v, -prow[c])
        pivots[c] = v
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = {f: 1}
        for pc, prow in pivots.items():
            coef = prow.get(f, 0)
            if coef:
                x[pc] = -coef
        basis.append(primitive_integer(x))
    return basis


def cohomology_representatives(c: Cochain, n: int) -> list[dict]:
    """Integer cocycles in degree ``n`` whose classes form a basis of H^n."""
    dim = c.dim(n)
    if not dim:
        return []
    cols = c.diff.get(n)
    if cols:
        cycles = nullspace(cols, c.dim(n + 1))
    else:
        cycles = [{k: 1} for k in range(dim)]
    ech = Echelon()
    for col in c.diff.get(n - 1, ()):
        ech.add(col)
    reps = []
    for z in cycles:
        if ech.add(z):
            reps.append(z)
    return reps


def solve(cols: list[Mapping], target: Mapping) -> dict | None:
    """Some x with sum_j x_j cols[j] = target, or None if unsolvable."""
    aug = list(cols) + [dict(target)]
    for x in nullspace(aug):
        last = x.get(len(cols), 0)
        if last:
            return {j: norm(Fraction(-v, last)) for j, v in x.items() if j != len(cols)}
    if not target:
        return {}
    return None


# ---------------------------------------------------------------------------
# integer matrices: Hermite / Smith forms, kernels, forms


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _as_int_matrix(M) -> list[list[int]]:
    out = []
    for row in M:
        r = []
        for x in row:
            x = norm(parse_scalar(x)) if not isinstance(x, int) else x
            if not isinstance(x, int):
                raise ValueError(f"non-integer entry {x}")
            r.append(x)
        out.append(r)
    return out


def hermite_normal_form(rows) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped."""
    A = [list(r) for r in _as_int_matrix(rows)]
    if not A:
        return []
    n = len(A[0])
    out_row = 0
    for c in range(n):
        piv = None
        for r in range(out_row, len(A)):
            if A[r][c]:
                if piv is None:
                    piv = r
                else:
                    g, x, y = xgcd(A[piv][c], A[r][c])
                    a, b = A[piv][c] // g, A[r][c] // g
                    P, R = A[piv], A[r]
                    A[piv] = [x * p + y * q for p, q in zip(P, R)]
                    A[r] = [-b * p + a * q for p, q in zip(P, R)]
        if piv is None:
            continue
        A[out_row], A[piv] = A[piv], A[out_row]
        if A[out_row][c] < 0:
            A[out_row] = [-x for x in A[out_row]]
        p = A[out_row][c]
        for r in range(out_row):
            q = A[r][c] // p
            if q:
                A[r] = [x - q * y for x, y in zip(A[r], A[out_row])]
        out_row += 1
    return [r for r in A[:out_row]]


@dataclass(frozen=True)
class IntLattice:
    """A saturated sublattice of Z^ambient given by a row basis."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        v = list(v)
        if len(v) != self.ambient:
            return False
        if not self.basis:
            return not any(v)
        # basis is in Hermite form: peel off pivots
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)


def saturated_kernel(M) -> IntLattice:
    """Integer kernel {v in Z^n : M v = 0}; saturated by construction.

    Column operations with unimodular 2x2 blocks bring ``M`` to column
    echelon form ``M U``; the columns of ``U`` past the pivots span the
    kernel over Z.  The basis is returned in Hermite normal form.
    """
    A = _as_int_matrix(M)
    if not A:
        raise ValueError("need at least one row to fix the ambient dimension")
    n = len(A[0])
    if any(len(r) != n for r in A):
        raise ValueError("ragged matrix")
    cols = [[A[r][c] for r in range(len(A))] for c in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]  # U[c] = column c
    k = 0
    for r in range(len(A)):
        if k >= n:
            break
        for c in range(k + 1, n):
            if cols[c][r]:
                a, b = cols[k][r], cols[c][r]
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                ck, cc = cols[k], cols[c]
                cols[k] = [x * p + y * q for p, q in zip(ck, cc)]
                cols[c] = [-bg * p + ag * q for p, q in zip(ck, cc)]
                uk, uc = U[k], U[c]
                U[k] = [x * p + y * q for p, q in zip(uk, uc)]
                U[c] = [-bg * p + ag * q for p, q in zip(uk, uc)]
        if cols[k][r]:
            k += 1
    basis = hermite_normal_form(U[k:]) if k < n else []
    return IntLattice(n, tuple(tuple(r) for r in basis))


def smith_divisors(M) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... (length min(rows, cols), zeros last)."""
    A = [list(r) for r in _as_int_matrix(M)]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    divs = []
    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        divs.append(abs(A[t][t]))
    return divs


def determinant(M) -> Scalar:
    """Exact determinant by Bareiss elimination (rational entries allowed)."""
    A = [[parse_scalar(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    den = 1
    for row in A:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
    B = [[int(x * den) for x in row] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if B[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if B[i][k]), None)
            if sw is None:
                return 0
            B[k], B[sw] = B[sw], B[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                B[i][j] = (B[i][j] * B[k][k] - B[i][k] * B[k][j]) // prev
        prev = B[k][k]
    return norm(Fraction(sign * B[n - 1][n - 1], den ** n))


def matmul(A, B):
    return [[norm(sum(a * b for a, b in zip(row, col))) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def inverse(M) -> list[list[Scalar]]:
    n = len(M)
    A = [[Fraction(parse_scalar(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [[norm(x) for x in row[n:]] for row in A]


def charpoly(M) -> list[Scalar]:
    """Coefficients of det(x I - M), highest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    A = [[Fraction(parse_scalar(x)) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A * Mk + c_{k-1} I
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        Mk = [[AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
    return [norm(c) for c in coeffs]


def _sign_changes(coeffs) -> int:
    signs = [c > 0 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(S) -> tuple[int, int]:
    """(n_plus, n_minus) of a symmetric rational matrix.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs counts positive and negative eigenvalues exactly.
    """
    n = len(S)
    for i in range(n):
        for j in range(n):
            if parse_scalar(S[i][j]) != parse_scalar(S[j][i]):
                raise ValueError("signature of a non-symmetric matrix")
    p = charpoly(S)
    # strip the x^k factor of zero eigenvalues
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    plus = _sign_changes(p)
    deg = len(p) - 1
    neg = [c * (-1) ** ((deg - i) % 2) for i, c in enumerate(p)]
    minus = _sign_changes(neg)
    return plus, minus


def integer_rank(M) -> int:
    rows = [{j: x for j, x in enumerate(r) if x} for r in _as_int_matrix(M)]
    return rank(rows, len(M[0]) if M else 0, field=QQ)


def all_integer_vectors(n: int, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=n)
