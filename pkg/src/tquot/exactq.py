"""Exact linear algebra over the rationals and integer normal forms.

Vectors are tuples of Fraction, matrices are lists of rows.  Everything
runs in arbitrary precision: Fraction for rational elimination, plain
Python ints for the Smith normal form.  No floats anywhere.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

Vector = tuple[Fraction, ...]


def vec(values) -> Vector:
    """Coerce a sequence of numbers into a tuple of Fractions."""
    return tuple(Fraction(x) for x in values)


def is_zero(v) -> bool:
    return all(x == 0 for x in v)


def dot(a, b) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def vsub(a, b) -> Vector:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def vadd(a, b) -> Vector:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def scale(c, v) -> Vector:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in v)


def primitive(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational to the
    shortest integer vector with the same direction (gcd of entries 1)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive representative")
    denom_lcm = 1
    for x in fr:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


class _Echelon:
    """Incremental row-echelon accumulator over Q.

    Keeps one reduced row per pivot column; lets callers test span
    membership and extract an independent subset of a vector family.
    """

    def __init__(self):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def residual(self, v) -> list[Fraction]:
        r = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            if r[p]:
                f = r[p] / row[p]
                r = [a - f * b for a, b in zip(r, row)]
        return r

    def add(self, v) -> bool:
        """Reduce v against the rows; absorb it if independent.

        Returns True when v increased the rank.
        """
        r = self.residual(v)
        for p, x in enumerate(r):
            if x:
                self.rows.append(r)
                self.pivots.append(p)
                return True
        return False

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.residual(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(m) -> int:
    """Rank of a matrix (rows of rationals), by exact elimination."""
    ech = _Echelon()
    for row in m:
        ech.add(row)
    return ech.rank


def solve_affine(points) -> tuple[Vector, tuple[Vector, ...]]:
    """Basepoint and a direction basis for the affine span of the points.

    The basepoint is the first point; the basis is the first maximal
    independent subfamily of the differences, so the result is
    deterministic in the input order.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise ValueError("no points")
    base = pts[0]
    ech = _Echelon()
    basis: list[Vector] = []
    for p in pts[1:]:
        d = vsub(p, base)
        if ech.add(d):
            basis.append(d)
    return base, tuple(basis)


def lattice_membership(v, basis) -> bool:
    """Is v a rational linear combination of the basis vectors?

    An empty basis spans only the zero vector.
    """
    ech = _Echelon()
    for b in basis:
        ech.add(b)
    return ech.contains(v)


def combination_coords(target, basis):
    """Coefficients expressing target in a linearly independent basis.

    Returns a tuple of Fractions, or None when target is outside the
    span.  Solved by exact Gauss-Jordan on the column system.
    """
    k = len(basis)
    target = vec(target)
    if k == 0:
        return () if is_zero(target) else None
    n = len(target)
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [target[i]] for i in range(n)]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = Fraction(1) / pr[col]
        rows[r] = pr = [x * inv for x in pr]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivot_of_col[col] = r
        r += 1
    if len(pivot_of_col) < k:
        raise ValueError("basis is linearly dependent")
    for i in range(r, n):
        if rows[i][k]:
            return None
    return tuple(rows[pivot_of_col[c]][k] for c in range(k))


def det(m) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pr = rows[col]
        result *= pr[col]
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
    return sign * result


def identity_matrix(n) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list]:
    if not a or not b:
        return [list(row) for row in a] if not b else []
    cols_b = len(b[0])
    inner = len(b)
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols_b)]
        for row in a
    ]


def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns (u, d, v) with d = u*a*v, u and v unimodular, and d diagonal
    with nonnegative entries d1 | d2 | ... .  Pivots are chosen as the
    smallest nonzero absolute value in the remaining block, which keeps
    coefficient growth tame in practice.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    d = [[int(x) for x in row] for row in a]
    u = identity_matrix(nrows)
    v = identity_matrix(ncols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        best = None
        for i in range(t, nrows):
            row = d[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            restart = False
            for i in range(t + 1, nrows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        add_row(t, i, -q)
                    if d[i][t]:
                        # remainder beats the pivot; promote it
                        swap_rows(t, i)
                        restart = True
            if restart:
                continue
            for j in range(t + 1, ncols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        restart = True
            if restart:
                continue
            pivot = d[t][t]
            offender = None
            for i in range(t + 1, nrows):
                row = d[i]
                for j in range(t + 1, ncols):
                    if row[j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        t += 1
    for i in range(limit):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return u, d, v


def sparse_rank_and_factors(entries, nrows, ncols):
    """Rank and invariant factors of a sparse integer matrix.

    entries maps (row, col) -> nonzero int.  Unit pivots are eliminated
    greedily with a Markowitz-flavoured heap, which needs no division and
    keeps fill-in low on boundary matrices; whatever survives is handed
    to the dense Smith routine.  Returns (rank, factors) with the full
    divisibility chain (including leading 1s).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), val in entries.items():
        if val:
            rows.setdefault(i, {})[j] = val
            cols.setdefault(j, set()).add(i)

    heap: list[tuple[int, int, int]] = []

    def push_if_unit(i, j, val):
        if val in (1, -1):
            cost = (len(rows[i]) - 1) * (len(cols[j]) - 1)
            heapq.heappush(heap, (cost, i, j))

    for i, row in rows.items():
        for j, val in row.items():
            push_if_unit(i, j, val)

    unit_count = 0
    while heap:
        _, pi, pj = heapq.heappop(heap)
        val = rows.get(pi, {}).get(pj, 0)
        if val not in (1, -1):
            continue
        prow = rows.pop(pi)
        for j in prow:
            cols[j].discard(pi)
            if not cols[j]:
                del cols[j]
        for i in list(cols.get(pj, ())):
            row = rows[i]
            f = row[pj] * val  # row -= f * prow  (prow[pj] = val, val*val = 1)
            for j, x in prow.items():
                nv = row.get(j, 0) - f * x
                if nv:
                    row[j] = nv
                    cols.setdefault(j, set()).add(i)
                    push_if_unit(i, j, nv)
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
                    if not cols[j]:
                        del cols[j]
            if not row:
                del rows[i]
        cols.pop(pj, None)
        unit_count += 1

    factors = [1] * unit_count
    rk = unit_count
    if rows:
        live_rows = sorted(rows)
        live_cols = sorted({j for row in rows.values() for j in row})
        col_index = {j: k for k, j in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for k, i in enumerate(live_rows):
            for j, x in rows[i].items():
                dense[k][col_index[j]] = x
        _, diag, _ = smith_normal_form(dense)
        for k in range(min(len(dense), len(dense[0]))):
            if diag[k][k]:
                factors.append(diag[k][k])
                rk += 1
    return rk, factors
