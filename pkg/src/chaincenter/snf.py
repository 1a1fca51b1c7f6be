"""Exact integer lattice tools: Smith normal form and relation-lattice reduction.

All arithmetic uses Python ints; matrices are lists of lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    inner = len(B)
    if inner == 0:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == S with U, V unimodular and S diagonal, d_1 | d_2 | ..."""
    A: Matrix
    S: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    def check(self) -> bool:
        m = len(self.A)
        n = len(self.A[0]) if self.A else len(self.V)
        if m and matmul(matmul(self.U, self.A), self.V) != self.S:
            return False
        d = self.diagonal
        if any(self.S[i][j] for i in range(m) for j in range(n) if i != j):
            return False
        if any(x < 0 for x in d):
            return False
        for a, b in zip(d, d[1:]):
            if a == 0 and b != 0 or a != 0 and b % a:
                return False
        return abs(determinant(self.U)) == 1 and abs(determinant(self.V)) == 1


def smith_normal_form(A: Sequence[Sequence[int]], *, check: bool = True) -> SmithDecomposition:
    """Smith normal form with transforms, pivoting on the smallest nonzero entry."""
    A = [[int(x) for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    S = [row[:] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        for M in (S, U):
            rs, rd = M[src], M[dst]
            for c, x in enumerate(rs):
                if x:
                    rd[c] -= q * x

    def add_col(src, dst, q):  # col_dst -= q * col_src
        for M in (S, V):
            for row in M:
                if row[src]:
                    row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, S[i][t] // piv)
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, S[t][j] // piv)
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            # divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, -1)
        if t < m and S[t][t] < 0:
            for M in (S, U):
                M[t] = [-x for x in M[t]]
    dec = SmithDecomposition(A, S, U, V)
    if check and not dec.check():
        raise ArithmeticError("Smith normal form postcondition U A V = S failed")
    return dec


class RowLattice:
    """Incrementally maintained echelon basis of the Z-span of inserted integer rows.

    Rows are sparse dicts {column: coefficient}. Each pivot row has a
    positive leading coefficient in its pivot column and no other basis row
    leads in that column, so membership testing is exact reduction.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def copy(self) -> RowLattice:
        other = RowLattice(self.ncols)
        other.pivots = {c: dict(r) for c, r in self.pivots.items()}
        return other

    def insert(self, row: dict[int, int]) -> bool:
        """Add a row to the span; returns False if it was already in it."""
        v = {c: x for c, x in row.items() if x}
        changed = False
        while v:
            c = min(v)
            b = self.pivots.get(c)
            if b is None:
                if v[c] < 0:
                    v = {k: -x for k, x in v.items()}
                self.pivots[c] = v
                return True
            q, r = divmod(v[c], b[c])
            if r == 0:
                _axpy(v, b, -q)
                continue
            # replace the pivot by the gcd combination, keep reducing the other
            g, s, t = _xgcd(b[c], v[c])
            new = {}
            _axpy(new, b, s)
            _axpy(new, v, t)
            rest = {}
            _axpy(rest, b, v[c] // g)
            _axpy(rest, v, -(b[c] // g))
            self.pivots[c] = new if new[c] > 0 else {k: -x for k, x in new.items()}
            changed = True
            v = rest
        return changed

    def basis(self) -> Matrix:
        out = []
        for c in sorted(self.pivots):
            row = [0] * self.ncols
            for k, x in self.pivots[c].items():
                row[k] = x
            out.append(row)
        return out


def _axpy(acc: dict[int, int], row: dict[int, int], q: int) -> None:
    for k, x in row.items():
        y = acc.get(k, 0) + q * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class Cokernel:
    """Z^n / (row lattice) as a product of cyclic groups, with coordinates of each generator."""
    invariant_factors: tuple[int, ...]
    free_rank: int
    coordinates: tuple[tuple[int, ...], ...]  # per generator, one entry per factor then free
    smith: SmithDecomposition

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.invariant_factors + (0,) * self.free_rank


def cokernel(rows: Iterable[dict[int, int]] | RowLattice, ncols: int) -> Cokernel:
    if isinstance(rows, RowLattice):
        lattice = rows
    else:
        lattice = RowLattice(ncols)
        for row in rows:
            lattice.insert(row)
    B = lattice.basis()
    if not B:
        B_for_snf: Matrix = [[0] * ncols]
    else:
        B_for_snf = B
    dec = smith_normal_form(B_for_snf)
    diag = dec.diagonal + [0] * (ncols - len(dec.diagonal))
    keep = [t for t, d in enumerate(diag) if d != 1]
    factors = tuple(diag[t] for t in keep if diag[t] != 0)
    free = sum(1 for t in keep if diag[t] == 0)
    coords = []
    for g in range(ncols):
        row = dec.V[g]
        c = [row[t] % diag[t] for t in keep if diag[t] != 0]
        c += [row[t] for t in keep if diag[t] == 0]
        coords.append(tuple(c))
    return Cokernel(factors, free, tuple(coords), dec)


def present_abelian_group(table: Sequence[Sequence[int]]) -> Cokernel:
    """Invariants of a finite abelian group given by its multiplication table.

    Presents the group on its own elements with relations x_a + x_b = x_ab;
    the cokernel is the group itself.
    """
    n = len(table)
    rows = []
    for a in range(n):
        for b in range(a, n):
            row: dict[int, int] = {}
            for g, s in ((a, 1), (b, 1), (table[a][b], -1)):
                row[g] = row.get(g, 0) + s
            rows.append(row)
    return cokernel(rows, n)
