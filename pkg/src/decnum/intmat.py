"""Exact integer matrix arithmetic: Smith normal form, cokernels, induced maps.

Everything is pure and deterministic.  Matrices are tuples of tuples of
Python ints (arbitrary precision, so coefficient growth during reduction
can never overflow or wrap).  Inputs are accepted as any nested sequence
of ints and frozen on entry; no function mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    """An endomorphism does not preserve the relevant lattice."""


def freeze(m: Sequence[Sequence[int]]) -> Matrix:
    """Copy a nested sequence into a validated tuple-of-tuples matrix.

    >>> freeze([[1, 2], [3, 4]])
    ((1, 2), (3, 4))
    """
    rows = tuple(tuple(e for e in row) for row in m)
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for e in row:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ValueError(f"non-integer entry {e!r}")
    return rows


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    m = freeze(m)
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def multiply(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    a, b = freeze(a), freeze(b)
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} * {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = freeze(m)
    n = len(m)
    if len(m[0]) != n:
        raise ValueError("determinant of a non-square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update: division is exact at every step
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition u * input * v == d.

    u and v are unimodular; d is diagonal with nonnegative entries and
    each diagonal entry divides the next.
    """

    u: Matrix
    d: Matrix
    v: Matrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]))))


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group in invariant-factor form.

    divisors are the torsion invariant factors, each >= 2 and each
    dividing the next; free_rank counts Z summands.

    >>> FinAbGroup((2, 4), 1).order()
    Traceback (most recent call last):
        ...
    ValueError: infinite group has no order
    >>> str(FinAbGroup((2, 4)))
    'Z/2 x Z/4'
    """

    divisors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "divisors", tuple(self.divisors))
        for d in self.divisors:
            if not isinstance(d, int) or d < 2:
                raise ValueError(f"invalid invariant factor {d!r}")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise ValueError(f"divisor chain broken: {a} does not divide {b}")
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise ValueError(f"invalid free rank {self.free_rank!r}")

    def is_trivial(self) -> bool:
        return not self.divisors and self.free_rank == 0

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return prod(self.divisors)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.divisors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


class _Reduction:
    """Mutable state for Smith reduction with transform tracking.

    Maintains u * original * v == a and uinv == u^-1 throughout, using
    only elementary (determinant +-1) operations.
    """

    def __init__(self, m: Matrix):
        self.a = [list(row) for row in m]
        self.rows = len(m)
        self.cols = len(m[0])
        self.u = [list(row) for row in identity(self.rows)]
        self.uinv = [list(row) for row in identity(self.rows)]
        self.v = [list(row) for row in identity(self.cols)]

    # row ops act on a and u on the left; uinv picks up the inverse op
    # on the right (as column operations) so uinv stays the exact inverse.

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for r in self.uinv:
            r[i], r[j] = r[j], r[i]

    def row_negate(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in self.uinv:
            r[i] = -r[i]

    def row_addmul(self, i: int, j: int, q: int) -> None:
        """row i += q * row j (i != j)."""
        if q == 0:
            return
        self.a[i] = [x + q * y for x, y in zip(self.a[i], self.a[j])]
        self.u[i] = [x + q * y for x, y in zip(self.u[i], self.u[j])]
        for r in self.uinv:
            r[j] -= q * r[i]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]

    def col_negate(self, j: int) -> None:
        for r in self.a:
            r[j] = -r[j]
        for r in self.v:
            r[j] = -r[j]

    def col_addmul(self, j: int, k: int, q: int) -> None:
        """col j += q * col k (j != k)."""
        if q == 0:
            return
        for r in self.a:
            r[j] += q * r[k]
        for r in self.v:
            r[j] += q * r[k]


def _smallest_entry(a: list[list[int]], s: int, rows: int, cols: int):
    """Position of the nonzero entry of least magnitude in the block [s:, s:].

    Scan order is row-major and only a strictly smaller magnitude displaces
    the current choice, so the result is deterministic.
    """
    best = None
    best_abs = 0
    for i in range(s, rows):
        for j in range(s, cols):
            e = a[i][j]
            if e != 0 and (best is None or abs(e) < best_abs):
                best = (i, j)
                best_abs = abs(e)
    return best


def _snf_state(m: Matrix) -> _Reduction:
    st = _Reduction(m)
    a, rows, cols = st.a, st.rows, st.cols
    for s in range(min(rows, cols)):
        pos = _smallest_entry(a, s, rows, cols)
        if pos is None:
            break
        st.row_swap(s, pos[0])
        st.col_swap(s, pos[1])
        while True:
            if a[s][s] < 0:
                st.row_negate(s)
            # clear column s below and row s to the right; floor quotients
            # leave remainders in [0, pivot), so magnitudes shrink each pass
            dirty = False
            for i in range(s + 1, rows):
                if a[i][s] != 0:
                    st.row_addmul(i, s, -(a[i][s] // a[s][s]))
                    if a[i][s] != 0:
                        dirty = True
            for j in range(s + 1, cols):
                if a[s][j] != 0:
                    st.col_addmul(j, s, -(a[s][j] // a[s][s]))
                    if a[s][j] != 0:
                        dirty = True
            if dirty:
                pos = _smallest_entry(a, s, rows, cols)
                st.row_swap(s, pos[0])
                st.col_swap(s, pos[1])
                continue
            # cross is clear; enforce pivot | rest of block
            witness = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if a[i][j] % a[s][s] != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            st.row_addmul(s, witness, 1)
    return st


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with unimodular transforms.

    >>> r = smith_normal_form([[2, -1], [-1, 2]])
    >>> r.diagonal()
    (1, 3)
    """
    st = _snf_state(freeze(m))
    return SnfResult(
        u=tuple(tuple(r) for r in st.u),
        d=tuple(tuple(r) for r in st.a),
        v=tuple(tuple(r) for r in st.v),
    )


def _effective_diagonal(st: _Reduction) -> list[int]:
    # one entry per row: the SNF diagonal entry, or 0 for rows past it
    k = min(st.rows, st.cols)
    return [st.a[i][i] if i < k else 0 for i in range(st.rows)]


def cokernel(m: Sequence[Sequence[int]]) -> tuple[FinAbGroup, Matrix]:
    """Cokernel Z^rows / (column lattice of m), with projection.

    Returns (group, projection) where projection row i gives the image of
    the i-th standard basis vector: torsion coordinates first (one per
    invariant factor, in divisor order, reduced mod that divisor), then
    free coordinates.

    >>> g, p = cokernel([[2, -1], [-1, 2]])
    >>> (g.divisors, g.free_rank)
    ((3,), 0)
    """
    st = _snf_state(freeze(m))
    eff = _effective_diagonal(st)
    torsion_idx = [i for i, d in enumerate(eff) if d >= 2]
    free_idx = [i for i, d in enumerate(eff) if d == 0]
    group = FinAbGroup(tuple(eff[i] for i in torsion_idx), len(free_idx))
    proj = tuple(
        tuple(st.u[i][k] % eff[i] for i in torsion_idx)
        + tuple(st.u[i][k] for i in free_idx)
        for k in range(st.rows)
    )
    return group, proj


def induced_endomorphism(
    m: Sequence[Sequence[int]], g: Sequence[Sequence[int]]
) -> Matrix:
    """Matrix of the endomorphism g induces on the torsion of cokernel(m).

    g must be a square endomorphism of the ambient Z^rows carrying the
    column lattice of m into itself; otherwise LatticeError is raised.
    The result acts on torsion coordinates, entries reduced mod the
    matching divisor.
    """
    m = freeze(m)
    g = freeze(g)
    rows = len(m)
    if len(g) != rows or len(g[0]) != rows:
        raise ValueError(f"endomorphism must be {rows}x{rows}")
    st = _snf_state(m)
    eff = _effective_diagonal(st)
    h = multiply(multiply(tuple(tuple(r) for r in st.u), g),
                 tuple(tuple(r) for r in st.uinv))
    # in u-coordinates the image lattice is the span of eff[j] * e_j over
    # eff[j] > 0; g preserves it iff eff[i] | eff[j] * h[i][j] throughout
    for j in range(rows):
        if eff[j] == 0:
            continue
        for i in range(rows):
            val = eff[j] * h[i][j]
            ok = (val == 0) if eff[i] == 0 else (val % eff[i] == 0)
            if not ok:
                raise LatticeError(
                    "endomorphism does not preserve image lattice "
                    f"(coordinate ({i}, {j}))"
                )
    torsion_idx = [i for i, d in enumerate(eff) if d >= 2]
    return tuple(
        tuple(h[i][j] % eff[i] for j in torsion_idx) for i in torsion_idx
    )
