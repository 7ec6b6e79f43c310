"""Homology of the boundary-operator chain complex, over exact integers.

The operator at stage n sends a closed simplex to itself minus (-1)^n times
the alternating sum of its closed faces, expressed in the closed-simplex
basis of a triangulated complex.  Homology is ker/im computed by integer
Smith normal form with no mod-2 shortcut, so the two-torsion structure is
observed rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cellcomplex import CellComplex, triangulate
from .linalg import solve

MAX_SIMPLICES = 2000


@dataclass(frozen=True)
class ChainBasis:
    """Closed simplices of dimension <= n of a triangulated complex."""

    complex: CellComplex

    def __post_init__(self):
        if not self.complex.is_triangulated():
            object.__setattr__(self, "complex", triangulate(self.complex))
        if len(self.complex.cells) > MAX_SIMPLICES:
            raise ValueError("complex exceeds the desk-scale simplex budget")

    def basis(self, n: int) -> list[int]:
        dims = self.complex.dims()
        return [i for i in range(len(self.complex.cells)) if dims[i] <= n]


def delta_matrix(chain: ChainBasis, n: int) -> list[list[int]]:
    """Matrix of the stage-n boundary operator over closed simplices.

    Rows index the dimension <= n-1 basis, columns the dimension <= n one.
    """
    k = chain.complex
    dims = k.dims()
    cols = chain.basis(n)
    rows = chain.basis(n - 1)
    row_pos = {idx: r for r, idx in enumerate(rows)}
    out = [[0] * len(cols) for _ in rows]
    for cpos, idx in enumerate(cols):
        d_sigma = dims[idx]
        for j in k.face_indices[idx]:
            coeff = -((-1) ** n) * (-1) ** dims[j]
            if j == idx:
                coeff += 1
            if coeff and j in row_pos:
                out[row_pos[j]][cpos] = coeff
            elif coeff and j not in row_pos:
                raise AssertionError("boundary image left the filtration stage")
    return out


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """(diag, U, V) with U @ M @ V diagonal; U, V unimodular."""
    m = [list(map(int, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(a, i, j):
        a[i], a[j] = a[j], a[i]

    def add_row(a, src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]

    def swap_cols(a, i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_col(a, src, dst, c):
        for row in a:
            row[dst] += c * row[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0:
                    if pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(m, t, pi)
        swap_rows(u, t, pi)
        swap_cols(m, t, pj)
        swap_cols(v, t, pj)
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t] % m[t][t] != 0:
                dirty = True
            c = -(m[i][t] // m[t][t])
            if c:
                add_row(m, t, i, c)
                add_row(u, t, i, c)
        for j in range(t + 1, cols):
            if m[t][j] % m[t][t] != 0:
                dirty = True
            c = -(m[t][j] // m[t][t])
            if c:
                add_col(m, t, j, c)
                add_col(v, t, j, c)
        if dirty or any(m[i][t] for i in range(t + 1, rows)) or any(
            m[t][j] for j in range(t + 1, cols)
        ):
            continue
        # enforce divisibility d_t | d_{t+1}
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(m, bad, t, 1)
            add_row(u, bad, t, 1)
            continue
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [m[i][i] for i in range(min(rows, cols)) if m[i][i] != 0]
    return diag, u, v


def kernel_lattice(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the lattice {x integer : M x = 0} (as vectors of length ncols)."""
    if ncols == 0:
        return []
    if not matrix:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    diag, u, v = smith_normal_form(matrix)
    r = len(diag)
    return [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(chain: ChainBasis, n: int) -> AbelianGroup:
    """ker(delta_n)/im(delta_{n+1}) as (free rank, invariant factors)."""
    dim_n = len(chain.basis(n))
    if dim_n == 0:
        return AbelianGroup(0, ())
    mn = delta_matrix(chain, n)
    kernel = kernel_lattice(mn, dim_n)
    if not kernel:
        return AbelianGroup(0, ())
    mnext = delta_matrix(chain, n + 1)
    # express image columns in kernel-lattice coordinates (exactly integral)
    kt = [[kernel[j][i] for j in range(len(kernel))] for i in range(dim_n)]
    img_cols = []
    ncols = len(mnext[0]) if mnext else 0
    for c in range(ncols):
        col = [mnext[r][c] for r in range(len(mnext))]
        if not any(col):
            continue
        sol = solve(kt, col)
        if sol is None:
            raise AssertionError("boundary image escaped the kernel")
        img_cols.append([int(x) for x in sol])
    if not img_cols:
        return AbelianGroup(len(kernel), ())
    rel = [[col[r] for col in img_cols] for r in range(len(kernel))]
    diag, _, _ = smith_normal_form(rel)
    torsion = tuple(d for d in diag if d not in (0, 1))
    free = len(kernel) - len(diag)
    return AbelianGroup(free, torsion)


def homology_table(k: CellComplex, max_n: int) -> list[dict]:
    chain = ChainBasis(k)
    out = []
    for n in range(max_n + 1):
        h = homology(chain, n)
        out.append(
            {
                "n": n,
                "free_rank": h.free_rank,
                "torsion": list(h.torsion),
                "z2_rank": sum(1 for d in h.torsion if d == 2),
                "group": str(h),
            }
        )
    return out


def is_killed_by_two(chain: ChainBasis, n: int) -> bool:
    """Certify that twice every stage-n cycle is a boundary, by checking
    integral solvability of the boundary system through the Smith form."""
    basis_n = chain.basis(n)
    kernel = kernel_lattice(delta_matrix(chain, n), len(basis_n))
    if not kernel:
        return True
    mnext = delta_matrix(chain, n + 1)
    if not mnext or not mnext[0]:
        return all(not any(row) for row in kernel)
    diag, u, _ = smith_normal_form(mnext)
    for cyc in kernel:
        target = [2 * x for x in cyc]
        y = [sum(u[i][j] * target[j] for j in range(len(target))) for i in range(len(u))]
        for i, d in enumerate(diag):
            if y[i] % d != 0:
                return False
        for i in range(len(diag), len(y)):
            if y[i] != 0:
                return False
    return True
