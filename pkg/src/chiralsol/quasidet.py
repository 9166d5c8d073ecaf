"""Quasideterminants over scalar matrices and block grids.

The quasideterminant of a square array about a marked ("boxed") entry
expands as

    |X|_ij = x_ij - r @ inv(X^ij) @ c

where X^ij is X with row i and column j removed, r is row i without the
j-th entry and c is column j without the i-th entry.  Indices are
1-based to match the usual |X|_ij notation.  No commutativity is
assumed; in the commutative case the value reduces to the signed ratio
(-1)^(i+j) det(X) / det(X^ij).

For block grids every entry is an n x n matrix (batched arrays allowed)
and the same formula applies with the deleted rows and columns flattened
into one big matrix.  The boxed block is internally permuted to the
bottom-right corner, a relabeling that leaves the value unchanged.

Two identities are checked here because the whole construction of
iterated Darboux transformations rests on them: a noncommutative Jacobi
(quotient) identity relating a 3x3 expansion to 2x2 ones, and a
homological relation splitting an off-corner expansion into a product of
two corner expansions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOLERANCES, Tolerances, cond_estimate, frobenius_norm, invert
from .report import ResidualEntry, rel_residual

__all__ = [
    "BlockGrid",
    "qdet_scalar",
    "qdet_block",
    "deleted_submatrix",
    "check_nc_jacobi",
    "check_homological",
    "random_block_grid",
]


@dataclass(frozen=True)
class BlockGrid:
    """Square grid of equal-size square blocks with one boxed position.

    blocks is a tuple of rows, each a tuple of arrays of shape
    (..., n, n) sharing a broadcastable batch shape.  boxed is the
    1-based (row, column) of the marked block.
    """

    blocks: tuple
    boxed: tuple

    def __post_init__(self):
        rows = tuple(tuple(np.asarray(b, dtype=complex) for b in row) for row in self.blocks)
        if not rows:
            raise ValueError("empty grid")
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("grid must be square")
        n = rows[0][0].shape[-1] if rows[0][0].ndim >= 2 else None
        for row in rows:
            for b in row:
                if b.ndim < 2 or b.shape[-1] != b.shape[-2] or b.shape[-1] != n:
                    raise ValueError("blocks must be square with a common size")
        i, j = self.boxed
        if not (1 <= i <= size and 1 <= j <= size):
            raise ValueError(f"boxed position {self.boxed} outside {size}x{size} grid")
        object.__setattr__(self, "blocks", rows)
        object.__setattr__(self, "boxed", (int(i), int(j)))

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def block_dim(self) -> int:
        return self.blocks[0][0].shape[-1]

    def with_boxed(self, i: int, j: int) -> "BlockGrid":
        return BlockGrid(self.blocks, (i, j))


def qdet_scalar(x, i: int, j: int) -> complex:
    """Scalar quasideterminant |x|_ij about 1-based position (i, j)."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected one square matrix, got shape {x.shape}")
    m = x.shape[0]
    if not (1 <= i <= m and 1 <= j <= m):
        raise ValueError(f"position ({i}, {j}) outside {m}x{m} matrix")
    if m == 1:
        return complex(x[0, 0])
    ri = i - 1
    cj = j - 1
    keep_r = [k for k in range(m) if k != ri]
    keep_c = [k for k in range(m) if k != cj]
    sub = x[np.ix_(keep_r, keep_c)]
    row = x[ri, keep_c]
    col = x[keep_r, cj]
    return complex(x[ri, cj] - row @ invert(sub) @ col)


def _permuted(grid: BlockGrid):
    """Rows and columns reordered so the boxed block is bottom-right."""
    size = grid.size
    bi, bj = grid.boxed
    order_r = [k for k in range(size) if k != bi - 1] + [bi - 1]
    order_c = [k for k in range(size) if k != bj - 1] + [bj - 1]
    return [[grid.blocks[r][c] for c in order_c] for r in order_r]


def _assemble(rows):
    """Stack a list-of-lists of (..., n, n) blocks into one big matrix."""
    shapes = [b.shape[:-2] for row in rows for b in row]
    batch = np.broadcast_shapes(*shapes)
    n = rows[0][0].shape[-1]
    rows = [
        [np.broadcast_to(b, batch + (n, n)) for b in row]
        for row in rows
    ]
    return np.concatenate(
        [np.concatenate(row, axis=-1) for row in rows], axis=-2
    )


def deleted_submatrix(grid: BlockGrid) -> np.ndarray:
    """The flattened matrix left after deleting the boxed row and column."""
    if grid.size < 2:
        raise ValueError("no submatrix for a 1x1 grid")
    cells = _permuted(grid)
    return _assemble([row[:-1] for row in cells[:-1]])


def qdet_block(grid: BlockGrid, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Block quasideterminant about the grid's boxed position.

    Returns an array of shape (..., n, n).  Raises SingularMatrixError
    when the deleted submatrix fails the inversion gate.
    """
    cells = _permuted(grid)
    if grid.size == 1:
        return np.asarray(cells[0][0])
    a = _assemble([row[:-1] for row in cells[:-1]])
    b = _assemble([[row[-1]] for row in cells[:-1]])
    c = _assemble([cells[-1][:-1]])
    d = np.asarray(cells[-1][-1])
    return d - c @ invert(a, tolerances) @ b


def _nc_jacobi_sides(grid: BlockGrid):
    ((e, f, g), (h, a, b), (j, c, d)) = grid.blocks
    lhs = qdet_block(grid.with_boxed(3, 3))
    q_d = qdet_block(BlockGrid(((e, g), (j, d)), (2, 2)))
    q_c = qdet_block(BlockGrid(((e, f), (j, c)), (2, 2)))
    q_a = qdet_block(BlockGrid(((e, f), (h, a)), (2, 2)))
    q_b = qdet_block(BlockGrid(((e, g), (h, b)), (2, 2)))
    rhs = q_d - q_c @ invert(q_a) @ q_b
    return lhs, rhs


def check_nc_jacobi(grid: BlockGrid, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResidualEntry:
    """Residual of the noncommutative Jacobi identity on a 3x3 grid.

    The corner expansion must equal the 2x2 quotient combination

        |X|_33 = |X(3,3)| - |X(3,2)| inv(|X(2,2)|) |X(2,3)|

    built from the four 2x2 subgrids through the top-left block.  The
    value is a relative Frobenius residual over the batch.
    """
    if grid.size != 3:
        raise ValueError("identity is stated for 3x3 block grids")
    lhs, rhs = _nc_jacobi_sides(grid)
    value = rel_residual(
        frobenius_norm(lhs - rhs),
        frobenius_norm(lhs),
        frobenius_norm(rhs),
        tolerances.rel_floor,
    )
    return ResidualEntry("quasidet.noncommutative_jacobi", value, tolerances.identity)


def check_homological(grid: BlockGrid, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResidualEntry:
    """Residual of the homological relation on a 3x3 grid.

    The expansion boxed at (2, 3) must factor as the same grid with its
    last column replaced by (O, boxed O, I) times the corner expansion
    boxed at (3, 3).
    """
    if grid.size != 3:
        raise ValueError("identity is stated for 3x3 block grids")
    ((e, f, g), (h, a, b), (j, c, d)) = grid.blocks
    n = grid.block_dim
    zero = np.zeros((n, n), dtype=complex)
    eye = np.eye(n, dtype=complex)
    lhs = qdet_block(grid.with_boxed(2, 3))
    unit_col = BlockGrid(((e, f, zero), (h, a, zero), (j, c, eye)), (2, 3))
    rhs = qdet_block(unit_col) @ qdet_block(grid.with_boxed(3, 3))
    value = rel_residual(
        frobenius_norm(lhs - rhs),
        frobenius_norm(lhs),
        frobenius_norm(rhs),
        tolerances.rel_floor,
    )
    return ResidualEntry("quasidet.homological", value, tolerances.identity)


def random_block_grid(
    rng: np.random.Generator,
    block_dim: int = 2,
    size: int = 3,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_resamples: int = 1000,
):
    """Random well-conditioned grid for identity checks.

    Block entries are uniform in the complex unit square.  A draw is
    rejected when any inverse the identities need has a condition
    estimate above ``cond_reject``.  Returns (grid, resamples).
    """
    for attempt in range(max_resamples + 1):
        blocks = tuple(
            tuple(
                rng.uniform(size=(block_dim, block_dim))
                + 1j * rng.uniform(size=(block_dim, block_dim))
                for _ in range(size)
            )
            for _ in range(size)
        )
        grid = BlockGrid(blocks, (size, size))
        if size == 3:
            ((e, f, g), (h, a, b), (j, c, d)) = blocks
            ef_ha = _assemble([[e, f], [h, a]])
            ef_jc = _assemble([[e, f], [j, c]])
            try:
                schur = a - h @ invert(e) @ f
            except Exception:
                continue
            needed = [e, ef_ha, ef_jc, schur]
        else:
            needed = [deleted_submatrix(grid)]
        if all(cond_estimate(m) <= tolerances.cond_reject for m in needed):
            return grid, attempt
    raise RuntimeError(f"no well-conditioned grid after {max_resamples} resamples")
