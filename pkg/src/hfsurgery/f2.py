"""Exact linear algebra over the two-element field.

Vectors are Python ints used as bit masks (bit ``i`` is coordinate ``i``)
and matrices keep one mask per row.  Arbitrary-precision ints give
word-packed XOR row operations for free, which is all the Gaussian
elimination here needs.  Everything is exact; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Shapes of the operands do not line up."""


class InvalidComplexError(ValueError):
    """Boundary maps fail the square-zero axiom."""


class NotAChainMapError(ValueError):
    """A map does not commute with the boundary maps."""


def bits(mask: int):
    """Yield the positions of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class F2Matrix:
    """A matrix over GF(2) with bit-packed rows.

    ``data[r]`` has bit ``c`` set exactly when entry ``(r, c)`` is 1, so a
    row mask doubles as the row vector and XOR is row addition.
    """

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows:
            raise DimensionError(
                f"expected {self.rows} row masks, got {len(self.data)}"
            )
        limit = 1 << self.cols
        for mask in self.data:
            if mask < 0 or mask >= limit:
                raise DimensionError("row mask has bits outside the column range")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        masks = [0] * rows
        seen = set()
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError(f"entry ({r}, {c}) out of bounds")
            if (r, c) in seen:
                raise DimensionError(f"duplicate entry ({r}, {c})")
            seen.add((r, c))
            masks[r] |= 1 << c
        return cls(rows, cols, tuple(masks))

    @classmethod
    def from_rows(cls, row_masks: Sequence[int], cols: int) -> "F2Matrix":
        return cls(len(row_masks), cols, tuple(row_masks))

    @classmethod
    def from_columns(cls, col_masks: Sequence[int], rows: int) -> "F2Matrix":
        masks = [0] * rows
        for c, col in enumerate(col_masks):
            for r in bits(col):
                if r >= rows:
                    raise DimensionError("column mask has bits outside the row range")
                masks[r] |= 1 << c
        return cls(rows, len(col_masks), tuple(masks))

    def entry(self, r: int, c: int) -> int:
        return (self.data[r] >> c) & 1

    def column(self, c: int) -> int:
        mask = 0
        for r in range(self.rows):
            mask |= ((self.data[r] >> c) & 1) << r
        return mask

    def columns(self) -> list[int]:
        return [self.column(c) for c in range(self.cols)]

    def transpose(self) -> "F2Matrix":
        masks = [0] * self.cols
        for r in range(self.rows):
            for c in bits(self.data[r]):
                masks[c] |= 1 << r
        return F2Matrix(self.cols, self.rows, tuple(masks))

    def apply(self, vec: int) -> int:
        """Multiply by a column vector given as a bit mask over the columns."""
        out = 0
        for r in range(self.rows):
            out |= ((self.data[r] & vec).bit_count() & 1) << r
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        masks = []
        for r in range(self.rows):
            acc = 0
            for k in bits(self.data[r]):
                acc ^= other.data[k]
            masks.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(masks))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix sum needs equal shapes")
        return F2Matrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def hstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        masks = tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        return F2Matrix(self.rows, self.cols + other.cols, masks)

    def is_zero(self) -> bool:
        return all(mask == 0 for mask in self.data)

    def __str__(self) -> str:
        if self.rows == 0:
            return f"<empty {self.rows}x{self.cols}>"
        return "\n".join(
            "".join("1" if (mask >> c) & 1 else "." for c in range(self.cols))
            for mask in self.data
        )


def rank(m: F2Matrix) -> int:
    """GF(2) rank, by elimination keyed on lowest set bits."""
    table: dict[int, int] = {}
    r = 0
    for row in m.data:
        while row:
            low = row & -row
            pivot = table.get(low)
            if pivot is None:
                table[low] = row
                r += 1
                break
            row ^= pivot
    return r


def rref(m: F2Matrix) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form.

    Returns ``(rows, pivot_cols)`` where ``rows`` are the reduced row
    masks and ``pivot_cols`` the pivot column indices in ascending order.
    Pivots are chosen deterministically (leftmost column, topmost row).
    """
    rows = list(m.data)
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        bit = 1 << c
        pivot_row = None
        for i in range(r, m.rows):
            if rows[i] & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(m.rows):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return rows, pivots


def kernel_basis(m: F2Matrix) -> list[int]:
    """Deterministic basis of the right kernel, as masks over the columns.

    One vector per free column, taken in ascending column order; each has
    count ``cols - rank(m)`` and is annihilated by ``m``.
    """
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        fbit = 1 << free
        for i, p in enumerate(pivots):
            if rows[i] & fbit:
                vec |= 1 << p
        basis.append(vec)
    return basis


def image_basis(m: F2Matrix) -> list[int]:
    """The pivot columns of ``m``: an independent spanning set of the column space."""
    _, pivots = rref(m)
    return [m.column(p) for p in pivots]


def solve(m: F2Matrix, target: int) -> int | None:
    """One solution ``x`` of ``m x = target`` (free coordinates zero), or None."""
    if target < 0 or target >> m.rows:
        raise DimensionError("target vector has bits outside the row range")
    aug_bit = 1 << m.cols
    rows = [m.data[r] | (aug_bit if (target >> r) & 1 else 0) for r in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        bit = 1 << c
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i] & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i]:
            return None
    x = 0
    for i, p in enumerate(pivots):
        if rows[i] & aug_bit:
            x |= 1 << p
    return x


def image_intersection_rank(m1: F2Matrix, m2: F2Matrix) -> int:
    """Dimension of the intersection of the two column spaces.

    Computed as rank(m1) + rank(m2) - rank([m1 | m2]); both matrices must
    map into the same target space (equal row counts).
    """
    if m1.rows != m2.rows:
        raise DimensionError(
            f"image intersection needs equal row counts, got {m1.rows} and {m2.rows}"
        )
    return rank(m1) + rank(m2) - rank(m1.hstack(m2))


def image_intersection_basis(m1: F2Matrix, m2: F2Matrix) -> list[int]:
    """Deterministic basis of the intersection of the two column spaces.

    Every kernel vector (a | b) of [m1 | m2] satisfies m1 a = m2 b, an
    element of the intersection; an independent subset of those values
    spans it.
    """
    if m1.rows != m2.rows:
        raise DimensionError(
            f"image intersection needs equal row counts, got {m1.rows} and {m2.rows}"
        )
    stacked = m1.hstack(m2)
    low_mask = (1 << m1.cols) - 1
    table: dict[int, int] = {}
    basis: list[int] = []
    for pair in kernel_basis(stacked):
        vec = m1.apply(pair & low_mask)
        reduced = vec
        while reduced:
            pivot = table.get(reduced & -reduced)
            if pivot is None:
                table[reduced & -reduced] = reduced
                basis.append(vec)
                break
            reduced ^= pivot
    return basis


class HomologyBasis:
    """A deterministic basis of ker(d) / im(d) for one square differential.

    The chosen representatives are kernel-basis vectors that extend a
    basis of the boundary space, picked greedily in the pivot order of
    :func:`kernel_basis`.  ``coords`` expresses any cycle in the chosen
    basis, which is what makes induced-map matrices reproducible.
    """

    def __init__(self, differential: F2Matrix):
        if differential.rows != differential.cols:
            raise DimensionError("a differential must be square")
        if not (differential @ differential).is_zero():
            raise InvalidComplexError("differential does not square to zero")
        self.differential = differential
        # Table entries (vec, coeff) satisfy: vec is congruent, modulo the
        # boundary space, to the combination of representatives named by coeff.
        self._table: dict[int, tuple[int, int]] = {}
        reps: list[int] = []
        for boundary in image_basis(differential):
            self._insert(boundary, 0)
        for cycle in kernel_basis(differential):
            vec, coeff = self._reduce(cycle, 0)
            if vec:
                coeff ^= 1 << len(reps)
                reps.append(cycle)
                self._table[vec & -vec] = (vec, coeff)
        self.reps: tuple[int, ...] = tuple(reps)
        self.dim: int = len(reps)

    def _reduce(self, vec: int, coeff: int) -> tuple[int, int]:
        while vec:
            entry = self._table.get(vec & -vec)
            if entry is None:
                break
            vec ^= entry[0]
            coeff ^= entry[1]
        return vec, coeff

    def _insert(self, vec: int, coeff: int) -> None:
        vec, coeff = self._reduce(vec, coeff)
        if vec:
            self._table[vec & -vec] = (vec, coeff)

    def coords(self, vec: int) -> int:
        """Coordinates of the class of ``vec`` in the chosen basis."""
        vec, coeff = self._reduce(vec, 0)
        if vec:
            raise ValueError("vector is not a cycle of this differential")
        return coeff


def induced_map_on_homology(
    f: F2Matrix,
    source: HomologyBasis,
    target: HomologyBasis,
    check: bool = True,
) -> F2Matrix:
    """Matrix of the map induced by the chain map ``f`` on homology.

    ``f`` must commute with the stored differentials (checked unless
    ``check`` is False).  The matrix is taken with respect to the bases
    chosen by the two :class:`HomologyBasis` objects, so its rank and
    kernel dimension are basis-independent invariants of the map.
    """
    if f.cols != source.differential.cols or f.rows != target.differential.cols:
        raise DimensionError("chain map shape does not match the two complexes")
    if check:
        left = f @ source.differential
        right = target.differential @ f
        if left.data != right.data:
            raise NotAChainMapError("map does not commute with the differentials")
    col_masks = [target.coords(f.apply(rep)) for rep in source.reps]
    return F2Matrix.from_columns(col_masks, target.dim)


@dataclass(frozen=True)
class F2ChainComplex:
    """A finite chain complex of GF(2) vector spaces.

    ``dims[k]`` is the dimension in homological degree ``k`` and
    ``boundaries[k]`` maps degree ``k + 1`` to degree ``k``.  Consecutive
    boundaries must compose to zero.
    """

    dims: tuple[int, ...]
    boundaries: tuple[F2Matrix, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(0, len(self.dims) - 1):
            raise DimensionError("need one boundary matrix per adjacent degree pair")
        for k, b in enumerate(self.boundaries):
            if b.rows != self.dims[k] or b.cols != self.dims[k + 1]:
                raise DimensionError(f"boundary {k} has shape {b.rows}x{b.cols}")
        for k in range(len(self.boundaries) - 1):
            if not (self.boundaries[k] @ self.boundaries[k + 1]).is_zero():
                raise InvalidComplexError(
                    f"boundaries {k} and {k + 1} do not compose to zero"
                )


def homology_dimensions(c: F2ChainComplex) -> list[int]:
    """Homology dimension in each degree: dim ker(out) - rank(in)."""
    out = []
    for k, dim in enumerate(c.dims):
        cycles = dim if k == 0 else dim - rank(c.boundaries[k - 1])
        borders = rank(c.boundaries[k]) if k < len(c.boundaries) else 0
        out.append(cycles - borders)
    return out
