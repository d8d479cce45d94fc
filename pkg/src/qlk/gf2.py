"""Dense GF(2) linear algebra on bit-packed binary matrices.

Rows are stored as Python integers with bit j holding the entry of
column j (0-based internally; file formats and reports are 1-based).
Arbitrary-precision ints give word-level XOR row operations and cheap
Hamming weights without any external dependency.

All operations are pure; ``BitMatrix`` values are never mutated after
construction and are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class CapacityError(Exception):
    """An enumeration or table build would exceed its configured cap."""


def _pack_row(entries: Sequence[int]) -> int:
    word = 0
    for j, e in enumerate(entries):
        if e not in (0, 1):
            raise ValueError(f"matrix entry must be 0 or 1, got {e!r}")
        if e:
            word |= 1 << j
    return word


@dataclass(eq=True, repr=False)
class BitMatrix:
    """Binary matrix over GF(2), rows packed into Python ints.

    Invariant: bits above column ``cols`` are zero in every packed row.
    0 x m and n x 0 matrices are legal (identities for concatenation).
    """

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.bits = tuple(self.bits)
        if len(self.bits) != self.rows:
            raise ValueError(f"expected {self.rows} packed rows, got {len(self.bits)}")
        mask = (1 << self.cols) - 1
        if any(word & ~mask for word in self.bits):
            raise ValueError("packed row has bits set beyond the declared column count")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        """Build from an iterable of 0/1 row sequences."""
        packed = []
        width = cols
        for row in rows:
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            packed.append(_pack_row(row))
        if width is None:
            width = 0
        return cls(len(packed), width, tuple(packed))

    # -- element access --------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        """Entry at row i, column j (0-based)."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return (self.bits[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.bits[i]

    def row_weight(self, i: int) -> int:
        return self.bits[i].bit_count()

    def column(self, j: int) -> int:
        """Column j packed into an int (bit i = row i)."""
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} outside {self.rows}x{self.cols} matrix")
        word = 0
        for i, r in enumerate(self.bits):
            if (r >> j) & 1:
                word |= 1 << i
        return word

    def columns_packed(self) -> list[int]:
        """All columns packed as ints (bit i = row i)."""
        out = [0] * self.cols
        for i, r in enumerate(self.bits):
            bit = 1 << i
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= bit
                r ^= low
        return out

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.bits]

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.bits)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.rows == 0 or self.cols == 0:
            return f"BitMatrix({self.rows}x{self.cols})"
        body = "\n".join(format(r, f"0{self.cols}b")[::-1] for r in self.bits)
        return f"BitMatrix({self.rows}x{self.cols})\n{body}"

    @cached_property
    def _row_space(self) -> "RowSpace":
        return RowSpace(self.bits, self.cols)


class RowSpace:
    """Reduced row-echelon form of a matrix, for O(rank) membership queries."""

    __slots__ = ("cols", "pivots", "reduced")

    def __init__(self, rows: Iterable[int], cols: int):
        mat = list(rows)
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            pivot_row = None
            for i in range(r, len(mat)):
                if (mat[i] >> c) & 1:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
            for i in range(len(mat)):
                if i != r and (mat[i] >> c) & 1:
                    mat[i] ^= mat[r]
            pivots.append(c)
            r += 1
        self.cols = cols
        self.pivots = pivots
        self.reduced = mat[:r]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        """Residual of v after elimination against the row space."""
        for p, row in zip(self.pivots, self.reduced):
            if (v >> p) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


# -- vector helpers ------------------------------------------------------


def pack_vector(entries: Sequence[int]) -> int:
    return _pack_row(entries)


def unpack_vector(word: int, length: int) -> list[int]:
    return [(word >> j) & 1 for j in range(length)]


def _as_packed_vector(v, cols: int) -> int:
    if isinstance(v, int):
        if v < 0 or v >> cols:
            raise ValueError(f"packed vector does not fit in {cols} columns")
        return v
    if len(v) != cols:
        raise ValueError(f"vector length {len(v)} != column count {cols}")
    return _pack_row(v)


# -- core operations -------------------------------------------------------


def identity(n: int) -> BitMatrix:
    """n x n matrix with 1 exactly on the diagonal."""
    if n < 0:
        raise ValueError("identity size must be nonnegative")
    return BitMatrix(n, n, tuple(1 << i for i in range(n)))


def zeros(rows: int, cols: int) -> BitMatrix:
    return BitMatrix(rows, cols, (0,) * rows)


def rank(m: BitMatrix) -> int:
    """GF(2) rank by Gaussian elimination."""
    return m._row_space.rank


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Rows form a basis of {v : m v^T = 0}; row count = cols - rank."""
    rs = m._row_space
    pivot_set = set(rs.pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        fbit = 1 << f
        for p, row in zip(rs.pivots, rs.reduced):
            if row & fbit:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(len(basis), m.cols, tuple(basis))


def in_row_space(m: BitMatrix, v) -> bool:
    """True iff v is a GF(2) combination of the rows of m.

    v may be a 0/1 sequence of length ``m.cols`` or an already-packed int.
    """
    return m._row_space.contains(_as_packed_vector(v, m.cols))


def transpose(m: BitMatrix) -> BitMatrix:
    out = [0] * m.cols
    for i, r in enumerate(m.bits):
        bit = 1 << i
        while r:
            low = r & -r
            out[low.bit_length() - 1] |= bit
            r ^= low
    return BitMatrix(m.cols, m.rows, tuple(out))


def hconcat(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.rows != b.rows:
        raise ValueError(f"hconcat row mismatch: {a.rows} vs {b.rows}")
    shift = a.cols
    return BitMatrix(a.rows, a.cols + b.cols,
                     tuple(ra | (rb << shift) for ra, rb in zip(a.bits, b.bits)))


def vconcat(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.cols:
        raise ValueError(f"vconcat column mismatch: {a.cols} vs {b.cols}")
    return BitMatrix(a.rows + b.rows, a.cols, a.bits + b.bits)


def block_diag(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    shift = a.cols
    top = a.bits
    bottom = tuple(r << shift for r in b.bits)
    return BitMatrix(a.rows + b.rows, a.cols + b.cols, top + bottom)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product a b."""
    if a.cols != b.rows:
        raise ValueError(f"mat_mul inner dimensions disagree: {a.cols} vs {b.rows}")
    out = []
    for r in a.bits:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.bits[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product, left factor varying slowly (row-major blocks).

    Entry ((i-1)*rows_b + s, (j-1)*cols_b + t) = a[i,j] * b[s,t] in
    1-based terms; this block convention is normative for the whole
    package (it fixes the qubit indexing of every product code).
    """
    out = []
    for ra in a.bits:
        for rb in b.bits:
            word = 0
            r = ra
            while r:
                low = r & -r
                word |= rb << ((low.bit_length() - 1) * b.cols)
                r ^= low
            out.append(word)
    return BitMatrix(a.rows * b.rows, a.cols * b.cols, tuple(out))


# -- combination enumeration ----------------------------------------------


def colex_combinations(n: int, w: int) -> Iterator[tuple[int, ...]]:
    """All w-subsets of range(n) as ascending tuples, colexicographic order."""
    if w == 0:
        yield ()
        return
    if w > n:
        return
    for top in range(w - 1, n):
        for rest in colex_combinations(top, w - 1):
            yield rest + (top,)


def support_to_vector(support: Iterable[int]) -> int:
    v = 0
    for j in support:
        v |= 1 << j
    return v


# -- plain-text matrix format ---------------------------------------------


def to_text(m: BitMatrix) -> str:
    """First line "<rows> <cols>", then one '0'/'1' line per row."""
    lines = [f"{m.rows} {m.cols}"]
    for r in m.bits:
        lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(m.cols)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> BitMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad matrix header: {lines[0]!r}")
    rows, cols = int(header[0]), int(header[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} row lines, got {len(lines) - 1}")
    packed = []
    for ln in lines[1:]:
        ln = ln.strip()
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"bad matrix row: {ln!r}")
        packed.append(_pack_row([int(ch) for ch in ln]))
    return BitMatrix(rows, cols, tuple(packed))


# -- alist format ----------------------------------------------------------


def to_alist(m: BitMatrix) -> str:
    """Standard LDPC alist text: n m, max degrees, degree lists, index lists.

    Index lists are 1-based and unpadded (degree-0 rows/columns emit an
    empty line).
    """
    n, rows = m.cols, m.rows
    col_supports = [[] for _ in range(n)]
    row_supports = [[] for _ in range(rows)]
    for i, r in enumerate(m.bits):
        while r:
            low = r & -r
            j = low.bit_length() - 1
            col_supports[j].append(i + 1)
            row_supports[i].append(j + 1)
            r ^= low
    col_degs = [len(s) for s in col_supports]
    row_degs = [len(s) for s in row_supports]
    lines = [
        f"{n} {rows}",
        f"{max(col_degs, default=0)} {max(row_degs, default=0)}",
        " ".join(map(str, col_degs)),
        " ".join(map(str, row_degs)),
    ]
    lines += [" ".join(map(str, s)) for s in col_supports]
    lines += [" ".join(map(str, s)) for s in row_supports]
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> BitMatrix:
    lines = text.splitlines()
    if len(lines) < 4:
        raise ValueError("truncated alist")
    n, rows = (int(x) for x in lines[0].split())
    col_degs = [int(x) for x in lines[2].split()]
    if len(col_degs) != n:
        raise ValueError("alist column degree list has wrong length")
    packed = [0] * rows
    for j in range(n):
        entries = [int(x) for x in lines[4 + j].split()]
        # tolerate zero-padded variants
        entries = [e for e in entries if e != 0][: col_degs[j]]
        if len(entries) != col_degs[j]:
            raise ValueError(f"alist column {j + 1} does not match its degree")
        for i in entries:
            if not 1 <= i <= rows:
                raise ValueError(f"alist row index {i} out of range")
            packed[i - 1] |= 1 << j
    return BitMatrix(rows, n, tuple(packed))
