"""Pauli operators on n qubits and their symplectic representation.

An operator is a phase i^c (c mod 4) times a tensor of single-qubit
I/X/Y/Z factors. The component at qubit j is encoded by the bit pair
(x_j, z_j) as I=(0,0), X=(1,0), Z=(0,1), Y=(1,1). The symplectic map
phi sends an operator to the 2n-bit vector (x_1..x_n | z_1..z_n) and
drops the phase.

Two phase-free Paulis commute iff their symplectic product vanishes;
the product is taken with the block-off-diagonal form, so it reduces
to x_u . z_v + z_u . x_v over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .gf2 import BitMatrix

_PAULI_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_CHAR_BITS = {v: k for k, v in _PAULI_CHARS.items()}
_PHASE_PREFIX = {0: "", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"+": 0, "": 0, "+i": 1, "-": 2, "-i": 3}

# i-exponent picked up when multiplying single-qubit Paulis a.b, from
# X.Y = iZ, Y.Z = iX, Z.X = iY and their reversals; squares and identity
# contribute nothing.
_PHASE_INC = {
    ("X", "Y"): 1, ("Y", "X"): 3,
    ("Y", "Z"): 1, ("Z", "Y"): 3,
    ("Z", "X"): 1, ("X", "Z"): 3,
}


@dataclass
class PauliOperator:
    """i^phase_exp times a tensor of I/X/Y/Z factors on n qubits."""

    n: int
    phase_exp: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be nonnegative")
        mask = (1 << self.n) - 1
        if (self.x_bits & ~mask) or (self.z_bits & ~mask):
            raise ValueError("support bits outside the qubit register")
        self.phase_exp %= 4

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliOperator":
        """The operator acting as ``kind`` on one qubit (1-based index)."""
        if not 1 <= qubit <= n:
            raise ValueError(f"qubit {qubit} outside register of {n}")
        x, z = _CHAR_BITS[kind]
        j = qubit - 1
        return cls(n, 0, x << j, z << j)

    def component(self, qubit: int) -> str:
        """Single-qubit factor at a 1-based position."""
        j = qubit - 1
        return _PAULI_CHARS[((self.x_bits >> j) & 1, (self.z_bits >> j) & 1)]

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("operators act on different register sizes")
        phase = self.phase_exp + other.phase_exp
        overlap = (self.x_bits | self.z_bits) & (other.x_bits | other.z_bits)
        while overlap:
            low = overlap & -overlap
            j = low.bit_length() - 1
            a = _PAULI_CHARS[((self.x_bits >> j) & 1, (self.z_bits >> j) & 1)]
            b = _PAULI_CHARS[((other.x_bits >> j) & 1, (other.z_bits >> j) & 1)]
            phase += _PHASE_INC.get((a, b), 0)
            overlap ^= low
        return PauliOperator(self.n, phase % 4,
                             self.x_bits ^ other.x_bits,
                             self.z_bits ^ other.z_bits)

    def commutes_with(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise ValueError("operators act on different register sizes")
        return (
            (self.x_bits & other.z_bits).bit_count()
            + (self.z_bits & other.x_bits).bit_count()
        ) % 2 == 0

    # -- text format -------------------------------------------------------

    def to_string(self) -> str:
        body = "".join(self.component(q) for q in range(1, self.n + 1))
        return _PHASE_PREFIX[self.phase_exp] + body

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        s = text.strip()
        prefix = ""
        for cand in ("+i", "-i", "+", "-"):
            if s.startswith(cand):
                prefix, s = cand, s[len(cand):]
                break
        if not s or set(s) - set("IXYZ"):
            raise ValueError(f"bad Pauli string: {text!r}")
        x = z = 0
        for j, ch in enumerate(s):
            xb, zb = _CHAR_BITS[ch]
            x |= xb << j
            z |= zb << j
        return cls(len(s), _PREFIX_PHASE[prefix], x, z)

    def __str__(self) -> str:
        return self.to_string()


def pauli_weight(p: PauliOperator) -> int:
    """Number of non-identity tensor components."""
    return p.weight()


# -- symplectic representation ---------------------------------------------


def phi(p: PauliOperator) -> tuple[int, ...]:
    """The 2n-bit vector (x | z); the phase is dropped."""
    return tuple(
        (p.x_bits >> j) & 1 for j in range(p.n)
    ) + tuple(
        (p.z_bits >> j) & 1 for j in range(p.n)
    )


def phi_inverse(v: Sequence[int]) -> PauliOperator:
    """Phase-free operator from a symplectic vector (length must be even)."""
    if len(v) % 2:
        raise ValueError(f"symplectic vector length {len(v)} is odd")
    n = len(v) // 2
    return PauliOperator(n, 0, gf2.pack_vector(v[:n]), gf2.pack_vector(v[n:]))


def symplectic_product(u: Sequence[int], v: Sequence[int]) -> int:
    """u Lambda v^T over GF(2); zero iff the underlying Paulis commute."""
    if len(u) != len(v) or len(u) % 2:
        raise ValueError("symplectic vectors must share the same even length")
    n = len(u) // 2
    acc = 0
    for i in range(n):
        acc ^= (u[i] & v[n + i]) ^ (u[n + i] & v[i])
    return acc


def stabilizer_matrix_split(h: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """Split an r x 2n symplectic generator matrix into (H_X, H_Z)."""
    if h.cols % 2:
        raise ValueError(f"symplectic matrix must have an even column count, got {h.cols}")
    n = h.cols // 2
    mask = (1 << n) - 1
    hx = BitMatrix(h.rows, n, tuple(r & mask for r in h.bits))
    hz = BitMatrix(h.rows, n, tuple(r >> n for r in h.bits))
    return hx, hz
