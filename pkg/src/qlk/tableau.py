"""Stabilizer-state simulation over the symplectic representation.

A ``Tableau`` tracks n stabilizer and n destabilizer rows, each a
signed Pauli stored as (x bits, z bits, i-exponent). Gates conjugate
every row in place using the standard Clifford rules:

    H:    X <-> Z, Y -> -Y
    X:    Z -> -Z, Y -> -Y
    Z:    X -> -X, Y -> -Y
    CNOT: X_c -> X_c X_t, Z_t -> Z_c Z_t, sign per x_c z_t (x_t + z_c + 1)
    CZ:   realized as H(t) CNOT(c,t) H(t)

Only these gates exist here; no measurement is needed to verify
encoders, and syndrome extraction is done algebraically elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .css import CssCode
from .encoder import Circuit, layout_for
from .pauli import PauliOperator


@dataclass
class Tableau:
    """n-qubit stabilizer frame: rows 0..n-1 destabilizers, n..2n-1 stabilizers."""

    n: int
    xs: list[int] = field(default_factory=list)
    zs: list[int] = field(default_factory=list)
    phases: list[int] = field(default_factory=list)

    def stabilizer_row(self, i: int) -> PauliOperator:
        """Stabilizer generator i (0-based) as a Pauli operator."""
        r = self.n + i
        return PauliOperator(self.n, self.phases[r], self.xs[r], self.zs[r])

    def destabilizer_row(self, i: int) -> PauliOperator:
        return PauliOperator(self.n, self.phases[i], self.xs[i], self.zs[i])

    def stabilizer_strings(self) -> list[str]:
        return [self.stabilizer_row(i).to_string() for i in range(self.n)]


def tableau_zero_state(n: int) -> Tableau:
    """|0...0>: stabilizers {Z_j}, destabilizers {X_j}, all signs +."""
    if n < 1:
        raise ValueError("register needs at least one qubit")
    xs = [1 << j for j in range(n)] + [0] * n
    zs = [0] * n + [1 << j for j in range(n)]
    return Tableau(n=n, xs=xs, zs=zs, phases=[0] * (2 * n))


def apply_gate(t: Tableau, gate: tuple, debug: bool = False) -> Tableau:
    """Conjugate every row by the gate, in place; returns the tableau."""
    name, *args = gate
    for q in args:
        if not 1 <= q <= t.n:
            raise ValueError(f"qubit {q} outside register of {t.n}")
    if name == "H":
        _h(t, args[0] - 1)
    elif name == "X":
        _x(t, args[0] - 1)
    elif name == "Z":
        _z(t, args[0] - 1)
    elif name == "CX":
        if args[0] == args[1]:
            raise ValueError("CNOT control and target must differ")
        _cx(t, args[0] - 1, args[1] - 1)
    elif name == "CZ":
        if args[0] == args[1]:
            raise ValueError("CZ legs must differ")
        _h(t, args[1] - 1)
        _cx(t, args[0] - 1, args[1] - 1)
        _h(t, args[1] - 1)
    else:
        raise ValueError(f"unsupported gate {name!r}")
    if debug:
        assert_frame_invariants(t)
    return t


def _h(t: Tableau, q: int) -> None:
    bit = 1 << q
    xs, zs, phases = t.xs, t.zs, t.phases
    for i in range(2 * t.n):
        xb = xs[i] & bit
        zb = zs[i] & bit
        if xb and zb:
            phases[i] = (phases[i] + 2) % 4
        elif xb != zb:
            xs[i] ^= bit
            zs[i] ^= bit


def _x(t: Tableau, q: int) -> None:
    bit = 1 << q
    for i in range(2 * t.n):
        if t.zs[i] & bit:
            t.phases[i] = (t.phases[i] + 2) % 4


def _z(t: Tableau, q: int) -> None:
    bit = 1 << q
    for i in range(2 * t.n):
        if t.xs[i] & bit:
            t.phases[i] = (t.phases[i] + 2) % 4


def _cx(t: Tableau, c: int, tq: int) -> None:
    cbit = 1 << c
    tbit = 1 << tq
    xs, zs, phases = t.xs, t.zs, t.phases
    for i in range(2 * t.n):
        xc = xs[i] & cbit
        zt = zs[i] & tbit
        if xc and zt:
            xt = (xs[i] >> tq) & 1
            zc = (zs[i] >> c) & 1
            if xt ^ zc ^ 1:
                phases[i] = (phases[i] + 2) % 4
        if xc:
            xs[i] ^= tbit
        if zt:
            zs[i] ^= cbit


def apply_circuit(t: Tableau, circuit: Circuit, debug: bool = False) -> Tableau:
    if circuit.n_qubits != t.n:
        raise ValueError(
            f"circuit is on {circuit.n_qubits} qubits, tableau on {t.n}"
        )
    for count, gate in enumerate(circuit.gates, start=1):
        apply_gate(t, gate, debug=debug and count % 64 == 0)
    return t


def assert_frame_invariants(t: Tableau) -> None:
    """Stabilizer rows pairwise commute and are independent."""
    n = t.n
    rows = [(t.xs[n + i], t.zs[n + i]) for i in range(n)]
    for i in range(n):
        xi, zi = rows[i]
        for j in range(i + 1, n):
            xj, zj = rows[j]
            if ((xi & zj).bit_count() + (zi & xj).bit_count()) % 2:
                raise AssertionError(f"stabilizer rows {i} and {j} anticommute")
    basis = _SymplecticBasis([x | (z << n) for x, z in rows])
    if basis.rank != n:
        raise AssertionError("stabilizer rows are dependent")


class _SymplecticBasis:
    """Echelonized 2n-bit rows with combination tracking for membership."""

    def __init__(self, vectors: list[int]):
        self.pivots: list[int] = []
        self.rows: list[int] = []
        self.combos: list[int] = []
        for idx, v in enumerate(vectors):
            combo = 1 << idx
            for p, row, c in zip(self.pivots, self.rows, self.combos):
                if (v >> p) & 1:
                    v ^= row
                    combo ^= c
            if v:
                pivot = v.bit_length() - 1
                # keep echelon sorted by pivot for deterministic reduction
                pos = 0
                while pos < len(self.pivots) and self.pivots[pos] > pivot:
                    pos += 1
                self.pivots.insert(pos, pivot)
                self.rows.insert(pos, v)
                self.combos.insert(pos, combo)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def solve(self, v: int) -> int | None:
        """Combination mask expressing v over the basis, or None."""
        combo = 0
        for p, row, c in zip(self.pivots, self.rows, self.combos):
            if (v >> p) & 1:
                v ^= row
                combo ^= c
        return combo if v == 0 else None


class StabilizerGroup:
    """Batch membership queries against a tableau's stabilizer rows."""

    def __init__(self, t: Tableau):
        self.n = t.n
        self.generators = [t.stabilizer_row(i) for i in range(t.n)]
        vectors = [g.x_bits | (g.z_bits << t.n) for g in self.generators]
        self.basis = _SymplecticBasis(vectors)

    def classify(self, p: PauliOperator) -> str:
        """"yes" if p is in the group, "anti" if -p is, else "no"."""
        if p.n != self.n:
            raise ValueError(f"operator on {p.n} qubits, state on {self.n}")
        combo = self.basis.solve(p.x_bits | (p.z_bits << self.n))
        if combo is None:
            return "no"
        product = PauliOperator.identity(self.n)
        while combo:
            low = combo & -combo
            product = product * self.generators[low.bit_length() - 1]
            combo ^= low
        if (product.x_bits, product.z_bits) != (p.x_bits, p.z_bits):
            raise AssertionError("basis solve returned a wrong combination")
        delta = (product.phase_exp - p.phase_exp) % 4
        if delta == 0:
            return "yes"
        if delta == 2:
            return "anti"
        return "no"


def is_stabilized(t: Tableau, p: PauliOperator) -> str:
    """Decide whether p (with its sign) stabilizes the tableau state.

    Returns "yes" when p is in the stabilizer group, "anti" when -p is,
    and "no" otherwise.
    """
    return StabilizerGroup(t).classify(p)


# -- encoder verification -----------------------------------------------------


@dataclass(frozen=True)
class EncodingReport:
    """Which X-type and Z-type generators fail to stabilize the output."""

    n: int
    logical_input: int
    failing_x_rows: tuple[int, ...]
    failing_z_rows: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.failing_x_rows and not self.failing_z_rows

    def summary(self) -> str:
        if self.passed:
            return "pass"
        return (
            f"fail: {len(self.failing_x_rows)} X rows, "
            f"{len(self.failing_z_rows)} Z rows not stabilized"
        )


def verify_encoding(circuit: Circuit, code: CssCode, logical_input=0) -> EncodingReport:
    """Run the circuit on the laid-out basis state and check every generator.

    The register starts in the computational basis state with the
    logical input on the leading block (bit j set -> X on qubit j+1)
    and ancillas at |0>. After the circuit, every row of H_X (as an
    X-type Pauli) and of H_Z (as a Z-type Pauli) must report "yes".
    """
    if circuit.n_qubits != code.n:
        raise ValueError(
            f"circuit register {circuit.n_qubits} != code register {code.n}"
        )
    layout = layout_for(code)
    if not isinstance(logical_input, int):
        bits = list(logical_input)
        if len(bits) != code.k_logical:
            raise ValueError(
                f"logical input length {len(bits)} != k_logical {code.k_logical}"
            )
        logical_input = sum(1 << j for j, b in enumerate(bits) if b)
    if logical_input >> code.k_logical:
        raise ValueError("logical input has bits outside the logical block")

    t = tableau_zero_state(code.n)
    for j in layout.logical_block:
        if (logical_input >> (j - 1)) & 1:
            apply_gate(t, ("X", j))
    apply_circuit(t, circuit)

    group = StabilizerGroup(t)
    failing_x = tuple(
        i + 1
        for i, row in enumerate(code.hx.bits)
        if group.classify(PauliOperator(code.n, 0, row, 0)) != "yes"
    )
    failing_z = tuple(
        i + 1
        for i, row in enumerate(code.hz.bits)
        if group.classify(PauliOperator(code.n, 0, 0, row)) != "yes"
    )
    return EncodingReport(
        n=code.n,
        logical_input=logical_input,
        failing_x_rows=failing_x,
        failing_z_rows=failing_z,
    )
