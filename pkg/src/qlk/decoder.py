"""Two-stage CSS syndrome decoding with minimum-weight lookup tables,
plus depolarizing-noise Monte Carlo with exact degeneracy-aware verdicts.

Stage 1 corrects phase flips: X-type checks (rows of H_X) flag Z
errors. Stage 2 corrects bit flips: Z-type checks flag X errors. The
two stages are independent table lookups; correlations of Y errors are
ignored by design, the standard CSS treatment.

Tables map a syndrome to the minimum-weight error producing it
(enumeration in increasing weight, colexicographic tie-break, first
writer wins). A syndrome outside the table is a heralded miss: the
decoder flags it and applies the identity on that side.

A trial verdict is degeneracy-aware: a residual equal to a stabilizer
element counts as success (row-space membership, not equality to zero).
Every shot draws its randomness from (seed, shot index), so summaries
are byte-identical for any thread count or shot partition.
"""

from __future__ import annotations

import concurrent.futures
import random
import struct
from dataclasses import dataclass

from . import gf2
from .css import CssCode
from .gf2 import CapacityError
from .pauli import PauliOperator

DEFAULT_TABLE_CAP = 10_000_000

CSV_HEADER = "k,n,p,shots,seed,successes,fail_x,fail_z,fail_y,heralded,rate"


@dataclass(frozen=True)
class Syndrome:
    """Check outcomes: s_x from the X-type checks (flags Z errors),
    s_z from the Z-type checks (flags X errors); packed ints."""

    s_x: int
    s_z: int
    r_x: int
    r_z: int

    def __post_init__(self):
        if self.s_x >> self.r_x or self.s_z >> self.r_z:
            raise ValueError("syndrome bits outside the declared check counts")

    @property
    def is_zero(self) -> bool:
        return self.s_x == 0 and self.s_z == 0


def syndrome_of(code: CssCode, error: PauliOperator) -> Syndrome:
    """s_x = H_X z^T and s_z = H_Z x^T over GF(2)."""
    if error.n != code.n:
        raise ValueError(f"error on {error.n} qubits, code on {code.n}")
    s_x = 0
    for i, row in enumerate(code.hx.bits):
        if (row & error.z_bits).bit_count() & 1:
            s_x |= 1 << i
    s_z = 0
    for i, row in enumerate(code.hz.bits):
        if (row & error.x_bits).bit_count() & 1:
            s_z |= 1 << i
    return Syndrome(s_x=s_x, s_z=s_z, r_x=code.hx.rows, r_z=code.hz.rows)


@dataclass
class DecodingTable:
    """syndrome -> minimal-weight error pattern for one error side.

    ``side`` is "x" for X-error patterns (keyed by H_Z syndromes) or
    "z" for Z-error patterns (keyed by H_X syndromes).
    """

    side: str
    n: int
    syndrome_bits: int
    t: int
    entries: dict[int, int]

    def lookup(self, syndrome: int) -> int | None:
        return self.entries.get(syndrome)


def _fill_table(check: gf2.BitMatrix, side: str, t: int, cap: int) -> DecodingTable:
    n = check.cols
    total = 1
    binom = 1
    for w in range(1, t + 1):
        binom = binom * (n - w + 1) // w
        total += binom
    if total > cap:
        raise CapacityError(
            f"{side}-side table needs {total} weight-<={t} entries; cap is {cap}"
        )
    cols = check.columns_packed() if check.rows else [0] * n
    entries = {0: 0}
    for w in range(1, t + 1):
        for support in gf2.colex_combinations(n, w):
            syn = 0
            for j in support:
                syn ^= cols[j]
            if syn not in entries:
                entries[syn] = gf2.support_to_vector(support)
    return DecodingTable(side=side, n=n, syndrome_bits=check.rows, t=t, entries=entries)


def build_lookup(code: CssCode, t: int,
                 cap: int = DEFAULT_TABLE_CAP) -> tuple[DecodingTable, DecodingTable]:
    """Build (X-side, Z-side) lookup tables for all errors of weight <= t."""
    if t < 0:
        raise ValueError("t must be >= 0")
    x_table = _fill_table(code.hz, "x", t, cap)
    z_table = _fill_table(code.hx, "z", t, cap)
    return x_table, z_table


@dataclass(frozen=True)
class DecodeFlags:
    miss_x: bool
    miss_z: bool

    @property
    def heralded(self) -> bool:
        return self.miss_x or self.miss_z


def decode(code: CssCode, tables: tuple[DecodingTable, DecodingTable],
           syndrome: Syndrome) -> tuple[PauliOperator, DecodeFlags]:
    """Look up both syndrome halves; a miss yields identity plus a flag."""
    x_table, z_table = tables
    x_corr = x_table.lookup(syndrome.s_z)
    z_corr = z_table.lookup(syndrome.s_x)
    flags = DecodeFlags(miss_x=x_corr is None, miss_z=z_corr is None)
    correction = PauliOperator(code.n, 0, x_corr or 0, z_corr or 0)
    return correction, flags


# -- depolarizing channel ------------------------------------------------------


def _sample_xz(n: int, p: float, rng: random.Random) -> tuple[int, int]:
    x = z = 0
    third = p / 3.0
    for j in range(n):
        r = rng.random()
        if r >= p:
            continue
        if r < third:
            x |= 1 << j
        elif r < 2 * third:
            x |= 1 << j
            z |= 1 << j
        else:
            z |= 1 << j
    return x, z


def sample_depolarizing(n: int, p: float, seed: int) -> PauliOperator:
    """iid depolarizing draw: I with 1-p, else X/Y/Z uniformly (p/3 each).

    Deterministic in (n, p, seed).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    x, z = _sample_xz(n, p, random.Random(seed))
    return PauliOperator(n, 0, x, z)


def _shot_seed(seed: int, shot: int) -> int:
    return (seed << 32) ^ shot


@dataclass(frozen=True)
class TrialRecord:
    """One decoded shot: the sampled error, what the decoder did, and
    the degeneracy-aware verdict."""

    error: PauliOperator
    syndrome: Syndrome
    correction: PauliOperator
    residual: PauliOperator
    heralded: bool
    verdict: str  # success | logical-x | logical-z | logical-y


def run_trial(code: CssCode, tables, error: PauliOperator) -> TrialRecord:
    syndrome = syndrome_of(code, error)
    correction, flags = decode(code, tables, syndrome)
    residual = PauliOperator(
        code.n, 0, error.x_bits ^ correction.x_bits, error.z_bits ^ correction.z_bits
    )
    x_fail = not code.hx._row_space.contains(residual.x_bits)
    z_fail = not code.hz._row_space.contains(residual.z_bits)
    if x_fail and z_fail:
        verdict = "logical-y"
    elif x_fail:
        verdict = "logical-x"
    elif z_fail:
        verdict = "logical-z"
    else:
        verdict = "success"
    return TrialRecord(
        error=error,
        syndrome=syndrome,
        correction=correction,
        residual=residual,
        heralded=flags.heralded,
        verdict=verdict,
    )


@dataclass(frozen=True)
class McSummary:
    k_logical: int
    n: int
    p: float
    shots: int
    seed: int
    successes: int
    fail_x: int
    fail_z: int
    fail_y: int
    heralded: int

    @property
    def failures(self) -> int:
        return self.fail_x + self.fail_z + self.fail_y

    @property
    def rate(self) -> float:
        return self.failures / self.shots

    def csv_row(self) -> str:
        return (
            f"{self.k_logical},{self.n},{self.p:g},{self.shots},{self.seed},"
            f"{self.successes},{self.fail_x},{self.fail_z},{self.fail_y},"
            f"{self.heralded},{self.rate:.6e}"
        )


def _mc_counts(code: CssCode, tables, p: float, seed: int,
               shot_range: range) -> tuple[int, int, int, int, int]:
    successes = fail_x = fail_z = fail_y = heralded = 0
    x_space = code.hx._row_space
    z_space = code.hz._row_space
    hx_cols = code.hx.columns_packed() if code.hx.rows else [0] * code.n
    hz_cols = code.hz.columns_packed() if code.hz.rows else [0] * code.n
    x_table, z_table = tables
    n = code.n
    for shot in shot_range:
        ex, ez = _sample_xz(n, p, random.Random(_shot_seed(seed, shot)))
        s_x = 0
        bits = ez
        while bits:
            low = bits & -bits
            s_x ^= hx_cols[low.bit_length() - 1]
            bits ^= low
        s_z = 0
        bits = ex
        while bits:
            low = bits & -bits
            s_z ^= hz_cols[low.bit_length() - 1]
            bits ^= low
        x_corr = x_table.entries.get(s_z)
        z_corr = z_table.entries.get(s_x)
        if x_corr is None or z_corr is None:
            heralded += 1
        res_x = ex ^ (x_corr or 0)
        res_z = ez ^ (z_corr or 0)
        x_fail = not x_space.contains(res_x)
        z_fail = not z_space.contains(res_z)
        if x_fail and z_fail:
            fail_y += 1
        elif x_fail:
            fail_x += 1
        elif z_fail:
            fail_z += 1
        else:
            successes += 1
    return successes, fail_x, fail_z, fail_y, heralded


def _mc_worker(args):
    code, tables, p, seed, start, stop = args
    return _mc_counts(code, tables, p, seed, range(start, stop))


def run_monte_carlo(code: CssCode, tables, p: float, shots: int, seed: int,
                    threads: int = 1) -> McSummary:
    """Monte Carlo logical error rate under iid depolarizing noise.

    Shot i draws from a generator seeded by (seed, i), so the summary
    is identical for any ``threads`` value or shot partition.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if threads <= 1 or shots < 2 * threads:
        counts = [_mc_counts(code, tables, p, seed, range(shots))]
    else:
        bounds = [round(i * shots / threads) for i in range(threads + 1)]
        jobs = [
            (code, tables, p, seed, lo, hi)
            for lo, hi in zip(bounds, bounds[1:])
            if lo < hi
        ]
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(_mc_worker, jobs))
    totals = [sum(c[i] for c in counts) for i in range(5)]
    return McSummary(
        k_logical=code.k_logical,
        n=code.n,
        p=p,
        shots=shots,
        seed=seed,
        successes=totals[0],
        fail_x=totals[1],
        fail_z=totals[2],
        fail_y=totals[3],
        heralded=totals[4],
    )


def run_exhaustive(code: CssCode, tables, weight: int = 1) -> tuple[int, int]:
    """Decode every Pauli error of weight exactly ``weight``; returns
    (corrected, total). Exhaustive, no sampling."""
    corrected = total = 0
    for support in gf2.colex_combinations(code.n, weight):
        for pattern in range(3 ** weight):
            x = z = 0
            rem = pattern
            for j in support:
                kind = rem % 3
                rem //= 3
                if kind == 0:
                    x |= 1 << j
                elif kind == 1:
                    x |= 1 << j
                    z |= 1 << j
                else:
                    z |= 1 << j
            record = run_trial(code, tables, PauliOperator(code.n, 0, x, z))
            total += 1
            if record.verdict == "success":
                corrected += 1
    return corrected, total


# -- table persistence ---------------------------------------------------------

_TABLE_MAGIC = b"QLKT\x01"


def _dump_table(table: DecodingTable) -> bytes:
    chunks = [
        struct.pack(
            "<BIII",
            0 if table.side == "x" else 1,
            table.n,
            table.syndrome_bits,
            table.t,
        ),
        struct.pack("<I", len(table.entries)),
    ]
    syn_bytes = (table.syndrome_bits + 7) // 8 or 1
    err_bytes = (table.n + 7) // 8 or 1
    chunks.append(struct.pack("<II", syn_bytes, err_bytes))
    for syn in sorted(table.entries):
        chunks.append(syn.to_bytes(syn_bytes, "little"))
        chunks.append(table.entries[syn].to_bytes(err_bytes, "little"))
    return b"".join(chunks)


def _parse_table(data: bytes, offset: int) -> tuple[DecodingTable, int]:
    side_code, n, syndrome_bits, t = struct.unpack_from("<BIII", data, offset)
    offset += struct.calcsize("<BIII")
    (count,) = struct.unpack_from("<I", data, offset)
    offset += 4
    syn_bytes, err_bytes = struct.unpack_from("<II", data, offset)
    offset += 8
    entries = {}
    for _ in range(count):
        syn = int.from_bytes(data[offset:offset + syn_bytes], "little")
        offset += syn_bytes
        err = int.from_bytes(data[offset:offset + err_bytes], "little")
        offset += err_bytes
        entries[syn] = err
    table = DecodingTable(
        side="x" if side_code == 0 else "z",
        n=n,
        syndrome_bits=syndrome_bits,
        t=t,
        entries=entries,
    )
    return table, offset


def save_tables(path: str, tables: tuple[DecodingTable, DecodingTable]) -> None:
    x_table, z_table = tables
    with open(path, "wb") as fh:
        fh.write(_TABLE_MAGIC)
        fh.write(_dump_table(x_table))
        fh.write(_dump_table(z_table))


def load_tables(path: str) -> tuple[DecodingTable, DecodingTable]:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(_TABLE_MAGIC):
        raise ValueError(f"{path} is not a decoding-table file")
    x_table, offset = _parse_table(data, len(_TABLE_MAGIC))
    z_table, _ = _parse_table(data, offset)
    return x_table, z_table
