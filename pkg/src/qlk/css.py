"""CSS quantum codes: hypergraph product, generalized Shor product, and
the QL_k family, with rank-certified parameters and exact brute-force
distance certification.

The QL_k code on 6k^2 qubits is the generalized Shor product of the
[2k, k] and [3k, k] classical codes:

    H_X = H_lk (x) I_3k        (3k^2 rows)
    H_Z = G_lk (x) H_lkp       (2k^2 rows)

Logical counts are always computed from GF(2) ranks; closed-form
parameter values are treated as predictions to be checked, never as
certificates.
"""

from __future__ import annotations

import concurrent.futures
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import classical, gf2
from .classical import ClassicalCode
from .gf2 import BitMatrix

# Certifying the classical component distances needs 2^k enumeration;
# beyond this k the prediction is simply left unset.
_PREDICTION_CAP_K = 16


@dataclass(frozen=True)
class Provenance:
    """How a CssCode was constructed, plus any parameter caveats."""

    family: str
    k: int | None = None
    predicted_d: int | None = None
    notes: tuple[str, ...] = ()


@dataclass
class CssCode:
    """A CSS code given by X-type and Z-type binary check matrices.

    ``k_logical`` is derived from ranks at construction time. The
    distance fields stay None until certified by ``css_distance``.
    Commutation (H_X H_Z^T = 0) is *not* enforced here; use
    ``check_css`` to audit a hand-built instance.
    """

    hx: BitMatrix
    hz: BitMatrix
    provenance: Provenance = Provenance(family="custom")
    n: int = field(init=False)
    rank_x: int = field(init=False)
    rank_z: int = field(init=False)
    k_logical: int = field(init=False)
    d_x: int | None = None
    d_z: int | None = None
    d: int | None = None

    def __post_init__(self):
        if self.hx.cols != self.hz.cols:
            raise ValueError(
                f"H_X has {self.hx.cols} columns but H_Z has {self.hz.cols}"
            )
        self.n = self.hx.cols
        self.rank_x = gf2.rank(self.hx)
        self.rank_z = gf2.rank(self.hz)
        self.k_logical = self.n - self.rank_x - self.rank_z
        if self.k_logical < 0:
            raise ValueError("check matrices overdetermine the register")


@dataclass(frozen=True)
class HgpParameters:
    """Predicted [[n, k, d]] triple of a hypergraph product.

    ``d_bound`` is a prediction from the component distances, distinct
    from any brute-force certification. ``applicable`` is False when a
    component check matrix has dependent rows, which the closed-form
    count does not cover.
    """

    n: int
    k: int
    d_bound: int
    applicable: bool = True


def check_css(code: CssCode) -> bool:
    """True iff H_X H_Z^T = 0 over GF(2)."""
    return gf2.mat_mul(code.hx, gf2.transpose(code.hz)).is_zero()


def commutation_violations(code: CssCode) -> list[tuple[int, int]]:
    """All (X-row, Z-row) pairs with odd support overlap, 1-based."""
    product = gf2.mat_mul(code.hx, gf2.transpose(code.hz))
    out = []
    for i, r in enumerate(product.bits):
        while r:
            low = r & -r
            out.append((i + 1, low.bit_length()))
            r ^= low
    return out


# -- product constructions ---------------------------------------------------


def hypergraph_product(c1: ClassicalCode, c2: ClassicalCode) -> CssCode:
    """The CSS code with H_X = [H1 x I_n2 | I_r1 x H2^T] and
    H_Z = [I_n1 x H2 | H1^T x I_r2] on n1 n2 + r1 r2 qubits.

    r_i is the row count of H_i, i.e. the matrix actually used; when
    rows are dependent the parameter formula is flagged inapplicable
    (see ``hgp_parameters``) but the construction still commutes.
    """
    h1, h2 = c1.H, c2.H
    n1, n2 = c1.n, c2.n
    r1, r2 = h1.rows, h2.rows
    hx = gf2.hconcat(gf2.kron(h1, gf2.identity(n2)),
                     gf2.kron(gf2.identity(r1), gf2.transpose(h2)))
    hz = gf2.hconcat(gf2.kron(gf2.identity(n1), h2),
                     gf2.kron(gf2.transpose(h1), gf2.identity(r2)))
    return CssCode(hx, hz, Provenance(family="hgp"))


def hgp_parameters(c1: ClassicalCode, c2: ClassicalCode) -> HgpParameters:
    """Predicted parameters of the hypergraph product.

    n = n1 n2 + r1 r2 and k = k1 k2 + k1'' k2'', where k_i = n_i -
    rank(H_i) and k_i'' = rows(H_i) - rank(H_i) is the cokernel
    dimension (zero for full-rank checks). This is the count that the
    rank computation reproduces; reading the second term as the dual
    dimension n - k instead contradicts rank on full-rank inputs.

    d_bound = min(d1, d2, d1-dual, d2-dual) is kept as the stored
    prediction; requires certified d and dual distance on both inputs.
    """
    for i, c in enumerate((c1, c2), start=1):
        if c.d is None or c.d_dual is None:
            raise ValueError(
                f"code {i} is missing a certified distance; run classical.certify first"
            )
    rank1, rank2 = gf2.rank(c1.H), gf2.rank(c2.H)
    r1, r2 = c1.H.rows, c2.H.rows
    applicable = rank1 == r1 and rank2 == r2
    n = c1.n * c2.n + r1 * r2
    k = (c1.n - rank1) * (c2.n - rank2) + (r1 - rank1) * (r2 - rank2)
    d_bound = min(c1.d, c2.d, c1.d_dual, c2.d_dual)
    return HgpParameters(n=n, k=k, d_bound=d_bound, applicable=applicable)


def generalized_shor(c1: ClassicalCode, c2: ClassicalCode) -> CssCode:
    """The CSS code with H_X = H1 x I_n2 and H_Z = G1 x H2 on n1 n2 qubits.

    Commutation holds because H1 G1^T = 0 by duality of the first code.
    """
    hx = gf2.kron(c1.H, gf2.identity(c2.n))
    hz = gf2.kron(c1.G, c2.H)
    return CssCode(hx, hz, Provenance(family="shor"))


def build_qlk(k: int) -> CssCode:
    """The QL_k code: generalized Shor product of the [2k, k] and
    [3k, k] component codes, with n = 6k^2 and k_logical = k^2.
    """
    if k < 3:
        raise ValueError(f"QL_k is defined for k >= 3, got {k}")
    c1 = classical.build_lk(k)
    c2 = classical.build_lk_plus(k)
    code = generalized_shor(c1, c2)

    predicted = None
    if k <= _PREDICTION_CAP_K:
        predicted = min(classical.min_distance(c1), classical.min_distance(c2))
    notes = []
    if k == 5:
        notes.append(
            "erratum: [[120, 25, 4]] is sometimes quoted for k = 5, but "
            "n = n1*n2 = 10*15 = 150 = 6k^2; this construction uses n = 150"
        )
    code.provenance = Provenance(
        family="qlk", k=k, predicted_d=predicted, notes=tuple(notes)
    )

    if code.n != 6 * k * k:
        raise AssertionError(f"QL_{k} register size {code.n} != 6k^2")
    if code.k_logical != k * k:
        raise AssertionError(f"QL_{k} logical count {code.k_logical} != k^2")
    return code


# -- distance certification ---------------------------------------------------


@dataclass(frozen=True)
class SideResult:
    """One side of a distance search: exact value or open bound.

    ``distance`` is None when no logical of weight <= w_max exists on
    this side (read: distance > w_max). ``witness`` is a packed vector
    realizing the distance when found.
    """

    distance: int | None
    witness: int | None


@dataclass(frozen=True)
class DistanceResult:
    w_max: int
    x: SideResult
    z: SideResult

    @property
    def d(self) -> int | None:
        found = [s.distance for s in (self.x, self.z) if s.distance is not None]
        return min(found) if found else None


def _scan_weight_range(cols, w, pivots, reduced, top_lo, top_hi):
    """Colex-first weight-w support with zero syndrome whose indicator
    vector lies outside the row space given by (pivots, reduced), with
    the largest support element restricted to [top_lo, top_hi).

    cols[j] is column j of the syndrome matrix packed over row bits.
    """

    def outside(v: int) -> bool:
        for p, row in zip(pivots, reduced):
            if (v >> p) & 1:
                v ^= row
        return v != 0

    def rec(limit, remaining, partial, chosen):
        if remaining == 1:
            # innermost level: one compare per candidate
            for a in range(limit):
                if cols[a] == partial:
                    v = 1 << a
                    for c in chosen:
                        v |= 1 << c
                    if outside(v):
                        return (a, *chosen)
            return None
        for t in range(remaining - 1, limit):
            hit = rec(t, remaining - 1, partial ^ cols[t], (t, *chosen))
            if hit is not None:
                return hit
        return None

    if w == 1:
        for a in range(top_lo, top_hi):
            if cols[a] == 0 and outside(1 << a):
                return (a,)
        return None
    for top in range(max(w - 1, top_lo), top_hi):
        hit = rec(top, w - 1, cols[top], (top,))
        if hit is not None:
            return hit
    return None


def _scan_chunk(args):
    return _scan_weight_range(*args)


def _find_logical(check: BitMatrix, other: BitMatrix, w_max: int,
                  threads: int = 1, exact_weight: int | None = None) -> SideResult:
    """Minimum-weight vector in ker(check) outside rowspace(other).

    Scans weights 1..w_max (or only ``exact_weight``), colexicographic
    within each weight. With threads > 1 the outer index range is split
    into contiguous chunks evaluated in parallel; chunks merge in range
    order, so the reported witness is identical for any thread count.
    """
    cols = check.columns_packed() if check.rows else [0] * check.cols
    space = other._row_space
    pivots, reduced = space.pivots, space.reduced
    n = check.cols
    weights = [exact_weight] if exact_weight is not None else range(1, w_max + 1)
    for w in weights:
        if w > n:
            break
        if threads <= 1 or n < 4 * threads:
            hit = _scan_weight_range(cols, w, pivots, reduced, 0, n)
        else:
            bounds = [round(i * n / threads) for i in range(threads + 1)]
            chunks = [
                (cols, w, pivots, reduced, lo, hi)
                for lo, hi in zip(bounds, bounds[1:])
                if lo < hi
            ]
            hit = None
            with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
                for result in pool.map(_scan_chunk, chunks):
                    if result is not None:
                        hit = result
                        break
        if hit is not None:
            return SideResult(distance=w, witness=gf2.support_to_vector(hit))
    return SideResult(distance=None, witness=None)


def css_distance(code: CssCode, w_max: int, threads: int = 1) -> DistanceResult:
    """Exact per-side distances up to w_max by raw weight enumeration.

    The Z side is the minimum weight of v with H_X v^T = 0 and
    v outside rowspace(H_Z); the X side is symmetric. A side that finds
    nothing reports an open bound (> w_max). Certified values are
    stored back onto the code.
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    z_side = _find_logical(code.hx, code.hz, w_max, threads)
    x_side = _find_logical(code.hz, code.hx, w_max, threads)
    result = DistanceResult(w_max=w_max, x=x_side, z=z_side)
    if x_side.distance is not None:
        code.d_x = x_side.distance
    if z_side.distance is not None:
        code.d_z = z_side.distance
    if result.d is not None:
        code.d = result.d
    return result


def logical_operator_witness(code: CssCode, side: str, weight: int) -> int | None:
    """One weight-``weight`` logical operator on the given side, or None.

    side "z": v with H_X v^T = 0, v outside rowspace(H_Z); side "x" is
    symmetric. Returns the colex-first packed vector at exactly that
    weight.
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    s = side.lower()
    if s == "z":
        found = _find_logical(code.hx, code.hz, weight, exact_weight=weight)
    elif s == "x":
        found = _find_logical(code.hz, code.hx, weight, exact_weight=weight)
    else:
        raise ValueError(f"side must be 'x' or 'z', got {side!r}")
    return found.witness


# -- serialization ------------------------------------------------------------


def css_header(code: CssCode) -> dict:
    p = code.provenance
    return {
        "family": p.family,
        "k": p.k,
        "n": code.n,
        "k_logical": code.k_logical,
        "predicted_d": p.predicted_d,
        "certified_d_x": code.d_x,
        "certified_d_z": code.d_z,
        "certified_d": code.d,
        "notes": list(p.notes),
    }


def save_css_code(code: CssCode, basepath: str) -> None:
    """Write <base>.hx.txt, <base>.hz.txt and a <base>.json provenance header."""
    base = Path(basepath)
    base.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{base}.hx.txt").write_text(gf2.to_text(code.hx))
    Path(f"{base}.hz.txt").write_text(gf2.to_text(code.hz))
    Path(f"{base}.json").write_text(json.dumps(css_header(code), indent=2) + "\n")


def load_css_code(basepath: str) -> CssCode:
    base = Path(basepath)
    header = json.loads(Path(f"{base}.json").read_text())
    hx = gf2.from_text(Path(f"{base}.hx.txt").read_text())
    hz = gf2.from_text(Path(f"{base}.hz.txt").read_text())
    code = CssCode(
        hx,
        hz,
        Provenance(
            family=header["family"],
            k=header["k"],
            predicted_d=header["predicted_d"],
            notes=tuple(header["notes"]),
        ),
    )
    code.d_x = header.get("certified_d_x")
    code.d_z = header.get("certified_d_z")
    code.d = header.get("certified_d")
    return code
