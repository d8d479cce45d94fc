"""The classical code family behind the quantum construction.

Two systematic binary linear codes are provided for every k >= 3:

* ``build_lk(k)``      -- [2k, k] code with generator [I_k | G_k],
* ``build_lk_plus(k)`` -- [3k, k] code with generator [I_k | G_k | I_k],

where G_k is the k x k matrix with zero diagonal and ones elsewhere.
Each row of G_k is the redundancy vector of a sub-exceeding function,
which is where the family's combinatorial structure comes from.

Minimum distances are certified only by exhaustive codeword
enumeration (2^k words, capped); there is no probabilistic estimation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import gf2
from .gf2 import BitMatrix, CapacityError

# Full enumeration of 2^k codewords is instant below this; above it the
# caller must not pretend the search is exact, so we refuse.
ENUMERATION_CAP_K = 24


def is_sub_exceeding(values: Sequence[int]) -> bool:
    """True iff 0 <= f(i) <= i-1 for all i, with f given 1-indexed.

    ``values[0]`` is f(1), ``values[1]`` is f(2), and so on.
    """
    return all(0 <= v <= i for i, v in enumerate(values))


@dataclass
class ClassicalCode:
    """A binary linear [n, k] code with generator G and parity check H.

    ``d`` and ``d_dual`` stay None until certified by enumeration.
    """

    n: int
    k: int
    G: BitMatrix
    H: BitMatrix
    d: int | None = None
    d_dual: int | None = None

    def __post_init__(self):
        if self.G.rows != self.k or self.G.cols != self.n:
            raise ValueError(f"generator must be {self.k}x{self.n}")
        if self.H.cols != self.n:
            raise ValueError(f"parity check must have {self.n} columns")


def build_gk(k: int) -> BitMatrix:
    """k x k matrix with 0 on the diagonal and 1 everywhere else."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ones = (1 << k) - 1
    return BitMatrix(k, k, tuple(ones ^ (1 << i) for i in range(k)))


def build_lk(k: int) -> ClassicalCode:
    """The [2k, k] code with G = [I_k | G_k] and H = [G_k | I_k]."""
    if k < 3:
        raise ValueError(f"the [2k, k] family is defined for k >= 3, got {k}")
    gk = build_gk(k)
    eye = gf2.identity(k)
    return ClassicalCode(n=2 * k, k=k, G=gf2.hconcat(eye, gk), H=gf2.hconcat(gk, eye))


def build_lk_plus(k: int) -> ClassicalCode:
    """The [3k, k] code with G = [I_k | G_k | I_k].

    H is the 2k x 3k block matrix [[G_k, I_k, 0], [I_k, 0, I_k]].
    Accepted from k = 3 on so the quantum construction covers k = 3;
    distance values below k = 4 are certified, not quoted.
    """
    if k < 3:
        raise ValueError(f"the [3k, k] family is defined for k >= 3, got {k}")
    gk = build_gk(k)
    eye = gf2.identity(k)
    zero = gf2.zeros(k, k)
    g = gf2.hconcat(gf2.hconcat(eye, gk), eye)
    h = gf2.vconcat(
        gf2.hconcat(gf2.hconcat(gk, eye), zero),
        gf2.hconcat(gf2.hconcat(eye, zero), eye),
    )
    return ClassicalCode(n=3 * k, k=k, G=g, H=h)


def _check_enumeration_cap(code: ClassicalCode) -> None:
    if code.k > ENUMERATION_CAP_K:
        raise CapacityError(
            f"codeword enumeration needs 2^{code.k} words; cap is 2^{ENUMERATION_CAP_K}"
        )


def enumerate_codewords(code: ClassicalCode) -> Iterator[int]:
    """All 2^k codewords m G, once each, in lexicographic message order.

    Messages are read with m_1 as the leading position, so the all-zero
    word comes first. Codewords are packed ints (bit j-1 = coordinate j).
    """
    _check_enumeration_cap(code)
    k = code.k
    rows = code.G.bits
    for msg in range(1 << k):
        word = 0
        m = msg
        while m:
            low = m & -m
            # message bit i (1-based, lexicographic) selects generator row i
            word ^= rows[k - low.bit_length()]
            m ^= low
        yield word


def min_distance(code: ClassicalCode) -> int:
    """Exact minimum nonzero-codeword weight by full enumeration.

    Stores the result in ``code.d`` and returns it. Uses a Gray-code
    walk so each word costs one row XOR.
    """
    _check_enumeration_cap(code)
    if code.k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    rows = code.G.bits
    best = code.n + 1
    word = 0
    prev_gray = 0
    for t in range(1, 1 << code.k):
        gray = t ^ (t >> 1)
        flipped = gray ^ prev_gray
        word ^= rows[flipped.bit_length() - 1]
        prev_gray = gray
        w = word.bit_count()
        if 0 < w < best:
            best = w
    code.d = best
    return best


def dual_code(code: ClassicalCode) -> ClassicalCode:
    """The dual: generator and parity check swap roles."""
    return ClassicalCode(
        n=code.n,
        k=code.n - code.k,
        G=code.H,
        H=code.G,
        d=code.d_dual,
        d_dual=code.d,
    )


def dual_distance(code: ClassicalCode) -> int:
    """Certify the dual distance by enumeration; stores ``code.d_dual``."""
    d = min_distance(dual_code(code))
    code.d_dual = d
    return d


def certify(code: ClassicalCode) -> ClassicalCode:
    """Certify both d and d_dual in place; returns the code for chaining."""
    min_distance(code)
    dual_distance(code)
    return code


# -- serialization ---------------------------------------------------------


def code_header(code: ClassicalCode) -> dict:
    return {"n": code.n, "k": code.k, "d": code.d, "d_dual": code.d_dual}


def save_code(code: ClassicalCode, basepath: str) -> None:
    """Write <base>.g.txt, <base>.h.txt and a small <base>.json header."""
    import json
    from pathlib import Path

    base = Path(basepath)
    base.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{base}.g.txt").write_text(gf2.to_text(code.G))
    Path(f"{base}.h.txt").write_text(gf2.to_text(code.H))
    Path(f"{base}.json").write_text(json.dumps(code_header(code), indent=2) + "\n")


def load_code(basepath: str) -> ClassicalCode:
    import json
    from pathlib import Path

    base = Path(basepath)
    header = json.loads(Path(f"{base}.json").read_text())
    g = gf2.from_text(Path(f"{base}.g.txt").read_text())
    h = gf2.from_text(Path(f"{base}.h.txt").read_text())
    return ClassicalCode(n=header["n"], k=header["k"], G=g, H=h,
                         d=header.get("d"), d_dual=header.get("d_dual"))
