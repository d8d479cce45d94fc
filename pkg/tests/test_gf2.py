import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlk import gf2
from qlk.classical import build_gk, build_lk

# -- oracles -----------------------------------------------------------------


def rank_by_subset_xor(m: gf2.BitMatrix) -> int:
    """log2 of the number of distinct row-subset XORs (rows <= 12)."""
    assert m.rows <= 12
    seen = set()
    for mask in range(1 << m.rows):
        acc = 0
        for i in range(m.rows):
            if (mask >> i) & 1:
                acc ^= m.bits[i]
        seen.add(acc)
    return len(seen).bit_length() - 1


def kron_by_definition(a: gf2.BitMatrix, b: gf2.BitMatrix) -> gf2.BitMatrix:
    rows = []
    for i in range(a.rows):
        for s in range(b.rows):
            rows.append([
                a.entry(i, j) & b.entry(s, t)
                for j in range(a.cols)
                for t in range(b.cols)
            ])
    return gf2.BitMatrix.from_rows(rows, cols=a.cols * b.cols)


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(
                st.integers(0, (1 << c) - 1), min_size=r, max_size=r
            ).map(lambda bits: gf2.BitMatrix(r, c, tuple(bits)))
        )
    )


# -- constructors and accessors ----------------------------------------------


def test_identity_degenerate():
    m = gf2.identity(0)
    assert (m.rows, m.cols) == (0, 0)


def test_identity_two():
    assert gf2.identity(2).to_lists() == [[1, 0], [0, 1]]


def test_identity_is_left_block_of_lk4_generator():
    g = build_lk(4).G
    left = gf2.BitMatrix(4, 4, tuple(r & 0xF for r in g.bits))
    assert left == gf2.identity(4)


def test_bad_padding_rejected():
    with pytest.raises(ValueError):
        gf2.BitMatrix(1, 2, (0b100,))


def test_from_rows_ragged():
    with pytest.raises(ValueError):
        gf2.BitMatrix.from_rows([[1, 0], [1]])


# -- rank ----------------------------------------------------------------------


def test_rank_identity():
    assert gf2.rank(gf2.identity(5)) == 5


def test_rank_g3_hand_reduction():
    # row1 + row2 = row3 over GF(2)
    assert gf2.rank(build_gk(3)) == 2


def test_rank_g4_against_subset_oracle():
    g4 = build_gk(4)
    assert gf2.rank(g4) == rank_by_subset_xor(g4) == 4


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_equals_transpose_rank(m):
    assert gf2.rank(m) == gf2.rank(gf2.transpose(m))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_plus_kernel_dim_is_cols(m):
    assert gf2.rank(m) + gf2.kernel_basis(m).rows == m.cols


# -- kernel ----------------------------------------------------------------------


def test_kernel_of_identity_is_empty():
    kb = gf2.kernel_basis(gf2.identity(3))
    assert (kb.rows, kb.cols) == (0, 3)


def test_kernel_of_parity_row():
    kb = gf2.kernel_basis(gf2.BitMatrix.from_rows([[1, 1]]))
    assert kb.to_lists() == [[1, 1]]


def test_kernel_of_lk4_check_spans_the_codewords():
    code = build_lk(4)
    kb = gf2.kernel_basis(code.H)
    assert kb.rows == 4
    spanned = set()
    for mask in range(16):
        acc = 0
        for i in range(4):
            if (mask >> i) & 1:
                acc ^= kb.bits[i]
        spanned.add(acc)
    from qlk.classical import enumerate_codewords

    assert spanned == set(enumerate_codewords(code))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_rows_annihilated(m):
    kb = gf2.kernel_basis(m)
    assert gf2.mat_mul(m, gf2.transpose(kb)).is_zero()


# -- row-space membership ---------------------------------------------------------


def test_in_row_space_identity():
    assert gf2.in_row_space(gf2.identity(3), [0, 1, 0])


def test_in_row_space_negative():
    assert not gf2.in_row_space(gf2.BitMatrix.from_rows([[1, 1, 0]]), [0, 0, 1])


def test_in_row_space_lk4_codeword():
    g = build_lk(4).G
    assert gf2.in_row_space(g, [1, 1, 0, 0, 1, 1, 0, 0])


def test_in_row_space_length_mismatch():
    with pytest.raises(ValueError):
        gf2.in_row_space(gf2.identity(3), [0, 1])


# -- kron --------------------------------------------------------------------------


def test_kron_block_structure():
    out = gf2.kron(gf2.identity(2), gf2.BitMatrix.from_rows([[1, 1]]))
    assert out.to_lists() == [[1, 1, 0, 0], [0, 0, 1, 1]]


def test_kron_hlk4_with_identity_row_one_support():
    hx = gf2.kron(build_lk(4).H, gf2.identity(12))
    support = sorted(j + 1 for j in range(hx.cols) if hx.entry(0, j))
    assert support == [13, 25, 37, 49]


@given(matrices(4, 4), matrices(4, 4))
@settings(max_examples=60, deadline=None)
def test_kron_matches_definition(a, b):
    assert gf2.kron(a, b) == kron_by_definition(a, b)


def test_kron_row_weights_multiply():
    import random

    rng = random.Random(7)
    for _ in range(20):
        a = gf2.BitMatrix(4, 4, tuple(rng.randrange(16) for _ in range(4)))
        b = gf2.BitMatrix(4, 4, tuple(rng.randrange(16) for _ in range(4)))
        out = gf2.kron(a, b)
        for i in range(4):
            for s in range(4):
                assert out.row_weight(i * 4 + s) == a.row_weight(i) * b.row_weight(s)


@given(matrices(3, 3), matrices(3, 3), matrices(3, 3))
@settings(max_examples=40, deadline=None)
def test_kron_associative(a, b, c):
    assert gf2.kron(gf2.kron(a, b), c) == gf2.kron(a, gf2.kron(b, c))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_kron_mixed_product(data):
    # (A x B)(C x D) = (AC) x (BD) whenever inner dimensions agree
    dims = st.integers(1, 3)
    ra, ca = data.draw(dims), data.draw(dims)
    rb, cb = data.draw(dims), data.draw(dims)
    cc, cd = data.draw(dims), data.draw(dims)

    def rand_matrix(r, c):
        return gf2.BitMatrix(
            r, c, tuple(data.draw(st.integers(0, (1 << c) - 1)) for _ in range(r))
        )

    a = rand_matrix(ra, ca)
    b = rand_matrix(rb, cb)
    c = rand_matrix(ca, cc)
    d = rand_matrix(cb, cd)
    lhs = gf2.mat_mul(gf2.kron(a, b), gf2.kron(c, d))
    rhs = gf2.kron(gf2.mat_mul(a, c), gf2.mat_mul(b, d))
    assert lhs == rhs


# -- block composition and products --------------------------------------------------


def test_hconcat_builds_lk4_check():
    code = build_lk(4)
    assert gf2.hconcat(build_gk(4), gf2.identity(4)) == code.H


def test_duality_product_vanishes():
    code = build_lk(4)
    assert gf2.mat_mul(code.H, gf2.transpose(code.G)).is_zero()


def test_block_diag_of_units():
    assert gf2.block_diag(gf2.identity(1), gf2.identity(1)) == gf2.identity(2)


def test_hconcat_row_mismatch():
    with pytest.raises(ValueError):
        gf2.hconcat(gf2.identity(2), gf2.identity(3))


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        gf2.mat_mul(gf2.identity(2), gf2.identity(3))


def test_transpose_round_trip():
    m = build_gk(5)
    assert gf2.transpose(gf2.transpose(m)) == m


def test_columns_packed_matches_transpose():
    m = build_lk(5).H
    assert m.columns_packed() == list(gf2.transpose(m).bits)


# -- combination enumeration -----------------------------------------------------------


def test_colex_combinations_order():
    combos = list(gf2.colex_combinations(4, 2))
    assert combos == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_colex_combinations_counts():
    import math

    for n, w in [(6, 0), (6, 1), (6, 3), (5, 5), (3, 4)]:
        combos = list(gf2.colex_combinations(n, w))
        assert len(combos) == (math.comb(n, w))
        assert len(set(combos)) == len(combos)


# -- text and alist formats --------------------------------------------------------------


def test_text_round_trip():
    m = build_lk(4).H
    assert gf2.from_text(gf2.to_text(m)) == m


def test_text_write_read_write_identical():
    text = gf2.to_text(build_lk_plus_h())
    assert gf2.to_text(gf2.from_text(text)) == text


def build_lk_plus_h():
    from qlk.classical import build_lk_plus

    return build_lk_plus(4).H


def test_text_rejects_bad_rows():
    with pytest.raises(ValueError):
        gf2.from_text("1 2\n012\n")


def test_alist_round_trip():
    m = build_lk(4).H
    text = gf2.to_alist(m)
    assert gf2.from_alist(text) == m
    assert gf2.to_alist(gf2.from_alist(text)) == text


def test_alist_header():
    m = build_lk(4).H
    lines = gf2.to_alist(m).splitlines()
    assert lines[0] == "8 4"
    # max column degree 3 (generator block), max row degree 4
    assert lines[1] == "3 4"


def test_alist_tolerates_zero_padding():
    m = gf2.BitMatrix.from_rows([[1, 0], [1, 1]])
    lines = gf2.to_alist(m).splitlines()
    # pad the first column index list with a trailing zero
    lines[4] = lines[4] + " 0"
    assert gf2.from_alist("\n".join(lines) + "\n") == m
