import pytest

from qlk import gf2
from qlk.classical import (
    ClassicalCode,
    build_gk,
    build_lk,
    build_lk_plus,
    certify,
    dual_code,
    dual_distance,
    enumerate_codewords,
    is_sub_exceeding,
    load_code,
    min_distance,
    save_code,
)
from qlk.gf2 import CapacityError

# Printed reference matrices, byte-for-byte under the text format.
G_LK4_TEXT = """4 8
10000111
01001011
00101101
00011110
"""

H_LK4_TEXT = """4 8
01111000
10110100
11010010
11100001
"""

H_LKP4_TEXT = """8 12
011110000000
101101000000
110100100000
111000010000
100000001000
010000000100
001000000010
000100000001
"""

G_LKP5_TEXT = """5 15
100000111110000
010001011101000
001001101100100
000101110100010
000011111000001
"""

G5_TEXT = """5 5
01111
10111
11011
11101
11110
"""

LK4_CODEWORDS = {
    "00000000", "00011110", "00101101", "01001011", "10000111",
    "00110011", "01010101", "10011001", "01100110", "10101010",
    "11001100", "01111000", "10110100", "11010010", "11100001",
    "11111111",
}


def word_str(word: int, n: int) -> str:
    return "".join("1" if (word >> j) & 1 else "0" for j in range(n))


def test_is_sub_exceeding_all_zero():
    assert is_sub_exceeding((0, 0, 0))


def test_is_sub_exceeding_maximal():
    assert is_sub_exceeding((0, 1, 2, 3))


def test_is_sub_exceeding_violation_at_first_position():
    assert not is_sub_exceeding((1, 0, 0))


def test_build_gk_one():
    assert build_gk(1).to_lists() == [[0]]


def test_build_gk_four_matches_generator_block():
    g = build_lk(4).G
    right = gf2.BitMatrix(4, 4, tuple(r >> 4 for r in g.bits))
    assert right == build_gk(4)


def test_build_gk_five_text():
    assert gf2.to_text(build_gk(5)) == G5_TEXT


def test_gk_row_weights_and_rank():
    for k in range(3, 13):
        gk = build_gk(k)
        assert all(gk.row_weight(i) == k - 1 for i in range(k))
        assert gf2.rank(gk) == (k if k % 2 == 0 else k - 1)


def test_build_lk4_matrices_byte_for_byte():
    code = build_lk(4)
    assert gf2.to_text(code.G) == G_LK4_TEXT
    assert gf2.to_text(code.H) == H_LK4_TEXT


def test_build_lk3_parameters():
    code = build_lk(3)
    assert (code.n, code.k) == (6, 3)


def test_build_lk_rejects_small_k():
    with pytest.raises(ValueError):
        build_lk(2)


def test_build_lk_plus5_generator_byte_for_byte():
    assert gf2.to_text(build_lk_plus(5).G) == G_LKP5_TEXT


def test_build_lk_plus4_check_byte_for_byte():
    assert gf2.to_text(build_lk_plus(4).H) == H_LKP4_TEXT


def test_build_lk_plus_duality():
    code = build_lk_plus(4)
    assert gf2.mat_mul(code.G, gf2.transpose(code.H)).is_zero()


def test_build_lk_plus_rejects_small_k():
    with pytest.raises(ValueError):
        build_lk_plus(2)


@pytest.mark.parametrize("k", range(3, 13))
def test_lk_invariants(k):
    code = build_lk(k)
    assert code.n == 2 * k
    assert gf2.rank(code.G) == k
    assert gf2.mat_mul(code.G, gf2.transpose(code.H)).is_zero()


@pytest.mark.parametrize("k", range(3, 13))
def test_lk_plus_invariants(k):
    code = build_lk_plus(k)
    assert code.n == 3 * k
    assert gf2.rank(code.H) == 2 * k
    assert gf2.mat_mul(code.G, gf2.transpose(code.H)).is_zero()


def test_enumerate_codewords_lk4():
    code = build_lk(4)
    words = [word_str(w, 8) for w in enumerate_codewords(code)]
    assert len(words) == 16
    assert set(words) == LK4_CODEWORDS
    assert words[0] == "00000000"
    # message 1111 is the last in lexicographic order
    assert words[-1] == "11111111"


def test_enumerate_codewords_cap():
    fat = ClassicalCode(n=50, k=25, G=gf2.zeros(25, 50), H=gf2.zeros(25, 50))
    with pytest.raises(CapacityError):
        list(enumerate_codewords(fat))


def test_min_distance_lk3():
    assert min_distance(build_lk(3)) == 3


def test_min_distance_lk4_cross_checked_against_word_list():
    code = build_lk(4)
    assert min_distance(code) == 4
    weights = sorted(w.bit_count() for w in enumerate_codewords(code) if w)
    assert weights[0] == 4


def test_min_distance_lk_plus5():
    assert min_distance(build_lk_plus(5)) == 6


@pytest.mark.parametrize("k,expected", [(4, 4), (5, 4), (6, 4), (7, 4), (8, 4), (9, 4), (10, 4)])
def test_min_distance_lk_family(k, expected):
    assert min_distance(build_lk(k)) == expected


@pytest.mark.parametrize("k,expected", [(4, 5), (5, 6), (6, 6), (7, 6), (8, 6), (9, 6), (10, 6)])
def test_min_distance_lk_plus_family(k, expected):
    assert min_distance(build_lk_plus(k)) == expected


def test_min_distance_stores_result():
    code = build_lk(4)
    assert code.d is None
    min_distance(code)
    assert code.d == 4


def test_dual_code_dimension():
    assert dual_code(build_lk(4)).k == 4


def test_dual_of_dual_spans_original():
    code = build_lk(4)
    double = dual_code(dual_code(code))
    stacked = gf2.vconcat(code.G, double.G)
    assert gf2.rank(stacked) == code.k


def test_dual_distance_lk4_by_independent_enumeration():
    code = build_lk(4)
    # oracle: span the 16 dual words directly from parity-check rows
    words = set()
    for mask in range(16):
        acc = 0
        for i in range(4):
            if (mask >> i) & 1:
                acc ^= code.H.bits[i]
        words.add(acc)
    expected = min(w.bit_count() for w in words if w)
    assert dual_distance(code) == expected == 4


def test_certify_sets_both_distances():
    code = certify(build_lk(5))
    assert code.d == 4
    assert code.d_dual is not None


def test_code_serialization_round_trip(tmp_path):
    code = certify(build_lk(4))
    save_code(code, str(tmp_path / "lk4"))
    loaded = load_code(str(tmp_path / "lk4"))
    assert loaded.G == code.G
    assert loaded.H == code.H
    assert (loaded.n, loaded.k, loaded.d, loaded.d_dual) == (8, 4, 4, 4)
