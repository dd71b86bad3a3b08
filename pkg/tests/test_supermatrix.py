import itertools

import pytest

from hdeform import presets
from hdeform.algebra import Element
from hdeform.errors import DimensionMismatch
from hdeform.scalar import Q, Q_INV
from hdeform.supermatrix import (
    MATRIX_NAMES, SuperMatrix, build_matrix, embed_R, embed_T1, embed_T2, kron, mat_mul,
    super_permutation,
)

H = presets.scalar_h_system()
A = H.alphabet
GRH = presets.build("GrH")
T = build_matrix("T_GrH")
PAIRS = [(1, 1), (1, 2), (2, 1), (2, 2)]


def M(name):
    return build_matrix(name, A)


def entry(m, row, col):
    return m[PAIRS.index(row), PAIRS.index(col)]


def test_embed_T1_examples():
    t1 = embed_T1(T)
    assert entry(t1, (2, 1), (1, 1)) == GRH.element("c")
    assert entry(t1, (2, 2), (1, 2)) == GRH.element("c")


def test_embed_entries_against_independent_enumeration():
    # parity p(1) = 0, p(2) = 1; signs from the index formulas written out directly
    par = {1: 0, 2: 1}
    names = {(1, 1): "alpha", (1, 2): "b", (2, 1): "c", (2, 2): "delta"}
    t1, t2 = embed_T1(T), embed_T2(T)
    for (i, j), (k, l) in itertools.product(PAIRS, PAIRS):
        s1 = (-1) ** (par[k] * (par[j] + par[l]))
        s2 = (-1) ** (par[i] * (par[j] + par[l]))
        e1 = GRH.element(names[i, k]).scale(s1) if j == l else Element.zero(GRH.alphabet)
        e2 = GRH.element(names[j, l]).scale(s2) if i == k else Element.zero(GRH.alphabet)
        assert entry(t1, (i, j), (k, l)) == e1
        assert entry(t2, (i, j), (k, l)) == e2


def test_embed_identity():
    assert embed_T2(M("I2")) == M("I4")
    assert embed_T1(M("I2")) == M("I4")
    with pytest.raises(DimensionMismatch):
        embed_T1(M("I4"))


def test_embed_R_placement():
    assert embed_R(M("I4"), 13, "ungraded") == M("I8")
    r = M("R_h")
    assert embed_R(r, 12, "ungraded") == kron(r, M("I2"))
    assert embed_R(r, 23, "ungraded") == kron(M("I2"), r)
    with pytest.raises(DimensionMismatch):
        embed_R(M("I2"), 12)
    with pytest.raises(ValueError):
        embed_R(r, 21)


def test_graded_R13_differs_only_on_odd_middle_index():
    r = M("R_h")
    graded, plain = embed_R(r, 13, "graded"), embed_R(r, 13, "ungraded")
    triples = list(itertools.product((1, 2), repeat=3))
    diffs = [(a, b) for a, b in itertools.product(range(8), range(8))
             if graded[a, b] != plain[a, b]]
    assert diffs
    assert all(triples[a][1] == 2 and triples[b][1] == 2 for a, b in diffs)


def test_graded_R13_is_conjugated_R23():
    p12 = kron(super_permutation(A), M("I2"))
    for name in ("R_q", "R_h", "R_q1"):
        r = M(name)
        assert mat_mul(mat_mul(p12, embed_R(r, 23, "graded")), p12) == embed_R(r, 13, "graded")


@pytest.mark.parametrize("convention", ["ungraded", "graded", "graded_leg"])
@pytest.mark.parametrize("slot", ["12", "13", "23"])
def test_embedding_is_multiplicative(convention, slot):
    a, b = M("R_q1"), M("R_h")
    lhs = mat_mul(embed_R(a, slot, convention), embed_R(b, slot, convention), H)
    assert lhs == embed_R(mat_mul(a, b, H), slot, convention)


def test_reference_entries():
    assert M("R_q")[1, 2] == Element.scalar(A, Q_INV - Q)
    assert M("R_h").entries[1] == [Element.parse(t, A) for t in ("-h", "-1", "0", "0")]
    assert M("R_q1") + M("R_q2") == M("R_q")


def test_g_inverse():
    assert mat_mul(M("g"), M("g_inv"), H) == M("I2")
    assert mat_mul(M("I4"), M("R_q")) == M("R_q")


def test_G_h():
    assert mat_mul(M("G_h"), M("G_minus_h"), H) == M("I4")
    assert M("G_minus_h") == M("G_h").flip_h()
    assert M("G_h").at_h_zero() == M("I4")


def test_R_h_involution_and_eigenvalues():
    r, one = M("R_h"), M("I4")
    assert mat_mul(r, r, H) == one
    assert mat_mul(r - one, r + one, H).is_zero()
    assert r.flip_h() == M("R_minus_h")
    assert r.flip_h().flip_h() == r


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(M("I2"), M("I4"))


def test_all_names_build():
    for name in MATRIX_NAMES:
        assert isinstance(build_matrix(name), SuperMatrix)
    with pytest.raises(KeyError):
        build_matrix("R_x")


def test_json_and_grid():
    r = M("R_h")
    assert SuperMatrix.from_json(r.to_json(), A) == r
    assert r.grid().splitlines()[3] == "[  0   h  -h   1 ]"
    assert M("R_q").limit_at_one() == SuperMatrix(
        [[2, 0, 0, 0], [0, -2, 0, 0], [0, 0, -2, 0], [0, 0, 0, 2]], A)
