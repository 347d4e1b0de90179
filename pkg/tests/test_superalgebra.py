from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from supersatake.diagrams import gradings
from supersatake.superalgebra import (FAMILIES, GradingError, SuperMatrix, TRANSPOSE_ALT, TRANSPOSE_FORM,
                                      build_algebra, cartan_dual, evaluate_weight, family_size,
                                      form_residual, invariance_algebra_dimension, super_bracket,
                                      super_transpose)

ALL = [(fam, g) for fam in FAMILIES for r in range(1, 4) for g in gradings(fam, r, dedup=False)
       if not (fam == "osp-even" and r < 2)]


def orthogonal_count(fam, g):
    """Number of basis vectors on which the form is orthogonal in the super sense."""
    n = len(g) // 2
    if fam == "osp-odd":
        return g.count(0)
    last = g[n - 1]
    target = last if fam == "osp-even" else 1 - last
    return sum(1 for p in g if p == target)


def expected_dim(fam, g):
    N = len(g)
    if fam == "gl":
        return N * N
    s = orthogonal_count(fam, g)
    k = N - s
    return s * (s - 1) // 2 + k * (k + 1) // 2 + s * k


@pytest.mark.parametrize("fam,g", ALL)
def test_dimension_formula(fam, g):
    alg = build_algebra(fam, g)
    assert alg.dimension == expected_dim(fam, g)
    assert alg.rank == len(alg.simple_roots)
    if fam != "gl":
        assert invariance_algebra_dimension(alg) == alg.dimension


@pytest.mark.parametrize("fam,g", ALL)
def test_basis_preserves_form_and_has_declared_weights(fam, g):
    alg = build_algebra(fam, g)
    for r in alg.all_roots:
        x = alg.e(r)
        if fam != "gl":
            assert not form_residual(alg, x)
        assert x.parity() == r.parity
        for h in alg.cartan_basis:
            # [h, e_r] = r(h) e_r
            assert super_bracket(h, x) == evaluate_weight(alg, r.weight, h) * x


def test_gl11_by_hand():
    alg = build_algebra("gl", (0, 1))
    (a,) = alg.simple_roots
    assert a.parity == 1 and alg.ip(a.weight, a.weight) == 0
    e, f = alg.e(a), alg.f(a)
    assert super_bracket(e, f) == SuperMatrix.identity((0, 1))  # odd: e f + f e


def test_simple_root_parities_gl22():
    alg = build_algebra("gl", (0, 0, 1, 1))
    assert [r.parity for r in alg.simple_roots] == [0, 1, 0]


def test_bad_gradings():
    with pytest.raises(GradingError):
        build_algebra("osp-odd", (0, 1, 1))
    with pytest.raises(GradingError):
        build_algebra("osp-even", (0, 1))
    with pytest.raises(GradingError):
        build_algebra("spo", (0, 1))
    with pytest.raises(ValueError):
        build_algebra("sl", (0, 0))


def test_family_size():
    assert [family_size(f, 3) for f in FAMILIES] == [4, 7, 6, 6]


def test_cartan_dual_pairs_with_weights():
    alg = build_algebra("osp-odd", (0, 1, 0, 1, 0))
    for a in alg.simple_roots:
        for b in alg.simple_roots:
            assert evaluate_weight(alg, a.weight, cartan_dual(alg, b.weight)) == alg.ip(a.weight, b.weight)


# -- property tests ------------------------------------------------------------

grading_st = st.sampled_from([(0, 1, 0), (0, 0, 1, 1), (1, 0, 1, 0), (0, 1), (0, 0, 0)])
entry_st = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def homogeneous(draw, grading, parity=None):
    N = len(grading)
    p = draw(st.sampled_from((0, 1))) if parity is None else parity
    cells = [(i, j) for i in range(N) for j in range(N) if (grading[i] + grading[j]) % 2 == p]
    vals = draw(st.lists(entry_st, min_size=len(cells), max_size=len(cells)))
    return SuperMatrix(grading, {c: v for c, v in zip(cells, vals) if v})


@st.composite
def triple_of_matrices(draw):
    g = draw(grading_st)
    return g, draw(homogeneous(g)), draw(homogeneous(g)), draw(homogeneous(g))


def par(x):
    return x.parity() or 0


@given(triple_of_matrices())
def test_super_antisymmetry_and_jacobi(data):
    _, x, y, z = data
    s = -1 if par(x) * par(y) else 1
    assert super_bracket(x, y) == -s * super_bracket(y, x)
    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    lhs = super_bracket(x, super_bracket(y, z))
    rhs = super_bracket(super_bracket(x, y), z) + s * super_bracket(y, super_bracket(x, z))
    assert lhs == rhs


@given(triple_of_matrices(), st.sampled_from([TRANSPOSE_FORM, TRANSPOSE_ALT]))
def test_super_transpose_reverses_products(data, variant):
    _, x, y, _ = data
    s = -1 if par(x) * par(y) else 1
    st_ = lambda m: super_transpose(m, variant)
    assert st_(x @ y) == s * (st_(y) @ st_(x))
    # so x -> -x^t is a Lie superalgebra homomorphism
    assert -st_(super_bracket(x, y)) == super_bracket(-st_(x), -st_(y))


@given(st.sampled_from(ALL), st.data())
def test_brackets_stay_in_osp(case, data):
    fam, g = case
    alg = build_algebra(fam, g)
    basis = alg.basis()
    x = data.draw(st.sampled_from(basis))
    y = data.draw(st.sampled_from(basis))
    b = super_bracket(x, y)
    if fam != "gl":
        assert not form_residual(alg, b)
    if b:
        assert b.parity() == (par(x) + par(y)) % 2
