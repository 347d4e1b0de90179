import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from supersatake import invariants as inv
from supersatake import spherical as sph
from supersatake.diagrams import DecoratedDiagram, enumerate_candidates, gradings, selection_rules
from supersatake.superalgebra import SuperMatrix, build_algebra

ADJ, TW, DT = inv.ActionKind.ADJOINT, inv.ActionKind.FORM_TWISTED, inv.ActionKind.D_TWISTED

# so(8) diagrams whose extra invariants are not visible on the natural module
# (triality images of the vector representation)
TRIALITY = {((0,) * 8, (), ((0, 2),)), ((0,) * 8, (), ((0, 3),)),
            ((0,) * 8, (0, 1, 2), ()), ((0,) * 8, (0, 1, 3), ())}


def M(grading, rows):
    return SuperMatrix.from_rows(grading, rows)


def test_gl11_odd_adjoint_invariant():
    d = DecoratedDiagram("gl", (0, 1), ())
    c = sph.MixtureVector.of({0: 2})
    gens = sph.mixed_generators(d.triple(), c)
    assert inv.annihilates(gens, ADJ, M((0, 1), [[0, 1], [-2, 0]]))


def test_gl2_even_twisted_invariant():
    d = DecoratedDiagram("gl", (0, 0), ())
    c = sph.MixtureVector.of({0: 2})
    gens = sph.mixed_generators(d.triple(), c, sph.SHAFT)
    I1 = inv.shaft_invariant(d, c)
    assert I1 == M((0, 0), [[F(1, 2), 0], [0, 1]])
    assert inv.annihilates(gens, TW, I1)
    # k is one-dimensional here, so e12 - e21 is invariant as well
    assert inv.solve_invariants(gens, TW).dimension == 2


def test_full_algebra_has_only_scalars():
    for g in [(0, 1), (0, 0, 1, 1), (0, 1, 0)]:
        alg = build_algebra("gl", g)
        assert inv.solve_invariants(alg.basis(), ADJ).dimension == 1
        assert inv.solve_invariants(alg.basis(), TW).dimension == 0


def test_act_rejects_inhomogeneous():
    x = M((0, 1), [[1, 1], [0, 0]])
    with pytest.raises(ValueError):
        inv.act(ADJ, x, x)


def test_shaft_blocks():
    assert inv.shaft_blocks(3, [1]) == [(3,), (1, 2), (0,)]
    assert inv.shaft_blocks(2, []) == [(2,), (1,), (0,)]


def shaft_diagrams(max_rank=4):
    return [c.diagram for c in enumerate_candidates("gl", max_rank, dedup=False)
            if c.satake and c.diagram.label == "shaft"]


@pytest.mark.parametrize("d", shaft_diagrams(4), ids=lambda d: f"{d.grading}{d.black}")
def test_shaft_invariant_annihilated(d):
    t = d.triple()
    rng = random.Random(11)
    for _ in range(2):
        c = sph.sample_mixture(t, rng)
        gens = sph.mixed_generators(t, c, sph.SHAFT)
        I = inv.shaft_invariant(d, c)
        assert inv.annihilates(gens, TW, I)
        assert inv.solve_invariants(gens, TW).contains(I)


def test_shaft_invariant_rejects_non_shaft():
    with pytest.raises(ValueError):
        inv.shaft_invariant(DecoratedDiagram("gl", (0, 0, 0), (), ((0, 1),)), {0: 1, 1: 1})


def test_gl31_example():
    d = DecoratedDiagram("gl", (0, 0, 1, 0), (1,), ((0, 2),))
    t = d.triple()
    c = sph.MixtureVector.of({0: 2, 2: -3}, t.tau)
    A = inv.gl_i_invariant(t, c)
    gens = sph.mixed_generators(t, c)
    assert inv.annihilates(gens, ADJ, A)
    assert inv.solve_invariants(sph.lie_closure(gens), ADJ).dimension == 2


def test_gl_adjoint_invariant_constraint():
    with pytest.raises(ValueError):
        inv.gl_adjoint_invariant(3, 1, 1, 1, {1: 1, 3: 1})
    A = inv.gl_adjoint_invariant(3, 1, 1, 2, {1: 1, 3: -2})
    assert A == M((0, 0, 0), [[3, 0, 1], [0, 1, 0], [-2, 0, 0]])


def test_gl_i_invariants_rank4():
    n = 0
    for cand in enumerate_candidates("gl", 4):
        if not (cand.satake and cand.diagram.label == "GL-I"):
            continue
        t = cand.triple
        c = sph.sample_mixture(t, random.Random(5))
        gens = sph.mixed_generators(t, c)
        assert inv.solve_invariants(gens, ADJ).dimension >= 2
        try:
            A = inv.gl_i_invariant(t, c)
        except ValueError:
            continue  # self-fixed middle node: solver only
        assert inv.annihilates(gens, ADJ, A)
        n += 1
    assert n > 0


def black_tail_cases():
    out = []
    for fam in ("osp-odd", "spo", "osp-even"):
        for rank in range(2, 5):
            for g in gradings(fam, rank, dedup=False):
                for black in (tuple(range(1, rank)), (0,) + tuple(range(2, rank))):
                    d = DecoratedDiagram(fam, g, black)
                    try:
                        inv.black_tail_layout(d)
                    except ValueError:
                        continue
                    if selection_rules(d).passes and d.triple().regular:
                        out.append(d)
    return out


@pytest.mark.parametrize("d", black_tail_cases(), ids=lambda d: f"{d.family}{d.grading}{d.black}")
def test_black_tail_invariant(d):
    t = d.triple()
    for cv in (3, F(-1, 2)):
        c = sph.MixtureVector.of({t.whites[0]: cv})
        gens = sph.mixed_generators(t, c)
        assert inv.annihilates(gens, ADJ, inv.black_tail_invariant(d, c))


def test_black_tail_layouts():
    assert inv.black_tail_layout(DecoratedDiagram("osp-odd", (0,) * 5, (1,))) == "white"
    with pytest.raises(ValueError):
        inv.black_tail_layout(DecoratedDiagram("gl", (0, 0, 0), (1,)))


@pytest.mark.parametrize("eps", [1, -1])
def test_extend_invariant_to_doubled_space(eps):
    for d in shaft_diagrams(3):
        if d.white_rank > 2:
            continue
        t = d.triple()
        c = sph.sample_mixture(t, random.Random(3))
        gens = sph.mixed_generators(t, c, sph.SHAFT)
        big = inv.extend_invariant(gens, inv.shaft_invariant(d, c), eps, mu=2, nu=5)
        assert inv.annihilates([inv.doubled(x, eps) for x in gens], ADJ, big)


def test_extend_invariant_validates():
    d = DecoratedDiagram("gl", (0, 0), ())
    c = sph.MixtureVector.of({0: 2})
    gens = sph.mixed_generators(d.triple(), c, sph.SHAFT)
    with pytest.raises(ValueError):
        inv.extend_invariant(gens, SuperMatrix.identity((0, 0)))
    with pytest.raises(ValueError):
        inv.extend_invariant(gens, inv.shaft_invariant(d, c), eps=2)


OSP = [c for fam in ("osp-odd", "spo", "osp-even") for c in enumerate_candidates(fam, 4 if fam == "osp-even" else 3)
       if c.satake and (c.diagram.grading, c.diagram.black, c.diagram.tau) not in TRIALITY]


@pytest.mark.parametrize("cand", OSP, ids=lambda c: f"{c.diagram.family}{c.diagram.grading}{c.diagram.black}{c.diagram.tau}")
def test_osp_k_has_more_invariants_than_g(cand):
    t, d = cand.triple, cand.diagram
    kind = DT if d.tau else ADJ
    c = sph.sample_mixture(t, random.Random(0))
    gdim = inv.solve_invariants(t.algebra.basis(), kind).dimension
    kdim = inv.solve_invariants(sph.mixed_generators(t, c), kind).dimension
    assert kdim > gdim


def test_triality_cases_are_not_detected_on_the_natural_module():
    for g, black, tau in sorted(TRIALITY):
        t = DecoratedDiagram("osp-even", g, black, tau).triple()
        kind = DT if tau else ADJ
        c = sph.sample_mixture(t, random.Random(0))
        assert inv.solve_invariants(sph.mixed_generators(t, c), kind).dimension == 1


GL3 = [c.triple for c in enumerate_candidates("gl", 3) if c.satake]


@given(st.sampled_from(GL3), st.sampled_from([ADJ, TW]), st.integers(0, 1000))
def test_generator_and_closure_invariants_agree(t, kind, seed):
    c = sph.sample_mixture(t, random.Random(seed))
    gens = sph.mixed_generators(t, c)
    a = inv.solve_invariants(gens, kind, "all")
    b = inv.solve_invariants(sph.lie_closure(gens), kind, "all")
    assert a.dimension == b.dimension
    assert all(b.contains(x) for x in a.basis)


@given(st.sampled_from(GL3), st.integers(0, 1000))
def test_solver_output_is_annihilated(t, seed):
    c = sph.sample_mixture(t, random.Random(seed))
    gens = sph.mixed_generators(t, c)
    for kind in (ADJ, TW):
        for A in inv.solve_invariants(gens, kind, "all").basis:
            assert inv.annihilates(gens, kind, A)
