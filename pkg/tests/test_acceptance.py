"""The eleven acceptance criteria; each records one PASS/FAIL line in the run summary."""
import itertools
import random
import time
from fractions import Fraction as F

import pytest

from conftest import record
from supersatake import invariants as inv
from supersatake import spherical as sph
from supersatake.diagrams import (DecoratedDiagram, algebra_for, enumerate_candidates, gradings, min_rank,
                                  selection_rules, shaft_grammar)
from supersatake.superalgebra import FAMILIES, SuperMatrix, super_bracket, super_transpose
from supersatake.weyl import (LeviChoice, components, component_kind, is_regular, module_highest_weight_oracle,
                              polarization_symmetric, simple_weights, supersymmetric_report, tilde_root,
                              weyl_operator)

ADJ, TW = inv.ActionKind.ADJOINT, inv.ActionKind.FORM_TWISTED


def ms(t0):
    return (time.perf_counter() - t0) * 1000


def shaft_diagrams(max_white=3, max_rank=7):
    """Every shaft Satake diagram of bounded white rank, over all gradings."""
    out = []
    for r in range(1, max_rank + 1):
        for g in itertools.product((0, 1), repeat=r + 1):
            for nb in range(max(0, r - max_white), r):
                for black in itertools.combinations(range(r), nb):
                    d = DecoratedDiagram("gl", g, black)
                    if shaft_grammar(d) and selection_rules(d).passes:
                        out.append(d)
    return out


SHAFT = shaft_diagrams()


def test_criterion_1_gl11():
    c = F(2)
    odd = DecoratedDiagram("gl", (0, 1), ()).triple()
    gens = sph.mixed_generators(odd, sph.MixtureVector.of({0: c}))
    A = SuperMatrix.from_rows((0, 1), [[0, 1], [-c, 0]])
    t0 = time.perf_counter()
    odd_ok = inv.annihilates(gens, ADJ, A)
    t_odd = ms(t0)
    # even alpha, x = e12 + c e21: the twisted invariant is diagonal, I_1 = diag(-1/c, 1)
    x = SuperMatrix.from_rows((0, 0), [[0, 1], [c, 0]])
    I1 = SuperMatrix.from_rows((0, 0), [[-1 / c, 0], [0, 1]])
    literal = SuperMatrix.from_rows((0, 0), [[0, 1], [c, 0]])
    t0 = time.perf_counter()
    even_ok = inv.annihilates([x], TW, I1)
    t_even = ms(t0)
    literal_ok = inv.annihilates([x], TW, literal)
    record(1, odd_ok and even_ok,
           f"odd: e12 - c e21 adjoint-invariant ({t_odd:.2f} ms); even: I_1 = diag(-1/c, 1) twisted-invariant "
           f"({t_even:.2f} ms); literal e12 + c e21 twisted-invariant: {literal_ok}")
    assert odd_ok and even_ok and not literal_ok


def gl22_literal(c2):
    g = (0, 0, 1, 1)
    t = DecoratedDiagram("gl", g, (0, 2)).triple()
    x2 = SuperMatrix.unit(g, 1, 2) + c2 * SuperMatrix.unit(g, 3, 0)
    gens = sph.levi_generators(t.algebra, t.levi.black) + [x2]
    A = SuperMatrix.from_rows(g, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -c2], [0, 0, c2, 0]])
    return gens, A


@pytest.mark.xfail(strict=True, reason="the literal matrix is not a twisted invariant for any super-transpose")
def test_criterion_2_gl22_literal():
    gens, A = gl22_literal(F(3))
    t0 = time.perf_counter()
    ok = inv.annihilates(gens, TW, A)
    el = ms(t0)
    dims = [inv.solve_invariants(gens, TW, p).dimension for p in ("even", "odd")]
    record(2, ok, f"literal e12 - e21 - c2(e34 - e43) twisted-invariant: {ok} ({el:.2f} ms); "
                  f"solver twisted invariants of this k (even, odd) = {tuple(dims)}")
    assert ok


def test_criterion_3_shaft_invariants():
    t0 = time.perf_counter()
    n = bad = 0
    for d in SHAFT:
        t = d.triple()
        rng = random.Random(3)
        for _ in range(3):
            c = sph.sample_mixture(t, rng)
            gens = sph.mixed_generators(t, c, sph.SHAFT)
            I = inv.shaft_invariant(d, c)
            n += 1
            bad += not inv.solve_invariants(gens, TW).contains(I)
    el = time.perf_counter() - t0
    record(3, bad == 0 and el < 60, f"{len(SHAFT)} shaft diagrams x 3 samples, {n - bad}/{n} memberships ({el:.1f} s)")
    assert bad == 0


def test_criterion_4_gl31_example():
    t0 = time.perf_counter()
    d = DecoratedDiagram("gl", (0, 0, 1, 0), (1,), ((0, 2),))
    t = d.triple()
    c = sph.MixtureVector.of({0: 2, 2: 2}, t.tau)
    gens = sph.mixed_generators(t, c)
    A = inv.gl_i_invariant(t, c)
    ok = inv.annihilates(gens, ADJ, A)
    kdim = inv.solve_invariants(gens, ADJ).dimension
    gdim = inv.solve_invariants(t.algebra.basis(), ADJ).dimension
    el = ms(t0)
    record(4, ok and kdim >= 2 and gdim == 1 and el < 1000,
           f"A adjoint-invariant: {ok}; dim invariants k = {kdim}, g = {gdim} ({el:.0f} ms)")
    assert ok and kdim >= 2 and gdim == 1


def criterion5_rows():
    rows = []
    scopes = [("gl", 4)] + [(f, 3) for f in ("osp-odd", "osp-even", "spo")]
    for fam, rank in scopes:
        for cand in enumerate_candidates(fam, rank, dedup=False):
            rep = sph.verify_nontrivial(cand.triple, 3, seed=2024, tau_symmetric=True)
            rows.append((cand, rep))
    return rows


@pytest.fixture(scope="module")
def crit5():
    t0 = time.perf_counter()
    rows = criterion5_rows()
    return rows, time.perf_counter() - t0


def test_criterion_5_rules_match_computation(crit5):
    rows, el = crit5
    disagree = [c.diagram for c, rep in rows
                if rep.verdict() != ("proper" if c.satake else "trivial")]
    mixed = sum(rep.mixed for _, rep in rows)
    acc = sum(c.satake for c, _ in rows)
    record(5, not disagree and el < 600,
           f"{len(rows)} candidates ({acc} accepted), {len(disagree)} disagreements, {mixed} mixed ({el:.0f} s)")
    assert not disagree


def test_criterion_6_sphericity(crit5):
    rows, _ = crit5
    bad = [c.diagram for c, rep in rows if not rep.all_spherical]
    record(6, not bad, f"dim(k + b+) = dim g for {len(rows) * 3 - len(bad) * 3}/{len(rows) * 3} constructed k")
    assert not bad


def literal_irregular(alg, comp):
    n = alg.rank
    return alg.shape == "D" and comp == tuple(range(comp[0], n - 1)) and not polarization_symmetric(alg, comp)


def connected_levis(fam, max_rank):
    for r in range(min_rank(fam), max_rank + 1):
        for g in gradings(fam, r, dedup=False):
            alg = algebra_for(fam, g)
            for k in range(1, r + 1):
                for bl in itertools.combinations(range(r), k):
                    if len(components(alg, bl)) == 1:
                        yield alg, bl


def test_criterion_7_no_irregular_satake():
    t0 = time.perf_counter()
    irregular_accepted = irregular_total = 0
    for fam in ("osp-even", "osp-odd", "spo"):
        for cand in enumerate_candidates(fam, 4, dedup=False):
            if not cand.triple.regular:
                irregular_total += 1
                irregular_accepted += cand.satake
    corrected_bad = sum((not is_regular(alg, LeviChoice.of(bl))) !=
                        (component_kind(alg, bl) == "A" and not polarization_symmetric(alg, bl))
                        for fam in ("osp-even", "osp-odd", "spo") for alg, bl in connected_levis(fam, 4))
    el = time.perf_counter() - t0
    record(7, irregular_accepted == 0 and corrected_bad == 0,
           f"irregular super-symmetric triples {irregular_total}, accepted {irregular_accepted}; "
           f"irregular <=> non-symmetric gl-type chain: {corrected_bad} mismatches ({el:.1f} s)")
    assert irregular_accepted == 0 and corrected_bad == 0


@pytest.mark.xfail(strict=True, reason="irregular connected levis also occur outside the stated D pattern")
def test_criterion_7_literal_characterization():
    mism = {}
    for fam in ("osp-even", "osp-odd", "spo"):
        mism[fam] = sum((not is_regular(alg, LeviChoice.of(bl))) != literal_irregular(alg, bl)
                        for alg, bl in connected_levis(fam, 4))
    record(7, not any(mism.values()),
           "literal 'irregular iff shape D, chain ending at the tail, non-symmetric' mismatches: "
           + ", ".join(f"{k} {v}" for k, v in mism.items()))
    assert mism["osp-even"] == 0


def test_criterion_8_weyl_operator():
    t0 = time.perf_counter()
    n = bad = 0
    for fam in FAMILIES:
        for r in range(min_rank(fam), 7):
            for g in gradings(fam, r, dedup=False):
                alg = algebra_for(fam, g)
                w = weyl_operator(alg)
                roots = {x.weight for x in alg.all_roots}
                ok = ((w @ w).is_identity() and {w(x) for x in roots} == roots
                      and sorted(tuple(-y for y in w(s)) for s in simple_weights(alg)) == sorted(simple_weights(alg)))
                n += 1
                bad += not ok
    tn = tbad = 0
    for fam in FAMILIES:
        for cand in enumerate_candidates(fam, 4):
            if cand.satake and cand.triple.regular:
                tn += 1
                tbad += not supersymmetric_report(cand.triple).theta_ok
    el = time.perf_counter() - t0
    record(8, bad == 0 and tbad == 0,
           f"w_g checks {n - bad}/{n} algebras (rank <= 6); theta involutive isometry {tn - tbad}/{tn} "
           f"accepted triples (rank <= 4) ({el:.1f} s)")
    assert bad == 0 and tbad == 0


def test_criterion_9_oracle_agreement():
    t0 = time.perf_counter()
    n = bad = 0
    for fam in FAMILIES:
        for cand in enumerate_candidates(fam, 5):
            t = cand.triple
            if not t.regular:
                continue
            for a in t.whites:
                n += 1
                hw = module_highest_weight_oracle(t.algebra, t.levi, t.algebra.simple_roots[t.tau[a]].weight)
                bad += tilde_root(t.algebra, t.levi, t.tau, a) != hw
    el = time.perf_counter() - t0
    record(9, bad == 0, f"{n - bad}/{n} white nodes of regular triples, rank <= 5 ({el:.0f} s)")
    assert bad == 0


def test_criterion_10_transposition_law():
    ds = [d for d in SHAFT if all(d.grading[b] == 0 and d.grading[b + 1] == 0 for b in d.black)]
    n = bad = 0
    for d in ds:
        t = d.triple()
        rng = random.Random(5)
        for _ in range(3):
            c = sph.sample_mixture(t, rng)
            cp = sph.MixtureVector.of({a: 1 / v for a, v in c.as_dict().items()})
            k = sph.lie_closure(sph.mixed_generators(t, c, sph.SHAFT))
            kp = sph.lie_closure(sph.mixed_generators(t, cp, sph.SHAFT))
            n += 1
            bad += not all(kp.contains(super_transpose(x)) for x in k.basis)
    record(10, bad == 0 and n > 0, f"{len(ds)} diagrams x 3 samples, k(c)^t in k(1/c): {n - bad}/{n}")
    assert bad == 0 and n > 0


def test_criterion_11_codimensions():
    notes, ok = [], True
    for g, black, c, stated in (((0, 1), (), {0: 2}, 1), ((0, 0, 1, 1), (0, 2), {1: 3}, 3)):
        t = DecoratedDiagram("gl", g, black).triple()
        mv = sph.MixtureVector.of(c)
        row = sph.evaluate_sample(t, mv)
        cod = sph.codimensions(t, mv)
        ok &= row.proper and row.spherical
        flag = "" if cod.in_derived == stated else " [compatibility note: differs from the stated value]"
        notes.append(f"gl{g}: codim {cod.in_derived} in [g,g], {cod.modulo_center} modulo center, "
                     f"stated {stated}{flag}")
    record(11, ok, "proper + spherical; " + "; ".join(notes))
    assert ok
