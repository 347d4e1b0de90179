"""Spherical subalgebras generated by Levi parts and mixed generators."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact_linalg import EchelonBasis, as_rational
from .superalgebra import AlgebraData, SuperMatrix, cartan_dual, form_residual, super_bracket
from .weyl import TripleCandidate, adjacency

SAMPLE_VALUES = tuple(Fraction(x) for x in (1, -1, 2, -2, 3, -3)) + (Fraction(1, 2), Fraction(-1, 2))

STANDARD = "standard"
SHAFT = "shaft"


@dataclass(frozen=True)
class MixtureVector:
    values: tuple  # sorted (white node, Fraction) pairs
    tau_symmetric: bool = False

    @classmethod
    def of(cls, mapping: dict, tau: dict | None = None) -> "MixtureVector":
        vals = {int(k): as_rational(v) for k, v in mapping.items()}
        if any(v == 0 for v in vals.values()):
            raise ValueError("mixture parameters must be nonzero")
        sym = False
        if tau is not None:
            sym = all(vals[a] == vals[tau[a]] for a in vals if tau.get(a, a) in vals)
        return cls(tuple(sorted(vals.items())), sym)

    def __getitem__(self, node: int) -> Fraction:
        for k, v in self.values:
            if k == node:
                return v
        raise KeyError(node)

    def as_dict(self) -> dict:
        return dict(self.values)


def sample_mixture(t: TripleCandidate, rng: random.Random, tau_symmetric: bool = True) -> MixtureVector:
    """Random nonzero rationals, one per tau-orbit when tau_symmetric, avoiding repeats."""
    whites = t.whites
    orbits = []
    seen = set()
    for a in whites:
        if a in seen:
            continue
        orb = {a, t.tau[a]} if tau_symmetric else {a}
        seen |= orb
        orbits.append(sorted(orb))
    pool = list(SAMPLE_VALUES)
    rng.shuffle(pool)
    vals = {}
    for k, orb in enumerate(orbits):
        v = pool[k % len(pool)] * (1 + k // len(pool))
        for a in orb:
            vals[a] = v
    return MixtureVector.of(vals, t.tau)


# -- subalgebra bases ------------------------------------------------------

@dataclass
class SubalgebraBasis:
    generators: list
    basis: list  # homogeneous SuperMatrix elements
    echelon: EchelonBasis = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, x: SuperMatrix) -> bool:
        return self.echelon.contains(x.vector())

    def canonical_rows(self) -> list:
        return self.echelon.rows()


def _homogeneous(gens: Iterable[SuperMatrix]) -> list:
    out = []
    for g in gens:
        out.extend(p for _, p in sorted(g.homogeneous_parts().items()))
    return out


def span_basis(elems: Iterable[SuperMatrix], width: int) -> EchelonBasis:
    eb = EchelonBasis(width)
    for x in elems:
        eb.add(x.vector())
    return eb


def lie_closure(gens: Sequence[SuperMatrix], limit: int | None = None) -> SubalgebraBasis:
    """Smallest bracket-closed subspace containing ``gens``.

    Right-normed brackets [g1, [g2, ... [gk-1, gk]]] with generators g_i
    span the generated subalgebra, so it suffices to close under ad(g).
    Stops early once ``limit`` dimensions are reached.
    """
    hom = _homogeneous(gens)
    if not hom:
        raise ValueError("no generators")
    width = hom[0].n ** 2
    eb = EchelonBasis(width)
    basis, frontier = [], []
    for g in hom:
        if eb.add(g.vector()):
            basis.append(g)
            frontier.append(g)
    while frontier and (limit is None or len(basis) < limit):
        nxt = []
        for z in frontier:
            for g in hom:
                b = super_bracket(g, z)
                if b and eb.add(b.vector()):
                    basis.append(b)
                    nxt.append(b)
                    if limit is not None and len(basis) >= limit:
                        break
            if limit is not None and len(basis) >= limit:
                break
        frontier = nxt
    return SubalgebraBasis(list(gens), basis, eb)


@lru_cache(maxsize=None)
def _derived_dimension(family: str, grading: tuple) -> int:
    from .diagrams import algebra_for
    alg = algebra_for(family, grading)
    gens = []
    for r in alg.simple_roots:
        gens += [alg.e(r), alg.f(r)]
    return lie_closure(gens).dimension


def derived_dimension(alg: AlgebraData) -> int:
    """Dimension of [g, g], the subalgebra generated by the simple root vectors."""
    return _derived_dimension(alg.family, alg.grading)


def in_algebra(alg: AlgebraData, x: SuperMatrix) -> bool:
    if alg.family == "gl":
        return True
    return not form_residual(alg, x)


# -- mixed generators --------------------------------------------------------

def shaft_root_vectors(alg: AlgebraData, i: int):
    """Simple root vectors e = (-1)^{p_i} e_{i,i+1}, f = e_{i+1,i} (0-based node i)."""
    g = alg.grading
    e = SuperMatrix.unit(g, i, i + 1, -1 if g[i] else 1)
    f = SuperMatrix.unit(g, i + 1, i)
    return e, f


def shaft_sign(parity: int, grade: int) -> int:
    """Sign in x = e + sign * c * f for the shaft normalization.

    Odd roots take +1.  An even root at v_i, v_{i+1} takes -(-1)^{deg v_i},
    so that up to the overall factor of e the generator is always
    e_{i,i+1} - c f; this is the choice under which I_l is invariant.
    """
    if parity:
        return 1
    return 1 if grade else -1


def levi_generators(alg: AlgebraData, black: Iterable[int], normalization: str = STANDARD) -> list:
    gens = []
    for b in sorted(black):
        r = alg.simple_roots[b]
        if normalization == SHAFT:
            e, f = shaft_root_vectors(alg, b)
        else:
            e, f = alg.e(r), alg.f(r)
        gens += [e, f, cartan_dual(alg, r.weight)]
    return gens


def mixed_generators(t: TripleCandidate, c: MixtureVector, normalization: str = STANDARD) -> list:
    """Generators of k: e, f, h for black nodes and x_alpha, y_alpha for white nodes."""
    alg = t.algebra
    whites = t.whites
    cmap = c.as_dict()
    missing = [a for a in whites if a not in cmap]
    if missing:
        raise ValueError(f"missing mixture parameters for nodes {missing}")
    if normalization == SHAFT and (alg.family != "gl" or any(t.tau[a] != a for a in whites)):
        raise ValueError("shaft normalization applies to gl diagrams with tau = id")
    gens = levi_generators(alg, t.levi.black, normalization)
    adj = adjacency(alg)
    for a in whites:
        ra = alg.simple_roots[a]
        tilde = t.tildes[a]
        if normalization == SHAFT:
            e, f = shaft_root_vectors(alg, a)
            for b in sorted(adj[a] & set(t.levi.black)):
                f = super_bracket(shaft_root_vectors(alg, b)[1], f)
            x = e + (shaft_sign(ra.parity, alg.grading[a]) * cmap[a]) * f
        else:
            x = alg.e(ra) + cmap[a] * alg.f(tilde)
        gens.append(x)
        y = cartan_dual(alg, ra.weight) - cartan_dual(alg, tilde)
        if y:
            gens.append(y)
    return gens


def build_k(t: TripleCandidate, c: MixtureVector, normalization: str = STANDARD) -> SubalgebraBasis:
    return lie_closure(mixed_generators(t, c, normalization), limit=derived_dimension(t.algebra))


def is_spherical(k: SubalgebraBasis, alg: AlgebraData) -> bool:
    bad = [x for x in k.basis if not in_algebra(alg, x)]
    if bad:
        raise ValueError("k is not contained in g")
    eb = span_basis(k.basis, alg.N ** 2)
    for x in alg.borel_plus():
        eb.add(x.vector())
    return len(eb) == alg.dimension


def lemma_trivial(k: SubalgebraBasis, t: TripleCandidate) -> bool:
    """Some white alpha has both e_alpha and f_alpha in k."""
    alg = t.algebra
    return any(k.contains(alg.e(alg.simple_roots[a])) and k.contains(alg.f(alg.simple_roots[a]))
               for a in t.whites)


def is_trivial(k: SubalgebraBasis, t: TripleCandidate) -> bool:
    """k contains [g, g]; checked against the root-vector criterion."""
    by_dim = k.dimension >= derived_dimension(t.algebra)
    by_lemma = lemma_trivial(k, t)
    if by_dim != by_lemma:
        raise AssertionError("dimension and root-vector triviality criteria disagree")
    return by_dim


@dataclass
class SampleRow:
    sample_id: int
    c_vector: dict
    dim_g: int
    dim_derived: int
    dim_k: int
    spherical: bool
    proper: bool
    lemma_trivial: bool

    @property
    def codimension(self) -> int:
        return self.dim_derived - self.dim_k

    def to_dict(self) -> dict:
        return {
            "sample_id": self.sample_id,
            "c_vector": {str(k): str(v) for k, v in sorted(self.c_vector.items())},
            "dim_g": self.dim_g,
            "dim_derived": self.dim_derived,
            "dim_k": self.dim_k,
            "codimension": self.codimension,
            "spherical": self.spherical,
            "proper": self.proper,
        }


@dataclass
class NontrivialityReport:
    rows: list

    @property
    def all_proper(self) -> bool:
        return all(r.proper and r.spherical for r in self.rows)

    @property
    def all_trivial(self) -> bool:
        return all(not r.proper for r in self.rows)

    @property
    def mixed(self) -> bool:
        return not self.all_proper and not self.all_trivial

    @property
    def all_spherical(self) -> bool:
        return all(r.spherical for r in self.rows)

    def verdict(self) -> str:
        if self.all_proper:
            return "proper"
        if self.all_trivial:
            return "trivial"
        return "mixed"


def evaluate_sample(t: TripleCandidate, c: MixtureVector, sample_id: int = 0,
                    normalization: str = STANDARD) -> SampleRow:
    alg = t.algebra
    k = build_k(t, c, normalization)
    dd = derived_dimension(alg)
    triv_lemma = lemma_trivial(k, t)
    return SampleRow(sample_id, c.as_dict(), alg.dimension, dd, k.dimension,
                     is_spherical(k, alg), k.dimension < dd, triv_lemma)


def verify_nontrivial(t: TripleCandidate, samples: int = 3, seed: int = 0,
                      tau_symmetric: bool = True) -> NontrivialityReport:
    rng = random.Random(seed)
    rows = []
    for s in range(samples):
        c = sample_mixture(t, rng, tau_symmetric)
        rows.append(evaluate_sample(t, c, s))
    return NontrivialityReport(rows)


def center_in_derived(alg: AlgebraData) -> list:
    """Central elements of g that lie in [g, g] (the identity of gl(m|m))."""
    if alg.family != "gl":
        return []
    sdim = sum(1 if p == 0 else -1 for p in alg.grading)
    return [SuperMatrix.identity(alg.grading)] if sdim == 0 else []


@dataclass
class Codimensions:
    dim_g: int
    dim_derived: int
    dim_k: int
    dim_k_plus_center: int

    @property
    def in_derived(self) -> int:
        return self.dim_derived - self.dim_k

    @property
    def modulo_center(self) -> int:
        """Codimension of the image of k in [g, g] modulo its center."""
        return self.dim_derived - self.dim_k_plus_center

    def to_dict(self) -> dict:
        return {"dim_g": self.dim_g, "dim_derived": self.dim_derived, "dim_k": self.dim_k,
                "codim_derived": self.in_derived, "codim_mod_center": self.modulo_center}


def codimensions(t: TripleCandidate, c: MixtureVector, normalization: str = STANDARD) -> Codimensions:
    alg = t.algebra
    k = build_k(t, c, normalization)
    eb = span_basis(k.basis, alg.N ** 2)
    for z in center_in_derived(alg):
        eb.add(z.vector())
    return Codimensions(alg.dimension, derived_dimension(alg), k.dimension, len(eb))
