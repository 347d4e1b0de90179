"""Weyl operators, regularity of Levi choices, and super-symmetric triples.

Weights are integer tuples in the basic-weight coordinates of the algebra
(``zeta_1..zeta_N`` for gl, ``zeta_1..zeta_n`` for the orthosymplectic
families).  Simple roots are referred to by their 0-based node index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .exact_linalg import solve_combination
from .superalgebra import AlgebraData, super_bracket


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix acting on weight coordinates: (Mw)_i = sum_j M[i][j] w_j."""

    matrix: tuple

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]]) -> "LatticeMap":
        """Build from the images of the coordinate vectors."""
        n = len(images)
        return cls(tuple(tuple(images[j][i] for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, w: Sequence[int]) -> tuple:
        return tuple(sum(a * b for a, b in zip(row, w)) for row in self.matrix)

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        n = self.dim
        return LatticeMap(tuple(tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                                      for j in range(n)) for i in range(n)))

    def __neg__(self):
        return LatticeMap(tuple(tuple(-x for x in row) for row in self.matrix))

    def is_identity(self) -> bool:
        return self == LatticeMap.identity(self.dim)


def neg(w: Sequence[int]) -> tuple:
    return tuple(-x for x in w)


def add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def weight_parity(alg: AlgebraData, w: Sequence[int]) -> int:
    """Parity of a weight: basic weights with odd multiplicity contribute their degree."""
    if alg.family == "gl":
        degs = alg.grading
    else:
        degs = alg.grading[: alg.rank]
    return sum(p for p, x in zip(degs, w) if x % 2) % 2


def simple_weights(alg: AlgebraData) -> list:
    return [r.weight for r in alg.simple_roots]


def adjacency(alg: AlgebraData) -> dict:
    """Node links: distinct simple roots with nonzero inner product."""
    ws = simple_weights(alg)
    adj = {i: set() for i in range(len(ws))}
    for i, j in combinations(range(len(ws)), 2):
        if alg.ip(ws[i], ws[j]):
            adj[i].add(j)
            adj[j].add(i)
    return adj


def components(alg: AlgebraData, nodes: Iterable[int]) -> list:
    """Connected components of a node subset, each a sorted tuple."""
    nodes = set(nodes)
    adj = adjacency(alg)
    out, seen = [], set()
    for s in sorted(nodes):
        if s in seen:
            continue
        comp, stack = set(), [s]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(u for u in adj[v] if u in nodes and u not in comp)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return out


def tail_nodes(alg: AlgebraData) -> tuple:
    n = alg.rank
    if alg.shape == "A":
        return ()
    if alg.shape == "D":
        return (n - 2, n - 1)
    return (n - 1,)


def component_kind(alg: AlgebraData, comp: Sequence[int]) -> str:
    """'A' for a general-linear chain, 'T' for a component carrying the tail."""
    tail = tail_nodes(alg)
    if alg.shape in ("B", "C") and tail[0] in comp:
        return "T"
    if alg.shape == "D" and all(t in comp for t in tail):
        return "T"
    return "A"


def _chain_order(alg: AlgebraData, comp: Sequence[int]) -> list:
    adj = adjacency(alg)
    sub_adj = {v: [u for u in adj[v] if u in comp] for v in comp}
    if len(comp) == 1:
        return list(comp)
    ends = [v for v in comp if len(sub_adj[v]) == 1]
    if len(ends) != 2:
        raise ValueError(f"component {comp} is not a chain")
    order, prev, cur = [ends[0]], None, ends[0]
    while len(order) < len(comp):
        nxt = [u for u in sub_adj[cur] if u != prev][0]
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _signed_basic(w: Sequence[int]):
    nz = [(i, x) for i, x in enumerate(w) if x]
    if len(nz) == 1 and abs(nz[0][1]) == 1:
        return nz[0]
    return None


def natural_weights(alg: AlgebraData, comp: Sequence[int]) -> list:
    """Signed basic weights u_1..u_{r+1} with beta_j = u_j - u_{j+1} along the chain."""
    order = _chain_order(alg, comp)
    ws = [alg.simple_roots[i].weight for i in order]
    terms = [(i, x) for i, x in enumerate(ws[0]) if x]
    if len(ws) > 1:
        shared = {i for i, x in enumerate(ws[1]) if x}
        start = [t for t in terms if t[0] not in shared]
    else:
        start = [t for t in terms if t[1] > 0][:1]
    if len(start) != 1:
        raise ValueError("chain does not come from a natural module")
    i0, x0 = start[0]
    u = [tuple(x0 if k == i0 else 0 for k in range(alg.weight_dim))]
    for b in ws:
        nxt = sub(u[-1], b)
        if _signed_basic(nxt) is None:
            raise ValueError("chain does not come from a natural module")
        u.append(nxt)
    return u


def component_support(alg: AlgebraData, comp: Sequence[int]) -> list:
    """Coordinates of basic weights touched by the component's roots."""
    supp = set()
    for i in comp:
        supp |= {k for k, x in enumerate(alg.simple_roots[i].weight) if x}
    return sorted(supp)


def component_operator(alg: AlgebraData, comp: Sequence[int]) -> LatticeMap:
    n = alg.weight_dim
    images = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if component_kind(alg, comp) == "T":
        for k in component_support(alg, comp):
            images[k] = tuple(-int(i == k) for i in range(n))
        return LatticeMap.from_images(images)
    u = natural_weights(alg, comp)
    r = len(u)
    for j, uj in enumerate(u):
        k, s = _signed_basic(uj)
        # zeta_k = s * u_j  maps to  s * u_{r-1-j}
        images[k] = tuple(s * x for x in u[r - 1 - j])
    return LatticeMap.from_images(images)


def weyl_operator(alg: AlgebraData) -> LatticeMap:
    n = alg.weight_dim
    if alg.family == "gl":
        return LatticeMap.from_images([tuple(int(j == n - 1 - i) for j in range(n)) for i in range(n)])
    return -LatticeMap.identity(n)


@dataclass(frozen=True)
class LeviChoice:
    black: frozenset

    @classmethod
    def of(cls, nodes: Iterable[int]) -> "LeviChoice":
        return cls(frozenset(nodes))

    def whites(self, rank: int) -> list:
        return [i for i in range(rank) if i not in self.black]


def weyl_operator_levi(alg: AlgebraData, levi: LeviChoice) -> LatticeMap:
    w = LatticeMap.identity(alg.weight_dim)
    for comp in components(alg, levi.black):
        w = w @ component_operator(alg, comp)
    return w


def is_regular(alg: AlgebraData, levi: LeviChoice) -> bool:
    w = weyl_operator_levi(alg, levi)
    return all(alg.is_root(w(r.weight)) for r in alg.all_roots)


def polarization_symmetric(alg: AlgebraData, comp: Sequence[int]) -> bool:
    """Whether the grading on the natural weights of a chain component is palindromic."""
    u = natural_weights(alg, comp)
    par = [weight_parity(alg, x) for x in u]
    return par == par[::-1]


# -- module oracle ---------------------------------------------------------

@dataclass(frozen=True)
class ModuleData:
    weights: frozenset
    highest: tuple
    lowest: tuple

    @property
    def dim(self) -> int:
        return len(self.weights)


def _height(alg: AlgebraData, w, base) -> Fraction:
    coeffs = solve_combination([list(b) for b in base], list(w)) if base else []
    if coeffs is None:
        raise ValueError("weight difference outside the Levi root lattice")
    return sum(coeffs, Fraction(0))


def generated_module(alg: AlgebraData, black: Iterable[int], root_weight: Sequence[int]) -> ModuleData:
    """The l-submodule of g generated by the root vector of ``root_weight``.

    Root spaces are one-dimensional, so the module is spanned by the root
    vectors reachable by single nonzero brackets with e_beta, f_beta.
    """
    black = sorted(black)
    start = tuple(root_weight)
    ops = []
    for b in black:
        r = alg.simple_roots[b]
        ops.append((r.weight, alg.e(r)))
        ops.append((neg(r.weight), alg.f(r)))
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        vec = alg.root_vectors[v]
        for dw, op in ops:
            w = add(v, dw)
            if w in seen or not any(w):
                continue
            if not alg.is_root(w):
                continue
            if super_bracket(op, vec):
                seen.add(w)
                queue.append(w)
    base = [alg.simple_roots[b].weight for b in black]
    heights = {w: _height(alg, sub(w, start), base) for w in seen}
    top = max(heights.values())
    bottom = min(heights.values())
    hi = [w for w, h in heights.items() if h == top]
    lo = [w for w, h in heights.items() if h == bottom]
    if len(hi) != 1 or len(lo) != 1:
        raise ValueError("generated module has no unique extremal weight")
    return ModuleData(frozenset(seen), hi[0], lo[0])


def module_highest_weight_oracle(alg: AlgebraData, levi: LeviChoice, root_weight) -> tuple:
    return generated_module(alg, levi.black, root_weight).highest


# -- triples ---------------------------------------------------------------

class IrregularLevi(ValueError):
    pass


def tilde_root(alg: AlgebraData, levi: LeviChoice, tau: dict, alpha: int) -> tuple:
    """w_l(tau(alpha)) for a white node alpha; only defined for regular levi."""
    if not is_regular(alg, levi):
        raise IrregularLevi("tilde_root needs a regular Levi choice")
    w = weyl_operator_levi(alg, levi)
    return w(alg.simple_roots[tau[alpha]].weight)


@dataclass
class TripleCandidate:
    algebra: AlgebraData
    levi: LeviChoice
    tau: dict  # white node -> white node

    @property
    def whites(self) -> list:
        return self.levi.whites(self.algebra.rank)

    @cached_property
    def regular(self) -> bool:
        return is_regular(self.algebra, self.levi)

    @cached_property
    def tildes(self) -> dict:
        """Highest weight of V^+_{tau(alpha)} for each white alpha, from the module oracle."""
        alg = self.algebra
        return {a: module_highest_weight_oracle(alg, self.levi, alg.simple_roots[self.tau[a]].weight)
                for a in self.whites}

    def tau_on_all(self) -> dict:
        """tau extended to black nodes as -w_l (regular levi only)."""
        alg = self.algebra
        w = weyl_operator_levi(alg, self.levi)
        out = dict(self.tau)
        index = {r.weight: i for i, r in enumerate(alg.simple_roots)}
        for b in self.levi.black:
            img = neg(w(alg.simple_roots[b].weight))
            if img not in index:
                raise IrregularLevi("-w_l does not permute the black nodes")
            out[b] = index[img]
        return out

    def theta_images(self) -> dict:
        """theta(alpha) = -w_l(tau(alpha)) for every simple alpha."""
        alg = self.algebra
        w = weyl_operator_levi(alg, self.levi)
        t = self.tau_on_all()
        return {i: neg(w(alg.simple_roots[t[i]].weight)) for i in range(alg.rank)}

    def tau_pairs(self) -> list:
        return sorted({tuple(sorted((a, b))) for a, b in self.tau.items() if a != b})


@dataclass
class TripleReport:
    first: bool
    second: bool
    parity: bool
    module_iso: bool
    regular: bool
    theta_ok: bool | None = None
    gen_cond: bool | None = None
    lattice_tildes_agree: bool | None = None

    @property
    def ok(self) -> bool:
        return self.first and self.second and self.parity and self.module_iso


def theta_checks(t: TripleCandidate):
    """(gen_cond, theta is an involutive isometry and tau commutes with w_l)."""
    alg = t.algebra
    simple = simple_weights(alg)
    th = t.theta_images()
    gen = all(alg.ip(add(simple[a], th[a]), sub(simple[b], th[b])) == 0
              for a in range(alg.rank) for b in range(alg.rank))
    # theta on the span of Pi, as coordinates over Pi
    basis = [list(s) for s in simple]

    def coords(w):
        c = solve_combination(basis, list(w))
        if c is None:
            raise ValueError("image outside the root lattice")
        return c

    def theta(w):
        c = coords(w)
        out = tuple(0 for _ in w)
        for i, ci in enumerate(c):
            if ci:
                out = tuple(o + ci * x for o, x in zip(out, th[i]))
        return out

    try:
        invol = all(tuple(theta(th[i])) == tuple(simple[i]) for i in range(alg.rank))
    except ValueError:
        return gen, False
    iso = all(alg.ip(th[a], th[b]) == alg.ip(simple[a], simple[b])
              for a in range(alg.rank) for b in range(alg.rank))
    t_all = t.tau_on_all()
    tau_invol = all(t_all[t_all[i]] == i for i in range(alg.rank))
    w = weyl_operator_levi(alg, t.levi)

    def tau_lin(v):
        c = coords(v)
        out = tuple(0 for _ in v)
        for i, ci in enumerate(c):
            if ci:
                out = tuple(o + ci * x for o, x in zip(out, simple[t_all[i]]))
        return out

    try:
        commute = all(tau_lin(w(s)) == w(tau_lin(s)) for s in simple)
    except ValueError:
        commute = False
    return gen, invol and iso and tau_invol and commute


def supersymmetric_report(t: TripleCandidate) -> TripleReport:
    alg = t.algebra
    simple = simple_weights(alg)
    whites = t.whites
    tildes = t.tildes
    first = all(alg.ip(add(simple[m], tildes[m]), simple[b]) == 0
                for m in whites for b in t.levi.black)
    second = all(alg.ip(add(simple[m], tildes[m]), sub(simple[v], tildes[v])) == 0
                 for m in whites for v in whites)
    parity = all(weight_parity(alg, tildes[m]) == alg.simple_roots[m].parity for m in whites)
    module_iso = True
    for m in whites:
        plus = generated_module(alg, t.levi.black, simple[m])
        minus = generated_module(alg, t.levi.black, simple[t.tau[m]])
        if plus.dim != minus.dim:
            module_iso = False
    rep = TripleReport(first, second, parity, module_iso, t.regular)
    if t.regular:
        w = weyl_operator_levi(alg, t.levi)
        rep.lattice_tildes_agree = all(w(simple[t.tau[m]]) == tildes[m] for m in whites)
        rep.gen_cond, rep.theta_ok = theta_checks(t)
    return rep


def check_supersymmetric(t: TripleCandidate) -> bool:
    return supersymmetric_report(t).ok


def involutions(items: Sequence) -> list:
    """All involutive permutations of ``items`` as dicts."""
    items = list(items)
    if not items:
        return [{}]
    first, rest = items[0], items[1:]
    out = []
    for sub_inv in involutions(rest):
        out.append({first: first, **sub_inv})
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for sub_inv in involutions(remaining):
            out.append({first: other, other: first, **sub_inv})
    return out


def enumerate_taus(alg: AlgebraData, levi: LeviChoice) -> list:
    whites = levi.whites(alg.rank)
    out = []
    for tau in involutions(whites):
        t = TripleCandidate(alg, levi, tau)
        try:
            ok = check_supersymmetric(t)
        except ValueError:
            ok = False
        if ok:
            out.append(t)
    out.sort(key=lambda t: t.tau_pairs())
    return out
