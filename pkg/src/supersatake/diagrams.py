"""Decorated Dynkin diagrams, selection rules, and Satake enumeration."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .superalgebra import FAMILIES, SHAPES, AlgebraData, build_algebra, family_size
from .weyl import (LeviChoice, TripleCandidate, adjacency, components, enumerate_taus,
                   tail_nodes)

RULES = ("RVSR", "ISO-ODD", "4NODES", "D-TAIL")
LABELS = ("GL-I", "shaft", "outstanding", "black-tail", "white-tail", "mixed-tail", "unclassified")


@lru_cache(maxsize=None)
def algebra_for(family: str, grading: tuple) -> AlgebraData:
    return build_algebra(family, grading)


@dataclass(frozen=True)
class DecoratedDiagram:
    family: str
    grading: tuple
    black: tuple
    tau: tuple = ()  # sorted pairs (i, j), i < j, of swapped white nodes
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "grading", tuple(self.grading))
        object.__setattr__(self, "black", tuple(sorted(self.black)))
        object.__setattr__(self, "tau", tuple(sorted(tuple(sorted(p)) for p in self.tau)))

    @classmethod
    def from_triple(cls, t: TripleCandidate, label: str | None = None) -> "DecoratedDiagram":
        alg = t.algebra
        return cls(alg.family, alg.grading, tuple(sorted(t.levi.black)), tuple(t.tau_pairs()), label)

    @property
    def algebra(self) -> AlgebraData:
        return algebra_for(self.family, self.grading)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def shape(self) -> str:
        return SHAPES[self.family]

    @property
    def whites(self) -> list:
        return [i for i in range(self.rank) if i not in self.black]

    @property
    def white_rank(self) -> int:
        return len(self.whites)

    def tau_map(self) -> dict:
        m = {w: w for w in self.whites}
        for i, j in self.tau:
            m[i], m[j] = j, i
        return m

    def is_black(self, i: int) -> bool:
        return i in self.black

    def parity(self, i: int) -> int:
        return self.algebra.simple_roots[i].parity

    def levi(self) -> LeviChoice:
        return LeviChoice.of(self.black)

    def triple(self) -> TripleCandidate:
        return TripleCandidate(self.algebra, self.levi(), self.tau_map())

    def with_label(self, label: str | None) -> "DecoratedDiagram":
        return DecoratedDiagram(self.family, self.grading, self.black, self.tau, label)

    def key(self):
        return (FAMILIES.index(self.family), self.rank, self.grading, self.black, self.tau)


def build_ddd(t: TripleCandidate) -> DecoratedDiagram:
    d = DecoratedDiagram.from_triple(t)
    return d.with_label(classify(d))


def double_bonds(alg: AlgebraData) -> set:
    """Node pairs joined by a multiple bond: the B/C tail edge and a linked D tail pair."""
    n = alg.rank
    if alg.shape in ("B", "C") and n >= 2:
        return {(n - 2, n - 1)}
    if alg.shape == "D":
        a, b = n - 2, n - 1
        if alg.ip(alg.simple_roots[a].weight, alg.simple_roots[b].weight):
            return {(a, b)}
    return set()


class Scope:
    """A diagram viewed on a subset of its nodes."""

    def __init__(self, d: DecoratedDiagram, nodes: Iterable[int] | None = None):
        self.d = d
        self.alg = d.algebra
        self.nodes = frozenset(range(d.rank) if nodes is None else nodes)
        full = adjacency(self.alg)
        self.adj = {v: full[v] & self.nodes for v in self.nodes}
        self.tau = d.tau_map()
        self.black = frozenset(b for b in d.black if b in self.nodes)
        self.black_comps = components(self.alg, self.black)
        self.doubles = double_bonds(self.alg)

    def white(self, i):
        return i in self.nodes and i not in self.black

    def ip(self, i, j):
        w = self.alg.simple_roots
        return self.alg.ip(w[i].weight, w[j].weight)

    def component_of(self, b):
        for c in self.black_comps:
            if b in c:
                return c
        raise KeyError(b)

    def C(self, a) -> frozenset:
        ends = {a, self.tau[a]}
        out = set()
        for comp in self.black_comps:
            if any(self.adj[e] & set(comp) for e in ends):
                out |= set(comp)
        return frozenset(out)

    def D(self, *whites) -> frozenset:
        out = set()
        for a in whites:
            out |= {a, self.tau[a]} | self.C(a)
        return frozenset(out)

    def single_bond(self, i, j):
        return tuple(sorted((i, j))) not in self.doubles

    def even(self, i):
        return self.d.parity(i) == 0


def subdiagram(d: DecoratedDiagram, whites: Iterable[int]) -> frozenset:
    """Node set of the minimal decorated sub-diagram containing ``whites``."""
    whites = list(whites)
    bad = [w for w in whites if d.is_black(w)]
    if bad:
        raise ValueError(f"nodes {bad} are not white")
    return Scope(d).D(*whites)


def is_decorated_subdiagram(d: DecoratedDiagram, nodes: Iterable[int]) -> bool:
    s = Scope(d)
    nodes = frozenset(nodes)
    return all(s.D(w) <= nodes for w in nodes if not d.is_black(w))


@dataclass
class RuleVerdict:
    violations: list = field(default_factory=list)  # (rule, witness nodes)

    @property
    def passes(self) -> bool:
        return not self.violations

    def rules(self) -> set:
        return {r for r, _ in self.violations}


def _rvsr(s: Scope, out: list):
    for b in sorted(s.nodes):
        if not s.white(b) or s.tau[b] != b:
            continue
        D = s.D(b)
        if len(D) != 2:
            continue
        (a,) = D - {b}
        if a not in s.black or not s.single_bond(a, b):
            continue
        if not (s.d.parity(b) == 1 and s.even(a)):
            out.append(("RVSR", (a, b)))


def _iso_odd(s: Scope, out: list):
    for b in sorted(s.nodes):
        if not s.white(b) or s.tau[b] != b or s.d.parity(b) != 1:
            continue
        if s.ip(b, b) != 0 or s.D(b) != {b}:
            continue
        linked = [a for a in sorted(s.nodes) if a != b and s.ip(a, b)]
        if linked:
            out.append(("ISO-ODD", (linked[0], b)))


def _four_nodes(s: Scope, out: list):
    for b in sorted(s.nodes):
        if not s.white(b) or s.tau[b] != b or s.d.parity(b) != 1:
            continue
        D = s.D(b)
        blacks = sorted(D - {b})
        if len(D) != 3 or len(blacks) != 2:
            continue
        if not all(s.even(x) and s.component_of(x) == (x,) for x in blacks):
            continue
        if not all(s.single_bond(x, b) for x in blacks):
            continue
        for a, g in (blacks, blacks[::-1]):
            for sig in sorted(s.nodes):
                if sig == b or not s.white(sig) or s.tau[sig] != sig:
                    continue
                if s.ip(g, sig) and a not in s.D(sig):
                    out.append(("4NODES", (a, b, g, sig)))


def _d_tail(s: Scope, out: list):
    alg = s.alg
    if alg.shape != "D":
        return
    n = alg.rank
    t1, t2 = tail_nodes(alg)
    nodes = s.nodes

    def single_black_even(x):
        return x in s.black and s.even(x) and s.component_of(x) == (x,)

    def white_of(x, parity):
        return s.white(x) and s.d.parity(x) == parity

    if n >= 5 and {n - 5, n - 4, n - 3, t1, t2} <= nodes:
        a, b, c = n - 5, n - 4, n - 3
        if (single_black_even(a) and white_of(b, 1) and single_black_even(c)
                and white_of(t1, 0) and white_of(t2, 0) and s.tau[t1] == t2):
            out.append(("D-TAIL", (a, b, c, t1, t2)))
    if n >= 4 and {n - 4, n - 3, t1, t2} <= nodes:
        a, b = n - 4, n - 3
        if single_black_even(a) and white_of(b, 1):
            for w, k in ((t1, t2), (t2, t1)):
                if white_of(w, 0) and single_black_even(k):
                    out.append(("D-TAIL", (a, b, w, k)))


def selection_rules(d: DecoratedDiagram, nodes: Iterable[int] | None = None) -> RuleVerdict:
    s = Scope(d, nodes)
    out: list = []
    _rvsr(s, out)
    _iso_odd(s, out)
    _four_nodes(s, out)
    _d_tail(s, out)
    return RuleVerdict(out)


# -- family labels -----------------------------------------------------------

def is_outstanding(d: DecoratedDiagram) -> bool:
    if d.family != "gl" or d.tau:
        return False
    if d.rank == 1:
        return d.white_rank == 1 and d.parity(0) == 1
    if d.rank == 3:
        return (d.black == (0, 2) and d.parity(1) == 1
                and d.parity(0) == 0 and d.parity(2) == 0)
    return False


def shaft_grammar(d: DecoratedDiagram, nodes: Sequence[int] | None = None) -> bool:
    """Alternation grammar for tau = id diagrams on a chain of nodes."""
    nodes = list(range(d.rank)) if nodes is None else list(nodes)
    if any(d.tau_map().get(i, i) != i for i in nodes):
        return False
    if any(d.parity(i) == 1 and d.is_black(i) for i in nodes):
        return False
    comps, cur = [], []
    for i in nodes:
        if d.parity(i) == 1:
            comps.append(cur)
            cur = []
        else:
            cur.append(i)
    comps.append(cur)
    kinds = []
    for c in comps:
        colors = [d.is_black(i) for i in c]
        if not any(colors):
            kinds.append("w")
        elif len(c) % 2 == 1 and all(colors[k] == (k % 2 == 0) for k in range(len(c))):
            kinds.append("b")
        else:
            return False
    return all(kinds[k] != kinds[k + 1] for k in range(len(kinds) - 1))


def classify(d: DecoratedDiagram) -> str:
    if d.family == "gl":
        if d.tau:
            return "GL-I"
        if is_outstanding(d):
            return "outstanding"
        if shaft_grammar(d):
            return "shaft"
        return "unclassified"
    tail = tail_nodes(d.algebra)
    colors = {d.is_black(t) for t in tail}
    if colors == {True}:
        return "black-tail"
    if colors == {False}:
        return "white-tail"
    return "mixed-tail"


# -- enumeration -------------------------------------------------------------

def gradings(family: str, rank: int, dedup: bool = True) -> list:
    N = family_size(family, rank)
    if family == "gl":
        out = [g for g in product((0, 1), repeat=N)]
    else:
        n = N // 2
        out = []
        for half in product((0, 1), repeat=n):
            mid = (0,) if N % 2 else ()
            out.append(half + mid + half[::-1])
    if dedup and family != "osp-odd":
        out = [g for g in out if g <= tuple(1 - x for x in g)]
    return sorted(out)


def min_rank(family: str) -> int:
    return {"gl": 1, "osp-odd": 1, "osp-even": 2, "spo": 1}[family]


def candidate_triples(family: str, rank: int, grading: Sequence[int]) -> list:
    """All super-symmetric triples with at least one white node."""
    alg = algebra_for(family, tuple(grading))
    out = []
    for r in range(rank):
        for black in combinations(range(rank), r):
            out.extend(enumerate_taus(alg, LeviChoice.of(black)))
    return out


@dataclass
class Candidate:
    diagram: DecoratedDiagram
    verdict: RuleVerdict
    triple: TripleCandidate

    @property
    def satake(self) -> bool:
        return self.verdict.passes


def enumerate_candidates(family: str, max_rank: int, dedup: bool = True,
                         grading_filter: Sequence[int] | None = None) -> list:
    out = []
    for rank in range(min_rank(family), max_rank + 1):
        for g in gradings(family, rank, dedup):
            if grading_filter is not None and tuple(grading_filter) != g:
                continue
            for t in candidate_triples(family, rank, g):
                d = build_ddd(t)
                out.append(Candidate(d, selection_rules(d), t))
    out.sort(key=lambda c: c.diagram.key())
    return out


def enumerate_satake(family: str, max_rank: int, dedup: bool = True) -> list:
    """Satake diagrams as (diagram, label) pairs in deterministic order."""
    fams = FAMILIES if family == "all" else (family,)
    out = []
    for fam in fams:
        out.extend((c.diagram, c.diagram.label) for c in enumerate_candidates(fam, max_rank, dedup)
                   if c.satake)
    return out


# -- serialization -----------------------------------------------------------

def to_dict(d: DecoratedDiagram) -> dict:
    return {
        "family": d.family,
        "rank": d.rank,
        "grading": list(d.grading),
        "black": list(d.black),
        "tau": [list(p) for p in d.tau],
        "shape": d.shape,
        "label": d.label,
    }


def to_json(d: DecoratedDiagram) -> str:
    return json.dumps(to_dict(d), sort_keys=True)


def from_dict(obj: dict) -> DecoratedDiagram:
    try:
        family = obj["family"]
        grading = tuple(int(x) for x in obj["grading"])
        black = tuple(int(x) for x in obj.get("black", ()))
        tau = tuple(tuple(int(x) for x in p) for p in obj.get("tau", ()))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed diagram: {exc}") from None
    d = DecoratedDiagram(family, grading, black, tau, obj.get("label"))
    rank = d.rank
    if "rank" in obj and int(obj["rank"]) != rank:
        raise ValueError("rank does not match grading")
    if any(not 0 <= b < rank for b in black):
        raise ValueError("black node out of range")
    for p in tau:
        if len(p) != 2 or any(x in black or not 0 <= x < rank for x in p):
            raise ValueError("tau must pair white nodes")
    flat = [x for p in tau for x in p]
    if len(flat) != len(set(flat)):
        raise ValueError("tau is not an involution")
    return d


def from_json(text: str) -> DecoratedDiagram:
    return from_dict(json.loads(text))


def to_dot(d: DecoratedDiagram, name: str = "D") -> str:
    alg = d.algebra
    lines = [f"graph {name} {{", "  rankdir=LR;"]
    for i in range(d.rank):
        shape = "square" if d.parity(i) else "circle"
        fill = "black" if d.is_black(i) else "white"
        font = "white" if d.is_black(i) else "black"
        lines.append(f'  n{i} [label="a{i + 1}", shape={shape}, style=filled, '
                     f'fillcolor={fill}, fontcolor={font}];')
    doubles = double_bonds(alg)
    adj = adjacency(alg)
    for i in range(d.rank):
        for j in sorted(adj[i]):
            if i < j:
                attr = ' [color="black:black"]' if (i, j) in doubles else ""
                lines.append(f"  n{i} -- n{j}{attr};")
    for i, j in d.tau:
        lines.append(f"  n{i} -- n{j} [style=dashed, dir=both, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
