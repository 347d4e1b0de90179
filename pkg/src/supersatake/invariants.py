"""Matrix invariants of spherical subalgebras under adjoint and twisted actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_linalg import EchelonBasis, as_rational
from .superalgebra import AlgebraData, SuperMatrix, TRANSPOSE_FORM, super_transpose


class ActionKind(str, Enum):
    ADJOINT = "adjoint"
    FORM_TWISTED = "form_twisted"
    D_TWISTED = "d_twisted"


PARITIES = ("even", "odd", "all")


def flip_matrix(grading: Sequence[int]) -> SuperMatrix:
    """The permutation v_n <-> v_{n'} on a space of even dimension 2n."""
    N = len(grading)
    if N % 2:
        raise ValueError("the tail flip needs an even-dimensional space")
    n = N // 2
    perm = list(range(N))
    perm[n - 1], perm[n] = n, n - 1
    return SuperMatrix(grading, {(i, perm[i]): Fraction(1) for i in range(N)})


def act(kind: ActionKind, x: SuperMatrix, A: SuperMatrix, d: SuperMatrix | None = None) -> SuperMatrix:
    """Action of a homogeneous x on a homogeneous A."""
    px, pa = x.parity(), A.parity()
    if px is None or pa is None:
        raise ValueError("act expects homogeneous arguments")
    sign = -1 if px * pa else 1
    kind = ActionKind(kind)
    if kind is ActionKind.ADJOINT:
        return x @ A - sign * (A @ x)
    if kind is ActionKind.FORM_TWISTED:
        return x @ A + sign * (A @ super_transpose(x, TRANSPOSE_FORM))
    if d is None:
        d = flip_matrix(x.grading)
    return x @ A - sign * (A @ (d @ x @ d))


def annihilates(gens: Iterable[SuperMatrix], kind: ActionKind, A: SuperMatrix) -> bool:
    """True when every generator kills A (both split by parity)."""
    a_parts = A.homogeneous_parts()
    for g in gens:
        for xp in g.homogeneous_parts().values():
            for ap in a_parts.values():
                if act(kind, xp, ap):
                    return False
    return True


@dataclass
class InvariantSpace:
    action: ActionKind
    parity: str
    basis: list
    _echelon: EchelonBasis = field(repr=False, default=None)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, M: SuperMatrix) -> bool:
        return self._echelon.contains(M.vector())


def _unknowns(grading: Sequence[int], parity: str) -> list:
    N = len(grading)
    want = {"even": (0,), "odd": (1,), "all": (0, 1)}[parity]
    return [(i, j) for i in range(N) for j in range(N) if (grading[i] + grading[j]) % 2 in want]


def solve_invariants(k, kind: ActionKind, parity: str = "even") -> InvariantSpace:
    """All A in the requested parity block annihilated by k under ``kind``.

    ``k`` is a SubalgebraBasis or any iterable of matrices; invariance under
    a generating set is equivalent to invariance under the algebra.
    """
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    kind = ActionKind(kind)
    elems = list(getattr(k, "basis", k))
    if not elems:
        raise ValueError("empty generating set")
    grading = elems[0].grading
    N = len(grading)
    d = flip_matrix(grading) if kind is ActionKind.D_TWISTED else None
    unknowns = _unknowns(grading, parity)
    xs = [p for x in elems for p in x.homogeneous_parts().values()]
    eqs = EchelonBasis(len(unknowns))
    for x in xs:
        rows: dict = {}
        for col, (i, j) in enumerate(unknowns):
            img = act(kind, x, SuperMatrix.unit(grading, i, j), d)
            for pos, v in img.data.items():
                rows.setdefault(pos, {})[col] = v
        for r in rows.values():
            eqs.add(r)
            if len(eqs) == len(unknowns):
                break
    basis = []
    for vec in eqs.nullspace():
        data = {unknowns[c]: v for c, v in enumerate(vec) if v}
        basis.append(SuperMatrix(grading, data))
    echelon = EchelonBasis(N * N)
    for b in basis:
        echelon.add(b.vector())
    return InvariantSpace(kind, parity, basis, echelon)


# -- shaft (twisted) invariants ---------------------------------------------

def shaft_blocks(rank: int, black: Iterable[int]) -> list:
    """Diagonal blocks of I_l from the bottom of V upwards, as index tuples.

    A black node i joins v_i and v_{i+1} into a 2x2 block; every other
    basis vector forms a 1x1 block.
    """
    black = set(black)
    blocks = []
    pos = rank
    while pos >= 0:
        if pos >= 1 and (pos - 1) in black:
            blocks.append((pos - 1, pos))
            pos -= 2
        else:
            blocks.append((pos,))
            pos -= 1
    return blocks


def shaft_invariant(d, c, scale=1) -> SuperMatrix:
    """The block-diagonal twisted invariant I_l of a shaft diagram."""
    from .diagrams import shaft_grammar
    if d.family != "gl" or not shaft_grammar(d):
        raise ValueError("shaft_invariant needs a shaft Satake diagram")
    cmap = c.as_dict() if hasattr(c, "as_dict") else {int(k): as_rational(v) for k, v in c.items()}
    whites_from_right = sorted(d.whites, reverse=True)
    blocks = shaft_blocks(d.rank, d.black)
    if len(blocks) != len(whites_from_right) + 1:
        raise ValueError("block count does not match white rank")
    coeff = Fraction(1)
    data = {}
    for k, blk in enumerate(blocks):
        if k:
            coeff /= cmap[whites_from_right[k - 1]]
        a = as_rational(scale) * coeff
        if len(blk) == 1:
            data[(blk[0], blk[0])] = a
        else:
            i, j = blk
            data[(i, j)] = a
            data[(j, i)] = -a
    return SuperMatrix(d.grading, data)


# -- general linear, tau != id -----------------------------------------------

def gl_adjoint_invariant(N: int, m: int, lam, mu, a: dict, grading: Sequence[int] | None = None) -> SuperMatrix:
    """(mu+lam) sum_{i<=m} e_ii + lam sum_{m<i<=N-m} e_ii + sum a_i e_{i,i'} + a_{i'} e_{i',i}.

    Indices in ``a`` are 1-based; the mirror of i is N+1-i.
    """
    lam, mu = as_rational(lam), as_rational(mu)
    if not lam or not mu:
        raise ValueError("lambda and mu must be nonzero")
    if not 1 <= m <= N // 2:
        raise ValueError("need 1 <= m <= N/2")
    grading = tuple(grading) if grading is not None else (0,) * N
    data = {}
    for i in range(1, m + 1):
        ip = N + 1 - i
        ai, aip = as_rational(a[i]), as_rational(a[ip])
        if ai * aip != -lam * mu:
            raise ValueError(f"constraint a_{i} a_{ip} = -lambda mu violated")
        data[(i - 1, i - 1)] = mu + lam
        data[(i - 1, ip - 1)] = ai
        data[(ip - 1, i - 1)] = aip
    for i in range(m + 1, N - m + 1):
        data[(i - 1, i - 1)] = lam
    return SuperMatrix(grading, {k: v for k, v in data.items() if v})


def gl_i_parameters(t, c) -> tuple:
    """(m, lambda, mu, a) solving the relations for a GL-I triple with a_1 = 1.

    Requires c_i = c_{i'} for i < m; the self-fixed middle node case is
    left to the solver.
    """
    alg = t.algebra
    N, rank = alg.N, alg.rank
    cmap = c.as_dict() if hasattr(c, "as_dict") else {int(k): as_rational(v) for k, v in c.items()}
    whites = t.whites
    left = [w for w in whites if t.tau[w] != w and w < t.tau[w]]
    m = len(left)
    if left != list(range(m)) or any(t.tau[w] != rank - 1 - w for w in left):
        raise ValueError("not a GL-I triple in standard position")
    if any(t.tau[w] == w for w in whites):
        raise ValueError("self-fixed middle node: use the solver")

    def cc(k):  # 1-based left node k
        return cmap[k - 1]

    def cc_(k):  # its mirror
        return cmap[rank - k]

    for k in range(1, m):
        if cc(k) != cc_(k):
            raise ValueError(f"relation c_{k} = c_{k}' violated")
    a = {1: Fraction(1)}
    for k in range(1, m):
        a[k + 1] = a[k] * cc(k)
    a[N + 1 - m] = a[m] * cc(m) * cc_(m)
    for k in range(m - 1, 0, -1):
        a[N + 1 - k] = a[N - k] * cc(k)
    mu = -cc(m) * a[m]
    lam = a[N + 1 - m] / cc(m)
    return m, lam, mu, a


def gl_i_invariant(t, c) -> SuperMatrix:
    m, lam, mu, a = gl_i_parameters(t, c)
    return gl_adjoint_invariant(t.algebra.N, m, lam, mu, a, t.algebra.grading)


# -- black tail, white rank one ---------------------------------------------

def black_tail_layout(d) -> str:
    """'white' for a white first node before a black tail, 'black' for black-white-tail."""
    if d.family == "gl":
        raise ValueError("black-tail invariants live in orthosymplectic algebras")
    n = d.rank
    whites = d.whites
    extra = 1 if d.family == "osp-even" else 0  # a D tail has two nodes
    if whites == [0] and n >= 2 + extra:
        return "white"
    if whites == [1] and n >= 3 + extra and d.black[0] == 0:
        par = d.grading
        if par[0] == par[1] != par[2]:
            return "black"
    raise ValueError("not a reduced black-tail diagram of white rank one")


def black_tail_invariant(d, c, lam=1) -> SuperMatrix:
    """I_1 with mu, a, a' fixed by the mixture parameter of the white node."""
    layout = black_tail_layout(d)
    alg = d.algebra
    N, g, eps = alg.N, alg.grading, alg.signatures
    cmap = c.as_dict() if hasattr(c, "as_dict") else {int(k): as_rational(v) for k, v in c.items()}
    lam = as_rational(lam)
    pr = lambda i: N - 1 - i
    sgn = lambda e: -1 if e % 2 else 1
    data = {}
    if layout == "white":
        cc = cmap[0]
        p1, p2 = g[0], g[1]
        mu = -eps[0] * lam
        a = -eps[1] * sgn(p1 * (p1 + p2)) * lam / cc
        a2 = -sgn(p2 * (p1 + p2)) * lam * cc
        m = 1
        data[(0, pr(0))] = a
        data[(pr(0), 0)] = a2
    else:
        cc = cmap[1]
        p1, p2 = g[1], g[2]
        mu = eps[1] * lam
        # sign of a chosen so that a a' = -mu lam holds
        a = eps[1] * sgn(p1 * (p1 + p2)) * lam / cc
        a2 = sgn(p2 * (p1 + p2)) * lam * cc
        m = 2
        # sigma = e_{0,1'} - e_{1,0'} and its plain transpose
        data[(0, pr(1))] = a
        data[(1, pr(0))] = -a
        data[(pr(1), 0)] = a2
        data[(pr(0), 1)] = -a2
    for i in range(m):
        data[(i, i)] = mu + lam
    for i in range(m, N - m):
        data[(i, i)] = lam
    return SuperMatrix(g, {k: v for k, v in data.items() if v})


# -- doubling V to V + W -------------------------------------------------------

def parity_operator(grading: Sequence[int]) -> SuperMatrix:
    return SuperMatrix(grading, {(i, i): Fraction(-1 if p else 1) for i, p in enumerate(grading)})


def doubled_grading(grading: Sequence[int]) -> tuple:
    """Grading of V + W; the W basis is ordered w_{1'}, ..., w_{N'} so w_{i'} sits under v_i."""
    return tuple(grading) + tuple(grading)


def tilde_rep(x: SuperMatrix, eps: int = 1) -> SuperMatrix:
    """-S x^t S^{-1} with S = eps * P in the w_{i'} basis."""
    S = eps * parity_operator(x.grading)
    return -(S @ super_transpose(x, TRANSPOSE_FORM) @ S)


def block(grading2: tuple, tl=None, tr=None, bl=None, br=None) -> SuperMatrix:
    n = len(grading2) // 2
    data = {}
    for m, (di, dj) in ((tl, (0, 0)), (tr, (0, n)), (bl, (n, 0)), (br, (n, n))):
        if m is None:
            continue
        for (i, j), v in m.data.items():
            data[(i + di, j + dj)] = v
    return SuperMatrix(grading2, data)


def doubled(x: SuperMatrix, eps: int = 1) -> SuperMatrix:
    """x acting on V + W by rho(x) + tilde rho(x)."""
    out = SuperMatrix.zero(doubled_grading(x.grading))
    for part in x.homogeneous_parts().values():
        out = out + block(out.grading, tl=part, br=tilde_rep(part, eps))
    return out


def extend_invariant(k, A: SuperMatrix, eps: int = 1, mu=0, nu=0,
                     A_tilde: SuperMatrix | None = None) -> SuperMatrix:
    """The invariant [[mu, A S^{-1}], [A~ C^{-1}, nu]] on V + W.

    ``A`` must be a twisted invariant of k; ``A_tilde`` a twisted invariant
    of tilde rho(k), found by the solver when omitted.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    gens = list(getattr(k, "basis", k))
    if not annihilates(gens, ActionKind.FORM_TWISTED, A):
        raise ValueError("A is not a twisted invariant of k")
    g = A.grading
    tgens = [tilde_rep(p, eps) for x in gens for p in x.homogeneous_parts().values()]
    if A_tilde is None:
        space = solve_invariants(tgens, ActionKind.FORM_TWISTED, "even")
        A_tilde = space.basis[0] if space.basis else SuperMatrix.zero(g)
    elif not annihilates(tgens, ActionKind.FORM_TWISTED, A_tilde):
        raise ValueError("A_tilde is not a twisted invariant of tilde k")
    S_inv = eps * parity_operator(g)  # S^{-1} = S
    ident = SuperMatrix.identity(g)
    return block(doubled_grading(g), tl=as_rational(mu) * ident, tr=A @ S_inv,
                 bl=A_tilde, br=as_rational(nu) * ident)
