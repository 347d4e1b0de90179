"""Matrix realizations of gl and orthosymplectic Lie superalgebras.

The natural module V has basis v_1..v_N with parities ``grading``.  Indices
are 0-based in code; ``mirror(i) = N - 1 - i`` is the 0-based version of
``i' = N + 1 - i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_linalg import EchelonBasis, RatMatrix, as_rational

FAMILIES = ("gl", "osp-odd", "osp-even", "spo")
SHAPES = {"gl": "A", "osp-odd": "B", "osp-even": "D", "spo": "C"}

# Two sign conventions for super-transposition.  FORM is the one under which
# the orthosymplectic root vectors preserve C:  A^t_ij = (-1)^{(p_i+p_j) p_j} A_ji.
# ALT is  A^t_ij = (-1)^{p_i (p_i+p_j)} A_ji.
TRANSPOSE_FORM = "form"
TRANSPOSE_ALT = "alt"


class GradingError(ValueError):
    pass


def validate_grading(family: str, grading: Sequence[int]) -> tuple:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    g = tuple(int(x) for x in grading)
    if any(x not in (0, 1) for x in g):
        raise GradingError("parities must be 0 or 1")
    N = len(g)
    if family == "gl":
        if N < 2:
            raise GradingError("gl needs N >= 2")
        return g
    if g != g[::-1]:
        raise GradingError("orthosymplectic gradings must be symmetric")
    if family == "osp-odd":
        if N % 2 == 0 or N < 3:
            raise GradingError("osp-odd needs odd N >= 3")
        if g[N // 2] != 0:
            raise GradingError("middle basis vector must be even")
    elif family == "osp-even":
        if N % 2 or N < 4:
            raise GradingError("osp-even needs even N >= 4")
    elif family == "spo":
        if N % 2 or N < 2:
            raise GradingError("spo needs even N >= 2")
    return g


def family_size(family: str, rank: int) -> int:
    """Dimension N of the natural module for a given rank."""
    if family == "gl":
        return rank + 1
    if family == "osp-odd":
        return 2 * rank + 1
    return 2 * rank


class SuperMatrix:
    """Sparse N x N rational matrix on a graded space."""

    __slots__ = ("n", "grading", "data")

    def __init__(self, grading: Sequence[int], data: dict | None = None):
        self.grading = tuple(grading)
        self.n = len(self.grading)
        self.data = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def unit(cls, grading, i: int, j: int, c=1) -> "SuperMatrix":
        return cls(grading, {(i, j): as_rational(c)})

    @classmethod
    def zero(cls, grading) -> "SuperMatrix":
        return cls(grading)

    @classmethod
    def identity(cls, grading) -> "SuperMatrix":
        return cls(grading, {(i, i): Fraction(1) for i in range(len(grading))})

    @classmethod
    def from_rows(cls, grading, rows) -> "SuperMatrix":
        return cls(grading, {(i, j): as_rational(x) for i, r in enumerate(rows)
                             for j, x in enumerate(r) if x})

    @classmethod
    def from_vector(cls, grading, vec) -> "SuperMatrix":
        n = len(grading)
        if isinstance(vec, dict):
            return cls(grading, {divmod(k, n): v for k, v in vec.items()})
        return cls(grading, {divmod(k, n): as_rational(v) for k, v in enumerate(vec) if v})

    def vector(self) -> dict:
        n = self.n
        return {i * n + j: v for (i, j), v in self.data.items()}

    def dense(self) -> RatMatrix:
        rows = [[self.data.get((i, j), Fraction(0)) for j in range(self.n)] for i in range(self.n)]
        return RatMatrix.from_rows(rows, self.n)

    def rows(self) -> list:
        return self.dense().to_lists()

    def __getitem__(self, ij):
        return self.data.get(ij, Fraction(0))

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.grading == other.grading and self.data == other.data

    def __hash__(self):
        return hash((self.grading, frozenset(self.data.items())))

    def __repr__(self):
        terms = " + ".join(f"{v}*e{i + 1},{j + 1}" for (i, j), v in sorted(self.data.items()))
        return f"SuperMatrix({terms or '0'})"

    def _check(self, other):
        if self.grading != other.grading:
            raise ValueError("matrices live on differently graded spaces")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        d = dict(self.data)
        for k, v in other.data.items():
            d[k] = d.get(k, 0) + v
        return SuperMatrix(self.grading, d)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, c) -> "SuperMatrix":
        c = as_rational(c)
        return SuperMatrix(self.grading, {k: c * v for k, v in self.data.items()})

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        by_row: dict = {}
        for (k, j), v in other.data.items():
            by_row.setdefault(k, []).append((j, v))
        d: dict = {}
        for (i, k), a in self.data.items():
            for j, b in by_row.get(k, ()):
                d[(i, j)] = d.get((i, j), 0) + a * b
        return SuperMatrix(self.grading, d)

    def entry_parity(self, i: int, j: int) -> int:
        return (self.grading[i] + self.grading[j]) % 2

    def parity(self):
        """0 or 1 for homogeneous nonzero matrices, 0 for zero, None if mixed."""
        ps = {self.entry_parity(i, j) for (i, j) in self.data}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def homogeneous_parts(self) -> dict:
        parts = {0: {}, 1: {}}
        for (i, j), v in self.data.items():
            parts[self.entry_parity(i, j)][(i, j)] = v
        return {p: SuperMatrix(self.grading, d) for p, d in parts.items() if d}

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.data)

    def is_upper(self) -> bool:
        return all(i < j for i, j in self.data)

    def is_lower(self) -> bool:
        return all(i > j for i, j in self.data)

    def conjugate_by_permutation(self, perm: Sequence[int]) -> "SuperMatrix":
        return SuperMatrix(self.grading, {(perm[i], perm[j]): v for (i, j), v in self.data.items()})


def super_bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Super-commutator xy - (-1)^{|x||y|} yx, extended bilinearly."""
    x._check(y)
    px, py = x.parity(), y.parity()
    if px is not None and py is not None:
        xy, yx = x @ y, y @ x
        return xy - yx if px * py == 0 else xy + yx
    out = SuperMatrix.zero(x.grading)
    for a in x.homogeneous_parts().values():
        for b in y.homogeneous_parts().values():
            out = out + super_bracket(a, b)
    return out


def super_transpose(a: SuperMatrix, variant: str = TRANSPOSE_FORM) -> SuperMatrix:
    p = a.grading
    d = {}
    for (i, j), v in a.data.items():
        # entry (j, i) of the result comes from A_ij
        if variant == TRANSPOSE_FORM:
            s = (p[j] + p[i]) * p[i]
        elif variant == TRANSPOSE_ALT:
            s = p[j] * (p[j] + p[i])
        else:
            raise ValueError(f"unknown transpose variant {variant!r}")
        d[(j, i)] = -v if s % 2 else v
    return SuperMatrix(a.grading, d)


@dataclass(frozen=True)
class Root:
    weight: tuple
    parity: int
    sign: int  # +1 for R^+, -1 for R^-

    def __neg__(self):
        return Root(tuple(-x for x in self.weight), self.parity, -self.sign)


@dataclass
class AlgebraData:
    family: str
    grading: tuple
    shape: str
    rank: int
    simple_roots: list
    positive_roots: list
    root_vectors: dict  # weight tuple -> SuperMatrix (e for R^+, f for R^-)
    cartan_basis: list
    basis_weights: list  # weight of each v_i as a tuple
    form_C: SuperMatrix | None = None
    signatures: tuple | None = None
    norms: tuple = ()  # (zeta_k, zeta_k) for the weight coordinates
    _roots_by_weight: dict = field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return len(self.grading)

    @property
    def all_roots(self) -> list:
        return list(self.positive_roots) + [-r for r in self.positive_roots]

    @property
    def dimension(self) -> int:
        return len(self.cartan_basis) + 2 * len(self.positive_roots)

    @property
    def weight_dim(self) -> int:
        return len(self.norms)

    def ip(self, a: Sequence, b: Sequence) -> int:
        return sum(n * x * y for n, x, y in zip(self.norms, a, b))

    def root(self, weight) -> Root | None:
        return self._roots_by_weight.get(tuple(weight))

    def is_root(self, weight) -> bool:
        return tuple(weight) in self._roots_by_weight

    def e(self, alpha) -> SuperMatrix:
        w = alpha.weight if isinstance(alpha, Root) else tuple(alpha)
        return self.root_vectors[w]

    def f(self, alpha) -> SuperMatrix:
        w = alpha.weight if isinstance(alpha, Root) else tuple(alpha)
        return self.root_vectors[tuple(-x for x in w)]

    def basis(self) -> list:
        """Cartan basis followed by e_alpha, f_alpha for positive alpha."""
        out = list(self.cartan_basis)
        for r in self.positive_roots:
            out.append(self.e(r))
            out.append(self.f(r))
        return out

    def borel_plus(self) -> list:
        return list(self.cartan_basis) + [self.e(r) for r in self.positive_roots]

    def weight_of_unit(self, i: int, j: int) -> tuple:
        a, b = self.basis_weights[i], self.basis_weights[j]
        return tuple(x - y for x, y in zip(a, b))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "grading": list(self.grading),
            "shape": self.shape,
            "rank": self.rank,
            "dimension": self.dimension,
            "simple_roots": [{"weight": list(r.weight), "parity": r.parity}
                             for r in self.simple_roots],
        }


def mirror(N: int, i: int) -> int:
    return N - 1 - i


def signatures_for(family: str, grading: Sequence[int]) -> tuple:
    """epsilon_k for k = 1..n, of the form s * (-1)^{p_k}."""
    n = len(grading) // 2
    if family == "osp-odd":
        s = 1
    elif family == "osp-even":
        s = (-1) ** grading[n - 1]  # tail roots zeta_{n-1} +- zeta_n need eps_n = +1
    else:
        s = -((-1) ** grading[n - 1])  # 2 zeta_n is a root
    return tuple(s * (-1) ** grading[k] for k in range(n))


def _gl(grading: tuple) -> AlgebraData:
    N = len(grading)
    unit = lambda i, j, c=1: SuperMatrix.unit(grading, i, j, c)
    basis_weights = [tuple(int(k == i) for k in range(N)) for i in range(N)]
    norms = tuple((-1) ** p for p in grading)
    positive, vectors = [], {}
    for i in range(N):
        for j in range(i + 1, N):
            w = tuple(a - b for a, b in zip(basis_weights[i], basis_weights[j]))
            positive.append(Root(w, (grading[i] + grading[j]) % 2, 1))
            vectors[w] = unit(i, j)
            vectors[tuple(-x for x in w)] = unit(j, i)
    simple = [r for r in positive if _gl_simple(r.weight)]
    simple.sort(key=lambda r: r.weight.index(1))
    cartan = [unit(i, i) for i in range(N)]
    return AlgebraData("gl", grading, "A", N - 1, simple, positive, vectors, cartan,
                       basis_weights, norms=norms)


def _gl_simple(w) -> bool:
    i = w.index(1)
    return i + 1 < len(w) and w[i + 1] == -1


def _osp(family: str, grading: tuple) -> AlgebraData:
    N = len(grading)
    n = N // 2
    odd = N % 2 == 1
    eps = signatures_for(family, grading)
    P = grading
    pr = lambda i: mirror(N, i)
    unit = lambda i, j, c=1: SuperMatrix.unit(grading, i, j, c)
    sgn = lambda e: -1 if e % 2 else 1

    def zeta(k, c=1):
        return tuple(c if t == k else 0 for t in range(n))

    basis_weights = []
    for i in range(N):
        if i < n:
            basis_weights.append(zeta(i))
        elif odd and i == n:
            basis_weights.append(zeta(-1, 0))
        else:
            basis_weights.append(zeta(pr(i), -1))

    C = SuperMatrix.zero(grading)
    for k in range(n):
        C = C + unit(k, pr(k)) + unit(pr(k), k, eps[k])
    if odd:
        C = C + unit(n, n)

    positive, vectors = [], {}

    def add(w, parity, e, f):
        positive.append(Root(w, parity % 2, 1))
        vectors[w] = e
        vectors[tuple(-x for x in w)] = f

    for k in range(n):
        for m in range(k + 1, n):
            pk, pm = P[k], P[m]
            w = tuple(a - b for a, b in zip(zeta(k), zeta(m)))
            add(w, pk + pm,
                unit(k, m, -sgn(pm * (pk + pm))) + unit(pr(m), pr(k)),
                unit(m, k, -sgn(pk * (pk + pm))) + unit(pr(k), pr(m)))
            w = tuple(a + b for a, b in zip(zeta(k), zeta(m)))
            add(w, pk + pm,
                unit(k, pr(m), -eps[k] * sgn(pk * (pk + pm))) + unit(m, pr(k)),
                unit(pr(m), k, -eps[m] * sgn(pk * (pk + pm))) + unit(pr(k), m))
    for k in range(n):
        if eps[k] == -1:
            add(zeta(k, 2), 0, unit(k, pr(k)), unit(pr(k), k))
        if odd:
            add(zeta(k), P[k],
                unit(k, n, -1) + unit(n, pr(k)),
                unit(n, k, -sgn(P[k])) + unit(pr(k), n))

    simple_w = [tuple(a - b for a, b in zip(zeta(i), zeta(i + 1))) for i in range(n - 1)]
    if family == "osp-odd":
        simple_w.append(zeta(n - 1))
    elif family == "spo":
        simple_w.append(zeta(n - 1, 2))
    else:
        simple_w = simple_w[: n - 1]
        simple_w.append(tuple(a + b for a, b in zip(zeta(n - 2), zeta(n - 1))))
    by_w = {r.weight: r for r in positive}
    simple = [by_w[w] for w in simple_w]
    cartan = [unit(k, k) - unit(pr(k), pr(k)) for k in range(n)]
    norms = tuple(sgn(P[k]) for k in range(n))
    return AlgebraData(family, grading, SHAPES[family], n, simple, positive, vectors, cartan,
                       basis_weights, form_C=C, signatures=eps, norms=norms)


def build_algebra(family: str, grading: Iterable[int]) -> AlgebraData:
    g = validate_grading(family, tuple(grading))
    alg = _gl(g) if family == "gl" else _osp(family, g)
    alg._roots_by_weight = {r.weight: r for r in alg.all_roots}
    return alg


def cartan_dual(alg: AlgebraData, w: Sequence[int]) -> SuperMatrix:
    """Diagonal h_w with mu(h_w) = (mu, w) for every weight mu."""
    d = {}
    for i, bw in enumerate(alg.basis_weights):
        v = alg.ip(bw, w)
        if v:
            d[(i, i)] = Fraction(v)
    return SuperMatrix(alg.grading, d)


def evaluate_weight(alg: AlgebraData, mu: Sequence[int], h: SuperMatrix) -> Fraction:
    """mu(h) for diagonal h."""
    if not h.is_diagonal():
        raise ValueError("weights evaluate on diagonal matrices only")
    n = alg.weight_dim
    total = Fraction(0)
    # zeta_k(h) is the diagonal entry at the basis vector of weight zeta_k
    coords = [Fraction(0)] * n
    for i, bw in enumerate(alg.basis_weights):
        nz = [k for k, x in enumerate(bw) if x]
        if len(nz) == 1 and bw[nz[0]] == 1:
            coords[nz[0]] = h[(i, i)]
    for k in range(n):
        total += mu[k] * coords[k]
    return total


def form_residual(alg: AlgebraData, x: SuperMatrix, variant: str = TRANSPOSE_FORM) -> SuperMatrix:
    """rho(x) C + C rho^t(x); zero iff x preserves C."""
    C = alg.form_C
    return x @ C + C @ super_transpose(x, variant)


def invariance_algebra_dimension(alg: AlgebraData, variant: str = TRANSPOSE_FORM) -> int:
    """Dimension of {X homogeneous : X C + C X^t = 0}, solved entrywise."""
    N = alg.N
    total = 0
    for parity in (0, 1):
        cols = [(i, j) for i in range(N) for j in range(N)
                if (alg.grading[i] + alg.grading[j]) % 2 == parity]
        eb = EchelonBasis(len(cols))
        images = [form_residual(alg, SuperMatrix.unit(alg.grading, i, j), variant) for i, j in cols]
        rows: dict = {}
        for c, img in enumerate(images):
            for key, v in img.data.items():
                rows.setdefault(key, {})[c] = v
        for r in rows.values():
            eb.add(r)
        total += len(cols) - len(eb)
    return total
