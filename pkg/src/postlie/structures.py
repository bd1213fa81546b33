"""Post-Lie and pre-Lie structures, weight-λ Rota-Baxter operators, and the
constructions that produce them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import exactla as la
from . import families
from .errors import (
    DimensionMismatchError,
    NotDirectError,
    NotPostLieError,
    NotSpanningError,
    NotSubalgebraError,
    NotTwoStepNilpotentError,
    PreconditionError,
)
from .exactla import ZERO, Matrix, Vector
from .liealg import (
    Fingerprint,
    JacobiReport,
    LieAlgebra,
    Subspace,
    bracket_subspace,
    check_jacobi,
    classify,
    derived_algebra,
    direct_sum,
    is_derivation,
    is_homomorphism,
    is_subalgebra,
    lie_algebra_of_matrices,
    semidirect,
    subspace_ops,
)


@dataclass(frozen=True)
class LiePair:
    """Two Lie brackets ``g = (V, [,])`` and ``n = (V, {,})`` on one coordinate space."""

    g: LieAlgebra
    n: LieAlgebra

    def __post_init__(self):
        if self.g.dim != self.n.dim:
            raise DimensionMismatchError(f"pair of dims {self.g.dim} and {self.n.dim}")

    @property
    def dim(self) -> int:
        return self.g.dim


@dataclass(frozen=True, eq=False)
class BilinearProduct:
    """``p[i][j]`` holds the coordinates of ``e_i · e_j``; no symmetry assumed."""

    p: tuple = field(repr=False)

    def __post_init__(self):
        p = tuple(tuple(tuple(Fraction(a) for a in v) for v in row) for row in self.p)
        n = len(p)
        if any(len(row) != n or any(len(v) != n for v in row) for row in p):
            raise DimensionMismatchError("product tensor is not cubic")
        object.__setattr__(self, "p", p)

    @classmethod
    def zero(cls, dim: int) -> BilinearProduct:
        return cls(((la.zero_vector(dim),) * dim,) * dim)

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[tuple[int, int], Sequence | Mapping]) -> BilinearProduct:
        p = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in entries.items():
            items = value.items() if isinstance(value, Mapping) else enumerate(value)
            for k, a in items:
                p[i][j][k] += Fraction(a)
        return cls(p)

    @classmethod
    def from_flat(cls, dim: int, flat: Sequence) -> BilinearProduct:
        return cls([[flat[(i * dim + j) * dim:(i * dim + j + 1) * dim] for j in range(dim)]
                    for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.p)

    def flatten(self) -> Vector:
        return tuple(a for row in self.p for v in row for a in v)

    def entries(self) -> dict[tuple[int, int], Vector]:
        """Nonzero products only."""
        return {(i, j): v for i, row in enumerate(self.p) for j, v in enumerate(row) if any(v)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearProduct):
            return NotImplemented
        return self.p == other.p

    def __hash__(self) -> int:
        return hash(self.p)

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, v in enumerate(self.p[i][j]):
                    if v:
                        out[k] += a * b * v
        return tuple(out)

    @cached_property
    def left_basis(self) -> tuple[Matrix, ...]:
        n = self.dim
        return tuple(Matrix.from_columns(self.p[i], n) for i in range(n))

    def left(self, x: Sequence) -> Matrix:
        """L(x): y -> x·y."""
        out = Matrix.zeros(self.dim, self.dim)
        for a, m in zip(x, self.left_basis):
            if a:
                out = out + m * a
        return out

    def right(self, x: Sequence) -> Matrix:
        """R(x): y -> y·x."""
        n = self.dim
        return Matrix.from_columns([self.mul(la.unit_vector(n, j), x) for j in range(n)], n)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the three post-Lie identities.

    ``eq1`` is the difference identity, ``eq2`` the representation identity
    and ``eq3`` the derivation identity; ``witnesses`` maps each failed one to
    its first failing basis index tuple.
    """

    eq1_ok: bool
    eq2_ok: bool
    eq3_ok: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.eq1_ok and self.eq2_ok and self.eq3_ok

    def __bool__(self) -> bool:
        return self.ok


def _require_dims(pair: LiePair, prod: BilinearProduct) -> None:
    if prod.dim != pair.dim:
        raise DimensionMismatchError(f"{prod.dim}-dim product on {pair.dim}-dim pair")


def check_postlie(pair: LiePair, prod: BilinearProduct) -> AxiomReport:
    """Check the three post-Lie identities on basis vectors.

    difference:      x·y - y·x = [x,y] - {x,y}
    representation:  [x,y]·z = x·(y·z) - y·(x·z)
    derivation:      x·{y,z} = {x·y, z} + {y, x·z}

    Witnesses are the lexicographically first failing basis index tuple.
    """
    _require_dims(pair, prod)
    g, n, p = pair.g, pair.n, prod.p
    d = pair.dim
    wit = {}
    eq1 = True
    for i in range(d):
        for j in range(i + 1, d):
            lhs = la.sub_vectors(p[i][j], p[j][i])
            if lhs != la.sub_vectors(g.c[i][j], n.c[i][j]):
                eq1 = False
                wit["eq1"] = (i, j)
                break
        if not eq1:
            break
    L = prod.left_basis
    eq2 = True
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                lhs = prod.mul(g.c[i][j], n.unit(k))
                rhs = la.sub_vectors(prod.mul(n.unit(i), p[j][k]), prod.mul(n.unit(j), p[i][k]))
                if lhs != rhs:
                    eq2 = False
                    wit["eq2"] = (i, j, k)
                    break
            if not eq2:
                break
        if not eq2:
            break
    eq3 = True
    for i in range(d):
        Li = L[i]
        cols = Li.columns()
        for j in range(d):
            for k in range(j + 1, d):
                lhs = Li.apply(n.c[j][k])
                rhs = la.add_vectors(n.bracket(cols[j], n.unit(k)), n.bracket(n.unit(j), cols[k]))
                if lhs != rhs:
                    eq3 = False
                    wit["eq3"] = (i, j, k)
                    break
            if not eq3:
                break
        if not eq3:
            break
    return AxiomReport(eq1, eq2, eq3, wit)


def abelian_like(g: LieAlgebra) -> LieAlgebra:
    return LieAlgebra.from_brackets(f"abelian{g.dim}", g.basis, {})


def check_prelie(g: LieAlgebra, prod: BilinearProduct) -> AxiomReport:
    """Pre-Lie check: post-Lie against the abelian bracket on the same space."""
    return check_postlie(LiePair(g, abelian_like(g)), prod)


def induced_g(n: LieAlgebra, prod: BilinearProduct, name: str = "g") -> tuple[LieAlgebra, JacobiReport]:
    """``[x,y] = x·y - y·x + {x,y}``, with the Jacobi status reported."""
    if prod.dim != n.dim:
        raise DimensionMismatchError(f"{prod.dim}-dim product on {n.dim}-dim {n.name}")
    d = n.dim
    p = prod.p
    brackets = {(i, j): la.add_vectors(la.sub_vectors(p[i][j], p[j][i]), n.c[i][j])
                for i in range(d) for j in range(i + 1, d)}
    g = LieAlgebra.from_brackets(name, n.basis, brackets)
    return g, check_jacobi(g)


def inner_product_from_map(n: LieAlgebra, phi: Matrix) -> BilinearProduct:
    """``x·y = {phi(x), y}``."""
    if phi.rows != n.dim or phi.cols != n.dim:
        raise DimensionMismatchError(f"{phi.rows}x{phi.cols} map on {n.dim}-dim {n.name}")
    ads = [n.adjoint(phi.column(i)) for i in range(n.dim)]
    prod = BilinearProduct([ad.columns() for ad in ads])
    # inner derivations; holds whenever n satisfies Jacobi
    assert all(is_derivation(n, ad) for ad in ads) or not check_jacobi(n).ok
    return prod


@dataclass(frozen=True)
class RotaBaxterReport:
    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_rota_baxter(n: LieAlgebra, r: Matrix, weight=1) -> RotaBaxterReport:
    """``{Rx,Ry} = R({Rx,y} + {x,Ry} + weight {x,y})`` on all basis pairs."""
    if r.rows != n.dim or r.cols != n.dim:
        raise DimensionMismatchError(f"{r.rows}x{r.cols} operator on {n.dim}-dim {n.name}")
    weight = Fraction(weight)
    cols = r.columns()
    d = n.dim
    for i in range(d):
        for j in range(i + 1, d):
            lhs = n.bracket(cols[i], cols[j])
            inner = la.add_vectors(
                la.add_vectors(n.bracket(cols[i], n.unit(j)), n.bracket(n.unit(i), cols[j])),
                la.scale_vector(weight, n.c[i][j]))
            if lhs != r.apply(inner):
                return RotaBaxterReport(False, (i, j))
    return RotaBaxterReport(True)


def rb_from_subalgebra_pair(n: LieAlgebra, n1: Subspace, n2: Subspace) -> Matrix:
    """Weight-1 Rota-Baxter operator ``R(u + v) = -v`` for ``n = n1 ∔ n2``."""
    for label, s in (("n1", n1), ("n2", n2)):
        if not is_subalgebra(n, s):
            raise NotSubalgebraError(f"{label} is not a subalgebra of {n.name}")
    rel = subspace_ops(n, n1, n2)
    if not rel.is_direct:
        raise NotDirectError(f"n1 and n2 meet in dimension {rel.intersection.dim}")
    if not rel.spans:
        raise NotSpanningError(f"n1 + n2 has dimension {rel.sum.dim} < {n.dim}")
    d = n.dim
    basis = Matrix.from_columns(list(n1.basis) + list(n2.basis), d)
    images = []
    for j in range(d):
        coords = la.solve_affine(basis, n.unit(j))[0]
        v2 = la.linear_combination(coords[n1.dim:], n2.basis, d)
        images.append(la.scale_vector(-1, v2))
    r = Matrix.from_columns(images, d)
    assert check_rota_baxter(n, r, 1).ok
    return r


def is_two_step_nilpotent(n: LieAlgebra) -> bool:
    """``{{n,n},n} = 0`` (abelian algebras included)."""
    full = Subspace.full(n.dim)
    return bracket_subspace(n, derived_algebra(n), full).dim == 0


def postlie_to_prelie(pair: LiePair, prod: BilinearProduct) -> BilinearProduct:
    """``x∘y = ½{x,y} + x·y``, a pre-Lie structure on g when n is 2-step nilpotent."""
    if not is_two_step_nilpotent(pair.n):
        raise NotTwoStepNilpotentError(f"{pair.n.name} is not 2-step nilpotent")
    if not check_postlie(pair, prod).ok:
        raise NotPostLieError("input product is not post-Lie on the pair")
    half = Fraction(1, 2)
    d = pair.dim
    out = BilinearProduct([[la.add_vectors(la.scale_vector(half, pair.n.c[i][j]), prod.p[i][j])
                            for j in range(d)] for i in range(d)])
    assert check_prelie(pair.g, out).ok
    return out


def direct_sum_products(pair1: LiePair, prod1: BilinearProduct,
                        pair2: LiePair, prod2: BilinearProduct) -> tuple[LiePair, BilinearProduct]:
    """Blockwise product on ``(g1 ⊕ g2, n1 ⊕ n2)``."""
    for k, (pair, prod) in enumerate(((pair1, prod1), (pair2, prod2)), start=1):
        if not check_postlie(pair, prod).ok:
            raise NotPostLieError(f"summand {k} is not post-Lie")
    d1, d2 = pair1.dim, pair2.dim
    d = d1 + d2
    p = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(d1):
        for j in range(d1):
            p[i][j][:d1] = prod1.p[i][j]
    for i in range(d2):
        for j in range(d2):
            p[d1 + i][d1 + j][d1:] = prod2.p[i][j]
    pair = LiePair(direct_sum(pair1.g, pair2.g), direct_sum(pair1.n, pair2.n))
    prod = BilinearProduct(p)
    assert check_postlie(pair, prod).ok
    return pair, prod


@dataclass(frozen=True)
class Embedding:
    ambient: LieAlgebra
    map: Matrix
    h: LieAlgebra
    h_basis: tuple[Matrix, ...]
    is_homomorphism: bool
    is_injective: bool
    projection_is_isomorphism: bool
    h_fingerprint: Fingerprint

    @property
    def ok(self) -> bool:
        return self.is_homomorphism and self.is_injective and self.projection_is_isomorphism


def embedding_into_semidirect(pair: LiePair, prod: BilinearProduct) -> Embedding:
    """``x -> (L(x), x)`` into ``h ⋉ n`` where ``h = span{L(e_i)} ⊆ Der(n)``.

    The ambient basis lists h first, then n.
    """
    if not check_postlie(pair, prod).ok:
        raise NotPostLieError("input product is not post-Lie on the pair")
    n, g = pair.n, pair.g
    d = n.dim
    flat_span = Subspace(d * d, [m.flatten() for m in prod.left_basis])
    h_basis = tuple(Matrix([v[r * d:(r + 1) * d] for r in range(d)], d) for v in flat_span.basis)
    h = lie_algebra_of_matrices("h", h_basis, prefix="L")
    ambient = semidirect(h, n, h_basis, name=f"{n.name}|xh")
    k = h.dim
    cols = []
    for i in range(d):
        coords = flat_span.coordinates(prod.left_basis[i].flatten()) if k else ()
        cols.append(tuple(coords) + n.unit(i))
    f = Matrix.from_columns(cols, k + d)
    hom = is_homomorphism(f, g, ambient)
    injective = la.rank(f) == d
    proj = Matrix([f.row(k + r) for r in range(d)], d)
    return Embedding(ambient, f, h, h_basis, hom, injective, la.det(proj) != 0, classify(h))


def matrix_product_prelie(n: int) -> BilinearProduct:
    """Associative product ``E_ij E_kl = δ_jk E_il`` on gl_n, a pre-Lie structure."""
    idx = {(i, j): a for a, (i, j) in enumerate((i, j) for i in range(n) for j in range(n))}
    entries = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                entries[(a, b)] = {idx[i, l]: 1}
    return BilinearProduct.from_entries(n * n, entries)


def gl_line_structure(n: int) -> tuple[LiePair, BilinearProduct]:
    """Post-Lie structure on (gl_n ⊕ Q, n) with ``{x, y_i} = y_i``.

    Basis (y_1..y_{n^2}, x); the y-block carries the matrix product,
    ``x·y_i = -y_i`` and every product with x on the right vanishes.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    m = n * n
    gln = families.gl(n)
    g = direct_sum(gln, LieAlgebra.from_brackets("Q", ["x"], {}), name=f"gl{n}+Q")
    nn = LieAlgebra.from_brackets(f"solv{m + 1}", g.basis, {(m, i): {i: 1} for i in range(m)})
    mp = matrix_product_prelie(n)
    entries = {(i, j): tuple(v) + (ZERO,) for (i, j), v in mp.entries().items()}
    for i in range(m):
        entries[(m, i)] = {i: -1}
    return LiePair(g, nn), BilinearProduct.from_entries(m + 1, entries)
