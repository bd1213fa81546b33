"""Lie algebras given by structure constants, and their structure theory."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import exactla as la
from .errors import (
    DimensionMismatchError,
    JacobiError,
    NotDerivationError,
    NotHomomorphismError,
    NotNilpotentError,
    PostLieError,
)
from .exactla import ZERO, Matrix, RowReducer, Vector


def _tensor_from_brackets(dim: int, brackets: Mapping[tuple[int, int], Sequence | Mapping]) -> tuple:
    c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), value in brackets.items():
        if isinstance(value, Mapping):
            items = value.items()
        else:
            items = enumerate(value)
        for k, a in items:
            a = Fraction(a)
            if a:
                c[i][j][k] += a
                c[j][i][k] -= a
    return tuple(tuple(tuple(v) for v in row) for row in c)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c[i][j]`` = coordinates of ``[e_i, e_j]``.

    Antisymmetry is enforced on construction.  The Jacobi identity is not:
    algebras induced from arbitrary products are allowed to fail it, so call
    :func:`check_jacobi` where it matters.
    """

    name: str
    basis: tuple[str, ...]
    c: tuple = field(repr=False)

    def __post_init__(self):
        n = len(self.basis)
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != n:
            raise DimensionMismatchError(f"duplicate basis labels in {self.name}")
        c = tuple(tuple(la.vec(v) for v in row) for row in self.c)
        if len(c) != n or any(len(row) != n or any(len(v) != n for v in row) for row in c):
            raise DimensionMismatchError(f"structure tensor of {self.name} is not {n}x{n}x{n}")
        for i in range(n):
            if any(c[i][i]):
                raise DimensionMismatchError(f"[e{i},e{i}] != 0 in {self.name}")
            for j in range(i + 1, n):
                if any(a + b for a, b in zip(c[i][j], c[j][i])):
                    raise DimensionMismatchError(f"brackets of {self.name} are not antisymmetric")
        object.__setattr__(self, "c", c)

    @classmethod
    def from_brackets(cls, name: str, basis: Sequence[str] | int,
                      brackets: Mapping[tuple[int, int], Sequence | Mapping] = None) -> LieAlgebra:
        """Build from ``{(i, j): value}`` with 0-based indices; value is a vector or ``{k: coeff}``.

        Only one of ``(i, j)`` / ``(j, i)`` should be given; omitted pairs are zero.
        """
        if isinstance(basis, int):
            basis = [f"e{k + 1}" for k in range(basis)]
        return cls(name, tuple(basis), _tensor_from_brackets(len(basis), brackets or {}))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis == other.basis and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.basis, self.c))

    def same_brackets(self, other: LieAlgebra) -> bool:
        return self.c == other.c

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def _check(self, x) -> None:
        if len(x) != self.dim:
            raise DimensionMismatchError(f"vector of length {len(x)} in {self.dim}-dim {self.name}")

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        self._check(x)
        self._check(y)
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.c[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] += ab * v
        return tuple(out)

    def unit(self, i: int) -> Vector:
        return la.unit_vector(self.dim, i)

    @cached_property
    def ad_basis(self) -> tuple[Matrix, ...]:
        n = self.dim
        return tuple(Matrix.from_columns([self.c[i][j] for j in range(n)], n) for i in range(n))

    def adjoint(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        self._check(x)
        out = Matrix.zeros(self.dim, self.dim)
        for a, ad in zip(x, self.ad_basis):
            if a:
                out = out + ad * a
        return out

    def is_abelian(self) -> bool:
        return not any(any(v) for row in self.c for v in row)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_jacobi(g: LieAlgebra) -> JacobiReport:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = la.add_vectors(
                    la.add_vectors(g.bracket(g.c[i][j], g.unit(k)), g.bracket(g.c[j][k], g.unit(i))),
                    g.bracket(g.c[k][i], g.unit(j)),
                )
                if any(s):
                    return JacobiReport(False, (i, j, k))
    return JacobiReport(True)


def require_jacobi(g: LieAlgebra) -> None:
    rep = check_jacobi(g)
    if not rep.ok:
        i, j, k = rep.witness
        raise JacobiError(
            f"Jacobi identity fails in {g.name} on ({g.basis[i]}, {g.basis[j]}, {g.basis[k]})")


def killing_form(g: LieAlgebra) -> Matrix:
    ads = g.ad_basis
    n = g.dim
    k = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            k[i][j] = k[j][i] = (ads[i] @ ads[j]).trace()
    return Matrix(k, n)


# -- subspaces ----------------------------------------------------------------


class Subspace:
    """Subspace of ``Q^ambient_dim`` stored as the RREF of a spanning set.

    Equal subspaces have identical stored bases, so ``==`` is exact equality.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence] = ()):
        red = RowReducer(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dim {ambient_dim}")
            red.add({k: Fraction(a) for k, a in enumerate(v) if a})
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(
            tuple(row.get(k, ZERO) for k in range(ambient_dim)) for _, row in red.reduced_rows())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [la.unit_vector(n, i) for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"

    def _same_ambient(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")

    def contains(self, v: Sequence) -> bool:
        return Subspace(self.ambient_dim, self.basis + (tuple(v),)).dim == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        self._same_ambient(other)
        return (self + other).dim == self.dim

    def __add__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        # sum a_i A_i - sum b_j B_j = 0  ->  intersection vectors sum a_i A_i
        cols = list(self.basis) + [la.scale_vector(-1, b) for b in other.basis]
        if not cols:
            return Subspace(self.ambient_dim)
        m = Matrix.from_columns(cols, self.ambient_dim)
        vecs = [la.linear_combination(k[:self.dim], self.basis, self.ambient_dim)
                for k in la.kernel(m)]
        return Subspace(self.ambient_dim, vecs)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the stored basis; raises if ``v`` is outside.

        The basis is in RREF, so the coordinates are read off at the pivots.
        """
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dim {self.ambient_dim}")
        coords = tuple(la._q(v[p]) for p in self.pivots)
        if la.linear_combination(coords, self.basis, self.ambient_dim) != tuple(v):
            raise PostLieError("vector not in subspace")
        return coords

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, a in enumerate(b) if a) for b in self.basis)

    def image(self, f: Matrix) -> Subspace:
        return Subspace(f.rows, [f.apply(v) for v in self.basis])


@dataclass(frozen=True)
class SubspaceRelation:
    sum: Subspace
    intersection: Subspace
    is_direct: bool
    spans: bool


def subspace_ops(g: LieAlgebra, a: Subspace, b: Subspace) -> SubspaceRelation:
    if a.ambient_dim != g.dim or b.ambient_dim != g.dim:
        raise DimensionMismatchError("subspaces do not live in the algebra")
    s = a + b
    meet = a.intersection(b)
    return SubspaceRelation(s, meet, meet.dim == 0, s.dim == g.dim)


def bracket_subspace(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace(g.dim, [g.bracket(x, y) for x in a.basis for y in b.basis])


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(bracket_subspace(g, s, s))


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(bracket_subspace(g, Subspace.full(g.dim), s))


def subalgebra(g: LieAlgebra, s: Subspace, name: str | None = None) -> LieAlgebra:
    """The subalgebra ``s`` as a Lie algebra in its stored basis."""
    if not is_subalgebra(g, s):
        raise PostLieError("subspace is not a subalgebra")
    k = s.dim
    brackets = {(i, j): s.coordinates(g.bracket(s.basis[i], s.basis[j]))
                for i in range(k) for j in range(i + 1, k)}
    return LieAlgebra.from_brackets(name or f"sub({g.name})", [f"s{i + 1}" for i in range(k)], brackets)


# -- structure theory ---------------------------------------------------------


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    rows = [[g.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return Subspace(n, la.kernel(Matrix(rows, n)))


def derived_algebra(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim, [g.c[i][j] for i in range(g.dim) for j in range(i + 1, g.dim)])


def derived_series(g: LieAlgebra) -> list[Subspace]:
    """g, [g,g], ... up to and including the first repeated term (listed once)."""
    out = [Subspace.full(g.dim)]
    while True:
        nxt = bracket_subspace(g, out[-1], out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    full = Subspace.full(g.dim)
    out = [full]
    while True:
        nxt = bracket_subspace(g, full, out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def radical(g: LieAlgebra) -> Subspace:
    """Solvable radical: the Killing-orthogonal complement of [g, g]."""
    k = killing_form(g)
    dg = derived_algebra(g)
    if dg.dim == 0:
        return Subspace.full(g.dim)
    rows = [k.apply(y) for y in dg.basis]
    return Subspace(g.dim, la.kernel(Matrix(rows, g.dim)))


def _associative_closure(gens: Sequence[Matrix]) -> list[Matrix]:
    """Basis of the (non-unital) associative matrix algebra generated by ``gens``."""
    if not gens:
        return []
    n = gens[0].rows
    red = RowReducer(n * n)
    basis: list[Matrix] = []

    def push(m: Matrix) -> bool:
        if red.add({k: a for k, a in enumerate(m.flatten()) if a}) is None:
            return False
        basis.append(m)
        return True

    for m in gens:
        push(m)
    frontier = list(basis)
    while frontier:
        new = []
        for a in frontier:
            for b in gens:
                p = a @ b
                if push(p):
                    new.append(p)
        frontier = new
    return basis


def nilradical(g: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal.

    nil(g) = {x in rad(g) : ad x nilpotent}.  The associative algebra A
    generated by ad(rad g) is triangularisable, so its nilpotent elements are
    exactly its Jacobson radical, which in characteristic 0 is the kernel of
    the trace form (a, b) -> tr(ab).
    """
    rad = radical(g)
    if rad.dim == 0:
        return rad
    ads = [g.adjoint(r) for r in rad.basis]
    alg = _associative_closure(ads)
    m = len(alg)
    gram = Matrix([[(a @ b).trace() for b in alg] for a in alg], m)
    jac = [la.linear_combination(v, [a.flatten() for a in alg], g.dim ** 2)
           for v in la.kernel(gram)]
    # sum_i c_i ad(r_i) - sum_k d_k J_k = 0
    cols = [a.flatten() for a in ads] + [la.scale_vector(-1, j) for j in jac]
    ker = la.kernel(Matrix.from_columns(cols, g.dim ** 2))
    return Subspace(g.dim, [la.linear_combination(v[:rad.dim], rad.basis, g.dim) for v in ker])


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    n = g.dim
    if d.rows != n or d.cols != n:
        raise DimensionMismatchError(f"{d.rows}x{d.cols} map on {n}-dim {g.name}")
    cols = d.columns()
    for i in range(n):
        for j in range(i + 1, n):
            lhs = d.apply(g.c[i][j])
            rhs = la.add_vectors(g.bracket(cols[i], g.unit(j)), g.bracket(g.unit(i), cols[j]))
            if lhs != rhs:
                return False
    return True


def _derivation_rows(g: LieAlgebra) -> list[dict[int, Fraction]]:
    # unknown D[r][s] at index r*n + s; column s of D is D(e_s)
    n = g.dim
    c = g.c
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row: dict[int, Fraction] = {}
                for m in range(n):
                    for idx, a in (((k * n + m), c[i][j][m]),
                                   ((m * n + i), -c[m][j][k]),
                                   ((m * n + j), -c[i][m][k])):
                        if a:
                            row[idx] = row.get(idx, ZERO) + a
                row = {key: a for key, a in row.items() if a}
                if row:
                    rows.append(row)
    return rows


def lie_algebra_of_matrices(name: str, mats: Sequence[Matrix], prefix: str = "D") -> LieAlgebra:
    """Commutator algebra on the span of linearly independent matrices."""
    if not mats:
        return LieAlgebra.from_brackets(name, [], {})
    span = Subspace(mats[0].rows * mats[0].cols, [m.flatten() for m in mats])
    k = len(mats)
    if span.dim != k:
        raise PostLieError(f"matrices spanning {name} are linearly dependent")
    # coordinates relative to the given matrices, via the RREF basis
    to_given = [span.coordinates(m.flatten()) for m in mats]
    inv = la.inverse(Matrix.from_columns(to_given, k))
    brackets = {}
    for a in range(k):
        for b in range(a + 1, k):
            comm = (mats[a] @ mats[b] - mats[b] @ mats[a]).flatten()
            try:
                coords = span.coordinates(comm)
            except PostLieError:
                raise PostLieError(f"span of matrices in {name} is not closed under commutators") from None
            brackets[(a, b)] = inv.apply(coords)
    return LieAlgebra.from_brackets(name, [f"{prefix}{i + 1}" for i in range(k)], brackets)


def derivation_basis(g: LieAlgebra) -> list[Matrix]:
    n = g.dim
    red = RowReducer(n * n)
    for row in _derivation_rows(g):
        red.add(row)
    kern = la._kernel_from_rows(red.reduced_rows(), n * n)
    return [Matrix([v[r * n:(r + 1) * n] for r in range(n)], n) for v in kern]


def derivation_algebra(g: LieAlgebra) -> tuple[list[Matrix], LieAlgebra]:
    basis = derivation_basis(g)
    return basis, lie_algebra_of_matrices(f"Der({g.name})", basis)


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    dim_center: int
    derived_series_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    dim_radical: int
    dim_nilradical: int
    dim_derivations: int
    is_semisimple: bool
    is_solvable: bool
    is_nilpotent: bool
    is_perfect: bool
    is_abelian: bool
    is_complete: bool

    @property
    def dim_derived(self) -> int:
        return self.derived_series_dims[1] if len(self.derived_series_dims) > 1 else self.dim

    def as_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def classify(g: LieAlgebra) -> Fingerprint:
    require_jacobi(g)
    ds = [s.dim for s in derived_series(g)]
    lcs = [s.dim for s in lower_central_series(g)]
    z = center(g).dim
    nder = len(derivation_basis(g))
    return Fingerprint(
        dim=g.dim,
        dim_center=z,
        derived_series_dims=tuple(ds),
        lower_central_dims=tuple(lcs),
        dim_radical=radical(g).dim,
        dim_nilradical=nilradical(g).dim,
        dim_derivations=nder,
        is_semisimple=la.det(killing_form(g)) != 0,
        is_solvable=ds[-1] == 0,
        is_nilpotent=lcs[-1] == 0,
        is_perfect=(ds[1] if len(ds) > 1 else ds[0]) == g.dim,
        is_abelian=(ds[1] if len(ds) > 1 else ds[0]) == 0,
        is_complete=z == 0 and nder == g.dim,
    )


# -- constructions ------------------------------------------------------------


def _disjoint_labels(a: Sequence[str], b: Sequence[str]) -> tuple[list[str], list[str]]:
    if set(a) & set(b):
        return [f"L.{x}" for x in a], [f"R.{x}" for x in b]
    return list(a), list(b)


def direct_sum(g1: LieAlgebra, g2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Block brackets with zero cross terms; labels get ``L.``/``R.`` only on collision."""
    n1, n2 = g1.dim, g2.dim
    la1, la2 = _disjoint_labels(g1.basis, g2.basis)
    brackets = {}
    for i in range(n1):
        for j in range(i + 1, n1):
            brackets[(i, j)] = tuple(g1.c[i][j]) + (ZERO,) * n2
    for i in range(n2):
        for j in range(i + 1, n2):
            brackets[(n1 + i, n1 + j)] = (ZERO,) * n1 + tuple(g2.c[i][j])
    return LieAlgebra.from_brackets(name or f"{g1.name}+{g2.name}", la1 + la2, brackets)


def semidirect(h: LieAlgebra, n: LieAlgebra, action: Sequence[Matrix], name: str | None = None) -> LieAlgebra:
    """``h ⋉ n`` with basis (h-basis, n-basis); ``action[i]`` is the derivation by ``h_i``."""
    if len(action) != h.dim:
        raise DimensionMismatchError(f"{len(action)} action maps for {h.dim}-dim {h.name}")
    for i, a in enumerate(action):
        if not is_derivation(n, a):
            raise NotDerivationError(f"action of {h.basis[i]} is not a derivation of {n.name}")
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            comm = action[i] @ action[j] - action[j] @ action[i]
            image = Matrix.zeros(n.dim, n.dim)
            for k, a in enumerate(h.c[i][j]):
                if a:
                    image = image + action[k] * a
            if comm != image:
                raise NotHomomorphismError(
                    f"action does not respect [{h.basis[i]}, {h.basis[j]}]")
    p, q = h.dim, n.dim
    lh, ln = _disjoint_labels(h.basis, n.basis)
    brackets = {}
    for i in range(p):
        for j in range(i + 1, p):
            brackets[(i, j)] = tuple(h.c[i][j]) + (ZERO,) * q
        for j in range(q):
            brackets[(i, p + j)] = (ZERO,) * p + action[i].column(j)
    for i in range(q):
        for j in range(i + 1, q):
            brackets[(p + i, p + j)] = (ZERO,) * p + tuple(n.c[i][j])
    out = LieAlgebra.from_brackets(name or f"{h.name}|x{n.name}", lh + ln, brackets)
    require_jacobi(out)
    return out


def check_isomorphism(f: Matrix, g1: LieAlgebra, g2: LieAlgebra) -> bool:
    """True iff ``f`` is invertible and ``f[x,y] = [fx, fy]`` on basis pairs."""
    if f.rows != g2.dim or f.cols != g1.dim:
        raise DimensionMismatchError(f"{f.rows}x{f.cols} map between dims {g1.dim} and {g2.dim}")
    if g1.dim != g2.dim or la.det(f) == 0:
        return False
    return is_homomorphism(f, g1, g2)


def is_homomorphism(f: Matrix, g1: LieAlgebra, g2: LieAlgebra) -> bool:
    if f.rows != g2.dim or f.cols != g1.dim:
        raise DimensionMismatchError(f"{f.rows}x{f.cols} map between dims {g1.dim} and {g2.dim}")
    cols = f.columns()
    for i in range(g1.dim):
        for j in range(i + 1, g1.dim):
            if f.apply(g1.c[i][j]) != g2.bracket(cols[i], cols[j]):
                return False
    return True


def exp_ad(g: LieAlgebra, z: Sequence) -> Matrix:
    """``exp(ad z)`` for ad-nilpotent ``z``; the result is checked to be an automorphism."""
    adz = g.adjoint(la.vec(z))
    if not la.is_nilpotent_matrix(adz):
        raise NotNilpotentError(f"ad(z) is not nilpotent in {g.name}")
    phi = la.nilpotent_exp(adz)
    if not check_isomorphism(phi, g, g):
        raise PostLieError("exp(ad z) failed to be an automorphism; Jacobi must fail")
    return phi
