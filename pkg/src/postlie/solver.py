"""Exact search for post-Lie structures and weight-1 Rota-Baxter operators.

The difference identity and the derivation identity are affine-linear in the
product tensor, so a linear stage solves them exactly.  The representation
identity is quadratic; the grid
stage enumerates the free parameters over a finite rational grid by
backtracking with exact linear propagation, and every hit is re-verified.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactla as la
from .errors import ParameterCapExceeded, PreconditionError
from .exactla import ZERO, Matrix, RowReducer, Vector
from .liealg import Fingerprint, LieAlgebra, classify
from .structures import (
    AxiomReport,
    BilinearProduct,
    LiePair,
    check_postlie,
    check_rota_baxter,
    induced_g,
    inner_product_from_map,
)

NOT_A_PROOF = "GRID-EMPTY is evidence only, not a proof of non-existence"


@dataclass(frozen=True)
class Ansatz:
    """Search policy.

    ``support`` optionally lists the flat indices allowed to be nonzero:
    ``(i*n + j)*n + k`` for product entries, ``row*n + col`` for operators.
    """

    coefficient_bound: int = 1
    denominators: tuple[int, ...] = (1, 2)
    max_solutions: int = 10000
    parameter_cap: int = 20
    support: frozenset[int] | None = None

    def __post_init__(self):
        if self.coefficient_bound < 0:
            raise PreconditionError("coefficient bound must be >= 0")
        if not self.denominators or any(d <= 0 for d in self.denominators):
            raise PreconditionError("denominators must be a nonempty list of positive integers")
        object.__setattr__(self, "denominators", tuple(self.denominators))
        if self.support is not None:
            object.__setattr__(self, "support", frozenset(self.support))

    def grid_values(self) -> tuple[Fraction, ...]:
        b = self.coefficient_bound
        vals = {Fraction(a, d) for d in self.denominators for a in range(-b * d, b * d + 1)}
        return tuple(sorted(vals))


@dataclass(frozen=True)
class AffineSolutionSpace:
    """``particular + sum t_a * basis[a]`` over flattened product tensors."""

    particular: Vector
    homogeneous_basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.homogeneous_basis)

    def point(self, t: Sequence) -> Vector:
        out = list(self.particular)
        for c, b in zip(t, self.homogeneous_basis, strict=True):
            if c:
                for k, a in enumerate(b):
                    if a:
                        out[k] += c * a
        return tuple(out)

    def contains(self, flat: Sequence) -> bool:
        """Membership test by solving for the parameters."""
        diff = la.sub_vectors(flat, self.particular)
        if not self.homogeneous_basis:
            return not any(diff)
        return la.solve_affine(Matrix.from_columns(self.homogeneous_basis, len(diff)), diff) is not None


@dataclass(frozen=True)
class Solution:
    product: BilinearProduct
    report: AxiomReport
    fingerprint: Fingerprint
    parameters: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class SolutionSet:
    solutions: tuple[Solution, ...]
    exhausted: bool
    n_params: int = 0

    def __len__(self) -> int:
        return len(self.solutions)

    def products(self) -> list[BilinearProduct]:
        return [s.product for s in self.solutions]


# -- linear stage -------------------------------------------------------------


def _pidx(n: int, i: int, j: int, k: int) -> int:
    return (i * n + j) * n + k


def linear_equations(pair: LiePair) -> list[tuple[dict[int, Fraction], Fraction]]:
    """Difference identity for i<j and derivation identity for all i, j<k, as sparse affine rows."""
    g, nn = pair.g, pair.n
    n = pair.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                rows.append(({_pidx(n, i, j, k): Fraction(1), _pidx(n, j, i, k): Fraction(-1)},
                             g.c[i][j][k] - nn.c[i][j][k]))
    c = nn.c
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                for m in range(n):
                    # e_i·{e_j,e_k} - {e_i·e_j, e_k} - {e_j, e_i·e_k}, component m
                    row: dict[int, Fraction] = {}
                    for r in range(n):
                        for idx, a in ((_pidx(n, i, r, m), c[j][k][r]),
                                       (_pidx(n, i, j, r), -c[r][k][m]),
                                       (_pidx(n, i, k, r), -c[j][r][m])):
                            if a:
                                row[idx] = row.get(idx, ZERO) + a
                    row = {key: a for key, a in row.items() if a}
                    if row:
                        rows.append((row, ZERO))
    return rows


def linear_stage(pair: LiePair, support: Iterable[int] | None = None) -> AffineSolutionSpace | None:
    """Exact affine solution space of the two linear identities; None means no structure exists."""
    n = pair.dim
    rows = linear_equations(pair)
    if support is not None:
        allowed = set(support)
        rows += [({idx: Fraction(1)}, ZERO) for idx in range(n ** 3) if idx not in allowed]
    sol = la.solve_sparse(rows, n ** 3)
    if sol is None:
        return None
    particular, basis = sol
    return AffineSolutionSpace(particular, tuple(basis))


# -- quadratic constraint search ---------------------------------------------
#
# An equation is (const, {var: coeff}, {(a, b): coeff}) with a <= b, meaning
# const + sum lin + sum quad == 0.

Affine = tuple  # (Fraction const, dict var->coeff)


def _affine_mul(x: Affine, y: Affine, const: Fraction, lin: dict, quad: dict, scale: Fraction) -> None:
    c0, l0 = x
    c1, l1 = y
    if c0 and c1:
        const[0] += scale * c0 * c1
    if c0:
        for v, a in l1.items():
            lin[v] = lin.get(v, ZERO) + scale * c0 * a
    if c1:
        for v, a in l0.items():
            lin[v] = lin.get(v, ZERO) + scale * c1 * a
    for u, a in l0.items():
        for v, b in l1.items():
            key = (u, v) if u <= v else (v, u)
            quad[key] = quad.get(key, ZERO) + scale * a * b


def _finish(const, lin, quad):
    lin = {v: a for v, a in lin.items() if a}
    quad = {k: a for k, a in quad.items() if a}
    if not lin and not quad and not const[0]:
        return None
    return (const[0], lin, quad)


def _dedupe(eqs: list) -> list:
    seen = set()
    out = []
    for eq in eqs:
        if eq is None:
            continue
        key = (eq[0], tuple(sorted(eq[1].items())), tuple(sorted(eq[2].items())))
        if key not in seen:
            seen.add(key)
            out.append(eq)
    return out


class _Search:
    def __init__(self, nvars: int, equations: list, values: Sequence[Fraction]):
        self.nvars = nvars
        self.equations = equations
        self.values = tuple(values)
        self.valueset = frozenset(values)

    def propagate(self, assign: dict[int, Fraction]) -> dict[int, Fraction] | None:
        assign = dict(assign)
        while True:
            red = RowReducer(self.nvars + 1)
            for const, lin, quad in self.equations:
                c = const
                coeffs: dict[int, Fraction] = {}
                nonlinear = False
                for v, a in lin.items():
                    x = assign.get(v)
                    if x is None:
                        coeffs[v] = coeffs.get(v, ZERO) + a
                    elif x:
                        c += a * x
                for (u, v), a in quad.items():
                    xu = assign.get(u)
                    xv = assign.get(v)
                    if xu is not None and xv is not None:
                        if xu and xv:
                            c += a * xu * xv
                    elif xu is not None:
                        if xu:
                            coeffs[v] = coeffs.get(v, ZERO) + a * xu
                    elif xv is not None:
                        if xv:
                            coeffs[u] = coeffs.get(u, ZERO) + a * xv
                    else:
                        nonlinear = True
                        break
                if nonlinear:
                    continue
                row = {v: a for v, a in coeffs.items() if a}
                if not row:
                    if c:
                        return None
                    continue
                if c:
                    row[self.nvars] = -c
                if red.add(row) == self.nvars:
                    return None
            fixed = False
            for p, row in red.reduced_rows():
                if len(row) <= 2 and all(k in (p, self.nvars) for k in row):
                    value = row.get(self.nvars, ZERO)
                    if value not in self.valueset:
                        return None
                    assign[p] = value
                    fixed = True
            if not fixed:
                return assign

    def run(self, assign: dict[int, Fraction], limit: int) -> tuple[list[tuple[Fraction, ...]], bool]:
        out: list[tuple[Fraction, ...]] = []
        root = self.propagate(assign)
        if root is None:
            return out, True
        exhausted = self._dfs(root, out, limit)
        return out, exhausted

    def _dfs(self, assign: dict[int, Fraction], out: list, limit: int) -> bool:
        free = next((v for v in range(self.nvars) if v not in assign), None)
        if free is None:
            if len(out) >= limit:
                return False
            out.append(tuple(assign[v] for v in range(self.nvars)))
            return True
        for value in self.values:
            trial = dict(assign)
            trial[free] = value
            nxt = self.propagate(trial)
            if nxt is None:
                continue
            if not self._dfs(nxt, out, limit):
                return False
        return True

    def root_branches(self) -> tuple[dict | None, int | None]:
        root = self.propagate({})
        if root is None:
            return None, None
        free = next((v for v in range(self.nvars) if v not in root), None)
        return root, free


def _run_branch(args):
    search, assign, limit = args
    return search.run(assign, limit)


def _enumerate(search: _Search, limit: int, workers: int) -> tuple[list[tuple[Fraction, ...]], bool]:
    if workers <= 1:
        return search.run({}, limit)
    root, free = search.root_branches()
    if root is None:
        return [], True
    if free is None:
        return search.run(root, limit)
    jobs = []
    for value in search.values:
        a = dict(root)
        a[free] = value
        jobs.append((search, a, limit))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_branch, jobs))
    merged: list = []
    exhausted = True
    for sols, ex in parts:
        merged.extend(sols)
        exhausted = exhausted and ex
    if len(merged) > limit:
        merged = merged[:limit]
        exhausted = False
    return merged, exhausted


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def postlie_equations(pair: LiePair, space: AffineSolutionSpace) -> list:
    """The representation identity as quadratic equations in the parameters of ``space``."""
    n = pair.dim
    g = pair.g
    P = space.particular
    B = space.homogeneous_basis

    def entry(idx: int) -> Affine:
        return (P[idx], {a: b[idx] for a, b in enumerate(B) if b[idx]})

    aff = [entry(idx) for idx in range(n ** 3)]
    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for m in range(n):
                    const = [ZERO]
                    lin: dict = {}
                    quad: dict = {}
                    # [e_i,e_j]·e_k
                    for r, a in enumerate(g.c[i][j]):
                        if a:
                            c0, l0 = aff[_pidx(n, r, k, m)]
                            const[0] += a * c0
                            for v, b in l0.items():
                                lin[v] = lin.get(v, ZERO) + a * b
                    for r in range(n):
                        # - e_i·(e_j·e_k) + e_j·(e_i·e_k)
                        _affine_mul(aff[_pidx(n, j, k, r)], aff[_pidx(n, i, r, m)], const, lin, quad, Fraction(-1))
                        _affine_mul(aff[_pidx(n, i, k, r)], aff[_pidx(n, j, r, m)], const, lin, quad, Fraction(1))
                    eqs.append(_finish(const, lin, quad))
    return _dedupe(eqs)


def grid_search(pair: LiePair, space: AffineSolutionSpace, ansatz: Ansatz = Ansatz(),
                workers: int | None = None) -> SolutionSet:
    """All grid points of ``space`` satisfying the representation identity, in lexicographic parameter order."""
    if space.dim > ansatz.parameter_cap:
        raise ParameterCapExceeded(space.dim, ansatz.parameter_cap)
    n = pair.dim
    eqs = postlie_equations(pair, space)
    if ansatz.support is not None:
        # mask constraints are linear in the parameters
        for idx in range(n ** 3):
            if idx in ansatz.support:
                continue
            lin = {a: b[idx] for a, b in enumerate(space.homogeneous_basis) if b[idx]}
            eq = _finish([space.particular[idx]], lin, {})
            if eq is not None:
                eqs.append(eq)
    search = _Search(space.dim, eqs, ansatz.grid_values())
    params, exhausted = _enumerate(search, ansatz.max_solutions,
                                   default_workers() if workers is None else workers)
    sols = []
    for t in params:
        prod = BilinearProduct.from_flat(n, space.point(t))
        report = check_postlie(pair, prod)
        if not report.ok:
            raise AssertionError(f"grid hit {t} failed verification: {report}")
        g, _ = induced_g(pair.n, prod)
        sols.append(Solution(prod, report, classify(g), tuple(t)))
    return SolutionSet(tuple(sols), exhausted, space.dim)


def search_postlie(pair: LiePair, ansatz: Ansatz = Ansatz(), workers: int | None = None) -> SolutionSet:
    space = linear_stage(pair, ansatz.support)
    if space is None:
        return SolutionSet((), True, 0)
    return grid_search(pair, space, ansatz, workers)


# -- Rota-Baxter operators ----------------------------------------------------


@dataclass(frozen=True)
class RotaBaxterSolution:
    operator: Matrix
    fingerprint: Fingerprint


def rota_baxter_equations(n: LieAlgebra, variables: Sequence[int], weight=1) -> list:
    """Weight-λ identity on basis pairs as quadratic equations in the chosen operator entries."""
    d = n.dim
    var_of = {idx: a for a, idx in enumerate(variables)}
    weight = Fraction(weight)
    c = n.c

    def r(row: int, col: int) -> int | None:
        return var_of.get(row * d + col)

    eqs = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                lin: dict = {}
                quad: dict = {}

                def add_quad(u, v, coeff):
                    if u is None or v is None or not coeff:
                        return
                    key = (u, v) if u <= v else (v, u)
                    quad[key] = quad.get(key, ZERO) + coeff

                # {Re_i, Re_j}_k
                for a in range(d):
                    for b in range(d):
                        add_quad(r(a, i), r(b, j), c[a][b][k])
                # - R({Re_i, e_j} + {e_i, Re_j} + λ{e_i, e_j})_k
                for m in range(d):
                    rkm = r(k, m)
                    if rkm is None:
                        continue
                    for a in range(d):
                        add_quad(rkm, r(a, i), -c[a][j][m])
                        add_quad(rkm, r(a, j), -c[i][a][m])
                    if weight and c[i][j][m]:
                        lin[rkm] = lin.get(rkm, ZERO) - weight * c[i][j][m]
                eqs.append(_finish([ZERO], lin, quad))
    return _dedupe(eqs)


def search_rb(n: LieAlgebra, ansatz: Ansatz = Ansatz(), workers: int | None = None,
              weight=1) -> list[RotaBaxterSolution]:
    """Operators on the grid (restricted to ``ansatz.support``) passing the weight-λ identity."""
    d = n.dim
    variables = sorted(ansatz.support) if ansatz.support is not None else list(range(d * d))
    if len(variables) > ansatz.parameter_cap:
        raise ParameterCapExceeded(len(variables), ansatz.parameter_cap)
    eqs = rota_baxter_equations(n, variables, weight)
    search = _Search(len(variables), eqs, ansatz.grid_values())
    params, _ = _enumerate(search, ansatz.max_solutions,
                           default_workers() if workers is None else workers)
    out = []
    for t in params:
        flat = [ZERO] * (d * d)
        for idx, v in zip(variables, t):
            flat[idx] = v
        op = Matrix([flat[row * d:(row + 1) * d] for row in range(d)], d)
        if not check_rota_baxter(n, op, weight).ok:
            raise AssertionError(f"grid hit {t} failed Rota-Baxter verification")
        g, jac = induced_g(n, inner_product_from_map(n, op))
        out.append(RotaBaxterSolution(op, classify(g)))
    return out


# -- reporting ----------------------------------------------------------------


@dataclass(frozen=True)
class NonexistenceReport:
    status: str  # PROVEN-EMPTY | GRID-EMPTY | WITNESS-FOUND
    bound: int
    n_params: int = 0
    exhausted: bool = True
    witness: BilinearProduct | None = None
    caveat: str = field(default="")

    @property
    def label(self) -> str:
        if self.status == "GRID-EMPTY":
            return f"GRID-EMPTY({self.bound})"
        return self.status

    def __str__(self) -> str:
        s = self.label
        if self.caveat:
            s += f" - {self.caveat}"
        return s


def nonexistence_report(pair: LiePair, ansatz: Ansatz = Ansatz(), workers: int | None = None) -> NonexistenceReport:
    b = ansatz.coefficient_bound
    space = linear_stage(pair, ansatz.support)
    if space is None:
        if ansatz.support is not None:
            # inconsistency under a support mask only rules out the masked products
            return NonexistenceReport("GRID-EMPTY", b, 0, True, None, NOT_A_PROOF)
        return NonexistenceReport("PROVEN-EMPTY", b, 0, True, None,
                                  "the linear identities are inconsistent: no structure exists")
    found = grid_search(pair, space, Ansatz(ansatz.coefficient_bound, ansatz.denominators, 1,
                                            ansatz.parameter_cap, ansatz.support), workers)
    if found.solutions:
        return NonexistenceReport("WITNESS-FOUND", b, space.dim, found.exhausted,
                                  found.solutions[0].product)
    return NonexistenceReport("GRID-EMPTY", b, space.dim, found.exhausted, None, NOT_A_PROOF)
