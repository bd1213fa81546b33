"""Generic families of Lie algebras in their standard bases."""

from __future__ import annotations

from fractions import Fraction

from .exactla import Matrix
from .liealg import LieAlgebra, semidirect


def _eij(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n)]


def gl(n: int) -> LieAlgebra:
    """gl_n on E_11, E_12, ..., E_nn with [E_ij, E_kl] = δ_jk E_il - δ_li E_kj."""
    idx = {ij: a for a, ij in enumerate(_eij(n))}
    brackets = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if a >= b:
                continue
            v = {}
            if j == k:
                v[idx[i, l]] = v.get(idx[i, l], 0) + 1
            if l == i:
                v[idx[k, j]] = v.get(idx[k, j], 0) - 1
            brackets[(a, b)] = v
    return LieAlgebra.from_brackets(f"gl{n}", [f"E{i + 1}{j + 1}" for i, j in _eij(n)], brackets)


def sl(n: int) -> LieAlgebra:
    """sl_n on the off-diagonal E_ij (row-major) followed by H_k = E_kk - E_{k+1,k+1}."""
    off = [(i, j) for i, j in _eij(n) if i != j]
    labels = [f"E{i + 1}{j + 1}" for i, j in off] + [f"H{k + 1}" for k in range(n - 1)]
    # work in gl_n coordinates, then express results in the sl_n basis
    def as_gl(a: int) -> dict:
        if a < len(off):
            return {off[a]: Fraction(1)}
        k = a - len(off)
        return {(k, k): Fraction(1), (k + 1, k + 1): Fraction(-1)}

    def commutator(x: dict, y: dict) -> dict:
        out: dict = {}
        for (i, j), p in x.items():
            for (k, l), q in y.items():
                if j == k:
                    out[i, l] = out.get((i, l), 0) + p * q
                if l == i:
                    out[k, j] = out.get((k, j), 0) - p * q
        return {key: v for key, v in out.items() if v}

    def to_sl(m: dict) -> dict:
        v = {}
        for a, ij in enumerate(off):
            if m.get(ij):
                v[a] = m[ij]
        # diagonal part d_1..d_n (trace zero) = sum_k h_k H_k with h_k = d_1 + ... + d_k
        running = Fraction(0)
        for k in range(n - 1):
            running += m.get((k, k), 0)
            if running:
                v[len(off) + k] = running
        return v

    dim = len(labels)
    brackets = {(a, b): to_sl(commutator(as_gl(a), as_gl(b)))
                for a in range(dim) for b in range(a + 1, dim)}
    return LieAlgebra.from_brackets(f"sl{n}", labels, brackets)


def abelian(k: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(f"abelian{k}", [f"e{i + 1}" for i in range(k)], {})


def natural_action(n: int) -> list[Matrix]:
    """E_ij acting on Q^n by matrix multiplication, in gl_n basis order."""
    mats = []
    for i, j in _eij(n):
        rows = [[1 if (r == i and c == j) else 0 for c in range(n)] for r in range(n)]
        mats.append(Matrix(rows, n))
    return mats


def aff(n: int) -> LieAlgebra:
    """aff_n = gl_n ⋉ Q^n with basis (E_11..E_nn, E_1,n+1 .. E_n,n+1)."""
    vec = LieAlgebra.from_brackets("Q", [f"E{i + 1}{n + 1}" for i in range(n)], {})
    return semidirect(gl(n), vec, natural_action(n), name=f"aff{n}")


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets("n3", 3, {(0, 1): {2: 1}})


def filiform4() -> LieAlgebra:
    return LieAlgebra.from_brackets("n4", 4, {(0, 1): {2: 1}, (0, 2): {3: 1}})


def r2() -> LieAlgebra:
    return LieAlgebra.from_brackets("r2", 2, {(0, 1): {1: 1}})


def r3() -> LieAlgebra:
    return LieAlgebra.from_brackets("r3", 3, {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}})


def r31() -> LieAlgebra:
    return LieAlgebra.from_brackets("r31", 3, {(0, 1): {1: 1}, (0, 2): {2: 1}})


def sl_natural_action(n: int) -> list[Matrix]:
    """sl_n basis elements (in :func:`sl` order) as n x n matrices."""
    off = [(i, j) for i, j in _eij(n) if i != j]
    mats = []
    for i, j in off:
        mats.append(Matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], n))
    for k in range(n - 1):
        diag = [1 if r == k else -1 if r == k + 1 else 0 for r in range(n)]
        mats.append(Matrix([[diag[r] if r == c else 0 for c in range(n)] for r in range(n)], n))
    return mats


def sl_ltimes_natural(n: int) -> LieAlgebra:
    """sl_n ⋉ V(n) on the natural module, basis (sl_n basis, v1..vn)."""
    vec = LieAlgebra.from_brackets("V", [f"v{i + 1}" for i in range(n)], {})
    return semidirect(sl(n), vec, sl_natural_action(n), name=f"sl{n}|xV{n}")
