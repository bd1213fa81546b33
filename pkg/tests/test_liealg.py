from fractions import Fraction

import pytest
import sympy

from postlie import catalog, laj
from postlie import exactla as la
from postlie import families as F
from postlie.errors import DimensionMismatchError, JacobiError, NotDerivationError, NotNilpotentError, PostLieError
from postlie.exactla import Matrix
from postlie.liealg import (
    LieAlgebra, Subspace, center, check_isomorphism, check_jacobi, classify, derivation_basis,
    derived_algebra, direct_sum, exp_ad, is_derivation, is_ideal, is_subalgebra, killing_form,
    lie_algebra_of_matrices, nilradical, radical, semidirect, subspace_ops,
)


def derivation_dim_sympy(g: LieAlgebra) -> int:
    """Dimension of Der(g) from the defining linear equations, solved by sympy."""
    n = g.dim
    d = sympy.Matrix(n, n, lambda r, c: sympy.Symbol(f"d{r}_{c}"))
    unknowns = list(d)

    def vec(v):
        return sympy.Matrix([sympy.Rational(a.numerator, a.denominator) for a in v])

    def br(x, y):
        out = sympy.zeros(n, 1)
        for i in range(n):
            for j in range(n):
                if x[i] != 0 and y[j] != 0:
                    out += x[i] * y[j] * vec(g.c[i][j])
        return out

    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = sympy.eye(n)[:, i], sympy.eye(n)[:, j]
            eqs.extend(d * vec(g.c[i][j]) - br(d * ei, ej) - br(ei, d * ej))
    if not eqs:
        return n * n
    a, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    return n * n - a.rank()


class TestBrackets:
    def test_sl2_relations(self):
        g = F.sl(2)
        x, y, h = (g.unit(i) for i in range(3))
        assert g.bracket(x, y) == h
        assert g.bracket(h, x) == la.scale_vector(2, x)
        assert g.bracket(h, y) == la.scale_vector(-2, y)

    def test_antisymmetry_enforced(self):
        c = [[[0, 0], [0, 1]], [[0, 1], [0, 0]]]
        with pytest.raises(DimensionMismatchError):
            LieAlgebra("bad", ("a", "b"), c)

    def test_jacobi_holds_on_families(self):
        for name in catalog.ALGEBRA_EXAMPLES:
            assert check_jacobi(catalog.algebra(name)).ok, name

    def test_jacobi_perturbation_detected(self):
        g = F.sl(3)
        i, j = 0, 2  # E12, E21
        brackets = {(a, b): g.c[a][b] for a in range(g.dim) for b in range(a + 1, g.dim)}
        brackets[(i, j)] = la.unit_vector(g.dim, 7)
        bad = LieAlgebra.from_brackets("bad", g.basis, brackets)
        report = check_jacobi(bad)
        assert not report.ok and report.witness is not None
        with pytest.raises(JacobiError):
            classify(bad)


class TestForms:
    def test_killing_sl2(self):
        k = killing_form(F.sl(2))
        # basis (x, y, h)
        assert k.entries[2][2] == 8
        assert k.entries[0][1] == 4 and k.entries[1][0] == 4
        assert k.entries[2][0] == 0 and k.entries[0][0] == 0

    def test_killing_r2(self):
        k = killing_form(F.r2())
        assert k == Matrix([[1, 0], [0, 0]])

    def test_adjoint_r2(self):
        g = F.r2()
        assert g.adjoint(g.unit(0)) == Matrix([[0, 0], [0, 1]])
        assert g.adjoint(g.unit(1)) == Matrix([[0, 0], [-1, 0]])


class TestSubspaces:
    def test_sum_and_intersection(self):
        a = Subspace(3, [(1, 0, 0), (0, 1, 0)])
        b = Subspace(3, [(0, 1, 0), (0, 0, 1)])
        assert (a + b).dim == 3
        assert a.intersection(b) == Subspace(3, [(0, 1, 0)])

    def test_coordinates(self):
        s = Subspace(3, [(1, 1, 0), (0, 1, 1)])
        v = la.add_vectors(la.scale_vector(2, (1, 1, 0)), la.scale_vector(Fraction(-1, 3), (0, 1, 1)))
        coords = s.coordinates(v)
        assert la.linear_combination(coords, s.basis, 3) == v

    def test_subalgebra_and_ideal(self):
        g = F.gl(2)
        scalars = Subspace(4, [(1, 0, 0, 1)])
        assert is_ideal(g, scalars)
        borel = Subspace(4, [g.unit(0), g.unit(1), g.unit(3)])
        assert is_subalgebra(g, borel) and not is_ideal(g, borel)

    def test_subspace_ops_relation(self):
        g = F.gl(2)
        rel = subspace_ops(g, Subspace(4, [g.unit(0)]), Subspace(4, [g.unit(3)]))
        assert rel.is_direct and not rel.spans


class TestStructureTheory:
    @pytest.mark.parametrize("name, dim", [("n3", 6), ("abelian2", 4), ("sl2", 3), ("r2", 2), ("gl2", 4),
                                           ("n4", 7), ("r3", 4), ("r31", 6), ("aff2", 6)])
    def test_derivation_dimension(self, name, dim):
        g = catalog.algebra(name)
        basis = derivation_basis(g)
        assert len(basis) == dim == derivation_dim_sympy(g)
        assert all(is_derivation(g, d) for d in basis)

    def test_center_and_derived(self):
        g = F.gl(2)
        assert center(g) == Subspace(4, [(1, 0, 0, 1)])
        assert derived_algebra(g).dim == 3

    @pytest.mark.parametrize("name", sorted(catalog.NILRADICAL_TABLE))
    def test_nilradical_table(self, name):
        g = catalog.algebra(name)
        assert nilradical(g) == laj.parse_span(catalog.NILRADICAL_TABLE[name], g.basis)
        assert nilradical(g).intersection(radical(g)) == nilradical(g)
        assert catalog.derivations_into_nilradical(g)

    def test_fingerprints(self):
        fp = classify(F.sl(3))
        assert fp.is_semisimple and fp.is_perfect and fp.is_complete and fp.dim_radical == 0
        fp = classify(F.heisenberg())
        assert fp.is_nilpotent and fp.dim_center == 1 and not fp.is_complete
        fp = classify(F.aff(2))
        assert fp.is_complete and fp.is_solvable is False
        assert classify(F.r3()) != classify(F.r31())

    def test_matrices_to_algebra(self):
        g = lie_algebra_of_matrices("sl2m", F.sl_natural_action(2))
        assert classify(g) == classify(F.sl(2))
        with pytest.raises(PostLieError):
            lie_algebra_of_matrices("dep", [Matrix.identity(2), Matrix.identity(2)])


class TestConstructions:
    def test_direct_sum_relabels_on_collision(self):
        s = direct_sum(F.sl(2), F.sl(2))
        assert s.basis[:3] == ("L.E12", "L.E21", "L.H1")
        assert classify(s).is_semisimple

    def test_direct_sum_keeps_disjoint_labels(self):
        s = direct_sum(F.sl(2), LieAlgebra.from_brackets("Q", ["x"], {}))
        assert s.basis == ("E12", "E21", "H1", "x")

    def test_semidirect_natural(self):
        g = F.sl_ltimes_natural(2)
        assert g.dim == 5 and check_jacobi(g).ok
        assert classify(g).is_perfect

    def test_semidirect_rejects_non_derivation(self):
        with pytest.raises(NotDerivationError):
            semidirect(F.r2(), F.heisenberg(), [Matrix.identity(3), Matrix.identity(3)])

    def test_exp_ad_requires_nilpotent(self):
        g = F.sl(2)
        with pytest.raises(NotNilpotentError):
            exp_ad(g, g.unit(2))

    def test_exp_ad_of_root_vector(self):
        g = F.sl(2)
        phi = exp_ad(g, g.unit(0))
        assert check_isomorphism(phi, g, g)

    def test_zero_map_is_not_isomorphism(self):
        g = F.sl(2)
        assert not check_isomorphism(Matrix.zeros(3, 3), g, g)

    def test_isomorphism_shape_checked(self):
        with pytest.raises(DimensionMismatchError):
            check_isomorphism(Matrix.zeros(2, 3), F.sl(2), F.sl(2))
