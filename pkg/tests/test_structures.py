from fractions import Fraction

import pytest

from postlie import catalog, laj
from postlie import exactla as la
from postlie import families as F
from postlie.errors import (
    DimensionMismatchError, NotDirectError, NotPostLieError, NotSpanningError, NotSubalgebraError,
    NotTwoStepNilpotentError, PreconditionError,
)
from postlie.exactla import Matrix
from postlie.liealg import LieAlgebra, Subspace, classify
from postlie.structures import (
    BilinearProduct, LiePair, abelian_like, check_postlie, check_prelie, check_rota_baxter,
    direct_sum_products, embedding_into_semidirect, gl_line_structure, induced_g, inner_product_from_map,
    matrix_product_prelie, postlie_to_prelie, rb_from_subalgebra_pair,
)


def lr_n3() -> tuple[LiePair, BilinearProduct]:
    n = F.heisenberg()
    prod = BilinearProduct.from_entries(3, {(1, 0): {2: 1}})
    return LiePair(abelian_like(n), n), prod


class TestBilinearProduct:
    def test_mul_and_operators(self):
        prod = BilinearProduct.from_entries(2, {(0, 1): {1: 3}})
        assert prod.mul((1, 0), (0, 1)) == la.vec([0, 3])
        assert prod.left((1, 0)) == Matrix([[0, 0], [0, 3]])
        assert prod.right((0, 1)) == Matrix([[0, 0], [3, 0]])

    def test_flat_round_trip(self):
        _, prod = gl_line_structure(2)
        assert BilinearProduct.from_flat(prod.dim, prod.flatten()).p == prod.p


class TestCheckPostlie:
    def test_zero_product_on_equal_abelian_pair(self):
        a = F.abelian(3)
        assert check_postlie(LiePair(a, a), BilinearProduct.zero(3)).ok

    def test_zero_product_needs_equal_brackets(self):
        report = check_postlie(LiePair(F.abelian(3), F.heisenberg()), BilinearProduct.zero(3))
        assert not report.eq1_ok and report.eq2_ok and report.eq3_ok
        assert report.witnesses == {"eq1": (0, 1)}

    def test_negative_bracket_product(self):
        # x.y = -{x,y} is post-Lie on (g, n) when g carries the opposite bracket -{,}
        n = F.sl(2)
        prod = BilinearProduct([[la.scale_vector(-1, n.c[i][j]) for j in range(3)] for i in range(3)])
        opposite = LieAlgebra("sl2op", n.basis, [[la.scale_vector(-1, v) for v in row] for row in n.c])
        assert check_postlie(LiePair(opposite, n), prod).ok
        assert not check_postlie(LiePair(abelian_like(n), n), prod).ok

    def test_lr_structure(self):
        pair, prod = lr_n3()
        assert check_postlie(pair, prod).ok

    def test_derivation_identity_failure(self):
        pair, prod = lr_n3()
        bad = BilinearProduct.from_entries(3, {(1, 0): {2: 1}, (0, 0): {0: 1}})
        report = check_postlie(pair, bad)
        assert not report.ok
        assert check_postlie(pair, prod).ok

    def test_dimension_mismatch(self):
        pair, _ = lr_n3()
        with pytest.raises(DimensionMismatchError):
            check_postlie(pair, BilinearProduct.zero(2))

    def test_matrix_product_is_prelie(self):
        for size in (2, 3):
            assert check_prelie(F.gl(size), matrix_product_prelie(size)).ok


class TestInducedAndInner:
    def test_induced_g_of_lr_structure(self):
        pair, prod = lr_n3()
        g, jac = induced_g(pair.n, prod)
        assert jac.ok and g.same_brackets(pair.g)

    def test_induced_g_reports_jacobi_failure(self):
        n = F.abelian(3)
        prod = BilinearProduct.from_entries(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {0: 1}})
        g, jac = induced_g(n, prod)
        assert not jac.ok

    def test_inner_product_uses_adjoint(self):
        n = F.sl(2)
        phi = Matrix.identity(3)
        prod = inner_product_from_map(n, phi)
        assert prod.mul(n.unit(0), n.unit(1)) == n.c[0][1]

    def test_inner_product_shape(self):
        with pytest.raises(DimensionMismatchError):
            inner_product_from_map(F.sl(2), Matrix.identity(2))


class TestRotaBaxter:
    @pytest.mark.parametrize("name", ["sl2", "sl3", "r2", "n3", "gl2"])
    def test_trivial_operators(self, name):
        n = catalog.algebra(name)
        assert check_rota_baxter(n, Matrix.zeros(n.dim, n.dim), 1).ok
        assert check_rota_baxter(n, -Matrix.identity(n.dim), 1).ok

    def test_identity_fails_weight_one_on_nonabelian(self):
        n = F.sl(2)
        assert not check_rota_baxter(n, Matrix.identity(3), 1).ok

    def test_trivial_pairs(self):
        n = F.sl(2)
        full, zero = Subspace.full(3), Subspace.zero(3)
        assert rb_from_subalgebra_pair(n, full, zero) == Matrix.zeros(3, 3)
        assert rb_from_subalgebra_pair(n, zero, full) == -Matrix.identity(3)

    def test_pair_preconditions(self):
        n = F.sl(2)
        x, y, h = (n.unit(i) for i in range(3))
        with pytest.raises(NotSubalgebraError):
            rb_from_subalgebra_pair(n, Subspace(3, [x, y]), Subspace(3, [h]))
        with pytest.raises(NotDirectError):
            rb_from_subalgebra_pair(n, Subspace(3, [x, h]), Subspace(3, [h, y]))
        with pytest.raises(NotSpanningError):
            rb_from_subalgebra_pair(n, Subspace(3, [x]), Subspace(3, [h]))

    def test_borel_splitting_gives_postlie(self):
        n = F.sl(2)
        x, y, h = (n.unit(i) for i in range(3))
        r = rb_from_subalgebra_pair(n, Subspace(3, [x, h]), Subspace(3, [y]))
        prod = inner_product_from_map(n, r)
        g, jac = induced_g(n, prod)
        assert jac.ok and check_postlie(LiePair(g, n), prod).ok


class TestTransforms:
    def test_postlie_to_prelie_on_heisenberg(self):
        pair, prod = lr_n3()
        out = postlie_to_prelie(pair, prod)
        # x o y = 1/2 {x,y} + x.y
        assert out.mul(pair.n.unit(0), pair.n.unit(1)) == la.vec([0, 0, Fraction(1, 2)])
        assert out.mul(pair.n.unit(1), pair.n.unit(0)) == la.vec([0, 0, Fraction(1, 2)])
        assert check_prelie(pair.g, out).ok

    def test_postlie_to_prelie_rejects_sl3(self):
        entry = catalog.get("sl3-inner-structure").payload
        with pytest.raises(NotTwoStepNilpotentError):
            postlie_to_prelie(LiePair(entry["g"], entry["n"]), entry["product"])

    def test_postlie_to_prelie_rejects_non_postlie(self):
        pair, _ = lr_n3()
        with pytest.raises(NotPostLieError):
            postlie_to_prelie(pair, BilinearProduct.zero(3))

    def test_direct_sum_products(self):
        p1, q1 = lr_n3()
        p2, q2 = gl_line_structure(2)
        pair, prod = direct_sum_products(p1, q1, p2, q2)
        assert pair.dim == 8 and check_postlie(pair, prod).ok

    def test_embedding(self):
        pair, prod = lr_n3()
        emb = embedding_into_semidirect(pair, prod)
        assert emb.ok and emb.h.dim == 1

    def test_gl_line_structure_rejects_small(self):
        with pytest.raises(PreconditionError):
            gl_line_structure(1)


class TestRoundTrips:
    def test_sl2sl2_table_products_parse(self):
        payload = catalog.get("sl2sl2-rota-baxter").payload
        doc = laj.emit_product(payload["product"], payload["n"].basis, "p")
        _, _, back = laj.parse_product(doc)
        assert back.p == payload["product"].p

    def test_fingerprint_of_induced_g(self):
        payload = catalog.get("sl2sl2-rota-baxter").payload
        g, _ = induced_g(payload["n"], payload["product"])
        fp = classify(g)
        assert fp.is_solvable and fp.dim == 6 and fp.dim_center == 0

    def test_label_order_independent(self):
        n = LieAlgebra.from_brackets("r2", ["a", "b"], {(0, 1): {1: 1}})
        assert check_postlie(LiePair(n, n), BilinearProduct.zero(2)).ok
