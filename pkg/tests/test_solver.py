from fractions import Fraction

import pytest

from postlie import catalog
from postlie import families as F
from postlie.errors import ParameterCapExceeded, PreconditionError
from postlie.exactla import Matrix
from postlie.solver import (
    NOT_A_PROOF, Ansatz, grid_search, linear_stage, nonexistence_report, search_postlie, search_rb,
)
from postlie.structures import BilinearProduct, LiePair, abelian_like, check_postlie, check_rota_baxter


class TestAnsatz:
    def test_grid_values(self):
        assert Ansatz(1, (1,)).grid_values() == (-1, 0, 1)
        assert Ansatz(1, (1, 2)).grid_values() == (-1, Fraction(-1, 2), 0, Fraction(1, 2), 1)

    def test_zero_bound(self):
        assert Ansatz(0).grid_values() == (0,)

    @pytest.mark.parametrize("kwargs", [{"coefficient_bound": -1}, {"denominators": ()},
                                        {"denominators": (0,)}])
    def test_rejects_bad_policy(self, kwargs):
        with pytest.raises(PreconditionError):
            Ansatz(**kwargs)


class TestLinearStage:
    def test_contains_known_structures(self):
        for name in ("r31-r3-example", "lr-n3", "lr-r2", "gl-line-structure(2)"):
            payload = catalog.get(name).payload
            space = linear_stage(payload["pair"])
            assert space is not None and space.contains(payload["product"].flatten()), name

    def test_every_point_satisfies_linear_identities(self):
        pair = LiePair(F.r31(), F.r3())
        space = linear_stage(pair)
        for k in range(space.dim):
            t = [Fraction(0)] * space.dim
            t[k] = Fraction(3, 2)
            report = check_postlie(pair, BilinearProduct.from_flat(3, space.point(t)))
            assert report.eq1_ok and report.eq3_ok

    def test_inconsistent_pair(self):
        assert linear_stage(LiePair(F.sl(2), F.r3())) is None

    def test_support_mask_restricts(self):
        pair = LiePair(F.abelian(2), F.r2())
        assert linear_stage(pair, frozenset()) is None
        full = linear_stage(pair)
        assert full is not None and full.dim > 0


class TestGridSearch:
    def test_deterministic_across_workers(self):
        pair = LiePair(F.r31(), F.r3())
        one = search_postlie(pair, Ansatz(1), workers=1)
        two = search_postlie(pair, Ansatz(1), workers=2)
        assert [s.parameters for s in one.solutions] == [s.parameters for s in two.solutions]
        assert len(one) == 50 and one.exhausted

    def test_solutions_are_verified(self):
        pair = LiePair(F.abelian(2), F.r2())
        result = search_postlie(pair, Ansatz(1), workers=1)
        assert len(result) == 20
        assert all(check_postlie(pair, p).ok for p in result.products())

    def test_max_solutions_truncates(self):
        pair = LiePair(F.abelian(2), F.r2())
        result = search_postlie(pair, Ansatz(1, max_solutions=3), workers=1)
        assert len(result) == 3 and not result.exhausted

    def test_parameter_cap(self):
        pair = LiePair(F.abelian(3), F.heisenberg())
        space = linear_stage(pair)
        with pytest.raises(ParameterCapExceeded):
            grid_search(pair, space, Ansatz(1, parameter_cap=space.dim - 1), workers=1)


class TestRotaBaxterSearch:
    def test_sl2_contains_trivial_operators(self):
        n = F.sl(2)
        found = [s.operator for s in search_rb(n, Ansatz(1, (1,)), workers=1)]
        assert Matrix.zeros(3, 3) in found and -Matrix.identity(3) in found
        assert all(check_rota_baxter(n, r, 1).ok for r in found)

    def test_support_mask(self):
        n = F.sl(2)
        diagonal = frozenset(i * 3 + i for i in range(3))
        found = [s.operator for s in search_rb(n, Ansatz(1, (1,), support=diagonal), workers=1)]
        assert all(all(not r.entries[i][j] for i in range(3) for j in range(3) if i != j) for r in found)
        assert -Matrix.identity(3) in found

    def test_cap(self):
        with pytest.raises(ParameterCapExceeded):
            search_rb(F.sl(3), Ansatz(1, parameter_cap=20), workers=1)


class TestNonexistence:
    def test_proven_empty(self):
        report = nonexistence_report(LiePair(F.sl(2), F.r3()), Ansatz(1), workers=1)
        assert report.status == "PROVEN-EMPTY" and report.witness is None
        assert NOT_A_PROOF not in str(report)

    def test_grid_empty_is_labelled(self):
        report = nonexistence_report(LiePair(F.sl(2), F.heisenberg()), Ansatz(1), workers=1)
        assert report.status == "GRID-EMPTY"
        assert report.label == "GRID-EMPTY(1)"
        assert NOT_A_PROOF in str(report)

    def test_witness_found(self):
        pair = LiePair(abelian_like(F.heisenberg()), F.heisenberg())
        report = nonexistence_report(pair, Ansatz(1), workers=1)
        assert report.status == "WITNESS-FOUND"
        assert check_postlie(pair, report.witness).ok

    def test_masked_inconsistency_is_not_a_proof(self):
        report = nonexistence_report(LiePair(F.abelian(2), F.r2()), Ansatz(1, support=frozenset()), workers=1)
        assert report.status == "GRID-EMPTY" and report.caveat == NOT_A_PROOF
