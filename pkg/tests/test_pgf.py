import random
from fractions import Fraction

import pytest

from rigjoint import (
    Mode,
    ModelParams,
    Side,
    SieveCancellationError,
    SizeCapError,
    cond_nonadjacency_given_edge,
    cond_nonadjacency_given_nonedge,
    eval_joint_pgf,
    eval_marginal_pgf,
    joint_pmf,
    marginal_pmf,
    moment_entry,
    moment_table,
    recombination_check,
    sieve_invert,
)
from rigjoint.pgf import MomentTable

from tests import reference

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

P22 = ModelParams(2, 2, HALF)

# Joint law of (2,2,1/2), from enumerating all 16 graphs by hand.
PMF_22 = (
    (Fraction(7, 16), Fraction(1, 8)),
    (Fraction(1, 8), Fraction(5, 16)),
)


def pmf_as_dict(dist):
    return {
        (a, b): dist.pmf[a][b]
        for a in range(dist.params.n)
        for b in range(dist.params.m)
        if dist.pmf[a][b] != 0
    }


class TestModelParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModelParams(0, 2, HALF)
        with pytest.raises(ValueError):
            ModelParams(2, 0, HALF)
        with pytest.raises(ValueError):
            ModelParams(2, 2, Fraction(3, 2))
        with pytest.raises(TypeError):
            ModelParams(2, 2, 0.5)

    def test_string_and_int_p_normalize(self):
        assert ModelParams(2, 2, "1/2").p == HALF
        assert ModelParams(2, 2, 1).p == Fraction(1)


class TestConditionals:
    def test_edge_case_pinned(self):
        # 8 graphs containing the tracked edge, each weighted 1/8
        assert cond_nonadjacency_given_edge(P22, 1, 1) == Fraction(1, 4)

    def test_edge_empty_property_sets(self):
        assert cond_nonadjacency_given_edge(P22, 0, 0) == 1
        assert cond_nonadjacency_given_nonedge(P22, 0, 0) == 1

    def test_edge_against_enumeration(self):
        params = ModelParams(3, 2, HALF)
        # 32 graphs containing the tracked edge
        assert cond_nonadjacency_given_edge(params, 1, 0) == Fraction(3, 8)
        assert cond_nonadjacency_given_edge(params, 1, 0) == reference.cond_nonadjacency(
            3, 2, HALF, 1, 0, edge=True
        )

    def test_nonedge_case_pinned(self):
        assert cond_nonadjacency_given_nonedge(P22, 1, 1) == Fraction(5, 8)

    def test_nonedge_against_enumeration(self):
        params = ModelParams(2, 3, THIRD)
        got = cond_nonadjacency_given_nonedge(params, 1, 2)
        assert got == Fraction(164, 243)
        assert got == reference.cond_nonadjacency(2, 3, THIRD, 1, 2, edge=False)

    @pytest.mark.parametrize("n,m,p", [(2, 2, HALF), (3, 2, THIRD), (2, 3, Fraction(2, 5))])
    def test_full_sweep_against_enumeration(self, n, m, p):
        params = ModelParams(n, m, p)
        for k in range(n):
            for l in range(m):
                assert cond_nonadjacency_given_edge(params, k, l) == reference.cond_nonadjacency(
                    n, m, p, k, l, edge=True
                )
                assert cond_nonadjacency_given_nonedge(
                    params, k, l
                ) == reference.cond_nonadjacency(n, m, p, k, l, edge=False)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            cond_nonadjacency_given_edge(P22, 2, 0)
        with pytest.raises(ValueError):
            cond_nonadjacency_given_nonedge(P22, 0, -1)


class TestMomentEntry:
    def test_trivial_order_zero(self):
        assert moment_entry(P22, 0, 0) == 1

    def test_pinned_entries(self):
        assert moment_entry(ModelParams(3, 2, HALF), 1, 0) == Fraction(9, 8)
        assert moment_entry(P22, 1, 1) == Fraction(7, 16)

    def test_first_order_closed_forms(self):
        # N[1][0] = (n-1)(1-p^2)^m and N[0][1] = (m-1)(1-p^2)^n, both
        # pre-validated against the enumeration oracle at small sizes.
        for n, m, p in [(2, 2, HALF), (3, 2, HALF), (2, 3, THIRD)]:
            params = ModelParams(n, m, p)
            if n >= 2:
                expect = (n - 1) * (1 - p * p) ** m
                assert moment_entry(params, 1, 0) == expect
                assert reference.falling_moment(n, m, p, 1, 0) == expect
            if m >= 2:
                expect = (m - 1) * (1 - p * p) ** n
                assert moment_entry(params, 0, 1) == expect
                assert reference.falling_moment(n, m, p, 0, 1) == expect
        for n, m, p in [(12, 17, Fraction(2, 7)), (20, 20, Fraction(9, 10))]:
            params = ModelParams(n, m, p)
            assert moment_entry(params, 1, 0) == (n - 1) * (1 - p * p) ** m
            assert moment_entry(params, 0, 1) == (m - 1) * (1 - p * p) ** n


class TestMomentTable:
    def test_2x2_pinned(self):
        # Off-diagonal entries are (n-1)(1-p^2)^m = 9/16, confirmed by
        # enumeration; N[1][1] = 7/16 equals P(X=0, Y=0) here.
        table = moment_table(P22)
        assert table.entries == (
            (Fraction(1), Fraction(9, 16)),
            (Fraction(9, 16), Fraction(7, 16)),
        )

    def test_single_cell_model(self):
        for p in [Fraction(0), THIRD, Fraction(1)]:
            assert moment_table(ModelParams(1, 1, p)).entries == ((Fraction(1),),)

    def test_3x3_against_enumerated_falling_moments(self):
        p = Fraction(1, 4)
        table = moment_table(ModelParams(3, 3, p))
        for k in range(3):
            for l in range(3):
                assert table.entries[k][l] == reference.falling_moment(3, 3, p, k, l)

    def test_entries_nonnegative_and_anchored(self):
        for n, m, p in [(4, 6, Fraction(3, 7)), (7, 2, Fraction(1, 9))]:
            table = moment_table(ModelParams(n, m, p))
            assert table.entries[0][0] == 1
            assert all(v >= 0 for row in table.entries for v in row)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            moment_table(ModelParams(10, 10, HALF), max_cells=50)


class TestSieveInvert:
    def test_2x2_pinned(self):
        dist = sieve_invert(moment_table(P22))
        assert dist.pmf == PMF_22

    @pytest.mark.parametrize("n,m", [(2, 3), (4, 2), (3, 3)])
    def test_degenerate_p(self, n, m):
        at_zero = joint_pmf(ModelParams(n, m, Fraction(0)))
        assert at_zero.pmf[0][0] == 1
        at_one = joint_pmf(ModelParams(n, m, Fraction(1)))
        assert at_one.pmf[n - 1][m - 1] == 1

    def test_rejects_inconsistent_table(self):
        # valid-looking entries that are not falling moments of any model
        bad = MomentTable(P22, Mode.EXACT, ((Fraction(1), HALF), (HALF, Fraction(3, 5))))
        with pytest.raises(ValueError):
            sieve_invert(bad)

    def test_float_clamp_raises_on_real_cancellation(self):
        bad = MomentTable(P22, Mode.FLOAT, ((1.0, 0.5), (0.5, 0.6)))
        with pytest.raises(SieveCancellationError):
            sieve_invert(bad)

    def test_float_agrees_with_exact(self):
        params = ModelParams(12, 9, Fraction(2, 5))
        exact = joint_pmf(params)
        approx = joint_pmf(params, Mode.FLOAT)
        for a in range(12):
            for b in range(9):
                assert approx.pmf[a][b] == pytest.approx(float(exact.pmf[a][b]), abs=1e-9)


class TestJointPmf:
    def test_single_object_side(self):
        dist = joint_pmf(ModelParams(2, 1, HALF))
        assert pmf_as_dict(dist) == {(0, 0): Fraction(3, 4), (1, 0): Fraction(1, 4)}

    def test_single_cell(self):
        for p in [Fraction(0), Fraction(4, 7), Fraction(1)]:
            assert joint_pmf(ModelParams(1, 1, p)).pmf == ((Fraction(1),),)

    def test_against_enumeration(self):
        params = ModelParams(3, 2, THIRD)
        expect = reference.law_as_table(reference.joint_law(3, 2, THIRD), 3, 2)
        assert joint_pmf(params).pmf == expect

    @pytest.mark.parametrize(
        "n,m", [(2, 2), (3, 3), (5, 4), (12, 9), (30, 4), (8, 25)]
    )
    @pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(7, 10)])
    def test_normalization_and_nonnegativity(self, n, m, p):
        dist = joint_pmf(ModelParams(n, m, p))
        assert sum(v for row in dist.pmf for v in row) == 1
        assert all(v >= 0 for row in dist.pmf for v in row)

    @pytest.mark.parametrize("n,m", [(2, 5), (4, 4), (7, 3)])
    def test_duality(self, n, m):
        p = Fraction(2, 7)
        fwd = joint_pmf(ModelParams(n, m, p))
        rev = joint_pmf(ModelParams(m, n, p))
        for a in range(n):
            for b in range(m):
                assert fwd.pmf[a][b] == rev.pmf[b][a]


class TestEvalJointPgf:
    def test_normalization_point(self):
        for params in [P22, ModelParams(5, 3, THIRD), ModelParams(1, 4, Fraction(9, 10))]:
            assert eval_joint_pgf(params, 1, 1) == 1

    def test_pinned_values(self):
        assert eval_joint_pgf(P22, 0, 0) == Fraction(7, 16)
        assert eval_joint_pgf(P22, 2, 1) == Fraction(23, 16)

    def test_matches_pmf_polynomial(self):
        rnd = random.Random(7)
        for n, m, p in [(3, 4, Fraction(2, 5)), (5, 2, Fraction(1, 6)), (4, 4, HALF)]:
            params = ModelParams(n, m, p)
            dist = joint_pmf(params)
            for _ in range(10):
                x = Fraction(rnd.randint(-8, 8), rnd.randint(1, 5))
                y = Fraction(rnd.randint(-8, 8), rnd.randint(1, 5))
                poly = sum(
                    dist.pmf[a][b] * x**a * y**b for a in range(n) for b in range(m)
                )
                assert eval_joint_pgf(params, x, y) == poly

    def test_specializes_to_marginals(self):
        rnd = random.Random(11)
        for n, m, p in [(4, 3, Fraction(3, 8)), (2, 6, Fraction(5, 9))]:
            params = ModelParams(n, m, p)
            for _ in range(6):
                t = Fraction(rnd.randint(-6, 6), rnd.randint(1, 4))
                assert eval_joint_pgf(params, t, 1) == eval_marginal_pgf(
                    params, Side.ACTIVE, t
                )
                assert eval_joint_pgf(params, 1, t) == eval_marginal_pgf(
                    params, Side.PASSIVE, t
                )

    def test_transform_identity_at_nonzero_points(self):
        # F(x,y) = x^(n-1) y^(m-1) * sum N[k][l] (1/x-1)^k (1/y-1)^l
        rnd = random.Random(13)
        for n, m, p in [(3, 3, Fraction(2, 3)), (5, 4, Fraction(1, 5)), (2, 7, HALF)]:
            params = ModelParams(n, m, p)
            table = moment_table(params)
            for _ in range(8):
                x = Fraction(rnd.choice([-9, -5, -2, -1, 1, 2, 4, 9]), rnd.randint(1, 6))
                y = Fraction(rnd.choice([-7, -3, -1, 1, 3, 8]), rnd.randint(1, 6))
                via_table = (
                    x ** (n - 1)
                    * y ** (m - 1)
                    * sum(
                        table.entries[k][l] * (1 / x - 1) ** k * (1 / y - 1) ** l
                        for k in range(n)
                        for l in range(m)
                    )
                )
                assert eval_joint_pgf(params, x, y) == via_table

    def test_float_mode_tracks_exact(self):
        for n, m, p in [(2, 2, HALF), (9, 14, Fraction(3, 10)), (20, 20, Fraction(1, 7))]:
            params = ModelParams(n, m, p)
            for x, y in [(HALF, Fraction(5, 4)), (Fraction(0), Fraction(1)), (Fraction(9, 10), Fraction(3, 10))]:
                exact = float(eval_joint_pgf(params, x, y))
                approx = eval_joint_pgf(params, float(x), float(y), Mode.FLOAT)
                assert approx == pytest.approx(exact, rel=1e-9, abs=1e-12)

    def test_exact_mode_rejects_floats(self):
        with pytest.raises(TypeError):
            eval_joint_pgf(P22, 0.5, 0.5)


class TestMarginals:
    def test_pinned_active_law(self):
        assert marginal_pmf(P22, Side.ACTIVE).pmf == (Fraction(9, 16), Fraction(7, 16))

    def test_marginal_pgf_values(self):
        assert eval_marginal_pgf(P22, Side.ACTIVE, 1) == 1
        assert eval_marginal_pgf(P22, Side.PASSIVE, 1) == 1
        assert eval_marginal_pgf(P22, Side.ACTIVE, 0) == Fraction(9, 16)

    def test_square_model_sides_agree(self):
        rnd = random.Random(3)
        params = ModelParams(4, 4, Fraction(2, 9))
        for _ in range(6):
            t = Fraction(rnd.randint(-5, 5), rnd.randint(1, 4))
            assert eval_marginal_pgf(params, Side.ACTIVE, t) == eval_marginal_pgf(
                params, Side.PASSIVE, t
            )

    def test_point_mass_at_zero_when_p_zero(self):
        law = marginal_pmf(ModelParams(5, 3, Fraction(0)), Side.ACTIVE)
        assert law.pmf == (1, 0, 0, 0, 0)

    def test_passive_against_enumeration(self):
        got = marginal_pmf(ModelParams(4, 3, HALF), Side.PASSIVE)
        expect = reference.marginal_law(4, 3, HALF, active=False)
        assert list(got.pmf) == [expect.get(b, Fraction(0)) for b in range(3)]

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 5), (6, 4), (10, 7)])
    def test_consistent_with_joint(self, n, m):
        params = ModelParams(n, m, Fraction(4, 5))
        dist = joint_pmf(params)
        assert dist.marginal(Side.ACTIVE) == marginal_pmf(params, Side.ACTIVE).pmf
        assert dist.marginal(Side.PASSIVE) == marginal_pmf(params, Side.PASSIVE).pmf


class TestRecombination:
    def test_pinned(self):
        lhs, rhs = recombination_check(P22, 1, 1)
        assert lhs == rhs == Fraction(7, 16)
        lhs, rhs = recombination_check(P22, 0, 0)
        assert lhs == rhs == 1

    def test_exact_equality_including_enumeration(self):
        params = ModelParams(3, 3, Fraction(2, 3))
        lhs, rhs = recombination_check(params, 2, 1)
        assert lhs == rhs
        assert rhs == reference.falling_moment(3, 3, Fraction(2, 3), 2, 1)

    @pytest.mark.parametrize("n,m,p", [(4, 3, THIRD), (2, 5, Fraction(3, 4))])
    def test_all_orders(self, n, m, p):
        params = ModelParams(n, m, p)
        for k in range(n):
            for l in range(m):
                lhs, rhs = recombination_check(params, k, l)
                assert lhs == rhs
