import numpy as np

from conftest import feasible_indicators, make_instance
from scpsolve import (
    RotamerPartition,
    build_geometry,
    exposing_matrix,
    gangster_indices,
    gangster_values,
    homogenized_constraints,
    lift_energy,
    lift_indicator,
    null_space_basis,
    row_sum_matrix,
    random_instance,
)


def random_partition(rng, p_max=8, m_max=6):
    p = int(rng.integers(1, p_max + 1))
    return RotamerPartition(tuple(int(v) for v in rng.integers(1, m_max + 1, size=p)))


class TestRowSums:
    def test_two_blocks_of_two(self):
        A = row_sum_matrix(RotamerPartition((2, 2)))
        assert np.array_equal(A, [[1, 1, 0, 0], [0, 0, 1, 1]])

    def test_singleton_blocks_give_identity(self):
        assert np.array_equal(row_sum_matrix(RotamerPartition((1, 1, 1))), np.eye(3))

    def test_single_block_gives_ones_row(self):
        assert np.array_equal(row_sum_matrix(RotamerPartition((4,))), np.ones((1, 4)))

    def test_full_row_rank(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            part = random_partition(rng)
            A = row_sum_matrix(part)
            assert np.linalg.matrix_rank(A) == part.p


class TestNullBasis:
    def test_single_rotamer_column(self):
        V = null_space_basis(RotamerPartition((1,)))
        assert V.shape == (2, 1)
        expected = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert np.allclose(np.abs(V[:, 0]), expected, atol=1e-14)

    def test_shape(self):
        V = null_space_basis(RotamerPartition((2, 2)))
        assert V.shape == (5, 3)

    def test_orthonormal_and_annihilating(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            part = random_partition(rng)
            V = null_space_basis(part)
            H = homogenized_constraints(part)
            n0, p = part.n0, part.p
            assert V.shape == (n0 + 1, n0 + 1 - p)
            assert np.max(np.abs(V.T @ V - np.eye(n0 + 1 - p))) <= 1e-12
            assert np.max(np.abs(H @ V)) <= 1e-12

    def test_deterministic(self):
        part = RotamerPartition((3, 1, 4))
        assert np.array_equal(null_space_basis(part), null_space_basis(part))


class TestGangster:
    def test_two_blocks_of_two(self):
        idx = gangster_indices(RotamerPartition((2, 2)))
        assert [tuple(r) for r in idx] == [(0, 0), (1, 2), (2, 1), (3, 4), (4, 3)]

    def test_singleton_blocks_only_corner(self):
        idx = gangster_indices(RotamerPartition((1, 1, 1)))
        assert [tuple(r) for r in idx] == [(0, 0)]

    def test_count_formula_and_operator_support(self):
        rng = np.random.default_rng(2)
        for _ in range(15):
            part = random_partition(rng)
            idx = gangster_indices(part)
            assert len(idx) == 1 + sum(mi * (mi - 1) for mi in part.m)
            # independent oracle: support of blkdiag(0, A'A - I)
            A = row_sum_matrix(part)
            S = np.zeros((part.n0 + 1, part.n0 + 1))
            S[1:, 1:] = A.T @ A - np.eye(part.n0)
            support = {(r, c) for r, c in zip(*np.nonzero(S))}
            assert {tuple(r) for r in idx} == support | {(0, 0)}


class TestLiftEnergy:
    def test_zero_matrix(self):
        inst = make_instance((2,), np.zeros((2, 2)))
        assert np.array_equal(lift_energy(inst.energy), np.zeros((3, 3)))

    def test_scalar(self):
        inst = make_instance((1,), [[7.0]])
        assert np.array_equal(lift_energy(inst.energy), [[0.0, 0.0], [0.0, 7.0]])

    def test_trace_preserved_and_zero_border(self):
        inst = random_instance(3, 3, (-4, 4), seed=8)
        lifted = lift_energy(inst.energy)
        assert np.trace(lifted) == np.trace(inst.energy.entries)
        assert np.all(lifted[0, :] == 0) and np.all(lifted[:, 0] == 0)


class TestGangsterValues:
    part = RotamerPartition((2, 2))

    def test_lifted_indicator_pattern(self):
        idx = gangster_indices(self.part)
        for x in feasible_indicators(self.part):
            vals = gangster_values(lift_indicator(x), idx)
            assert vals[0] == 1.0
            assert np.all(vals[1:] == 0.0)

    def test_identity(self):
        idx = gangster_indices(self.part)
        vals = gangster_values(np.eye(5), idx)
        assert vals[0] == 1.0 and np.all(vals[1:] == 0.0)

    def test_all_ones(self):
        idx = gangster_indices(self.part)
        assert np.all(gangster_values(np.ones((5, 5)), idx) == 1.0)


class TestExposingMatrix:
    def test_annihilates_feasible_lifts(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            part = random_partition(rng, p_max=5, m_max=4)
            K = exposing_matrix(part)
            for x in feasible_indicators(part):
                assert np.max(np.abs(K @ lift_indicator(x))) <= 1e-10

    def test_rank_equals_block_count(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            part = random_partition(rng)
            K = exposing_matrix(part)
            sv = np.linalg.svd(K, compute_uv=False)
            assert int(np.sum(sv > 1e-8 * sv[0])) == part.p


class TestFaceParametrization:
    def test_feasible_lift_round_trips_through_basis(self):
        # any feasible lifted matrix lies on the face: Y = V (V'YV) V',
        # the reduced matrix has trace p + 1, and the reconstruction keeps
        # the first column equal to the diagonal
        rng = np.random.default_rng(6)
        for _ in range(8):
            part = random_partition(rng, p_max=5, m_max=4)
            V = null_space_basis(part)
            for x in feasible_indicators(part):
                Y = lift_indicator(x)
                R = V.T @ Y @ V
                assert abs(np.trace(R) - (part.p + 1)) <= 1e-10
                back = V @ R @ V.T
                assert np.max(np.abs(back - Y)) <= 1e-10
                assert np.max(np.abs(np.diag(back) - back[:, 0])) <= 1e-10

    def test_build_geometry_fields(self, derived_instance):
        geo = build_geometry(derived_instance)
        assert geo.order == 5
        assert geo.face_dim == 3
        assert geo.constraint_rank == 2
        assert geo.lifted_cost[0, 0] == 0.0
        assert not geo.null_basis.flags.writeable
