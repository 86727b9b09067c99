import numpy as np
import pytest

import oracles
from dclinalg import (
    DCMatrix,
    DualNumber,
    ShapeError,
    arank,
    fro_norm,
    is_unitary,
    lowrank_error,
    rank,
    svd,
    truncate,
    truncate_factors,
    truncate_indices,
    unitarity_defect,
)
from dclinalg.reference_cases import CASES, run_case


@pytest.fixture
def rng():
    return np.random.default_rng(31415)


def residual(a: DCMatrix, b: DCMatrix):
    d = a - b
    return np.linalg.norm(d.std), np.linalg.norm(d.inf)


SHAPES = [(1, 1), (3, 1), (1, 4), (4, 4), (6, 4), (4, 6), (8, 3), (50, 30), (17, 23)]


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("solver", ["jacobi", "lapack"])
def test_reconstruction_and_unitarity(rng, shape, solver):
    a = DCMatrix(*oracles.random_dual_parts(rng, *shape))
    s = svd(a, solver=solver)
    rs, ri = residual(s.reconstruct(), a)
    assert rs <= 1e-9 and ri <= 1e-8
    assert s.V.shape == (shape[0],) * 2 and s.U.shape == (shape[1],) * 2
    assert is_unitary(s.V, 1e-10) and is_unitary(s.U, 1e-10)
    full = s.V @ s.sigma_matrix() @ s.U.H
    assert full.allclose(a, 1e-9, 1e-8)


@pytest.mark.parametrize("shape", [(6, 4), (4, 6), (9, 9), (12, 5)])
def test_singular_values_match_perturbation_oracle(rng, shape):
    std, inf = oracles.random_dual_parts(rng, *shape)
    s = svd(DCMatrix(std, inf))
    ref_std, ref_inf = oracles.fd_singular_values(std, inf)
    np.testing.assert_allclose(s.sigma_std, ref_std, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(s.sigma_inf, ref_inf, atol=1e-6)
    np.testing.assert_allclose(s.sigma_std, np.linalg.svd(std, compute_uv=False), rtol=1e-9)


@pytest.mark.parametrize("r_std, r_extra", [(0, 0), (0, 3), (2, 0), (2, 2), (3, 1), (4, 0)])
def test_structured_ranks(rng, r_std, r_extra):
    std, inf = oracles.low_rank_parts(rng, 8, 6, r_std, r_extra)
    if r_std == 0 and r_extra == 0:
        inf = np.zeros_like(inf)
    a = DCMatrix(std, inf)
    s = svd(a)
    t, r = oracles.dual_rank_oracle(std, inf)
    assert (s.rank_t, s.arank_r) == (t, r) == (r_std + r_extra, r_std)
    # ordering: appreciable descending, then infinitesimal descending, then zeros
    assert np.all(s.sigma_std[:r] > 0) and np.all(s.sigma_std[r:] == 0)
    tail = s.sigma_inf[r:]
    assert np.all(np.diff(tail) <= 1e-12) and np.all(tail[: s.rank_t - r] > 0)
    assert np.all(tail[s.rank_t - r:] == 0)
    assert np.all(np.diff(s.sigma_std) <= 0)
    rs, ri = residual(s.reconstruct(), a)
    assert rs <= 1e-9 and ri <= 1e-8
    assert is_unitary(s.V) and is_unitary(s.U)
    ref_std, ref_inf = oracles.fd_singular_values(std, inf)
    np.testing.assert_allclose(s.sigma_inf, ref_inf, atol=1e-5)


def test_identity():
    s = svd(DCMatrix.identity(4))
    assert s.sigma == (DualNumber(1, 0),) * 4
    assert s.rank_t == s.arank_r == 4
    np.testing.assert_allclose(np.abs(s.U.std), np.eye(4), atol=1e-14)


def test_zero_and_purely_infinitesimal(rng):
    assert (rank(DCMatrix.zeros(3, 5)), arank(DCMatrix.zeros(3, 5))) == (0, 0)
    m = oracles.random_complex(rng, 4, 2) @ oracles.random_complex(rng, 2, 5)
    s = svd(DCMatrix(np.zeros((4, 5)), m))
    assert (s.rank_t, s.arank_r) == (2, 0)
    np.testing.assert_allclose(s.sigma_inf[:2], np.linalg.svd(m, compute_uv=False)[:2], rtol=1e-10)


def test_adjoint_has_same_singular_values(rng):
    a = DCMatrix(*oracles.random_dual_parts(rng, 7, 4))
    s1, s2 = svd(a), svd(a.H)
    np.testing.assert_allclose(s1.sigma_std, s2.sigma_std, atol=1e-9)
    np.testing.assert_allclose(s1.sigma_inf, s2.sigma_inf, atol=1e-9)
    assert (s1.rank_t, s1.arank_r) == (s2.rank_t, s2.arank_r)


def test_deterministic(rng):
    a = DCMatrix(*oracles.random_dual_parts(rng, 5, 5))
    s1, s2 = svd(a), svd(a)
    assert np.array_equal(s1.sigma_inf, s2.sigma_inf) and s1.V == s2.V


def test_empty_rejected():
    with pytest.raises(ShapeError):
        svd(DCMatrix(np.zeros((0, 3))))


def test_sigma_is_immutable(rng):
    s = svd(DCMatrix(*oracles.random_dual_parts(rng, 3, 3)))
    with pytest.raises(ValueError):
        s.sigma_std[0] = 0


class TestTruncation:
    def test_full_and_empty(self, rng):
        a = DCMatrix(*oracles.random_dual_parts(rng, 6, 4))
        s = svd(a)
        assert truncate(s, 0) == DCMatrix.zeros(6, 4)
        rs, ri = residual(truncate(s, 4), a)
        assert rs <= 1e-9 and ri <= 1e-8
        assert lowrank_error(s, 4) == DualNumber(0, 0)
        full = lowrank_error(s, 0)
        ref = fro_norm(a)
        assert abs(full.std - ref.std) < 1e-12 and abs(full.inf - ref.inf) < 1e-11

    @pytest.mark.parametrize("shape", [(6, 4), (8, 4), (5, 7)])
    def test_error_identity(self, rng, shape):
        a = DCMatrix(*oracles.random_dual_parts(rng, *shape))
        s = svd(a)
        for k in range(min(shape) + 1):
            direct = fro_norm(a - truncate(s, k))
            tail = lowrank_error(s, k)
            assert abs(direct.std - tail.std) <= 1e-9 and abs(direct.inf - tail.inf) <= 1e-8
            if k < min(shape):
                explicit = np.sqrt(np.sum(s.sigma_std[k:] ** 2))
                assert abs(tail.std - explicit) < 1e-12

    def test_truncation_rank(self, rng):
        s = svd(DCMatrix(*oracles.random_dual_parts(rng, 6, 5)))
        for k in range(6):
            assert rank(truncate(s, k)) == k

    def test_bounds(self, rng):
        s = svd(DCMatrix(*oracles.random_dual_parts(rng, 3, 2)))
        for bad in (-1, 3):
            with pytest.raises(IndexError):
                truncate(s, bad)
            with pytest.raises(IndexError):
                lowrank_error(s, bad)

    def test_factors(self, rng):
        s = svd(DCMatrix(*oracles.random_dual_parts(rng, 5, 3)))
        v, sig, u = truncate_factors(s, 2)
        assert v.shape == (5, 2) and u.shape == (3, 2) and len(sig) == 2
        assert (v @ DCMatrix.diag(sig) @ u.H).allclose(truncate(s, 2), 1e-13)

    def test_tied_singular_values_alternative_truncation(self, rng):
        # two singular values equal in both parts: either index set is optimal
        q1, _ = np.linalg.qr(oracles.random_complex(rng, 5, 5))
        q2, _ = np.linalg.qr(oracles.random_complex(rng, 4, 4))
        core = np.zeros((5, 4))
        core[:4, :4] = np.diag([3.0, 2.0, 2.0, 0.5])
        core_inf = np.zeros((5, 4))
        core_inf[:4, :4] = np.diag([0.1, -0.4, -0.4, 0.2])
        a = DCMatrix(q1 @ core @ q2.conj().T, q1 @ core_inf @ q2.conj().T)
        s = svd(a)
        assert abs(s.sigma_std[1] - s.sigma_std[2]) < 1e-12
        e1 = fro_norm(a - truncate_indices(s, [0, 1]))
        e2 = fro_norm(a - truncate_indices(s, [0, 2]))
        assert abs(e1.std - e2.std) <= 1e-9 and abs(e1.inf - e2.inf) <= 1e-8


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.name)
def test_reference_cases(case):
    report = run_case(case)
    assert report.passed, (report.got_std, report.got_inf, report.max_error)


def test_reference_cases_detect_perturbation():
    for case in CASES:
        a = case.load()
        bumped = DCMatrix(a.std + 1e-2, a.inf)
        assert not run_case(case, a=bumped).passed


def test_reference_cases_fail_at_quantization_floor():
    assert not any(run_case(c, tol=1e-12).passed for c in CASES)


def test_degenerate_reference_with_default_tolerances():
    case = next(c for c in CASES if c.name == "degenerate-6x4")
    s = svd(case.load())
    # the printed near-zero singular value (~7e-5) is then appreciable
    assert s.arank_r == 4
    rs, ri = residual(s.reconstruct(), case.load())
    assert rs < 1e-9 and ri < 1e-8
    ds, di = unitarity_defect(s.U)
    assert ds < 1e-10 and di < 1e-9
