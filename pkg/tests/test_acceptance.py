"""Acceptance criteria.  Each test records one PASS/FAIL line (see conftest)."""

import time

import numpy as np

import oracles
from dclinalg import (
    DCMatrix,
    DCVector,
    DualComplex,
    DualNumber,
    dc_conj,
    dc_magnitude,
    dc_mul,
    dn_mul,
    dn_sqrt,
    extend_to_unitary,
    fro_norm,
    hermitian_eig,
    hstack,
    lowrank_error,
    svd,
    truncate,
    unitarity_defect,
    vec_norm2,
    vstack,
)
from dclinalg.cli import main
from dclinalg.compression import spectrum_matrix, synthetic_image
from dclinalg.pgm import read_pgm, write_pgm
from dclinalg.reference_cases import CASES, QUANTIZED_TOL
from dclinalg.scalar import dc_add, dn_inv

FIXTURES = {c.name: c for c in CASES}


def _sorted_pairs(std, inf):
    # order by standard part (rounded to the printed precision), then infinitesimal part
    key = sorted(range(len(std)), key=lambda i: (-round(float(std[i]), 2), -float(inf[i])))
    return np.asarray(std)[key], np.asarray(inf)[key]


# 1 -------------------------------------------------------------------------


def test_criterion_1_rect_reference(acceptance_report):
    a = FIXTURES["rect-8x4"].load()
    svd(a)  # warm-up: first call pays numpy dispatch setup
    t0 = time.perf_counter()
    s = svd(a)
    elapsed = time.perf_counter() - t0
    exp_std = np.array([3.4147, 2.4280, 2.1287, 0.8744])
    exp_inf = np.array([0.5451, 0.6444, -0.5667, 0.4006])
    err = max(np.abs(s.sigma_std - exp_std).max(), np.abs(s.sigma_inf - exp_inf).max())
    ok = err <= 5e-4 and elapsed < 0.1
    acceptance_report(1, "8x4 reference SVD", ok, f"max part error {err:.2e} <= 5e-4, runtime {elapsed * 1e3:.1f} ms < 100 ms")
    assert ok


# 2 -------------------------------------------------------------------------


def test_criterion_2_degenerate_reference(acceptance_report):
    a = FIXTURES["degenerate-6x4"].load()
    s = svd(a, cluster_tol=QUANTIZED_TOL, zero_tol=QUANTIZED_TOL)
    exp_std = np.array([2.0, 1.0, 1.0, 0.0])
    exp_inf = np.array([-0.4551, -0.4524, 1.9418, 0.9203])
    gs, gi = _sorted_pairs(s.sigma_std, s.sigma_inf)
    es, ei = _sorted_pairs(exp_std, exp_inf)
    err = max(np.abs(gs - es).max(), np.abs(gi - ei).max())
    ok = err <= 5e-4 and s.arank_r == 3 and s.rank_t == 4
    acceptance_report(
        2, "6x4 reference SVD with double and zero singular values", ok,
        f"max part error {err:.2e} <= 5e-4, arank {s.arank_r}, rank {s.rank_t}",
    )
    assert ok


# 3 -------------------------------------------------------------------------


def test_criterion_3_gram_reference(acceptance_report):
    a = FIXTURES["gram-10x4"].load()
    e = hermitian_eig(a.H @ a)
    exp_std = np.array([16.3352, 12.836, 7.3681, 3.4607])
    exp_inf = np.array([27.3465, 22.9941, 9.9258, 4.1092])
    err = max(np.abs(e.values_std - exp_std).max(), np.abs(e.values_inf - exp_inf).max())
    ok = err <= 5e-3
    acceptance_report(3, "10x4 reference Gram eigenvalues", ok, f"max part error {err:.2e} <= 5e-3")
    assert ok


# 4 -------------------------------------------------------------------------


def test_criterion_4_reconstruction_and_unitarity(acceptance_report):
    rng = np.random.default_rng(4)
    worst = np.zeros(4)
    t0 = time.perf_counter()
    for _ in range(200):
        m, n = rng.integers(1, 31, size=2)
        a = DCMatrix(*oracles.random_dual_parts(rng, m, n))
        s = svd(a)
        d = s.reconstruct() - a
        rec = (np.linalg.norm(d.std), np.linalg.norm(d.inf))
        uu, vv = unitarity_defect(s.U), unitarity_defect(s.V)
        worst = np.maximum(worst, [rec[0], rec[1], max(uu[0], vv[0]), max(uu[1], vv[1])])
    elapsed = time.perf_counter() - t0
    ok = worst[0] <= 1e-9 and worst[1] <= 1e-8 and worst[2] <= 1e-10 and worst[3] <= 1e-9 and elapsed < 30
    acceptance_report(
        4, "reconstruction and unitarity on 200 random matrices", ok,
        f"recon ({worst[0]:.1e}, {worst[1]:.1e}), unitarity ({worst[2]:.1e}, {worst[3]:.1e}), {elapsed:.1f} s < 30 s",
    )
    assert ok


# 5 -------------------------------------------------------------------------


def _candidates(rng, s, k, count):
    """Rank-<=k candidates ``X Y``: half generic, half near the truncation."""
    m, n = s.shape
    vk = s.V[:, :k] @ DCMatrix.diag(s.sigma[:k])
    uk = s.U[:, :k].H
    for c in range(count):
        if c % 2 == 0:
            scale = rng.uniform(0.1, 2.0)
            x = DCMatrix(*oracles.random_dual_parts(rng, m, k)) * scale
            y = DCMatrix(*oracles.random_dual_parts(rng, k, n))
        else:
            delta = 10.0 ** -rng.uniform(1, 5)
            std_only = c % 4 == 1
            dx = DCMatrix(*oracles.random_dual_parts(rng, m, k)) * delta
            dy = DCMatrix(*oracles.random_dual_parts(rng, k, n)) * delta
            if std_only:
                x, y = vk + dx, uk + dy
            else:  # same standard part as A_k, infinitesimal factors moved
                x = vk + DCMatrix(np.zeros((m, k)), dx.std)
                y = uk + DCMatrix(np.zeros((k, n)), dy.std)
        yield x @ y


def test_criterion_5_eckart_young(acceptance_report):
    rng = np.random.default_rng(5)
    violations = 0
    checked = 0
    t0 = time.perf_counter()
    for _ in range(20):
        a = DCMatrix(*oracles.random_dual_parts(rng, 6, 4))
        s = svd(a)
        for k in (1, 2, 3):
            best = lowrank_error(s, k)
            for b in _candidates(rng, s, k, 1000):
                e = fro_norm(a - b)
                checked += 1
                if not oracles.lex_le((best.std, best.inf), (e.std, e.inf), 1e-10, 1e-9):
                    violations += 1
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 60
    acceptance_report(5, "Eckart-Young optimality", ok, f"{violations} violations in {checked} comparisons, {elapsed:.1f} s < 60 s")
    assert ok


# 6 -------------------------------------------------------------------------


def test_criterion_6_rank_theory(acceptance_report):
    rng = np.random.default_rng(6)
    violations = []

    def ranks(x):
        s = svd(x)
        return s.rank_t, s.arank_r

    for trial in range(100):
        m, n, p = (int(v) for v in rng.integers(1, 7, size=3))
        a_parts = oracles.random_structured(rng, m, n)
        a = DCMatrix(*a_parts)
        b = DCMatrix(*oracles.random_structured(rng, n, p))
        c = DCMatrix(*oracles.random_structured(rng, m, n))
        d = DCMatrix(*oracles.random_structured(rng, p, n))
        (ta, ra), (tb, rb), (tc, rc), (td, rd) = ranks(a), ranks(b), ranks(c), ranks(d)
        tab, rab = ranks(a @ b)
        if tab > min(ta, tb) or rab > min(ra, rb):
            violations.append((trial, "product"))
        tv, rv = ranks(vstack([a, d]))
        th, rh = ranks(hstack([a.H, d.H]))
        if tv > ta + td or rv > ra + rd or th > ta + td or rh > ra + rd:
            violations.append((trial, "stacking"))
        ts, rs = ranks(a + c)
        if not (abs(ta - tc) <= ts <= ta + tc and abs(ra - rc) <= rs <= ra + rc):
            violations.append((trial, "sum"))
        if ra != oracles.classical_rank(a_parts[0]):
            violations.append((trial, "arank"))
    ok = not violations
    acceptance_report(6, "rank inequalities and arank = rank(A_st)", ok, f"{len(violations)} violations over 100 pairs")
    assert ok, violations[:5]


# 7 -------------------------------------------------------------------------


def _rand_dc(rng):
    std = complex(*rng.standard_normal(2)) if rng.random() > 0.1 else 0j
    return DualComplex(std, complex(*rng.standard_normal(2)))


def _close(p, q, ts=1e-10, ti=1e-9):
    return abs(p.std - q.std) <= ts * max(1.0, abs(q.std)) and abs(p.inf - q.inf) <= ti * max(1.0, abs(q.inf))


def test_criterion_7_scalar_suite(acceptance_report):
    rng = np.random.default_rng(7)
    fails = {name: 0 for name in ("conj", "nonneg", "mult", "triangle", "vec_triangle", "sqrt", "nilpotent")}
    zero = DualNumber(0, 0)
    for _ in range(10_000):
        p, q = _rand_dc(rng), _rand_dc(rng)
        mp, mq = dc_magnitude(p), dc_magnitude(q)
        if not _close(dc_magnitude(dc_conj(q)), mq):
            fails["conj"] += 1
        if mq < zero or (mq == zero) != (q == DualComplex(0, 0)):
            fails["nonneg"] += 1
        if not _close(dc_magnitude(dc_mul(p, q)), dn_mul(mp, mq)):
            fails["mult"] += 1
        lhs, rhs = dc_magnitude(dc_add(p, q)), mp + mq
        if not oracles.lex_le((lhs.std, lhs.inf), (rhs.std, rhs.inf), 1e-10, 1e-9):
            fails["triangle"] += 1
        n = int(rng.integers(1, 6))
        x = DCVector(oracles.random_complex(rng, n), oracles.random_complex(rng, n))
        y = DCVector(oracles.random_complex(rng, n), oracles.random_complex(rng, n))
        if rng.random() < 0.1:
            x = DCVector(np.zeros(n), x.inf)
        nx, ny, nxy = vec_norm2(x), vec_norm2(y), vec_norm2(x + y)
        tot = nx + ny
        if not oracles.lex_le((nxy.std, nxy.inf), (tot.std, tot.inf), 1e-10, 1e-9):
            fails["vec_triangle"] += 1
        r = DualNumber(float(rng.uniform(1e-3, 10)), float(rng.standard_normal()))
        root = dn_sqrt(r)
        if not _close(dn_mul(root, root), r):
            fails["sqrt"] += 1
        a, b = rng.standard_normal(2)
        if dn_mul(DualNumber(0, a), DualNumber(0, b)) != zero or dc_mul(DualComplex(0, p.inf), DualComplex(0, q.inf)) != DualComplex(0, 0):
            fails["nilpotent"] += 1
    total = sum(fails.values())
    ok = total == 0
    acceptance_report(7, "scalar algebra suite, 10000 cases", ok, ", ".join(f"{k}={v}" for k, v in fails.items()))
    assert ok, fails


# 8 -------------------------------------------------------------------------


def test_criterion_8_norm_invariance(acceptance_report):
    rng = np.random.default_rng(8)
    worst = [0.0, 0.0]
    for _ in range(100):
        m, n = (int(v) for v in rng.integers(1, 8, size=2))
        u = extend_to_unitary(DCMatrix(*oracles.random_partial_unitary(rng, m, int(rng.integers(0, m + 1)))))
        v = extend_to_unitary(DCMatrix(*oracles.random_partial_unitary(rng, n, int(rng.integers(0, n + 1)))))
        a = DCMatrix(*oracles.random_dual_parts(rng, m, n))
        lhs, rhs = fro_norm(u @ a @ v), fro_norm(a)
        worst = [max(worst[0], abs(lhs.std - rhs.std)), max(worst[1], abs(lhs.inf - rhs.inf))]
    ok = worst[0] <= 1e-10 and worst[1] <= 1e-9
    acceptance_report(8, "unitary invariance of the Frobenius norm", ok, f"worst ({worst[0]:.1e}, {worst[1]:.1e})")
    assert ok


# 9 -------------------------------------------------------------------------


def _run_image(std_path, inf_path, ks, out):
    code = main(["image", str(std_path), str(inf_path), "--k", ",".join(map(str, ks)), "--out", str(out)])
    rows = (out / "errors.csv").read_text().strip().split("\n")[1:]
    return code, [(int(k), float(es), float(ei)) for k, es, ei in (r.split(",") for r in rows)]


def test_criterion_9_image_pipeline(acceptance_report, tmp_path):
    from importlib import resources

    data = resources.files("dclinalg.data")
    std_path, inf_path = data.joinpath("smoke_std.pgm"), data.joinpath("smoke_inf.pgm")
    ks = [5, 15, 25, 35, 45, 64]
    code, rows = _run_image(std_path, inf_path, ks, tmp_path / "small")
    a = spectrum_matrix(read_pgm(std_path), read_pgm(inf_path))
    s = svd(a)
    norm_inv = dn_inv(fro_norm(a))
    scale = float(np.sqrt(np.sum(s.sigma_std**2)))
    worst = [0.0, 0.0]
    for k, es, ei in rows:
        tail = dn_mul(lowrank_error(s, k), norm_inv)
        residual = a - truncate(s, k)
        direct = dn_mul(fro_norm(residual, tol=1e-12 * scale), norm_inv)
        for ref in (tail, direct):
            worst = [max(worst[0], abs(es - ref.std)), max(worst[1], abs(ei - ref.inf))]
    stds = [r[1] for r in rows]
    decreasing = all(x > y for x, y in zip(stds, stds[1:]))
    last_zero = rows[-1][0] == 64 and rows[-1][1] == 0 and rows[-1][2] == 0

    big = tmp_path / "big"
    big.mkdir()
    write_pgm(synthetic_image(512, 1), big / "std.pgm")
    write_pgm(synthetic_image(512, 2), big / "inf.pgm")
    t0 = time.perf_counter()
    code_big, big_rows = _run_image(big / "std.pgm", big / "inf.pgm", [5, 15, 25, 35, 45], big)
    elapsed = time.perf_counter() - t0
    big_decreasing = len(big_rows) == 5 and all(x[1] > y[1] for x, y in zip(big_rows, big_rows[1:]))

    ok = (
        code == 0 and code_big == 0 and worst[0] <= 1e-9 and worst[1] <= 1e-8
        and decreasing and last_zero and big_decreasing and elapsed < 60
    )
    acceptance_report(
        9, "image pipeline on the bundled 64x64 pair", ok,
        f"CSV vs identities ({worst[0]:.1e}, {worst[1]:.1e}), strictly decreasing {decreasing}, "
        f"k=64 zero {last_zero}, 512x512 run {elapsed:.1f} s < 60 s",
    )
    assert ok
