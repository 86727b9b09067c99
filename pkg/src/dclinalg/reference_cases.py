"""Published worked examples, bundled as ``.dcmx`` fixtures with expected spectra.

The inputs were printed to four decimals, so the recovered spectra carry a
quantization error of a few 1e-5 (larger for the Gram case, whose entries
are quadratic in the inputs).  The near-degenerate case also needs coarse
cluster and zero tolerances: its double singular value is split by about
4e-5 and its zero singular value sits near 7e-5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .array import DCMatrix, mat_mul
from .dcmx import loads_dcmx
from .spectral import hermitian_eig
from .svd import svd

QUANTIZED_TOL = 1e-3


@dataclass(frozen=True)
class ReferenceCase:
    name: str
    fixture: str
    kind: str  # "svd" or "gram_eig"
    expected_std: tuple[float, ...]
    expected_inf: tuple[float, ...]
    tol: float
    options: dict = field(default_factory=dict)
    expected_rank: int | None = None
    expected_arank: int | None = None

    def load(self) -> DCMatrix:
        text = resources.files("dclinalg.data").joinpath(self.fixture).read_text(encoding="utf-8")
        return loads_dcmx(text, source=self.fixture)


CASES = (
    ReferenceCase(
        name="rect-8x4",
        fixture="rect_8x4.dcmx",
        kind="svd",
        expected_std=(3.4147, 2.4280, 2.1287, 0.8744),
        expected_inf=(0.5451, 0.6444, -0.5667, 0.4006),
        tol=5e-4,
        expected_rank=4,
        expected_arank=4,
    ),
    ReferenceCase(
        name="degenerate-6x4",
        fixture="degenerate_6x4.dcmx",
        kind="svd",
        expected_std=(2.0, 1.0, 1.0, 0.0),
        expected_inf=(-0.4551, -0.4524, 1.9418, 0.9203),
        tol=5e-4,
        options={"cluster_tol": QUANTIZED_TOL, "zero_tol": QUANTIZED_TOL},
        expected_rank=4,
        expected_arank=3,
    ),
    ReferenceCase(
        name="gram-10x4",
        fixture="gram_10x4.dcmx",
        kind="gram_eig",
        expected_std=(16.3352, 12.836, 7.3681, 3.4607),
        expected_inf=(27.3465, 22.9941, 9.9258, 4.1092),
        tol=5e-3,
    ),
)


@dataclass(frozen=True)
class CaseReport:
    case: ReferenceCase
    got_std: np.ndarray
    got_inf: np.ndarray
    max_error: float
    rank: int | None
    arank: int | None
    passed: bool


def _as_pairs(std, inf):
    # Within a group of equal standard parts the printed order is not
    # canonical, so compare lexicographically sorted (std, inf) pairs.
    pairs = sorted(zip(np.round(std, 2), std, inf), key=lambda t: (-t[0], -t[2]))
    return np.array([p[1] for p in pairs]), np.array([p[2] for p in pairs])


def run_case(case: ReferenceCase, a: DCMatrix | None = None, tol: float | None = None) -> CaseReport:
    a = case.load() if a is None else a
    tol = case.tol if tol is None else tol
    rank = arank = None
    opts = {"solver": "jacobi", **case.options}
    if case.kind == "svd":
        s = svd(a, **opts)
        got_std, got_inf = np.asarray(s.sigma_std), np.asarray(s.sigma_inf)
        rank, arank = s.rank_t, s.arank_r
    else:
        e = hermitian_eig(mat_mul(a.H, a), **opts)
        got_std, got_inf = e.values_std, e.values_inf
    exp_std, exp_inf = np.array(case.expected_std), np.array(case.expected_inf)
    if got_std.shape != exp_std.shape:
        return CaseReport(case, got_std, got_inf, float("inf"), rank, arank, False)
    gs, gi = _as_pairs(got_std, got_inf)
    es, ei = _as_pairs(exp_std, exp_inf)
    err = float(max(np.max(np.abs(gs - es)), np.max(np.abs(gi - ei))))
    passed = err <= tol
    if case.expected_rank is not None:
        passed = passed and rank == case.expected_rank and arank == case.expected_arank
    return CaseReport(case, got_std, got_inf, err, rank, arank, passed)


def run_all(tol: float | None = None) -> list[CaseReport]:
    return [run_case(c, tol=tol) for c in CASES]
