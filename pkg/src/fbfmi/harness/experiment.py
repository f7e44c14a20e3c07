"""Missingness-injection study: oracle vs list-wise deletion vs imputation.

For every (rate, rep) cell the complete data are analysed once (oracle),
MCAR missingness is injected into the chosen columns, and the corrupted data
are analysed after list-wise deletion and after multiple imputation.

Seeds: every random stream of a cell is derived from
``SeedSequence(base_seed, spawn_key=(rate_index, rep, stream))`` with stream
0 for the missingness mask and 1 for the imputation chain, so any single
record can be regenerated on its own.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import AlreadyMissing, FBFError, UnknownColumn
from ..fbf import select
from ..impute import GibbsConfig, impute, listwise_delete
from ..linmodel import FractionConfig
from ..mifbf import mi_select
from .io import ingest_csv, summarize, write_results_csv, write_summary

log = logging.getLogger(__name__)

METHODS = ("oracle", "listwise", "imputed")
MASK_STREAM, IMPUTE_STREAM = 0, 1


@dataclass
class ExperimentSpec:
    data: str
    response: str
    predictors: list
    miss_cols: list
    rates: list = field(default_factory=lambda: [0.1, 0.2, 0.3])
    reps: int = 30
    m: int = 20
    seed: int = 0
    model_prior: str = "uniform"
    fraction: object = "minimal"  # "minimal" or an explicit b in (0, 1]
    burn_in: int = 200
    spacing: int = 50

    def __post_init__(self):
        if not self.rates:
            raise ValueError("at least one missingness rate is required")
        if any(not 0.0 < r < 1.0 for r in self.rates):
            raise ValueError(f"rates must lie in (0, 1): {self.rates}")
        unknown = set(self.miss_cols) - set(self.predictors)
        if unknown:
            raise UnknownColumn(f"columns to corrupt are not predictors: {sorted(unknown)}")
        if self.reps < 1 or self.m < 1:
            raise ValueError("reps and m must be positive")
        if self.fraction != "minimal":
            FractionConfig(float(self.fraction))


@dataclass
class RunRecord:
    rate: float
    rep: int
    method: str
    inclusion: np.ndarray = None
    log_fbf: np.ndarray = None
    wall_time: float = 0.0
    error: str = None

    @property
    def ok(self):
        return self.error is None


def derive_seed(base, rate_index, rep, stream):
    ss = np.random.SeedSequence(base, spawn_key=(rate_index, rep, stream))
    return int(ss.generate_state(1, np.uint64)[0])


def inject_mcar(d, cols, rate, seed):
    """Mark each cell of ``cols`` missing independently with probability ``rate``.

    ``cols`` are predictor names or indices. The response is never touched.
    """
    if not 0.0 < rate < 1.0:
        raise ValueError(f"rate must lie in (0, 1), got {rate}")
    idx = [d.names.index(c) if isinstance(c, str) else int(c) for c in cols]
    if not d.mask[:, idx].all():
        raise AlreadyMissing("columns selected for injection already contain missing cells")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    drop = rng.random((d.n, len(idx))) < rate
    mask = d.mask.copy()
    mask[:, idx] &= ~drop
    return d.with_mask(mask)


def _fraction(spec):
    return None if spec.fraction == "minimal" else FractionConfig(float(spec.fraction))


def _timed(rate, rep, method, fn):
    start = time.perf_counter()
    try:
        res = fn()
    except FBFError as exc:
        log.warning("rate=%s rep=%d method=%s failed: %s", rate, rep, method, exc)
        return RunRecord(rate, rep, method, wall_time=time.perf_counter() - start,
                         error=f"{type(exc).__name__}: {exc}")
    return RunRecord(rate, rep, method, res.inclusion, res.log_fbf, time.perf_counter() - start)


def run_cell(spec, d, rate_index, rep, oracle=None):
    """The three records of one (rate, rep) cell."""
    rate = spec.rates[rate_index]
    f = _fraction(spec)
    if oracle is None:
        oracle = _timed(rate, rep, "oracle", lambda: select(d.X, d.y, f, spec.model_prior))
    else:
        oracle = RunRecord(rate, rep, "oracle", oracle.inclusion, oracle.log_fbf, oracle.wall_time, oracle.error)
    corrupted = inject_mcar(d, spec.miss_cols, rate, derive_seed(spec.seed, rate_index, rep, MASK_STREAM))

    def listwise():
        kept = listwise_delete(corrupted)
        return select(kept.X, kept.y, f, spec.model_prior)

    def imputed():
        cfg = GibbsConfig(spec.burn_in, spec.spacing, spec.m,
                          derive_seed(spec.seed, rate_index, rep, IMPUTE_STREAM))
        return mi_select(impute(corrupted, cfg), f, spec.model_prior)

    return [oracle, _timed(rate, rep, "listwise", listwise), _timed(rate, rep, "imputed", imputed)]


def _run_cell_job(args):
    spec, d, rate_index, rep, oracle = args
    return run_cell(spec, d, rate_index, rep, oracle)


def run_experiment(spec, workers=1, dataset=None):
    """Run every (rate, rep) cell; records come back sorted by (rate, rep, method).

    The oracle analysis uses no randomness, so it is computed once and
    copied into every cell.
    """
    d = dataset if dataset is not None else ingest_csv(spec.data, spec.response, spec.predictors)
    if not d.is_complete:
        raise AlreadyMissing("the experiment needs a complete dataset as its oracle")
    oracle = _timed(None, 0, "oracle", lambda: select(d.X, d.y, _fraction(spec), spec.model_prior))
    jobs = [(spec, d, ri, rep, oracle) for ri in range(len(spec.rates)) for rep in range(spec.reps)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_cell_job, jobs))
    else:
        cells = [_run_cell_job(job) for job in jobs]
    records = [r for cell in cells for r in cell]
    order = {m: i for i, m in enumerate(METHODS)}
    records.sort(key=lambda r: (r.rate, r.rep, order[r.method]))
    return records


def result_rows(records, names):
    for r in records:
        if not r.ok:
            continue
        for name, prob in zip(names, r.inclusion):
            yield (r.rate, r.rep, r.method, name, prob)


def emit_results(records, csv_path, summary_path, names, corrupted=()):
    """Write the flat per-variable CSV and the boxplot summary; return the summary."""
    if not records:
        raise ValueError("no records to write")
    rows = list(result_rows(records, names))
    write_results_csv(rows, csv_path)
    failures = [{"rate": r.rate, "rep": r.rep, "method": r.method, "error": r.error}
                for r in records if not r.ok]
    summary = summarize(rows, corrupted, failures)
    write_summary(summary, summary_path)
    return summary
