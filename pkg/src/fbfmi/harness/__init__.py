from .experiment import ExperimentSpec, RunRecord, emit_results, inject_mcar, run_experiment
from .io import ingest_csv, read_results_csv, read_summary, summarize
from .plot import emit_boxplot_svg

__all__ = [
    "ExperimentSpec",
    "RunRecord",
    "emit_boxplot_svg",
    "emit_results",
    "ingest_csv",
    "inject_mcar",
    "read_results_csv",
    "read_summary",
    "run_experiment",
    "summarize",
]
