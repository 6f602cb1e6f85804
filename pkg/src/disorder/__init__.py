from .averaging import disorder_average, evaluate_realizations, summarize
from .sampling import edge_deviates, sample_couplings

__all__ = [
    "disorder_average",
    "edge_deviates",
    "evaluate_realizations",
    "sample_couplings",
    "summarize",
]
