"""Counter-based random substreams.

Every random draw in the toolkit comes from a generator keyed by
(master seed, namespace, counters...). Keys are mixed by numpy's
``SeedSequence`` hash, so any realization or trial can be regenerated on
its own, in any order and on any worker.
"""

from typing import Dict

import numpy as np

NAMESPACES: Dict[str, int] = {
    "disorder": 0,
    "recall": 1,
    "basin": 2,
    "random-start": 3,
    "fixtures": 4,
}


def substream(master_seed: int, namespace: str, *counters: int) -> np.random.Generator:
    """Generator for one (seed, namespace, counters) key.

    Uses PCG64 through ``default_rng``; Gaussian draws use numpy's
    ziggurat ``standard_normal``.
    """
    key = (NAMESPACES[namespace],) + tuple(int(c) for c in counters)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(master_seed), spawn_key=key))
