"""Deterministic stream splitting for all randomness in the package.

Every stochastic routine takes a single 64-bit ``seed``. Independent
sub-streams (one per generating unit, one per Monte Carlo replication) are
derived by keying ``numpy.random.SeedSequence`` with the root seed followed
by the integer path to the consumer:

    unit trajectory        -> SeedSequence([seed, unit_index])
    replication r          -> derived seed from SeedSequence([seed, r])
    unit within a rep      -> SeedSequence([rep_seed, unit_index])

SeedSequence's mixing is specified and stable across numpy versions, so the
same (seed, path) always yields the same stream, and adding units or
replications never perturbs the streams of existing ones.
"""

from __future__ import annotations

import numpy as np

_U64 = 1 << 64


def _entropy(seed: int) -> int:
    """Map a signed 64-bit seed onto the nonnegative range SeedSequence accepts."""
    return int(seed) % _U64


def substream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the sub-stream addressed by (seed, *path)."""
    return np.random.default_rng(np.random.SeedSequence([_entropy(seed), *path]))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse (seed, *path) into a new 64-bit seed for nested splitting."""
    ss = np.random.SeedSequence([_entropy(seed), *path])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
