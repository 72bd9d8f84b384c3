"""Counter-based random streams keyed on (seed, trial_index).

Every trial gets its own Philox stream whose 128-bit key is the pair
(seed, trial_index), so a trial's draws never depend on which other trials
ran before it or on which thread ran it.
"""
import threading

import numpy as np

_MASK64 = (1 << 64) - 1
_local = threading.local()


def trial_key(seed, trial_index):
    if trial_index < 0:
        raise ValueError("trial_index must be nonnegative")
    return np.array([seed & _MASK64, trial_index & _MASK64], dtype=np.uint64)


def fresh_generator(seed, trial_index):
    """Reference construction; slower than :func:`trial_generator`."""
    return np.random.Generator(np.random.Philox(key=trial_key(seed, trial_index)))


def trial_generator(seed, trial_index):
    """Return a generator positioned at the start of stream (seed, trial_index).

    Reuses one Philox object per thread and rewinds it, which is several times
    cheaper than building a new bit generator for every trial. The returned
    generator is only valid until the next call on the same thread.
    """
    cached = getattr(_local, "gen", None)
    if cached is None:
        bitgen = np.random.Philox(key=trial_key(seed, trial_index))
        cached = (bitgen, np.random.Generator(bitgen))
        _local.gen = cached
        return cached[1]
    bitgen, gen = cached
    bitgen.state = {
        "bit_generator": "Philox",
        "state": {
            "counter": np.zeros(4, dtype=np.uint64),
            "key": trial_key(seed, trial_index),
        },
        "buffer": np.zeros(4, dtype=np.uint64),
        "buffer_pos": 4,
        "has_uint32": 0,
        "uinteger": 0,
    }
    return gen


def uniforms(seed, trial_index, size):
    return trial_generator(seed, trial_index).random(size)
