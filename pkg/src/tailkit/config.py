"""Enumeration guards.

Guards keep exhaustive oracles at desk scale. Setting the environment
variable ``TAILKIT_GUARD_OVERRIDE=1`` lifts all of them.
"""
import os

from .errors import CapacityError

EXACT_TAIL_MAX_N = 24
EXACT_MOMENT_MAX_TUPLES = 10**7
SOLUTION_GRID_MAX = 10**8
SUBGRAPH_MAX_EDGES = 20
ROOTED_TAIL_MAX_PAIRS = 24
COPY_ENUM_MAX = 10**6
M_MAX_CAP = 10**4


def guards_lifted():
    return os.environ.get("TAILKIT_GUARD_OVERRIDE", "") == "1"


def check_guard(value, limit, what):
    if value > limit and not guards_lifted():
        raise CapacityError(
            f"{what} = {value} exceeds guard {limit} "
            "(set TAILKIT_GUARD_OVERRIDE=1 to lift)"
        )
