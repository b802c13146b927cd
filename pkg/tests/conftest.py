"""Shared fixtures and slow-but-obvious reference implementations.

The naive_* helpers work on plain character strings with float arithmetic so
they share no code with the package; several tests use them as oracles.
"""

import itertools

import pytest

from hamming_centroid import BinaryStringSet

INTRO_ROWS = ["1111111", "1111000", "0000100", "0000010", "0000001"]


@pytest.fixture
def intro():
    return BinaryStringSet.from_texts(INTRO_ROWS)


def naive_hd(a, b):
    assert len(a) == len(b)
    return sum(x != y for x, y in zip(a, b))


def naive_cost(center, rows, pf):
    # pf may be an int (exact) or a float
    return sum(naive_hd(center, r) ** pf for r in rows)


def all_strings(n):
    for tup in itertools.product("01", repeat=n):
        yield "".join(tup)


def naive_best(rows, pf):
    """(minimum cost, lexicographically smallest minimizer) by full scan."""
    best = None
    best_s = None
    for cand in all_strings(len(rows[0])):
        c = naive_cost(cand, rows, pf)
        if best is None or c < best - 1e-9:
            best, best_s = c, cand
    return best, best_s
