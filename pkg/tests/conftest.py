import numpy as np
import pytest

from zetaconv.numtheory import mertens_evaluator


@pytest.fixture(scope="session")
def ev_1e6():
    return mertens_evaluator(10 ** 6)


@pytest.fixture(scope="session")
def ev_1e4():
    return mertens_evaluator(10 ** 4)


@pytest.fixture()
def rng():
    return np.random.default_rng(20250811)


def mu_bruteforce(n: int) -> int:
    """Trial-division Moebius function; the independent sieve oracle."""
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1
