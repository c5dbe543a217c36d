import numpy as np
from hypothesis import strategies as st

from twofold.generators import partly_decomposable_two_fold, wielandt
from twofold.matrix import SignPattern

PART_DECOMP_5 = partly_decomposable_two_fold(5)
WIELANDT_5 = wielandt(5)
REMARK = SignPattern.from_mask([[1, 0], [1, 1]])


def identity(n):
    return SignPattern.from_mask(np.eye(n, dtype=bool))


def ones(n):
    return SignPattern.from_mask(np.ones((n, n), dtype=bool))


@st.composite
def patterns(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.integers(0, (1 << (n * n)) - 1))
    return SignPattern.from_code(n, code)


@st.composite
def positive_matrices(draw, min_n=1, max_n=5, lo=0.1, hi=3.0):
    n = draw(st.integers(min_n, max_n))
    vals = draw(st.lists(st.floats(lo, hi), min_size=n * n, max_size=n * n))
    return np.array(vals).reshape(n, n)


@st.composite
def sparse_matrices(draw, min_n=2, max_n=5):
    """Nonnegative with at least one positive diagonal entry, so r > 0."""
    a = draw(positive_matrices(min_n, max_n))
    n = a.shape[0]
    keep = np.array(draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))).reshape(n, n)
    a = np.where(keep, a, 0.0)
    a[0, 0] = max(a[0, 0], 0.5)
    return a


def diagonals(n, bound=3.0):
    return st.lists(st.floats(-bound, bound), min_size=n, max_size=n).map(np.array)
