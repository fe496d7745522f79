"""Vectorized coordinate-box searches.

The only numerically hot loops in the package are enumerations of lattice
vectors with a prescribed square inside a coordinate box.  Two interchangeable
backends compute them: a numba-compiled loop and a pure-numpy evaluation.
Select with the environment variable MUKAILAT_BACKEND in {"numba", "numpy"};
default is numba when importable.  Results are int64 numpy arrays in
lexicographic order and are identical across backends; inputs that could
overflow int64 are rejected, never wrapped.
"""

import itertools
import os

import numpy as np

_INT64_MAX = 2 ** 62  # one spare bit of headroom


def _overflow_guard(gram, bound):
    n = len(gram)
    gmax = int(max(abs(int(x)) for row in gram for x in row) or 1)
    worst = n * n * bound * bound * gmax
    if worst >= _INT64_MAX:
        raise OverflowError("box search would exceed int64 range")


def _box(n, bound):
    """All vectors with coordinates in [-bound, bound], lexicographic order."""
    side = 2 * bound + 1
    if side ** n > 50_000_000:
        raise MemoryError("box of %d^%d vectors is too large" % (side, n))
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _squares_numpy(vecs, gram):
    g = np.asarray(gram, dtype=np.int64)
    return np.einsum("ij,jk,ik->i", vecs, g, vecs)


try:
    from numba import njit

    @njit(cache=True)
    def _squares_numba(vecs, g):
        n = vecs.shape[0]
        d = vecs.shape[1]
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            s = 0
            for a in range(d):
                va = vecs[i, a]
                if va != 0:
                    row = 0
                    for b in range(d):
                        row += g[a, b] * vecs[i, b]
                    s += va * row
            out[i] = s
        return out

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def backend_name():
    env = os.environ.get("MUKAILAT_BACKEND", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not _HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return env
    return "numba" if _HAVE_NUMBA else "numpy"


def box_squares(gram, bound):
    """(vectors, squares) over the whole box, backend-dispatched."""
    _overflow_guard(gram, bound)
    n = len(gram)
    vecs = _box(n, bound)
    g = np.asarray(gram, dtype=np.int64)
    if backend_name() == "numba":
        sq = _squares_numba(vecs, g)
    else:
        sq = _squares_numpy(vecs, g)
    return vecs, sq


def vectors_with_square(gram, bound, target):
    """All box vectors of the given square, lexicographic order, as tuples."""
    vecs, sq = box_squares(gram, bound)
    hit = vecs[sq == target]
    return [tuple(int(x) for x in row) for row in hit]


def isotropic_vectors(gram, bound):
    out = vectors_with_square(gram, bound, 0)
    return [v for v in out if any(v)]
