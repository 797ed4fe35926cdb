"""Dense 3-D tensor container and slice-level primitives.

A tensor here is a plain ``numpy.ndarray`` of shape ``(n1, n2, n3)`` and
dtype float64.  The third axis indexes the frontal slices: ``t[:, :, k]``
is the ``n1 x n2`` matrix at (0-based) slice ``k``.  Matrix blocks are
likewise plain 2-D arrays.  All functions in this package treat their
inputs as immutable and never mutate them; reductions use numpy's
deterministic summation, so repeated calls on the same data are
bit-reproducible.

``frontal_slice`` takes a 1-based slice index, following the convention
used throughout the tensor-completion literature; everything else works
on whole tensors.
"""

import numpy as np

# Materializing a block-circulant (or block-diagonal) matrix of more than
# this many entries is almost certainly a mistake; the fast FFT path never
# needs it.
MAX_MATERIALIZED_ELEMENTS = 2 ** 28


def as_tensor3(a, name="tensor"):
    """Validate and return `a` as an (n1, n2, n3) float64 array.

    Rejects non-3-D input, empty dimensions, and NaN/Inf values.  SVD and
    thresholding behavior on non-finite data is undefined, so bad values
    are refused eagerly instead of surfacing later as garbage factors.
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 3:
        raise ValueError(f"{name} must be a 3-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


def _require_same_dims(a, b):
    if a.shape != b.shape:
        raise ValueError(f"tensor dims differ: {a.shape} vs {b.shape}")


def frontal_slice(t, i):
    """Return frontal slice `i` (1-based) of `t` as an n1 x n2 matrix.

    The returned matrix is a copy; writing to it never touches `t`.
    """
    t = as_tensor3(t)
    n3 = t.shape[2]
    if not 1 <= i <= n3:
        raise IndexError(f"frontal slice index {i} out of range 1..{n3}")
    return t[:, :, i - 1].copy()


def unfold(t):
    """Stack the frontal slices of `t` vertically into an (n1*n3) x n2 matrix."""
    t = as_tensor3(t)
    n1, n2, n3 = t.shape
    return t.transpose(2, 0, 1).reshape(n1 * n3, n2).copy()


def fold(m, dims):
    """Inverse of :func:`unfold`; `dims` is the target (n1, n2, n3)."""
    m = np.asarray(m, dtype=np.float64)
    n1, n2, n3 = dims
    if m.shape != (n1 * n3, n2):
        raise ValueError(
            f"fold expects a {n1 * n3} x {n2} matrix for dims {tuple(dims)}, "
            f"got {m.shape}"
        )
    return m.reshape(n3, n1, n2).transpose(1, 2, 0).copy()


def bcirc(t):
    """Materialize the (n1*n3) x (n2*n3) block-circulant matrix of `t`.

    Block (p, q) holds the frontal slice with 0-based index (p - q) mod n3,
    so the first block column equals unfold(t).  This is the reference /
    oracle path only; it is never used by the FFT-based operations.
    """
    t = as_tensor3(t)
    n1, n2, n3 = t.shape
    total = n1 * n3 * n2 * n3
    if total > MAX_MATERIALIZED_ELEMENTS:
        raise MemoryError(
            f"block circulant of dims {t.shape} would hold {total} entries; "
            "refusing to materialize it"
        )
    out = np.empty((n1 * n3, n2 * n3))
    for p in range(n3):
        for q in range(n3):
            out[p * n1:(p + 1) * n1, q * n2:(q + 1) * n2] = t[:, :, (p - q) % n3]
    return out


def inner_product(a, b):
    """Sum of elementwise products over all entries of two same-shaped tensors."""
    a = as_tensor3(a, "a")
    b = as_tensor3(b, "b")
    _require_same_dims(a, b)
    return float(np.sum(a * b))


def frobenius(t):
    """Frobenius norm; frobenius(t)**2 equals inner_product(t, t)."""
    t = as_tensor3(t)
    return float(np.sqrt(np.sum(t * t)))


def l1(t):
    """Sum of absolute values of all entries."""
    t = as_tensor3(t)
    return float(np.sum(np.abs(t)))


def linf(t):
    """Largest absolute entry."""
    t = as_tensor3(t)
    return float(np.max(np.abs(t)))


def trace_tensor(t):
    """Sum of the traces of all frontal slices; requires n1 == n2."""
    t = as_tensor3(t)
    n1, n2, _ = t.shape
    if n1 != n2:
        raise ValueError(f"trace needs square frontal slices, got {n1} x {n2}")
    return float(np.sum(np.trace(t, axis1=0, axis2=1)))
