"""Tensor-tensor product algebra and the tensor SVD.

The product of two 3-D tensors is a circular convolution along the tube
dimension: fold(bcirc(a) @ unfold(b)).  Because a block-circulant matrix
diagonalizes under the DFT, the same product is computed slice-by-slice
in the frequency domain, which is the fast path used everywhere.  The
literal block-circulant route is kept as ``t_product_reference`` so the
two can cross-check each other.

The tensor SVD factors x = u * s * v^T with u, v orthogonal and s
f-diagonal (every frontal slice diagonal).  It is computed as one matrix
SVD per frequency slice.  For real input the spectrum is conjugate
symmetric, so only slices 0..n3//2 are decomposed and the mirrored slices
are filled in by conjugation; recomputing them independently could pick
incompatible phases and break the real inverse transform.

All nuclear-norm style quantities here measure the FIRST frequency slice
(equivalently, the sum of all frontal slices): that is the norm being
reported and truncated.  The thresholding operator ``svt``, by contrast,
shrinks the singular values of EVERY frequency slice; it is the proximal
map used by the solvers.  The two deliberately do not coincide for
n3 > 1.
"""

from typing import NamedTuple

import numpy as np
from numpy import linalg as la

from .core import as_tensor3, bcirc, fold, unfold
from .fourier import fft_dim3, first_fourier_slice, ifft_dim3


class TSVDFactors(NamedTuple):
    """Orthogonal u (n1,n1,n3), f-diagonal s (n1,n2,n3), orthogonal v (n2,n2,n3)."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


class TruncationPair(NamedTuple):
    """Leading r left/right singular directions, transposed.

    a has shape (r, n1, n3) and b has shape (r, n2, n3); each satisfies
    pair * pair^T = identity up to rounding.
    """

    a: np.ndarray
    b: np.ndarray
    r: int


def _check_product_dims(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"inner dimensions do not match: {a.shape} * {b.shape}"
        )
    if a.shape[2] != b.shape[2]:
        raise ValueError(
            f"tube dimensions do not match: {a.shape} * {b.shape}"
        )


def t_product(a, b):
    """Tensor-tensor product of (n1,n2,n3) and (n2,n4,n3) -> (n1,n4,n3).

    Computed as per-frequency-slice matrix products followed by the
    inverse transform.
    """
    a = as_tensor3(a, "a")
    b = as_tensor3(b, "b")
    _check_product_dims(a, b)
    af = fft_dim3(a).transpose(2, 0, 1)
    bf = fft_dim3(b).transpose(2, 0, 1)
    cf = np.matmul(af, bf).transpose(1, 2, 0)
    return ifft_dim3(cf)


def t_product_reference(a, b):
    """Same product via the materialized block-circulant matrix (oracle path)."""
    a = as_tensor3(a, "a")
    b = as_tensor3(b, "b")
    _check_product_dims(a, b)
    n1, _, n3 = a.shape
    n4 = b.shape[1]
    return fold(bcirc(a) @ unfold(b), (n1, n4, n3))


def conj_transpose(a):
    """Transpose every frontal slice and reverse the order of slices 2..n3."""
    a = as_tensor3(a)
    n1, n2, n3 = a.shape
    out = np.empty((n2, n1, n3))
    out[:, :, 0] = a[:, :, 0].T
    for i in range(1, n3):
        out[:, :, i] = a[:, :, n3 - i].T
    return out


def identity_tensor(n, n3):
    """n x n x n3 tensor whose first frontal slice is I_n, the rest zero."""
    if n < 1 or n3 < 1:
        raise ValueError(f"identity tensor needs positive dims, got ({n}, {n3})")
    out = np.zeros((n, n, n3))
    out[:, :, 0] = np.eye(n)
    return out


def is_orthogonal(q, tol):
    """True iff q * q^T and q^T * q are both within `tol` of the identity."""
    q = as_tensor3(q, "q")
    n1, n2, n3 = q.shape
    if n1 != n2:
        raise ValueError(f"orthogonality needs square slices, got {n1} x {n2}")
    ident = identity_tensor(n1, n3)
    qt = conj_transpose(q)
    left = np.sqrt(np.sum((t_product(q, qt) - ident) ** 2))
    right = np.sqrt(np.sum((t_product(qt, q) - ident) ** 2))
    return bool(left <= tol and right <= tol)


def _diag_embed(s, n1, n2):
    out = np.zeros((n1, n2))
    np.fill_diagonal(out, s)
    return out


def t_svd(x):
    """Decompose x into TSVDFactors (u, s, v) with x = u * s * v^T.

    One matrix SVD per frequency slice; slice 0 (and the Nyquist slice for
    even n3) is real and gets a real SVD, the remaining slices up to the
    midpoint get complex SVDs and their mirrors are conjugated copies.
    Within each slice singular values come out non-increasing.

    Factor matrices from an SVD are unique only up to sign/phase, so
    callers must compare products (u * s * v^T, a * x * b^T, norms), never
    u or v entrywise.
    """
    x = as_tensor3(x)
    n1, n2, n3 = x.shape
    xf = fft_dim3(x)
    uf = np.empty((n1, n1, n3), dtype=np.complex128)
    sf = np.empty((n1, n2, n3), dtype=np.complex128)
    vf = np.empty((n2, n2, n3), dtype=np.complex128)
    half = n3 // 2
    for k in range(half + 1):
        nyquist = n3 % 2 == 0 and k == half
        mat = xf[:, :, k].real if (k == 0 or nyquist) else xf[:, :, k]
        try:
            u, s, vh = la.svd(mat)
        except la.LinAlgError as exc:
            raise la.LinAlgError(
                f"SVD failed on frequency slice {k + 1}"
            ) from exc
        smat = _diag_embed(s, n1, n2)
        uf[:, :, k] = u
        sf[:, :, k] = smat
        vf[:, :, k] = vh.conj().T
        if 0 < k < n3 - k:
            uf[:, :, n3 - k] = u.conj()
            sf[:, :, n3 - k] = smat
            vf[:, :, n3 - k] = vh.T
    return TSVDFactors(ifft_dim3(uf), ifft_dim3(sf), ifft_dim3(vf))


def tubal_rank(x, tol=1e-10):
    """Largest matrix rank among the frequency slices of `x`.

    A singular value counts toward the rank when it exceeds `tol` times
    the largest singular value found anywhere in the spectrum; the default
    sits at the double-precision SVD noise floor.
    """
    x = as_tensor3(x)
    n3 = x.shape[2]
    xf = fft_dim3(x)
    # mirrored slices have identical singular values, skip them
    spectra = [la.svd(xf[:, :, k], compute_uv=False) for k in range(n3 // 2 + 1)]
    sigma_max = max(float(s[0]) if s.size else 0.0 for s in spectra)
    if sigma_max == 0.0:
        return 0
    threshold = tol * sigma_max
    return int(max(int(np.sum(s > threshold)) for s in spectra))


def _first_slice_singular_values(x):
    return la.svd(first_fourier_slice(x), compute_uv=False)


def tensor_nuclear_norm(x):
    """Nuclear norm of the first frequency slice, i.e. of the slice sum.

    Equals the total trace of the f-diagonal factor from ``t_svd``; one
    real matrix SVD instead of the full decomposition.
    """
    x = as_tensor3(x)
    return float(np.sum(_first_slice_singular_values(x)))


def truncated_nuclear_norm(x, r):
    """Sum of the singular values of the first frequency slice beyond the r-th.

    r = 0 gives the plain tensor nuclear norm; r = min(n1, n2) gives 0.
    """
    x = as_tensor3(x)
    n1, n2, _ = x.shape
    if not 0 <= r <= min(n1, n2):
        raise ValueError(f"truncation rank {r} out of range 0..{min(n1, n2)}")
    vals = _first_slice_singular_values(x)
    return float(np.sum(vals[r:]))


def svt(x, tau, use_conjugate_symmetry=True):
    """Shrink the singular values of every frequency slice by `tau`.

    Each slice is recomposed from max(sigma - tau, 0); thresholding is a
    function of the slice alone (no phase freedom), so mirrored slices
    stay exact conjugates and the result is real.  The
    ``use_conjugate_symmetry`` flag switches between decomposing half the
    slices and mirroring (default) or decomposing all of them (the naive
    oracle path).
    """
    x = as_tensor3(x)
    if tau < 0:
        raise ValueError(f"threshold must be non-negative, got {tau}")
    n1, n2, n3 = x.shape
    xf = fft_dim3(x)
    out = np.empty((n1, n2, n3), dtype=np.complex128)

    def shrink(mat):
        u, s, vh = la.svd(mat, full_matrices=False)
        return (u * np.maximum(s - tau, 0.0)) @ vh

    if use_conjugate_symmetry:
        half = n3 // 2
        for k in range(half + 1):
            nyquist = n3 % 2 == 0 and k == half
            mat = xf[:, :, k].real if (k == 0 or nyquist) else xf[:, :, k]
            out[:, :, k] = shrink(mat)
            if 0 < k < n3 - k:
                out[:, :, n3 - k] = out[:, :, k].conj()
    else:
        for k in range(n3):
            out[:, :, k] = shrink(xf[:, :, k])
    return ifft_dim3(out)


def extract_truncation_pair(factors, r):
    """Take the leading r lateral columns of u and v, conjugate-transposed.

    The result feeds the trace term of the truncated-norm objective; both
    halves have orthonormal rows in the tensor sense.
    """
    u, _, v = factors
    n1 = u.shape[0]
    n2 = v.shape[0]
    if not 1 <= r <= min(n1, n2):
        raise ValueError(f"truncation rank {r} out of range 1..{min(n1, n2)}")
    return TruncationPair(
        a=conj_transpose(u[:, :r, :]),
        b=conj_transpose(v[:, :r, :]),
        r=r,
    )
