"""Discrete Fourier transform along the third (tube) dimension.

Convention: the forward transform is unnormalized and the inverse carries
the 1/n3 factor, i.e. exactly ``np.fft.fft`` / ``np.fft.ifft`` along
axis 2.  Every identity in this package assumes that convention.  A
frequency-domain tensor is a complex (n1, n2, n3) array whose slice k and
slice n3-k (0-based, k >= 1) are elementwise conjugates whenever it
encodes a real tensor.
"""

import numpy as np

from .core import MAX_MATERIALIZED_ELEMENTS, as_tensor3


class NumericalConsistencyError(ValueError):
    """Inverse transform produced a significant imaginary residue.

    Raised when the input was supposed to be the spectrum of a real tensor
    but is not conjugate-symmetric across frequency slices.
    """


def fft_dim3(t):
    """Unnormalized DFT of every length-n3 tube t[i, j, :]."""
    return np.fft.fft(as_tensor3(t), axis=2)


def ifft_dim3(f):
    """Inverse DFT along dim 3, returning a real tensor.

    The imaginary residue is checked against 1e-8 * (1 + ||f||_F) before
    being discarded; anything larger means the input was not conjugate
    symmetric and a real result would be a lie.
    """
    f = np.asarray(f, dtype=np.complex128)
    if f.ndim != 3:
        raise ValueError(f"expected a 3-D frequency tensor, got shape {f.shape}")
    out = np.fft.ifft(f, axis=2)
    tol = 1e-8 * (1.0 + float(np.sqrt(np.sum(np.abs(f) ** 2))))
    resid = float(np.max(np.abs(out.imag)))
    if resid > tol:
        raise NumericalConsistencyError(
            f"imaginary residue {resid:.3e} exceeds tolerance {tol:.3e}; "
            "input is not the spectrum of a real tensor"
        )
    return np.ascontiguousarray(out.real)


def first_fourier_slice(t):
    """Frequency slice 1 of `t` without running an FFT.

    The first DFT coefficient of a tube is the plain sum of its entries,
    so slice 1 of the spectrum is just the sum of all frontal slices.
    Slices are accumulated in order 1..n3 so the result is bitwise equal
    to a sequential loop.
    """
    t = as_tensor3(t)
    out = t[:, :, 0].copy()
    for k in range(1, t.shape[2]):
        out += t[:, :, k]
    return out


def bdiag(f):
    """Block-diagonal (n1*n3) x (n2*n3) matrix with slice k at block (k, k).

    Only the oracle tests comparing against the block-circulant route need
    this; like ``bcirc`` it is never built on the fast path.
    """
    f = np.asarray(f, dtype=np.complex128)
    if f.ndim != 3:
        raise ValueError(f"expected a 3-D frequency tensor, got shape {f.shape}")
    n1, n2, n3 = f.shape
    total = n1 * n3 * n2 * n3
    if total > MAX_MATERIALIZED_ELEMENTS:
        raise MemoryError(
            f"block diagonal of dims {f.shape} would hold {total} entries; "
            "refusing to materialize it"
        )
    out = np.zeros((n1 * n3, n2 * n3), dtype=np.complex128)
    for k in range(n3):
        out[k * n1:(k + 1) * n1, k * n2:(k + 1) * n2] = f[:, :, k]
    return out
