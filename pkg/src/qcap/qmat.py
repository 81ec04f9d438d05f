"""Dense complex linear algebra and entropy primitives.

All information quantities are in bits (log base 2). Matrices are plain
numpy arrays with complex dtype; density matrices are square arrays that
satisfy the usual Hermiticity / unit-trace / positivity checks enforced
by :func:`check_density`.
"""
from __future__ import annotations

import math
import os

import numpy as np

DEFAULT_DIM_CAP = 4096

#: eigenvalues of a density matrix below this (negative) tolerance are an error;
#: values in [-EIG_TOL, 0) are clipped to zero.
EIG_TOL = 1e-10

HERM_TOL = 1e-12
TRACE_TOL = 1e-10

LOG2E = 1.0 / math.log(2.0)


class DimensionCapError(ValueError):
    """Raised when a construction would exceed the global dimension cap."""


def dim_cap() -> int:
    """Global dimension cap; override with the QCAP_DIM_CAP env var."""
    raw = os.environ.get("QCAP_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    return int(raw)


def check_cap(*dims: int) -> None:
    cap = dim_cap()
    for d in dims:
        if d > cap:
            raise DimensionCapError(f"dimension too large: {d} > cap {cap}")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the dimension cap enforced on the result."""
    a = np.asarray(a)
    b = np.asarray(b)
    check_cap(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return np.kron(a, b)


def partial_trace(m: np.ndarray, dims: list[int], keep) -> np.ndarray:
    """Trace out all tensor factors of ``m`` except those in ``keep``.

    ``dims`` lists the factor dimensions; kept factors stay in their
    original relative order. The trace is preserved.
    """
    m = np.asarray(m)
    dims = list(dims)
    n = len(dims)
    total = math.prod(dims)
    if m.shape != (total, total):
        raise ValueError(
            f"shape mismatch: matrix is {m.shape}, dims product is {total}"
        )
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must be a nonempty set of factor indices")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep indices out of range for {n} factors")

    t = m.reshape(dims + dims)
    # contract row/col indices of every traced factor
    row = list(range(n))
    col = list(range(n, 2 * n))
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out_idx = [row[i] for i in keep] + [col[i] for i in keep]
    reduced = np.einsum(t, row + col, out_idx)
    dk = math.prod(dims[i] for i in keep)
    return reduced.reshape(dk, dk)


def eigvals_clipped(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a PSD matrix, clipped at zero and renormalized to sum 1.

    An eigenvalue below -EIG_TOL is a genuine negativity and raises.
    """
    vals = np.linalg.eigvalsh(rho)
    if vals.min() < -EIG_TOL:
        raise ValueError(f"not positive semidefinite: min eigenvalue {vals.min()}")
    vals = np.clip(vals, 0.0, None)
    s = vals.sum()
    if s <= 0:
        raise ValueError("zero spectrum")
    return vals / s


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -sum(lambda * log2 lambda) in bits, with 0 log 0 = 0."""
    vals = eigvals_clipped(rho)
    nz = vals[vals > 0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return float(-p * math.log2(p) - (1 - p) * math.log2(1 - p))


def fidelity_with_pure(psi: np.ndarray, rho: np.ndarray) -> float:
    """<psi|rho|psi> for a normalized vector psi."""
    psi = np.asarray(psi).reshape(-1)
    if abs(np.vdot(psi, psi) - 1.0) > 1e-10:
        raise ValueError("psi is not normalized")
    if rho.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: psi {psi.size}, rho {rho.shape}")
    return float(np.real(np.vdot(psi, rho @ psi)))


def ket(i: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


def max_entangled(d: int) -> np.ndarray:
    """|Phi_d> = d^{-1/2} sum_i |ii>, as a vector of length d^2."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / math.sqrt(d)
    return v


def check_density(rho: np.ndarray) -> np.ndarray:
    """Validate the density-matrix invariants and return rho unchanged."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > HERM_TOL:
        raise ValueError("density matrix is not Hermitian within 1e-12")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise ValueError(f"trace is {np.trace(rho).real}, expected 1")
    vals = np.linalg.eigvalsh(rho)
    if vals.min() < -EIG_TOL:
        raise ValueError(f"not positive semidefinite: min eigenvalue {vals.min()}")
    return rho


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-induced random density matrix."""
    r = d if rank is None else rank
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
