"""Exact 2x2 complex matrix algebra and the average-gate-fidelity metric.

All matrices are numpy arrays of shape (2, 2), dtype complex128. Every
function here is pure; nothing mutates its arguments. Seeded generators
are PCG64 streams (``numpy.random.default_rng``), split with
``SeedSequence.spawn`` so each worker owns an independent stream.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ParseError, ValidationError

IDENTITY = np.eye(2, dtype=np.complex128)

# |U+U - I| tolerated for matrices entering from outside (files, CLI flags).
# Matrix products drift; up to 300 compositions stay within INTERNAL_ATOL.
CONSTRUCTION_ATOL = 1e-10
INTERNAL_ATOL = 1e-8


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a.b (b acts first on kets, a second)."""
    return a @ b


def dagger(u: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return u.conj().T.copy()


def agf(u: np.ndarray, v: np.ndarray) -> float:
    """Average gate fidelity between two single-qubit gates.

    Closed form (|Tr(u+ v)|^2 + 2) / 6, equal to the Haar average of
    |<psi| u+ v |psi>|^2 over pure states (see ``oracle.mc_agf`` for the
    Monte Carlo cross-check). Symmetric, phase-invariant, in [1/3, 1].
    """
    # Tr(u+ v) = sum_ij conj(u_ij) v_ij, which is exactly vdot.
    tr = np.vdot(u, v)
    return (tr.real * tr.real + tr.imag * tr.imag + 2.0) / 6.0


def distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - agf(u, v); zero iff u and v agree up to a global phase."""
    return 1.0 - agf(u, v)


def unitarity_defect(u: np.ndarray) -> float:
    """Max absolute entry of u+u - I."""
    return float(np.max(np.abs(u.conj().T @ u - IDENTITY)))


def is_unitary(u: np.ndarray, atol: float = CONSTRUCTION_ATOL) -> bool:
    return u.shape == (2, 2) and unitarity_defect(u) <= atol


def require_unitary(u: np.ndarray, atol: float = CONSTRUCTION_ATOL,
                    what: str = "matrix") -> np.ndarray:
    """Validate shape and unitarity, returning u as complex128."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationError(f"{what} must be 2x2, got shape {u.shape}")
    defect = unitarity_defect(u)
    if not np.isfinite(defect) or defect > atol:
        raise ValidationError(
            f"{what} is not unitary: max|U+U - I| = {defect:.3e} > {atol:.0e}")
    return u


def haar_sample(rng: np.random.Generator) -> np.ndarray:
    """One Haar-distributed U(2) matrix.

    QR decomposition of a complex Ginibre matrix, with the Q columns
    rephased by diag(r_ii/|r_ii|) to remove the phase ambiguity of the
    factorization (otherwise the distribution is not Haar).
    """
    return haar_batch(rng, 1)[0]


def haar_batch(rng: np.random.Generator, n: int) -> np.ndarray:
    """n Haar-distributed U(2) matrices, shape (n, 2, 2)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    z = rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))
    q, r = np.linalg.qr(z)
    d = np.einsum("nii->ni", r)
    return q * (d / np.abs(d))[:, None, :]


def haar_state(rng: np.random.Generator, n: int) -> np.ndarray:
    """n Haar-random pure states as rows of an (n, 2) array."""
    psi = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return psi / np.linalg.norm(psi, axis=1, keepdims=True)


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 stream; identical seeds give bit-identical draws."""
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """n independent child streams of a master seed."""
    return [np.random.Generator(np.random.PCG64(s))
            for s in np.random.SeedSequence(seed).spawn(n)]


def to_real_vector(u: np.ndarray) -> np.ndarray:
    """Flatten to 8 reals, row-major, re before im:
    [re00, im00, re01, im01, re10, im10, re11, im11]."""
    flat = u.reshape(4)
    out = np.empty(8)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def from_real_vector(vec: np.ndarray) -> np.ndarray:
    """Inverse of to_real_vector (no unitarity check)."""
    vec = np.asarray(vec, dtype=np.float64)
    if vec.shape != (8,):
        raise DomainError(f"expected 8 reals, got shape {vec.shape}")
    return (vec[0::2] + 1j * vec[1::2]).reshape(2, 2)


def format_matrix(u: np.ndarray) -> str:
    """Matrix text format: 8 whitespace-separated floats (re before im,
    row-major), printed with enough digits to round-trip exactly."""
    return " ".join(f"{x:.17g}" for x in to_real_vector(u))


def parse_matrix(text: str) -> np.ndarray:
    """Parse the matrix text format. Raises ParseError on bad input;
    the result is not validated for unitarity (callers decide)."""
    parts = text.split()
    if len(parts) != 8:
        raise ParseError(f"matrix text needs 8 floats, got {len(parts)}")
    try:
        vals = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise ParseError(f"bad float in matrix text: {exc}") from None
    if not np.all(np.isfinite(vals)):
        raise ParseError("matrix text contains non-finite values")
    return from_real_vector(vals)
