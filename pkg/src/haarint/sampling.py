"""Haar-distributed random matrices and Monte Carlo estimation.

Every sampler consumes an RngStream — a counter-based substream fully
determined by (seed, stream index) — so estimates are reproducible
bit-for-bit no matter how the per-sample work is scheduled.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """Counter-based substream; (seed, stream) pins the whole draw sequence."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % 2 ** 64, self.stream % 2 ** 64],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


@dataclass
class GroupSample:
    matrix: np.ndarray
    group: str

    def __getitem__(self, ij):
        return self.matrix[ij]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass
class McEstimate:
    mean: complex
    stderr: float
    n: int
    seed: int

    def to_json_dict(self) -> dict:
        return {"mean_re": self.mean.real, "mean_im": self.mean.imag,
                "stderr": self.stderr, "n": self.n, "seed": self.seed}


def sample_unitary(n: int, stream: RngStream) -> GroupSample:
    """Haar sample from U(n): complex Gaussian, QR, then divide out the
    phases of R's diagonal (plain QR alone is not Haar)."""
    if n < 1:
        raise ValueError("need n >= 1")
    g = stream.generator()
    a = (g.standard_normal((n, n)) + 1j * g.standard_normal((n, n)))
    a /= math.sqrt(2)
    q, r = np.linalg.qr(a)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return GroupSample(q, "U")


def sample_special_unitary(n: int, stream: RngStream) -> GroupSample:
    u = sample_unitary(n, stream).matrix
    u = u * np.exp(-1j * np.angle(np.linalg.det(u)) / n)
    return GroupSample(u, "SU")


def sample_orthogonal(n: int, stream: RngStream) -> GroupSample:
    """Haar sample from O(n): real Gaussian, QR, sign-fixed diagonal."""
    if n < 1:
        raise ValueError("need n >= 1")
    g = stream.generator()
    q, r = np.linalg.qr(g.standard_normal((n, n)))
    q = q * np.sign(np.diagonal(r))
    return GroupSample(q, "O")


def sample_special_orthogonal(n: int, stream: RngStream) -> GroupSample:
    o = sample_orthogonal(n, stream).matrix
    if np.linalg.det(o) < 0:
        o = o.copy()
        o[:, -1] = -o[:, -1]
    return GroupSample(o, "SO")


def symplectic_j(two_n: int) -> np.ndarray:
    """The skew form in interleaved pairs: J[2i, 2i+1] = 1 = -J[2i+1, 2i]
    (0-based), all other entries zero."""
    if two_n % 2:
        raise ValueError("need even dimension")
    j = np.zeros((two_n, two_n))
    for i in range(0, two_n, 2):
        j[i, i + 1] = 1.0
        j[i + 1, i] = -1.0
    return j


def sample_compact_symplectic(n: int, stream: RngStream) -> GroupSample:
    """Haar sample from Sp(2n) ∩ U(2n), returned as a 2n x 2n complex
    matrix preserving symplectic_j(2n).

    A quaternionic Gaussian matrix (2x2 blocks [[a, b], [-conj(b),
    conj(a)]]) is orthonormalized by block Gram-Schmidt.  All updates are
    right-multiplications by 2x2 quaternion blocks, so the block structure
    — equivalent to preservation of J — survives; quaternion norms are
    real positive, so no phase fix is needed.  Two passes for stability.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    g = stream.generator()
    a = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
    b = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
    u = np.zeros((2 * n, 2 * n), dtype=complex)
    u[0::2, 0::2] = a
    u[0::2, 1::2] = b
    u[1::2, 0::2] = -b.conj()
    u[1::2, 1::2] = a.conj()

    for j in range(n):
        cj = slice(2 * j, 2 * j + 2)
        for _ in range(2):
            for i in range(j):
                ci = slice(2 * i, 2 * i + 2)
                coef = u[:, ci].conj().T @ u[:, cj]
                u[:, cj] -= u[:, ci] @ coef
        norm = math.sqrt((u[:, cj].conj().T @ u[:, cj])[0, 0].real)
        u[:, cj] /= norm
    return GroupSample(u, "Sp")


_SAMPLERS = {
    "U": sample_unitary,
    "SU": sample_special_unitary,
    "O": sample_orthogonal,
    "SO": sample_special_orthogonal,
    "Sp": sample_compact_symplectic,
}


def sample_group(group: str, n: int, stream: RngStream) -> GroupSample:
    """Dispatch by group tag; n is the symplectic half-dimension for Sp."""
    try:
        sampler = _SAMPLERS[group]
    except KeyError:
        raise ValueError(f"unknown group tag {group!r}") from None
    return sampler(n, stream)


def mc_expectation(draw, samples: int, seed: int) -> McEstimate:
    """Mean and standard error of draw(RngStream(seed, i)) over i < samples.

    Values land in an array indexed by the sample counter and are reduced
    with numpy's pairwise mean, so the estimate does not depend on
    evaluation order or worker count.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    vals = np.empty(samples, dtype=complex)
    for i in range(samples):
        vals[i] = draw(RngStream(seed, i))
    mean = vals.mean()
    var = float((np.abs(vals - mean) ** 2).sum()) / (samples - 1)
    return McEstimate(complex(mean), math.sqrt(var / samples), samples, seed)
