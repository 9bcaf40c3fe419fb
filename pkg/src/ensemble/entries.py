"""
Entry distributions and the random/deterministic matrices of the X J X* ensemble.
"""

import logging
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

import numpy as np

from ..utils.errors import DomainError, ShapeMismatchError, UnsupportedEntryLawError
from ..utils.seeding import STREAM_DATA, STREAM_SMOOTHING, make_rng

logger = logging.getLogger(__name__)

COMPLEX_GAUSSIAN = "complex-gaussian"
COMPLEX_BERNOULLI_PHASE = "complex-bernoulli-phase"
UNIFORM_PHASE_DISC = "uniform-phase-disc"

SUPPORTED_LAWS = (COMPLEX_GAUSSIAN, COMPLEX_BERNOULLI_PHASE, UNIFORM_PHASE_DISC)

# Laws a user may plausibly ask for but which make X J X* degenerate.
REAL_LAWS = ("real-gaussian", "gaussian", "rademacher", "real-rademacher", "real-uniform")

_QPSK = np.array([1.0, 1.0j, -1.0, -1.0j])


def _is_size(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool) and value >= 1


@dataclass(frozen=True)
class EntryLaw:
    """I.i.d. entry distribution with mean 0 and variance 1/n."""

    kind: str = COMPLEX_GAUSSIAN
    n: int = 1

    def __post_init__(self) -> None:
        if self.kind in REAL_LAWS:
            raise UnsupportedEntryLawError(
                f"Entry law '{self.kind}' is real valued: |n E x^2| = 1, "
                "the ensemble needs sup_n |n E x^2| < 1"
            )
        if self.kind not in SUPPORTED_LAWS:
            raise UnsupportedEntryLawError(
                f"Unknown entry law '{self.kind}', expected one of {', '.join(SUPPORTED_LAWS)}"
            )
        if not _is_size(self.n):
            raise DomainError(f"Entry law needs an integer n >= 1, got {self.n!r}")

    @property
    def variance(self) -> float:
        return 1.0 / self.n

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        """Draw an array of entries with the law's distribution."""
        scale = np.sqrt(self.variance)
        if self.kind == COMPLEX_GAUSSIAN:
            # (U + iV) / sqrt(2n)
            parts = rng.standard_normal(size=(2,) + tuple(np.atleast_1d(size)))
            return scale * (parts[0] + 1j * parts[1]) / np.sqrt(2.0)
        if self.kind == COMPLEX_BERNOULLI_PHASE:
            return scale * _QPSK[rng.integers(0, 4, size=size)]
        # uniform on the disc of radius sqrt(2/n), so that E|x|^2 = 1/n
        radius = np.sqrt(2.0 * self.variance) * np.sqrt(rng.random(size=size))
        angle = 2.0 * np.pi * rng.random(size=size)
        return radius * np.exp(1j * angle)


@dataclass(frozen=True)
class MatrixShape:
    """Dimensions (N, n) of X; gamma = N / n."""

    N: int
    n: int

    def __post_init__(self) -> None:
        if not (_is_size(self.N) and _is_size(self.n)):
            raise DomainError(f"Matrix shape needs integers N >= 1 and n >= 1, got ({self.N!r}, {self.n!r})")

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.N, self.n)

    @property
    def gamma_float(self) -> float:
        return self.N / self.n


def _freeze(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


def generate_X(
    shape: MatrixShape,
    law: Optional[EntryLaw] = None,
    seed: int = 0,
    trial: int = 0,
    stream: int = STREAM_DATA,
) -> np.ndarray:
    """
    Draw the N x n matrix X with i.i.d. entries from ``law``.

    Args:
        shape: Matrix dimensions
        law: Entry law; defaults to the complex Gaussian law with variance 1/n
        seed: Master seed
        trial: Trial index inside the stream
        stream: Stream identifier (see ``utils.seeding``)

    Returns:
        Read-only complex128 array of shape (N, n)
    """
    law = law or EntryLaw(COMPLEX_GAUSSIAN, shape.n)
    if law.n != shape.n:
        raise ShapeMismatchError(f"Entry law is scaled for n={law.n}, matrix has n={shape.n}")
    rng = make_rng(seed, stream, trial)
    X = np.asarray(law.draw(rng, (shape.N, shape.n)), dtype=np.complex128)
    return _freeze(X)


def entry_moments(law: EntryLaw, count: int, seed: int = 0) -> Dict[str, float]:
    """
    Sample moments of the entry law, scaled by n.

    Returns:
        Dictionary with ``second`` (n E|x|^2), ``pseudo`` (|n E x^2|),
        ``fourth`` (n^2 E|x|^4) and ``second_stderr``.
    """
    if count < 2:
        raise DomainError(f"Need at least two draws, got {count}")
    x = law.draw(make_rng(seed, STREAM_DATA, 0), count)
    sq = law.n * np.abs(x) ** 2
    return {
        "second": float(sq.mean()),
        "pseudo": float(np.abs(law.n * np.mean(x**2))),
        "fourth": float(np.mean(sq**2)),
        "second_stderr": float(sq.std(ddof=1) / np.sqrt(count)),
    }


def smooth_X(X: np.ndarray, seed: int = 0, trial: int = 0) -> np.ndarray:
    """
    Replace X by (1 - n^-20)^(-1/2) (X + n^-10 X') with Gaussian X'.

    X' has the complex Gaussian law with variance 1/n, so the result keeps
    the variance profile of X and has a density.
    """
    n = X.shape[1]
    if n < 2:
        raise DomainError("Smoothing needs n >= 2")
    noise = generate_X(MatrixShape(X.shape[0], n), seed=seed, trial=trial, stream=STREAM_SMOOTHING)
    scale = 1.0 / np.sqrt(1.0 - float(n) ** -20)
    return _freeze(scale * (X + float(n) ** -10 * noise))


def make_J(n: int) -> np.ndarray:
    """Circulant shift with J e_k = e_{k+1 mod n}."""
    if n < 1:
        raise DomainError(f"Circulant size must be >= 1, got {n}")
    return _freeze(np.roll(np.eye(n), 1, axis=0))


def product_Y(X: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Form Y = X J X*."""
    if J.ndim != 2 or J.shape[0] != J.shape[1] or X.ndim != 2 or X.shape[1] != J.shape[0]:
        raise ShapeMismatchError(f"Cannot form X J X* with X {X.shape} and J {J.shape}")
    return _freeze(X @ J @ X.conj().T)
