"""Kernel functions, kernelized balance over matched samples, and Sobolev exponents."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy.spatial.distance import cdist

from .errors import InvalidInput, NumericalError, Unsupported

# Radicands of squared RKHS distances may go slightly negative through
# round-off; anything below this is treated as a genuinely non-PSD kernel.
_RADICAND_TOL = -1e-12


@dataclass(frozen=True)
class KernelSpec:
    """A positive semidefinite kernel: gaussian, polynomial, or laplacian.

    ``scale`` multiplies the kernel value; it is useful for calibrating the
    output variance and leaves positive semidefiniteness intact.
    """

    kind: str
    sigma: float | None = None
    degree: int | None = None
    offset: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.scale <= 0:
            raise InvalidInput("kernel scale must be positive")
        if self.kind in ("gaussian", "laplacian"):
            if self.sigma is None or self.sigma <= 0:
                raise InvalidInput(f"{self.kind} kernel requires sigma > 0")
        elif self.kind == "polynomial":
            if self.degree is None or int(self.degree) != self.degree or self.degree < 1:
                raise InvalidInput("polynomial kernel requires integer degree >= 1")
            if self.offset is None or self.offset < 0:
                raise InvalidInput("polynomial kernel requires offset >= 0")
        else:
            raise InvalidInput(f"unknown kernel kind: {self.kind!r}")

    @classmethod
    def gaussian(cls, sigma: float, scale: float = 1.0) -> "KernelSpec":
        return cls(kind="gaussian", sigma=float(sigma), scale=scale)

    @classmethod
    def polynomial(cls, degree: int, offset: float = 1.0, scale: float = 1.0) -> "KernelSpec":
        return cls(kind="polynomial", degree=int(degree), offset=float(offset), scale=scale)

    @classmethod
    def laplacian(cls, sigma: float, scale: float = 1.0) -> "KernelSpec":
        return cls(kind="laplacian", sigma=float(sigma), scale=scale)


def gram(spec: KernelSpec, X, Y) -> np.ndarray:
    """Kernel matrix K[i, j] = k(X[i], Y[j]).

    Rows are evaluated with a fixed vectorized expression, so the result is
    bitwise deterministic for given inputs.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if X.shape[1] != Y.shape[1]:
        raise InvalidInput("kernel arguments must share the covariate dimension")
    if spec.kind == "gaussian":
        d2 = cdist(X, Y, "sqeuclidean")
        k = np.exp(-d2 / (2.0 * spec.sigma**2))
    elif spec.kind == "laplacian":
        d1 = cdist(X, Y, "cityblock")
        k = np.exp(-d1 / spec.sigma)
    else:
        k = (spec.offset + X @ Y.T) ** spec.degree
    return spec.scale * k


def kernel_eval(spec: KernelSpec, x, y) -> float:
    """Evaluate k(x, y) for two single points."""
    x = np.asarray(x, dtype=float).reshape(1, -1)
    y = np.asarray(y, dtype=float).reshape(1, -1)
    return float(gram(spec, x, y)[0, 0])


def _weighted_mmd(points0, weights0, points1, weights1, spec: KernelSpec) -> float:
    # Masses sum to 1 on each side; the squared RKHS distance between the
    # two mean embeddings follows from the kernel trick.
    a0 = weights0 / weights0.sum()
    a1 = weights1 / weights1.sum()
    k00 = a0 @ gram(spec, points0, points0) @ a0
    k11 = a1 @ gram(spec, points1, points1) @ a1
    k01 = a0 @ gram(spec, points0, points1) @ a1
    sq = float(k00 + k11 - 2.0 * k01)
    if sq < _RADICAND_TOL:
        raise NumericalError(
            f"squared RKHS distance is {sq}; the kernel is not positive semidefinite"
        )
    return sqrt(max(sq, 0.0))


def kernel_delta(data, match, spec: KernelSpec, f=None) -> float:
    """RKHS-norm imbalance of the matched, weighted empirical measures.

    With the canonical feature map this is the weighted maximum mean
    discrepancy between the matched control and treated samples, computed
    via the kernel trick:

        delta^2 = sum_ii' w_i w_i' k / m0^2 + sum_jj' w_j w_j' k / m1^2
                  - 2 sum_ij w_i w_j k / (m0 m1)

    ``match`` may be any match object exposing ``control_indices``,
    ``treated_indices``, ``control_weights`` and ``treated_weights``.
    ``f`` is a hook for a user-chosen RKHS function; only the canonical
    feature map (``f=None``) is implemented.
    """
    if f is not None:
        raise NotImplementedError(
            "only the canonical feature map (weighted MMD) is implemented"
        )
    i0 = np.asarray(match.control_indices)
    i1 = np.asarray(match.treated_indices)
    if i0.size == 0 or i1.size == 0:
        raise InvalidInput("matched sets must be non-empty on both sides")
    w0 = np.asarray(match.control_weights, dtype=float)
    w1 = np.asarray(match.treated_weights, dtype=float)
    return _weighted_mmd(data.z[i0], w0, data.z[i1], w1, spec)


@dataclass(frozen=True)
class SobolevSpec:
    """Smoothness descriptor of an RKHS: order m, integrability q, dimension."""

    m: int
    q: float
    dim: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise InvalidInput("smoothness order m must be an integer >= 1")
        if self.q < 1:
            raise InvalidInput("integrability exponent q must be >= 1")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidInput("ambient dimension must be an integer >= 1")


def sobolev_covering_exponent(spec: SobolevSpec) -> float:
    """Covering exponent of a Sobolev-smooth RKHS ball.

    Returns q when m - q/dim > 0 and dim/m when m - q/dim < 0. The boundary
    case m - q/dim = 0 is not covered by the underlying covering-number
    result and is rejected.
    """
    gap = spec.m - spec.q / spec.dim
    if gap == 0:
        raise Unsupported("m - q/dim = 0 is not covered; perturb m or q")
    if gap > 0:
        return float(spec.q)
    return spec.dim / float(spec.m)


def kernel_bound(delta: float, D: float, spec: SobolevSpec, n0: int, n1: int) -> float:
    """Tail bound for the kernelized imbalance with a Sobolev covering exponent."""
    from .bounds import bound_B

    return bound_B(delta, D, sobolev_covering_exponent(spec), n0, n1)


def bound_supported(spec: KernelSpec) -> bool:
    """Whether the covering result behind the tail bound covers this kernel.

    Gaussian kernels are infinitely smooth, so the finite-order Sobolev
    covering bound does not apply to them; their imbalance is still
    computable but any bound requires an explicit user-supplied proxy.
    """
    return spec.kind != "gaussian"
