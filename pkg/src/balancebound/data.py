"""Sample containers, function-class descriptors, and covariate scaling."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from .errors import InvalidInput


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def minmax_scale(z, lo=None, hi=None, clip: bool = False):
    """Scale each column of ``z`` to [0, 1] using the bounds ``[lo, hi]``.

    Bounds default to the per-column data range. Columns with zero width are
    mapped to the constant 0.5. With ``clip=True`` values outside the bounds
    are clipped into [0, 1] and counted.

    Returns ``(scaled, n_clipped)``.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 2:
        raise InvalidInput("z must be a 2-d array")
    lo = z.min(axis=0) if lo is None else np.asarray(lo, dtype=float)
    hi = z.max(axis=0) if hi is None else np.asarray(hi, dtype=float)
    if lo.shape != (z.shape[1],) or hi.shape != (z.shape[1],):
        raise InvalidInput("bounds must have one entry per covariate")
    if np.any(hi < lo):
        raise InvalidInput("upper bounds must not be below lower bounds")
    width = hi - lo
    degenerate = width == 0
    safe = np.where(degenerate, 1.0, width)
    scaled = (z - lo) / safe
    scaled[:, degenerate] = 0.5
    n_clipped = 0
    out_of_range = (scaled < 0.0) | (scaled > 1.0)
    if np.any(out_of_range):
        if not clip:
            raise InvalidInput("values outside the scaling bounds; pass clip=True")
        n_clipped = int(out_of_range.sum())
        scaled = np.clip(scaled, 0.0, 1.0)
    return scaled, n_clipped


@dataclass(frozen=True)
class Dataset:
    """Observational sample of (response, binary treatment, covariates).

    ``y`` has shape (n,), ``t`` holds 0/1 treatment labels, and ``z`` is the
    (n, p) covariate matrix. Both treatment groups must be non-empty. All
    arrays are stored read-only, so instances are safe to share between
    threads. ``normalized=True`` asserts every covariate lies in [0, 1],
    which the tail bounds require.
    """

    y: np.ndarray
    t: np.ndarray
    z: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        t = np.array(self.t)
        z = np.array(self.z, dtype=float)
        if y.ndim != 1:
            raise InvalidInput("y must be 1-d")
        if z.ndim != 2 or z.shape[1] < 1:
            raise InvalidInput("z must be a 2-d array with at least one covariate")
        if t.shape != y.shape or z.shape[0] != y.shape[0]:
            raise InvalidInput("y, t, z must agree on the number of units")
        if not (np.isfinite(y).all() and np.isfinite(z).all()):
            raise InvalidInput("y and z must be finite")
        if not np.all(np.isin(t, (0, 1))):
            raise InvalidInput("t must be 0 or 1 for every unit")
        t = t.astype(np.int64)
        if not np.any(t == 0) or not np.any(t == 1):
            raise InvalidInput("dataset must contain both control and treated units")
        if self.normalized and (z.min() < -1e-12 or z.max() > 1.0 + 1e-12):
            raise InvalidInput("normalized dataset must have covariates in [0, 1]")
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "t", _frozen(t))
        object.__setattr__(self, "z", _frozen(z))

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def p(self) -> int:
        return self.z.shape[1]

    @property
    def control_indices(self) -> np.ndarray:
        return np.flatnonzero(self.t == 0)

    @property
    def treated_indices(self) -> np.ndarray:
        return np.flatnonzero(self.t == 1)

    @property
    def n0(self) -> int:
        return int(np.count_nonzero(self.t == 0))

    @property
    def n1(self) -> int:
        return int(np.count_nonzero(self.t == 1))

    def normalize(self) -> "Dataset":
        """Min-max scale every covariate to [0, 1] using the data range."""
        scaled, _ = minmax_scale(self.z)
        return replace(self, z=scaled, normalized=True)


@dataclass(frozen=True)
class EmpiricalPair:
    """Two empirical covariate samples carrying uniform weights.

    ``group0`` is (n0, p) and ``group1`` is (n1, p); both must be non-empty
    and share the covariate dimension.
    """

    group0: np.ndarray
    group1: np.ndarray

    def __post_init__(self):
        g0 = np.array(self.group0, dtype=float)
        g1 = np.array(self.group1, dtype=float)
        if g0.ndim == 1:
            g0 = g0[:, None]
        if g1.ndim == 1:
            g1 = g1[:, None]
        if g0.ndim != 2 or g1.ndim != 2:
            raise InvalidInput("groups must be 2-d arrays of points")
        if g0.shape[0] < 1 or g1.shape[0] < 1:
            raise InvalidInput("both groups must be non-empty")
        if g0.shape[1] != g1.shape[1]:
            raise InvalidInput("groups must share the covariate dimension")
        if not (np.isfinite(g0).all() and np.isfinite(g1).all()):
            raise InvalidInput("group points must be finite")
        object.__setattr__(self, "group0", _frozen(g0))
        object.__setattr__(self, "group1", _frozen(g1))

    @property
    def n0(self) -> int:
        return self.group0.shape[0]

    @property
    def n1(self) -> int:
        return self.group1.shape[0]

    @property
    def p(self) -> int:
        return self.group0.shape[1]

    @classmethod
    def from_dataset(cls, data: Dataset) -> "EmpiricalPair":
        return cls(data.z[data.control_indices], data.z[data.treated_indices])


@dataclass(frozen=True)
class FunctionClassSpec:
    """Descriptor of a function class used for balance evaluation.

    ``kind`` is one of ``bounded_hyperplane`` (norm cap ``weight_bound``),
    ``partition`` (cell count ``cells`` and scale cap ``kappa``) or
    ``rkhs_ball`` (a kernel and a radius). ``covering_exponent_C`` is the
    polynomial covering exponent of the class and ``constant_D`` the
    multiplicative constant the tail bound is evaluated with. When a VC
    dimension ``v`` is known the exponent must equal ``2 v - 2``.
    """

    kind: str
    covering_exponent_C: float
    constant_D: float = 1.0
    vc_dim: int | None = None
    weight_bound: float | None = None
    cells: int | None = None
    kappa: float | None = None
    kernel: Any = None
    radius: float | None = None

    _KINDS = ("bounded_hyperplane", "partition", "rkhs_ball")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidInput(f"unknown function class kind: {self.kind!r}")
        if not (self.covering_exponent_C > 0):
            raise InvalidInput("covering_exponent_C must be positive")
        if not (self.constant_D > 0):
            raise InvalidInput("constant_D must be positive")
        if self.vc_dim is not None:
            if self.vc_dim < 2:
                raise InvalidInput("vc_dim must be at least 2")
            if abs(self.covering_exponent_C - (2 * self.vc_dim - 2)) > 1e-12:
                raise InvalidInput("covering_exponent_C must equal 2*vc_dim - 2")

    @classmethod
    def bounded_hyperplane(cls, weight_bound: float, dim: int, constant_D: float = 1.0):
        """Class {x -> w.x : ||w||_2 <= weight_bound} in dimension ``dim``."""
        if weight_bound <= 0 or dim < 1:
            raise InvalidInput("weight_bound must be positive and dim >= 1")
        return cls(
            kind="bounded_hyperplane",
            covering_exponent_C=2.0 * dim,
            constant_D=constant_D,
            vc_dim=dim + 1,
            weight_bound=float(weight_bound),
        )

    @classmethod
    def partition(cls, cells: int, kappa: float, constant_D: float = 1.0):
        """Scaled-indicator functions over partitions with ``cells`` cells."""
        if cells < 2:
            raise InvalidInput("cells must be at least 2")
        if kappa <= 0:
            raise InvalidInput("kappa must be positive")
        return cls(
            kind="partition",
            covering_exponent_C=2.0 * (cells - 1),
            constant_D=constant_D,
            vc_dim=cells,
            cells=int(cells),
            kappa=float(kappa),
        )

    @classmethod
    def rkhs_ball(cls, kernel, covering_exponent_C: float, radius: float = 1.0,
                  constant_D: float = 1.0):
        """Ball of the given radius in the RKHS of ``kernel``."""
        if radius <= 0:
            raise InvalidInput("radius must be positive")
        return cls(
            kind="rkhs_ball",
            covering_exponent_C=float(covering_exponent_C),
            constant_D=constant_D,
            kernel=kernel,
            radius=float(radius),
        )
