"""Space-time lattices, test fields and the discrete operator.

Space is periodic with central differences; time uses central differences on
interior slices only, so residual arrays have ``nt - 2`` time slices.
Values are stored as ``(nt, *spatial_points, n)`` complex arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .._num import FLOAT, to_mode
from .equations import SPATIAL, LinearMatrixPDE


class GridTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform lattice: ``points`` per spatial axis, ``nt`` time slices."""

    points: tuple
    h: float
    nt: int
    dt: float

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(p) for p in self.points))
        if not 1 <= len(self.points) <= 3:
            raise ValueError("grid needs 1 to 3 spatial axes")
        if self.h <= 0 or self.dt <= 0:
            raise ValueError("grid spacings must be positive")
        if self.nt < 1 or any(p < 1 for p in self.points):
            raise ValueError("grid needs at least one point per axis")

    @property
    def dims(self) -> int:
        return len(self.points)

    @property
    def extent(self) -> tuple:
        return tuple(p * self.h for p in self.points)

    @property
    def shape(self) -> tuple:
        return (self.nt, *self.points)

    def coords(self):
        """Broadcastable (t, x, y, z) coordinate arrays."""
        axes = [np.arange(self.nt) * self.dt] + [np.arange(p) * self.h for p in self.points]
        return np.meshgrid(*axes, indexing="ij", sparse=True)

    def to_dict(self) -> dict:
        return {"dims": self.dims, "points": list(self.points), "h": self.h, "nt": self.nt, "dt": self.dt}

    @classmethod
    def from_dict(cls, d: dict) -> Grid:
        dims = int(d.get("dims", 1))
        pts = d.get("points", 16)
        pts = [pts] * dims if isinstance(pts, int) else list(pts)
        if len(pts) != dims:
            raise ValueError(f"grid declares dims={dims} but {len(pts)} point counts")
        h = float(d.get("h", 1.0 / pts[0]))
        return cls(tuple(pts), h, int(d.get("nt", 8)), float(d.get("dt", h)))


@dataclass(frozen=True, eq=False)
class FieldSample:
    grid: Grid
    values: np.ndarray
    generator: str = "custom"
    seed: int | None = None

    def __post_init__(self):
        if self.values.shape[:-1] != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def scale(self) -> float:
        """RMS over sites of the per-site vector norm."""
        return float(np.sqrt(np.mean(np.sum(np.abs(self.values) ** 2, axis=-1))))

    def conjugate(self) -> FieldSample:
        return FieldSample(self.grid, self.values.conj(), self.generator, self.seed)


def random_smooth_field(grid: Grid, n: int, seed: int = 0, modes: int = 4) -> FieldSample:
    """Sum of a few random low Fourier modes, periodic in space and time."""
    rng = np.random.default_rng(seed)
    coords = grid.coords()
    periods = [grid.nt * grid.dt] + list(grid.extent)
    sizes = [grid.nt] + list(grid.points)
    values = np.zeros(grid.shape + (n,), dtype=complex)
    for _ in range(modes):
        phase = np.zeros(grid.shape)
        for axis, (x, period, size) in enumerate(zip(coords, periods, sizes)):
            kmax = max(1, size // 4)
            m = int(rng.integers(1, kmax + 1)) * int(rng.choice([-1, 1]))
            if axis > 0 and rng.random() < 0.25:
                m = 0
            phase = phase + 2 * np.pi * m * x / period
        amp = rng.normal(size=n) + 1j * rng.normal(size=n)
        values += np.exp(1j * phase)[..., None] * amp
    return FieldSample(grid, values, "random_smooth", seed)


def dispersion(eq: LinearMatrixPDE, k: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Frequencies and polarizations of plane waves ``u0 exp(i(k.x - w t))``.

    Substitution gives ``(sum k_b A_b - i kappa A0) u0 = w At u0``.
    """
    n = eq.n
    lhs = np.zeros((n, n), dtype=complex)
    for kb, key in zip(k, SPATIAL):
        m = getattr(eq, key)
        if m is not None:
            lhs += kb * to_mode(m, FLOAT)
    if eq.A0 is not None:
        lhs -= 1j * eq.kappa * to_mode(eq.A0, FLOAT)
    if eq.At is None:
        raise ValueError("plane waves need a time-derivative coefficient")
    w, v = scipy.linalg.eig(lhs, to_mode(eq.At, FLOAT).astype(complex))
    keep = np.isfinite(w)
    w, v = w[keep], v[:, keep]
    order = np.lexsort((-w.imag, -w.real))
    return w[order], v[:, order]


def plane_wave(eq: LinearMatrixPDE, grid: Grid, mode=(1,), branch: int = 0,
               amplitude: float = 1.0) -> tuple[FieldSample, complex]:
    """Exact plane-wave solution sampled on the lattice.

    ``mode`` holds integer wave numbers per spatial axis so the wave is
    periodic on the grid.  Returns the sample and its frequency.
    """
    mode = tuple(mode) + (0,) * (grid.dims - len(mode))
    k = tuple(2 * np.pi * m / L for m, L in zip(mode, grid.extent))
    w, v = dispersion(eq, k)
    omega, u0 = w[branch], v[:, branch]
    u0 = amplitude * u0 / np.linalg.norm(u0)
    t, *xs = grid.coords()
    phase = sum(kb * x for kb, x in zip(k, xs)) - omega * t
    values = np.exp(1j * phase)[..., None] * u0
    return FieldSample(grid, values, "plane_wave", None), complex(omega)


def apply_matrix(m: np.ndarray, values: np.ndarray, action: str = "left") -> np.ndarray:
    """Apply a constant matrix at every site."""
    f = to_mode(m, FLOAT)
    if action == "left":
        return np.einsum("ij,...j->...i", f, values, optimize=False)
    return np.einsum("...j,jk->...k", values, f, optimize=False)


def check_grid(eq: LinearMatrixPDE, grid: Grid):
    if eq.spatial_dims > grid.dims:
        raise GridTooSmallError(f"equation uses {eq.spatial_dims} spatial axes, grid has {grid.dims}")
    used = [("t", grid.nt)] if eq.has_time else []
    used += [(ax, grid.points[i]) for i, ax in enumerate("xyz"[: eq.spatial_dims])
             if getattr(eq, SPATIAL[i]) is not None]
    for axis, size in used:
        if size < 3:
            raise GridTooSmallError(f"axis {axis} has {size} points; the stencil needs at least 3")


def derivative(values: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    """Central difference; axis 0 is time (interior slices only), 1.. are periodic space."""
    if axis == 0:
        return (values[2:] - values[:-2]) / (2 * grid.dt)
    return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2 * grid.h)


def apply_operator(eq: LinearMatrixPDE, sample: FieldSample) -> np.ndarray:
    """Discrete ``L u``; on interior time slices when the equation has a time derivative."""
    check_grid(eq, sample.grid)
    if sample.n != eq.n:
        raise ValueError(f"field has {sample.n} components, equation needs {eq.n}")
    u = sample.values
    inner = slice(1, -1) if eq.has_time else slice(None)
    out = np.zeros(u[inner].shape, dtype=complex)
    if eq.has_time:
        out += apply_matrix(eq.At, derivative(u, sample.grid, 0), eq.action)
    for i, key in enumerate(SPATIAL):
        m = getattr(eq, key)
        if m is not None and i < sample.grid.dims:
            out += apply_matrix(m, derivative(u, sample.grid, i + 1)[inner], eq.action)
    if eq.A0 is not None and eq.kappa != 0:
        out += eq.kappa * apply_matrix(eq.A0, u[inner], eq.action)
    return out


def interior(eq: LinearMatrixPDE, values: np.ndarray) -> np.ndarray:
    return values[1:-1] if eq.has_time else values
