"""Environmental corrections: turbulence smoothing and shear/veer remapping.

Turbulence intensity is folded in by convolving the curve with a Gaussian
kernel whose width scales with wind speed (standard deviation U * TI for the
output point at U).  Wind shear and wind veer enter through a rotor
equivalent wind speed: the cube-root of the area-weighted mean cubed
effective speed over horizontal rotor bands, with the band speeds taken from
a power-law vertical profile and the band directions from a linear veer
profile.

Both transformations leave the cut-out edge sharp.  Shutdown at cut-out is
triggered by the hub-height mean wind speed, not by short-term fluctuations
or the rotor-averaged speed, so the curve is extended past cut-out as a
plateau before either transformation and the hard gate is re-applied after.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .curve_engine import GRID_EPS, PowerCurve
from .errors import GroundStrike
from .turbine import TurbineSpec

#: Number of horizontal rotor bands used by default; band refinement is
#: convergence-tested well below 1e-4 relative at this count.
DEFAULT_N_BANDS = 100

#: Kernel support truncated at this many standard deviations, then
#: renormalized; the discarded mass is below 1e-6.
KERNEL_REACH = 5.0


@dataclass(frozen=True)
class EnvironmentConditions:
    """Site conditions entering the power-curve synthesis.

    ti is the turbulence intensity (standard deviation of short-term wind
    speed over its mean), rho the air density in kg/m^3, shear_alpha the
    power-law exponent of the vertical wind profile, veer_rate the linear
    change of wind direction with height in degrees per metre.
    """

    ti: float = 0.0
    rho: float = 1.225
    shear_alpha: float = 0.0
    veer_rate: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.ti < 1.0:
            raise ValueError(f"turbulence intensity must lie in [0, 1), got {self.ti}")
        if not self.rho > 0.0:
            raise ValueError(f"air density must be positive, got {self.rho}")
        if not 0.9 <= self.rho <= 1.5:
            warnings.warn(f"air density {self.rho} kg/m^3 outside the usual "
                          "0.9-1.5 band", UserWarning, stacklevel=2)


@dataclass(frozen=True)
class RotorBands:
    """Horizontal slices of the rotor disc.

    heights are band centres relative to the hub (m), areas the exact
    circular-segment slice areas (m^2); they sum to the full disc.
    """

    heights: np.ndarray
    areas: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "heights", np.asarray(self.heights, dtype=np.float64))
        object.__setattr__(self, "areas", np.asarray(self.areas, dtype=np.float64))
        if self.heights.shape != self.areas.shape or self.heights.ndim != 1:
            raise ValueError("heights and areas must be 1-d arrays of equal length")
        if np.any(self.areas <= 0):
            raise ValueError("band areas must be positive")

    @property
    def n(self) -> int:
        return len(self.areas)

    @property
    def total_area(self) -> float:
        return float(self.areas.sum())


def band_areas(rotor_diameter: float, hub_height: float, n: int = DEFAULT_N_BANDS) -> RotorBands:
    """Slice the rotor disc into n equal-height horizontal bands.

    Band areas are computed analytically from the antiderivative of the chord
    length 2*sqrt(R^2 - h^2), so they partition the disc exactly; the band
    centre serves as the representative height.
    """
    if n < 1:
        raise ValueError(f"need at least one band, got {n}")
    radius = rotor_diameter / 2.0
    if not hub_height > radius:
        raise GroundStrike(
            f"hub height {hub_height} m does not clear the rotor radius {radius} m")
    edges = np.linspace(-radius, radius, n + 1)
    # Antiderivative of the chord length; clip guards asin against round-off.
    ratio = np.clip(edges / radius, -1.0, 1.0)
    anti = edges * np.sqrt(np.maximum(radius ** 2 - edges ** 2, 0.0)) \
        + radius ** 2 * np.arcsin(ratio)
    areas = np.diff(anti)
    centres = 0.5 * (edges[:-1] + edges[1:])
    return RotorBands(heights=centres, areas=areas)


def _rews_factor(spec: TurbineSpec, shear_alpha: float, veer_rate: float,
                 bands: RotorBands) -> float:
    """Ratio of rotor-equivalent to hub-height wind speed.

    The power-law profile is multiplicative in the hub speed and the veer
    angle does not depend on it, so the whole correction collapses into one
    constant factor for a given rotor, profile and band layout.
    """
    if spec.hub_height is None:
        raise ValueError(f"{spec.name}: hub_height required for shear/veer effects")
    z = spec.hub_height + bands.heights
    speed_ratio = (z / spec.hub_height) ** shear_alpha
    dphi = np.deg2rad(veer_rate * bands.heights)
    weights = bands.areas / bands.total_area
    return float(np.cbrt(np.sum(weights * (speed_ratio * np.cos(dphi)) ** 3)))


def rews(u_hub: float, spec: TurbineSpec, shear_alpha: float, veer_rate: float,
         bands: RotorBands) -> float:
    """Rotor-equivalent wind speed for a hub-height speed u_hub.

    Cube-root of the area-weighted mean of (U_i * cos(dphi_i))^3 over the
    bands, with U_i from the power-law profile anchored at the hub and
    dphi_i the linear veer angle at the band centre.
    """
    if u_hub < 0:
        raise ValueError(f"u_hub must be >= 0, got {u_hub}")
    return u_hub * _rews_factor(spec, shear_alpha, veer_rate, bands)


def _plateau_extended(curve: PowerCurve, cut_out: float) -> tuple[np.ndarray, float]:
    """Curve values with the cut-out zeroing removed.

    Grid points beyond cut-out take the value at the cut-out point itself,
    i.e. the region-III plateau continues as if no shutdown occurred.  The
    plateau value is returned as well for extension past the grid end.
    """
    inside = curve.wind_grid <= cut_out + GRID_EPS
    if not np.any(inside):
        return curve.power.copy(), 0.0
    plateau = float(curve.power[inside][-1])
    extended = np.where(inside, curve.power, plateau)
    return extended, plateau


def kernel_weights(offsets: np.ndarray, sigma: float) -> np.ndarray:
    """Truncated, renormalized Gaussian weights over grid offsets.

    Zero outside +-KERNEL_REACH standard deviations; the surviving weights
    sum to exactly one, so a constant input is reproduced exactly.
    """
    w = np.where(np.abs(offsets) <= KERNEL_REACH * sigma,
                 np.exp(-0.5 * (offsets / sigma) ** 2), 0.0)
    return w / w.sum()


def apply_turbulence(curve: PowerCurve, ti: float, *, cut_out: float | None = None) -> PowerCurve:
    """Fold turbulence intensity into a power curve.

    Each output point at wind speed U is the kernel-weighted average of the
    plateau-extended input, the kernel being a Gaussian centred at U with
    standard deviation U * ti (truncated and renormalized).  The hard
    cut-out gate is re-applied afterwards, so the shutdown edge stays one
    grid step wide.  ti = 0 returns the input values unchanged.

    The cut-out speed is read from the curve metadata unless passed
    explicitly.
    """
    if ti < 0:
        raise ValueError(f"turbulence intensity must be >= 0, got {ti}")
    if cut_out is None:
        cut_out = curve.cut_out()
    meta = dict(curve.meta)
    meta["effects"] = dict(meta.get("effects", {}), ti=float(ti))
    if ti == 0.0:
        return PowerCurve(curve.wind_grid, curve.power.copy(), meta)

    grid = curve.wind_grid
    dv = curve.dv
    base, plateau = _plateau_extended(curve, cut_out)

    # Extend the grid far enough to cover the widest kernel reach.
    reach = KERNEL_REACH * ti * grid[-1]
    n_extra = int(math.ceil(reach / dv)) + 1
    ext_grid = np.concatenate([grid, grid[-1] + dv * np.arange(1, n_extra + 1)])
    ext_power = np.concatenate([base, np.full(n_extra, plateau)])

    smoothed = np.empty_like(base)
    for i, u in enumerate(grid):
        sigma = ti * u
        if sigma < dv / 2.0:
            # sub-grid kernel width degenerates to the identity lookup
            smoothed[i] = base[i]
        else:
            smoothed[i] = kernel_weights(ext_grid - u, sigma) @ ext_power

    smoothed[grid > cut_out + GRID_EPS] = 0.0
    return PowerCurve(grid, smoothed, meta)


def apply_shear_veer(curve: PowerCurve, spec: TurbineSpec, shear_alpha: float,
                     veer_rate: float, n_bands: int = DEFAULT_N_BANDS) -> PowerCurve:
    """Remap a power curve through the rotor-equivalent wind speed.

    The output at hub speed u is the plateau-extended input interpolated
    linearly at rews(u).  The cut-out gate acts on the hub-height speed, not
    on the rotor-equivalent one, so the shutdown position is untouched.
    """
    if spec.hub_height is None:
        raise ValueError(f"{spec.name}: hub_height required for shear/veer effects")
    cut_out = float(spec.cut_out) if spec.cut_out is not None else curve.cut_out()
    bands = band_areas(spec.rotor_diameter, spec.hub_height, n_bands)
    factor = _rews_factor(spec, shear_alpha, veer_rate, bands)

    base, _ = _plateau_extended(curve, cut_out)
    remapped = np.interp(curve.wind_grid * factor, curve.wind_grid, base)
    remapped[curve.wind_grid > cut_out + GRID_EPS] = 0.0

    meta = dict(curve.meta)
    meta["effects"] = dict(meta.get("effects", {}),
                           shear_alpha=float(shear_alpha),
                           veer_rate=float(veer_rate),
                           n_bands=int(n_bands))
    return PowerCurve(curve.wind_grid, remapped, meta)
