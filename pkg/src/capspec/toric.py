"""Moment regions of toric domains and exact polytope queries on them.

A region ``Omega`` lives in the closed positive orthant of R^n and stands in
for the toric domain ``X_Omega = mu^{-1}(Omega)``. All queries except the
Monte Carlo volume of a free-form half-space region are exact.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, UnsupportedQueryError
from .numeric import RationalLike, RationalVector, format_rational, rational, vector

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240517
DEFAULT_SAMPLES = 10**6


class UnboundedRegionError(UnsupportedQueryError):
    pass


def _positive(x: RationalLike, field: str) -> Fraction:
    x = rational(x)
    if x <= 0:
        raise DomainError(f"{field}: must be positive, got {format_rational(x)}")
    return x


def _positive_vector(values: Iterable[RationalLike], field: str) -> RationalVector:
    a = vector(values)
    for i, x in enumerate(a):
        _positive(x, f"{field}[{i}]")
    return a


def _dimension(n: int, field: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"{field}: dimension must be a positive integer, got {n!r}")
    return n


class ToricRegion:
    """Base class; concrete families are frozen dataclasses below."""

    n: int

    @property
    def bounded(self) -> bool:
        return True


@dataclass(frozen=True)
class Ellipsoid(ToricRegion):
    a: RationalVector

    def __post_init__(self):
        object.__setattr__(self, "a", _positive_vector(self.a, "a"))

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self):
        return "E(" + ",".join(map(format_rational, self.a)) + ")"


@dataclass(frozen=True)
class Polydisk(ToricRegion):
    a: RationalVector

    def __post_init__(self):
        object.__setattr__(self, "a", _positive_vector(self.a, "a"))

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self):
        return "P(" + ",".join(map(format_rational, self.a)) + ")"


@dataclass(frozen=True)
class Ball(ToricRegion):
    """B^{2n}(a) = E(a, ..., a)."""

    a: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a", _positive(self.a, "a"))
        _dimension(self.n)

    def __str__(self):
        return f"B^{2 * self.n}({format_rational(self.a)})"


@dataclass(frozen=True)
class Cube(ToricRegion):
    """P^{2n}(a) = P(a, ..., a)."""

    a: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a", _positive(self.a, "a"))
        _dimension(self.n)

    def __str__(self):
        return f"P^{2 * self.n}({format_rational(self.a)})"


@dataclass(frozen=True)
class Cylinder(ToricRegion):
    """Z^{2n}(a): the first moment coordinate is at most ``a``."""

    a: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a", _positive(self.a, "a"))
        _dimension(self.n)

    @property
    def bounded(self) -> bool:
        return self.n == 1

    def __str__(self):
        return f"Z^{2 * self.n}({format_rational(self.a)})"


@dataclass(frozen=True)
class NCylinders(ToricRegion):
    """N^{2n}(delta): some moment coordinate is at most ``delta``."""

    delta: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "delta", _positive(self.delta, "delta"))
        _dimension(self.n)

    @property
    def bounded(self) -> bool:
        return self.n == 1

    def __str__(self):
        return f"N^{2 * self.n}({format_rational(self.delta)})"


@dataclass(frozen=True)
class HRep(ToricRegion):
    """``{x >= 0 : <v_i, x> <= c_i for all i}`` with every ``c_i > 0``."""

    normals: Tuple[RationalVector, ...]
    offsets: RationalVector

    def __post_init__(self):
        normals = tuple(vector(v) for v in self.normals)
        if not normals:
            raise DomainError("normals: at least one constraint is required")
        offsets = _positive_vector(self.offsets, "offsets")
        if len(offsets) != len(normals):
            raise DomainError(
                f"offsets: expected {len(normals)} entries, got {len(offsets)}")
        n = len(normals[0])
        for i, v in enumerate(normals):
            if len(v) != n:
                raise DomainError(f"normals[{i}]: expected dimension {n}, got {len(v)}")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @property
    def n(self) -> int:
        return len(self.normals[0])

    @property
    def canonical(self) -> bool:
        """All normals componentwise nonnegative: convex and downward closed."""
        return all(x >= 0 for v in self.normals for x in v)

    @property
    def bounded(self) -> bool:
        if self.canonical:
            return all(b is not None for b in axis_intercepts(self))
        return _lp_bounding_box(self) is not None

    def __str__(self):
        rows = ";".join(
            ",".join(map(format_rational, v)) + "<=" + format_rational(c)
            for v, c in zip(self.normals, self.offsets))
        return f"HRep[{rows}]"


# --- helpers over families -------------------------------------------------

def _ellipsoid_axes(region: ToricRegion) -> Optional[RationalVector]:
    if isinstance(region, Ellipsoid):
        return region.a
    if isinstance(region, Ball):
        return (region.a,) * region.n
    return None


def _box_corner(region: ToricRegion) -> Optional[RationalVector]:
    if isinstance(region, Polydisk):
        return region.a
    if isinstance(region, Cube):
        return (region.a,) * region.n
    return None


def is_ball(region: ToricRegion) -> bool:
    axes = _ellipsoid_axes(region)
    return axes is not None and len(set(axes)) == 1


def _downward_closed_convex(region: ToricRegion) -> bool:
    if isinstance(region, HRep):
        return region.canonical
    return isinstance(region, (Ellipsoid, Ball, Polydisk, Cube, Cylinder))


def axis_intercepts(region: ToricRegion) -> Tuple[Optional[Fraction], ...]:
    """``sup {t : t e_j in Omega}`` for each axis, ``None`` meaning unbounded."""
    axes = _ellipsoid_axes(region) or _box_corner(region)
    if axes is not None:
        return tuple(axes)
    if isinstance(region, Cylinder):
        return (region.a,) + (None,) * (region.n - 1)
    if isinstance(region, NCylinders):
        return (region.delta,) if region.n == 1 else (None,) * region.n
    if isinstance(region, HRep):
        out = []
        for j in range(region.n):
            cands = [c / v[j] for v, c in zip(region.normals, region.offsets) if v[j] > 0]
            out.append(min(cands) if cands else None)
        return tuple(out)
    raise UnsupportedQueryError(f"unknown region type {type(region).__name__}")


def _lp_bounding_box(region: HRep) -> Optional[list]:
    # Float LP; only used to size the Monte Carlo sampling box.
    from scipy.optimize import linprog

    A = np.array([[float(x) for x in v] for v in region.normals])
    b = np.array([float(c) for c in region.offsets])
    box = []
    for j in range(region.n):
        cost = np.zeros(region.n)
        cost[j] = -1.0
        res = linprog(cost, A_ub=A, b_ub=b, bounds=[(0, None)] * region.n, method="highs")
        if res.status == 3:
            return None
        if res.status != 0:
            raise UnsupportedQueryError(f"bounding-box LP failed: {res.message}")
        box.append(-res.fun)
    return box


def _check_point(region: ToricRegion, x: Sequence[RationalLike]) -> RationalVector:
    x = vector(x)
    if len(x) != region.n:
        raise DomainError(f"point has dimension {len(x)}, region has {region.n}")
    if any(t < 0 for t in x):
        raise DomainError("point must lie in the closed positive orthant")
    return x


# --- operations ------------------------------------------------------------

def contains_point(region: ToricRegion, x: Sequence[RationalLike]) -> bool:
    x = _check_point(region, x)
    if isinstance(region, Ellipsoid):
        return sum(t / a for t, a in zip(x, region.a)) <= 1
    if isinstance(region, Ball):
        return sum(x) <= region.a
    if isinstance(region, Polydisk):
        return all(t <= a for t, a in zip(x, region.a))
    if isinstance(region, Cube):
        return max(x) <= region.a
    if isinstance(region, Cylinder):
        return x[0] <= region.a
    if isinstance(region, NCylinders):
        return min(x) <= region.delta
    if isinstance(region, HRep):
        return all(sum(vi * t for vi, t in zip(v, x)) <= c
                   for v, c in zip(region.normals, region.offsets))
    raise UnsupportedQueryError(f"unknown region type {type(region).__name__}")


def diagonal(region: ToricRegion) -> Fraction:
    """``sup {t : (t, ..., t) in Omega}``, exactly."""
    if isinstance(region, Ellipsoid):
        return 1 / sum(1 / a for a in region.a)
    if isinstance(region, Ball):
        return region.a / region.n
    if isinstance(region, Polydisk):
        return min(region.a)
    if isinstance(region, (Cube, Cylinder)):
        return region.a
    if isinstance(region, NCylinders):
        return region.delta
    if isinstance(region, HRep):
        cands = [c / sum(v) for v, c in zip(region.normals, region.offsets) if sum(v) > 0]
        if not cands:
            raise UnboundedRegionError("unbounded diagonal")
        return min(cands)
    raise UnsupportedQueryError(f"unknown region type {type(region).__name__}")


def is_convex_toric(region: ToricRegion) -> bool:
    if isinstance(region, NCylinders):
        return region.n == 1
    if isinstance(region, HRep) and not region.canonical:
        logger.info("convexity undecided for non-canonical half-space region %s", region)
        return False
    return True


def is_concave_toric(region: ToricRegion) -> bool:
    if isinstance(region, (Ellipsoid, Ball, Cylinder, NCylinders)):
        return True
    if isinstance(region, (Polydisk, Cube)):
        # A 1-dimensional polydisk is a disk, i.e. a ball.
        return region.n == 1
    if isinstance(region, HRep):
        logger.info("concavity is only certified for named families; %s reported as not concave",
                    region)
    return False


def includes(outer: ToricRegion, inner: ToricRegion) -> bool:
    """Exact decision of ``Omega_inner`` contained in ``Omega_outer``."""
    if outer.n != inner.n:
        raise DomainError(f"dimension mismatch: {outer.n} vs {inner.n}")
    axes = _ellipsoid_axes(inner)
    corner = _box_corner(inner)
    if axes is None and corner is None:
        raise UnsupportedQueryError(
            f"unsupported inclusion query: inner region {inner} must be an ellipsoid or polydisk")
    if isinstance(outer, NCylinders):
        # max over inner of the min coordinate; inner is downward closed.
        return diagonal(inner) <= outer.delta
    if not _downward_closed_convex(outer):
        raise UnsupportedQueryError(f"unsupported inclusion query: outer region {outer}")
    if axes is not None:
        n = len(axes)
        return all(
            contains_point(outer, tuple(axes[j] if i == j else Fraction(0) for i in range(n)))
            for j in range(n))
    return contains_point(outer, corner)


def scale_region(region: ToricRegion, alpha: RationalLike) -> ToricRegion:
    """The region of ``(X_Omega, alpha * omega)``, i.e. ``alpha * Omega``."""
    alpha = _positive(alpha, "alpha")
    if isinstance(region, Ellipsoid):
        return Ellipsoid(tuple(alpha * a for a in region.a))
    if isinstance(region, Polydisk):
        return Polydisk(tuple(alpha * a for a in region.a))
    if isinstance(region, (Ball, Cube, Cylinder)):
        return type(region)(alpha * region.a, region.n)
    if isinstance(region, NCylinders):
        return NCylinders(alpha * region.delta, region.n)
    if isinstance(region, HRep):
        return HRep(region.normals, tuple(alpha * c for c in region.offsets))
    raise UnsupportedQueryError(f"unknown region type {type(region).__name__}")


@dataclass(frozen=True)
class VolumeEstimate:
    """Approximate volume with a 95% confidence half-width."""

    value: float
    half_width: float
    samples: int
    seed: int


def volume(region: ToricRegion, *, seed: int = DEFAULT_SEED,
           samples: int = DEFAULT_SAMPLES) -> Union[Fraction, VolumeEstimate]:
    """Euclidean volume of ``Omega`` (the symplectic volume of ``X_Omega``).

    Exact for named families; half-space regions fall back to Monte Carlo.
    """
    if not region.bounded:
        raise UnboundedRegionError(f"infinite volume: {region} is unbounded")
    n = region.n
    axes = _ellipsoid_axes(region)
    if axes is not None:
        return Fraction(math.prod(axes)) / math.factorial(n)
    corner = _box_corner(region)
    if corner is not None:
        return Fraction(math.prod(corner))
    if isinstance(region, Cylinder):
        return region.a
    if isinstance(region, NCylinders):
        return region.delta
    return monte_carlo_volume(region, seed=seed, samples=samples)


def _float_mask(region: ToricRegion, pts: np.ndarray) -> np.ndarray:
    axes = _ellipsoid_axes(region)
    if axes is not None:
        return (pts / np.array([float(a) for a in axes])).sum(axis=1) <= 1.0
    corner = _box_corner(region)
    if corner is not None:
        return (pts <= np.array([float(a) for a in corner])).all(axis=1)
    if isinstance(region, HRep):
        A = np.array([[float(x) for x in v] for v in region.normals])
        b = np.array([float(c) for c in region.offsets])
        return (pts @ A.T <= b).all(axis=1)
    raise UnsupportedQueryError(f"no sampler for {region}")


def monte_carlo_volume(region: ToricRegion, *, seed: int = DEFAULT_SEED,
                       samples: int = DEFAULT_SAMPLES) -> VolumeEstimate:
    if not region.bounded:
        raise UnboundedRegionError(f"infinite volume: {region} is unbounded")
    if isinstance(region, HRep) and not region.canonical:
        box = _lp_bounding_box(region)
    else:
        box = [float(b) for b in axis_intercepts(region)]
    box = np.array(box)
    box_volume = float(np.prod(box))
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    chunk = 1 << 17
    while done < samples:
        m = min(chunk, samples - done)
        pts = rng.random((m, region.n)) * box
        hits += int(_float_mask(region, pts).sum())
        done += m
    p = hits / samples
    half = 1.96 * box_volume * math.sqrt(p * (1 - p) / samples)
    return VolumeEstimate(value=p * box_volume, half_width=half, samples=samples, seed=seed)


# --- JSON interface --------------------------------------------------------

def region_from_json(spec: dict) -> ToricRegion:
    """Build a region from the JSON domain schema (all scalars as strings)."""
    if not isinstance(spec, dict):
        raise DomainError("domain: expected a JSON object")
    kind = spec.get("type")
    try:
        if kind == "ellipsoid":
            return Ellipsoid(_list_field(spec, "a"))
        if kind == "polydisk":
            return Polydisk(_list_field(spec, "a"))
        if kind in ("ball", "cube", "cylinder"):
            cls = {"ball": Ball, "cube": Cube, "cylinder": Cylinder}[kind]
            return cls(_scalar_field(spec, "a"), _int_field(spec, "n"))
        if kind == "ncyl":
            return NCylinders(_scalar_field(spec, "delta"), _int_field(spec, "n"))
        if kind == "hrep":
            normals = spec.get("normals")
            if not isinstance(normals, list) or not all(isinstance(v, list) for v in normals):
                raise DomainError("normals: expected a list of lists")
            return HRep(tuple(tuple(_literal(x, "normals") for x in v) for v in normals),
                        tuple(_list_field(spec, "offsets")))
    except DomainError as exc:
        raise DomainError(f"domain.{exc}") from None
    raise DomainError(f"domain.type: unknown region type {kind!r}")


def _literal(x, field):
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise DomainError(f"{field}: expected a rational string, got {x!r}")
    return rational(x)


def _scalar_field(spec, field):
    if field not in spec:
        raise DomainError(f"{field}: missing")
    return _literal(spec[field], field)


def _list_field(spec, field):
    value = spec.get(field)
    if not isinstance(value, list) or not value:
        raise DomainError(f"{field}: expected a nonempty list")
    return [_literal(x, f"{field}[{i}]") for i, x in enumerate(value)]


def _int_field(spec, field):
    value = spec.get(field)
    if isinstance(value, str) and value.strip().isdigit():
        value = int(value)
    return _dimension(value, field)


def region_to_json(region: ToricRegion) -> dict:
    if isinstance(region, Ellipsoid):
        return {"type": "ellipsoid", "a": [format_rational(a) for a in region.a]}
    if isinstance(region, Polydisk):
        return {"type": "polydisk", "a": [format_rational(a) for a in region.a]}
    if isinstance(region, (Ball, Cube, Cylinder)):
        kind = {Ball: "ball", Cube: "cube", Cylinder: "cylinder"}[type(region)]
        return {"type": kind, "a": format_rational(region.a), "n": region.n}
    if isinstance(region, NCylinders):
        return {"type": "ncyl", "delta": format_rational(region.delta), "n": region.n}
    if isinstance(region, HRep):
        return {"type": "hrep",
                "normals": [[format_rational(x) for x in v] for v in region.normals],
                "offsets": [format_rational(c) for c in region.offsets]}
    raise UnsupportedQueryError(f"unknown region type {type(region).__name__}")
