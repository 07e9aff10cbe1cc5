"""Capacity values of toric domains and the Lagrangian-capacity chain.

Every value carries a status so that theorems, conditional results,
conjectures and mere bounds are never conflated:

``theorem``                    proven value
``lower_bound``/``upper_bound``  one-sided bound witnessed by an inclusion
``conjecture``                 conjectured value
``conditional_on_assumption``  value proven under the virtual perturbation assumption
``recorded_identity``          a comparison recorded without independent computation
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .errors import DegenerateSpectrumError, DomainError, UnsupportedQueryError
from .numeric import RationalLike, min_positive_integer_combination, vector
from .reeb import EllipsoidSpec, enumerate_spectrum, kth_action, orbit_of_degree
from .toric import (
    DEFAULT_SEED,
    Ball,
    Cylinder,
    Ellipsoid,
    HRep,
    NCylinders,
    ToricRegion,
    UnboundedRegionError,
    VolumeEstimate,
    axis_intercepts,
    diagonal,
    is_ball,
    is_concave_toric,
    is_convex_toric,
    volume,
)

NAMES = ("c_vol", "c_B", "c_P", "c_L", "cgh_k", "csh_k", "gtilde1_k", "g1_k", "A_min")
STATUSES = ("theorem", "lower_bound", "upper_bound", "conjecture",
            "conditional_on_assumption", "recorded_identity")

ANCHOR_VOLUME = "volume-capacity"
ANCHOR_EMBEDDING = "embedding-capacities"
ANCHOR_DELTA_LEQ_CP = "lem:c-square-geq-delta"
ANCHOR_CP_LEQ_CL = "lem:c-square-leq-c-lag"
ANCHOR_CL_BALL = "prp:cl-of-ball"
ANCHOR_CL_CYLINDER = "prp:cl-of-cylinder"
ANCHOR_CL_4D = "lem:computation-of-cl"
ANCHOR_CL_MAIN = "thm:my-main-theorem"
ANCHOR_CL_ELLIPSOID = "conj:cl-of-ellipsoid"
ANCHOR_GH = "thm:properties-of-gutt-hutchings-capacities"
ANCHOR_GH_N = "lem:cgh-of-nondisjoint-union-of-cylinders"
ANCHOR_GTILDE_CGH = "prp:g-tilde-and-cgh"
ANCHOR_GTILDE_G = "thm:g-tilde-vs-g-hat"
ANCHOR_G_CGH = "thm:g-hat-vs-gh"
ANCHOR_CSH = "thm:ghc-and-s1eshc"
ANCHOR_AMIN = "lem:a-min-with-exact-symplectic-manifold"


@dataclass(frozen=True)
class CapacityValue:
    name: str
    value: Union[Fraction, float]
    status: str
    anchor: str
    k: Optional[int] = None
    witness: str = ""
    # c_vol only: (vol / vol(B))  exactly, when the volume is exact
    exact_ratio: Optional[Fraction] = None

    def __post_init__(self):
        if self.name not in NAMES:
            raise ValueError(f"unknown capacity name {self.name!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def chain_value(self):
        """The quantity entering the Lagrangian chain: ``value / k`` if indexed."""
        return self.value / self.k if self.k else self.value


def _check_k(k: int):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")


# --- volume and embedding capacities ----------------------------------------

def c_vol(region: ToricRegion, *, seed: int = DEFAULT_SEED) -> CapacityValue:
    n = region.n
    vol = volume(region, seed=seed)
    if isinstance(vol, VolumeEstimate):
        ratio = vol.value * math.factorial(n)
        return CapacityValue("c_vol", ratio ** (1 / n), "theorem", ANCHOR_VOLUME,
                             witness=f"monte carlo volume {vol.value:.6f} +- {vol.half_width:.6f}"
                                     f" (seed {vol.seed}, {vol.samples} samples)")
    ratio = vol * math.factorial(n)
    return CapacityValue("c_vol", float(ratio) ** (1 / n), "theorem", ANCHOR_VOLUME,
                         witness="exact volume ratio", exact_ratio=ratio)


def c_B_lower(region: ToricRegion) -> CapacityValue:
    """Largest ball ``B(a)`` whose moment region sits inside ``Omega``."""
    if isinstance(region, NCylinders):
        # B(a) lies in N(delta) iff its diagonal a/n is at most delta.
        value = region.n * region.delta
    elif isinstance(region, HRep) and not region.canonical:
        raise UnsupportedQueryError(f"unsupported region for c_B: {region}")
    else:
        finite = [b for b in axis_intercepts(region) if b is not None]
        if not finite:
            raise UnboundedRegionError(f"no finite axis intercept in {region}")
        value = min(finite)
    return CapacityValue("c_B", value, "lower_bound", ANCHOR_EMBEDDING,
                         witness="toric inclusion of a ball")


def _inscribed_cube(region: HRep) -> Fraction:
    # Largest t with [0, t]^n inside Omega: the cube vertex maximising <v, x>.
    cands = [c / sum(max(x, 0) for x in v)
             for v, c in zip(region.normals, region.offsets) if any(x > 0 for x in v)]
    if not cands:
        raise UnboundedRegionError(f"no constraint binds on cubes in {region}")
    return min(cands)


def c_P(region: ToricRegion) -> CapacityValue:
    if is_convex_toric(region) or is_concave_toric(region):
        return CapacityValue("c_P", diagonal(region), "theorem", ANCHOR_DELTA_LEQ_CP,
                             witness="c_P = delta for convex or concave toric domains")
    return CapacityValue("c_P", _inscribed_cube(region), "lower_bound", ANCHOR_EMBEDDING,
                         witness="toric inclusion of a cube")


# --- Gutt-Hutchings capacities ----------------------------------------------

def _has_exact_cgh(region: ToricRegion) -> bool:
    return isinstance(region, (NCylinders, Ellipsoid, Ball, Cylinder))


def _ellipsoid_cgh(E: EllipsoidSpec, k: int):
    try:
        orbit = orbit_of_degree(E, k)
    except DegenerateSpectrumError:
        # Tied actions: the multiset value is the limit over generic perturbations.
        return kth_action(E, k), "k-th action counted with multiplicity (tied orbits)"
    return orbit.m * E.a[orbit.j - 1], "degree selection, oracle-verified"


def _exact_cgh(region: ToricRegion, k: int) -> CapacityValue:
    n = region.n
    if isinstance(region, NCylinders):
        return CapacityValue("cgh_k", region.delta * (k + n - 1), "theorem", ANCHOR_GH_N, k,
                             "delta (k + n - 1)")
    if isinstance(region, Cylinder):
        return CapacityValue("cgh_k", region.a * k, "theorem", ANCHOR_GH, k,
                             "k-th action of E(a, inf, ..., inf)")
    if is_ball(region):
        a = region.a if isinstance(region, Ball) else region.a[0]
        return CapacityValue("cgh_k", a * -(-k // n), "theorem", ANCHOR_GH, k,
                             "counting identity a ceil(k/n)")
    E = EllipsoidSpec.from_axes(region.a)
    value, how = _ellipsoid_cgh(E, k)
    return CapacityValue("cgh_k", value, "theorem", ANCHOR_GH, k, how)


def _inscribed_ellipsoid_cgh(region: ToricRegion, k: int) -> Fraction:
    finite = [b for b in axis_intercepts(region) if b is not None]
    if not finite:
        raise UnsupportedQueryError(f"no inscribed ellipsoid for {region}")
    return kth_action(finite, k)


def cgh(region: ToricRegion, k: int) -> List[CapacityValue]:
    """Gutt-Hutchings capacity ``cgh_k``.

    One theorem-status row for the families with a closed form; otherwise a
    ``[lower_bound, upper_bound]`` pair from monotonicity.
    """
    _check_k(k)
    if _has_exact_cgh(region):
        return [_exact_cgh(region, k)]
    n = region.n
    if isinstance(region, HRep) and not region.canonical:
        t = _inscribed_cube(region)
        return [CapacityValue("cgh_k", t * -(-k // n), "lower_bound", ANCHOR_GH, k,
                              "monotonicity from inscribed ball B(t) in P(t)")]
    lower = CapacityValue("cgh_k", _inscribed_ellipsoid_cgh(region, k), "lower_bound",
                          ANCHOR_GH, k, "monotonicity from inscribed ellipsoid")
    upper = CapacityValue("cgh_k", diagonal(region) * (k + n - 1), "upper_bound", ANCHOR_GH_N, k,
                          "monotonicity into N(delta_Omega)")
    return [lower, upper]


def cgh_value(region: ToricRegion, k: int) -> Fraction:
    rows = cgh(region, k)
    if len(rows) != 1 or rows[0].status != "theorem":
        raise UnsupportedQueryError(f"cgh_{k} of {region} is only bracketed")
    return rows[0].value


@dataclass(frozen=True)
class CghTerm:
    k: int
    value: Fraction
    witness: str


def cgh_sequence(region: ToricRegion, k_max: int) -> List[CghTerm]:
    """``cgh_1 .. cgh_{k_max}`` for families with theorem status, in one pass.

    For ellipsoids the spectrum is enumerated once; at every untied position
    the k-th orbit is confirmed to have Conley-Zehnder index ``n - 1 + 2k``.
    """
    _check_k(k_max)
    if not _has_exact_cgh(region):
        raise UnsupportedQueryError(f"cgh of {region} is only bracketed")
    if not isinstance(region, Ellipsoid) or is_ball(region):
        return [CghTerm(k, r.value, r.witness)
                for k in range(1, k_max + 1) for r in [_exact_cgh(region, k)]]
    spectrum = enumerate_spectrum(region.a, count=k_max + 1)
    n = region.n
    out = []
    for i in range(k_max):
        entry = spectrum[i]
        tied = (spectrum[i + 1].action == entry.action
                or (i > 0 and spectrum[i - 1].action == entry.action))
        if tied:
            out.append(CghTerm(i + 1, entry.action,
                               "k-th action counted with multiplicity (tied orbits)"))
            continue
        if entry.cz != n - 1 + 2 * (i + 1):
            raise RuntimeError(
                f"degree/order mismatch at k={i + 1} for {region}: cz={entry.cz}")
        out.append(CghTerm(i + 1, entry.action, "degree selection, oracle-verified"))
    return out


def cgh_nondecreasing_check(region: ToricRegion, k_max: int) -> bool:
    values = [t.value for t in cgh_sequence(region, k_max)]
    return all(x <= y for x, y in zip(values, values[1:]))


# --- Lagrangian capacity -----------------------------------------------------

def c_L(region: ToricRegion) -> CapacityValue:
    n = region.n
    if is_ball(region):
        a = region.a if isinstance(region, Ball) else region.a[0]
        return CapacityValue("c_L", a / n, "theorem", ANCHOR_CL_BALL,
                             witness="c_L(B(1)) = 1/n and conformality")
    if isinstance(region, Cylinder):
        return CapacityValue("c_L", region.a, "theorem", ANCHOR_CL_CYLINDER,
                             witness="c_L(Z(1)) = 1 and conformality")
    convex, concave = is_convex_toric(region), is_concave_toric(region)
    if convex and n == 2:
        return CapacityValue("c_L", diagonal(region), "theorem", ANCHOR_CL_4D,
                             witness="4-dimensional convex toric domain")
    if convex or concave:
        return CapacityValue("c_L", diagonal(region), "conditional_on_assumption", ANCHOR_CL_MAIN,
                             witness="convex or concave toric domain")
    return CapacityValue("c_L", c_P(region).value, "lower_bound", ANCHOR_CP_LEQ_CL,
                         witness="c_P <= c_L")


def c_L_rows(region: ToricRegion, k_max: int = 1) -> List[CapacityValue]:
    """``c_L`` plus the extra rows a report should show next to it."""
    rows = [c_L(region)]
    if isinstance(region, Ellipsoid) and not is_ball(region) and region.n > 2:
        rows.append(CapacityValue("c_L", diagonal(region), "conjecture", ANCHOR_CL_ELLIPSOID,
                                  witness="(1/a_1 + ... + 1/a_n)^-1"))
    if rows[0].status == "lower_bound" and _has_exact_cgh(region):
        best = min(t.value / t.k for t in cgh_sequence(region, k_max))
        rows.append(CapacityValue("c_L", best, "upper_bound", ANCHOR_GTILDE_G,
                                  witness=f"inf over k <= {k_max} of cgh_k / k"))
    return rows


def a_min_product_torus(areas: Sequence[RationalLike]) -> CapacityValue:
    """Minimal symplectic area of a product torus with the given circle areas."""
    return CapacityValue("A_min", min_positive_integer_combination(vector(areas)), "theorem",
                         ANCHOR_AMIN, witness="smallest positive integer combination of areas")


# --- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    k: int
    cgh: Optional[Fraction]
    ratio: Optional[Fraction]
    lower: Fraction
    upper: Fraction
    running_inf: Optional[Fraction]
    status: str
    ok: Optional[bool]


@dataclass(frozen=True)
class CapacityReport:
    domain: ToricRegion
    k_max: int
    delta: Fraction
    rows: List[CapacityValue]
    steps: List[ChainStep]
    chain_ok: bool
    inf_ratio: Optional[Fraction]
    inf_gap: Optional[Fraction]
    best_k: Optional[int] = None

    @property
    def witnesses(self) -> List[str]:
        return [r.witness for r in self.rows]


def chain_report(region: ToricRegion, k_max: int) -> CapacityReport:
    """Verify ``delta <= c_P <= c_L <= cgh_k / k <= delta (k + n - 1) / k`` for each k."""
    _check_k(k_max)
    n = region.n
    delta = diagonal(region)
    head = [c_P(region), c_L(region)]

    steps: List[ChainStep] = []
    running = None
    best_k = None
    if _has_exact_cgh(region):
        for term in cgh_sequence(region, k_max):
            k = term.k
            ratio = term.value / k
            upper = delta * (k + n - 1) / k
            if running is None or ratio < running:
                running, best_k = ratio, k
            steps.append(ChainStep(k, term.value, ratio, delta, upper, running, "theorem",
                                   delta <= ratio <= upper))
    else:
        for k in range(1, k_max + 1):
            status = "/".join(r.status for r in cgh(region, k))
            steps.append(ChainStep(k, None, None, delta, delta * (k + n - 1) / k, None,
                                   status, None))

    rows = list(head)
    if best_k is not None:
        v = running * best_k
        four_d_convex = n == 2 and is_convex_toric(region)
        rows += [
            CapacityValue("gtilde1_k", v, "theorem" if four_d_convex else "upper_bound",
                          ANCHOR_GTILDE_CGH if four_d_convex else ANCHOR_GTILDE_G, best_k,
                          "gtilde_k = cgh_k" if four_d_convex else "gtilde_k <= g_k"),
            CapacityValue("g1_k", v, "conditional_on_assumption", ANCHOR_G_CGH, best_k,
                          "g_k = cgh_k"),
            CapacityValue("cgh_k", v, "theorem", _exact_cgh(region, best_k).anchor, best_k,
                          steps[best_k - 1].status),
            CapacityValue("csh_k", v, "recorded_identity", ANCHOR_CSH, best_k,
                          "cgh_k = csh_k (star-shaped)" if region.bounded else "cgh_k <= csh_k"),
            CapacityValue("cgh_k", delta * (best_k + n - 1), "theorem", ANCHOR_GH_N, best_k,
                          "cgh_k(N(delta_Omega)); Omega inside N(delta_Omega)"),
        ]
    chain_values = [r.chain_value for r in rows]
    ordered = all(x <= y for x, y in zip(chain_values, chain_values[1:]))
    head_ok = delta <= head[0].value if head[0].status == "theorem" else True
    chain_ok = ordered and head_ok and all(s.ok for s in steps if s.ok is not None)
    return CapacityReport(region, k_max, delta, rows, steps, chain_ok, running,
                          None if running is None else running - delta, best_k)


def capacities_report(region: ToricRegion, k_max: int, *, seed: int = DEFAULT_SEED
                      ) -> List[CapacityValue]:
    """All capacity rows the CLI prints for one domain."""
    _check_k(k_max)
    rows = []
    if region.bounded:
        rows.append(c_vol(region, seed=seed))
    try:
        rows.append(c_B_lower(region))
    except UnsupportedQueryError:
        pass
    rows.append(c_P(region))
    rows += c_L_rows(region, k_max)
    for k in range(1, k_max + 1):
        rows += cgh(region, k)
    return rows
