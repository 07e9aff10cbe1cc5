"""Reeb orbits on the boundary of an ellipsoid E(a_1, ..., a_n).

The boundary carries ``n`` simple orbits, one per coordinate circle. The
``m``-fold cover of the ``j``-th has action ``m * a_j`` and Conley-Zehnder
index ``n - 1 + 2 * sum_i floor(m * a_j / a_i)``.

Orbit indices ``j`` are 1-based positions in the *sorted* axis vector
``EllipsoidSpec.a``; ``EllipsoidSpec.permutation`` maps them back to the
order the caller supplied.

Rational axes are never rationally independent, so genericity is only
checked where it is needed: an operation that selects a unique orbit by
degree raises :class:`DegenerateSpectrumError` when the relevant action is
shared by two orbits.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import DegenerateSpectrumError, DomainError
from .numeric import RationalLike, RationalVector, floor_ratio, format_rational, rational


@dataclass(frozen=True)
class EllipsoidSpec:
    a: RationalVector
    permutation: Tuple[int, ...]

    @classmethod
    def from_axes(cls, axes: Iterable[RationalLike]) -> "EllipsoidSpec":
        raw = [rational(x) for x in axes]
        if not raw:
            raise DomainError("ellipsoid needs at least one axis")
        for i, x in enumerate(raw):
            if x <= 0:
                raise DomainError(f"a[{i}]: must be positive, got {format_rational(x)}")
        order = sorted(range(len(raw)), key=lambda i: (raw[i], i))
        return cls(tuple(raw[i] for i in order), tuple(order))

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self):
        return "E(" + ",".join(map(format_rational, self.a)) + ")"


@dataclass(frozen=True, order=True)
class ReebOrbit:
    j: int
    m: int


@dataclass(frozen=True)
class SpectrumEntry:
    k: int
    orbit: ReebOrbit
    action: Fraction
    cz: int


class Spectrum(tuple):
    """Tuple of :class:`SpectrumEntry` sorted by (action, j, m).

    ``degenerate`` is True when two listed orbits share an action (or, for
    count-limited listings, when the last one ties with the next unlisted).
    """

    degenerate: bool

    def __new__(cls, entries, degenerate):
        self = super().__new__(cls, entries)
        self.degenerate = degenerate
        return self

    @property
    def actions(self) -> List[Fraction]:
        return [e.action for e in self]


def _as_spec(E) -> EllipsoidSpec:
    if isinstance(E, EllipsoidSpec):
        return E
    return EllipsoidSpec.from_axes(E)


def _check_orbit(E: EllipsoidSpec, orbit: ReebOrbit):
    if not 1 <= orbit.j <= E.n:
        raise DomainError(f"orbit index j={orbit.j} outside 1..{E.n}")
    if orbit.m < 1:
        raise DomainError(f"multiplicity m={orbit.m} must be >= 1")


def action(E, orbit: ReebOrbit) -> Fraction:
    E = _as_spec(E)
    _check_orbit(E, orbit)
    return orbit.m * E.a[orbit.j - 1]


def cz_index(E, orbit: ReebOrbit) -> int:
    E = _as_spec(E)
    _check_orbit(E, orbit)
    t = orbit.m * E.a[orbit.j - 1]
    return E.n - 1 + 2 * sum(floor_ratio(t, ai) for ai in E.a)


def _covers(a: Fraction, j: int) -> Iterator[Tuple[Fraction, int, int]]:
    for m in itertools.count(1):
        yield m * a, j, m


def _merged(E: EllipsoidSpec) -> Iterator[Tuple[Fraction, int, int]]:
    return heapq.merge(*(_covers(a, j) for j, a in enumerate(E.a, start=1)))


def _has_tie(actions: List[Fraction]) -> bool:
    return any(x == y for x, y in zip(actions, actions[1:]))


def enumerate_spectrum(E, action_cap: Optional[RationalLike] = None,
                       count: Optional[int] = None) -> Spectrum:
    """Orbits with action <= ``action_cap``, or the first ``count`` of them."""
    E = _as_spec(E)
    if (action_cap is None) == (count is None):
        raise DomainError("give exactly one of action_cap or count")
    if action_cap is not None:
        cap = rational(action_cap)
        if cap <= 0:
            raise DomainError("action_cap must be positive")
        raw = sorted((m * a, j, m) for j, a in enumerate(E.a, start=1)
                     for m in range(1, floor_ratio(cap, a) + 1))
        lookahead = None
    else:
        if count < 1:
            raise DomainError("count must be >= 1")
        it = _merged(E)
        raw = list(itertools.islice(it, count))
        lookahead = next(it)[0]
    n = E.n
    entries = []
    for k, (t, j, m) in enumerate(raw, start=1):
        cz = n - 1 + 2 * sum(floor_ratio(t, ai) for ai in E.a)
        entries.append(SpectrumEntry(k, ReebOrbit(j, m), t, cz))
    actions = [t for t, _, _ in raw]
    degenerate = _has_tie(actions) or (lookahead is not None and actions[-1] == lookahead)
    return Spectrum(entries, degenerate)


def kth_action(E, k: int) -> Fraction:
    """k-th smallest element of the action multiset, ties counted."""
    E = _as_spec(E)
    if k < 1:
        raise DomainError("k must be >= 1")
    return next(itertools.islice(_merged(E), k - 1, None))[0]


def _horizon(E: EllipsoidSpec, k: int) -> Fraction:
    # The k-th action is at most k * min(a), well inside this cap.
    return (k + E.n) * max(E.a)


def orbit_of_degree(E, k: int) -> ReebOrbit:
    """The unique orbit with Conley-Zehnder index ``n - 1 + 2k``."""
    E = _as_spec(E)
    if k < 1:
        raise DomainError("k must be >= 1")
    actions = enumerate_spectrum(E, count=k + 1).actions
    target = actions[k - 1]
    if actions[k] == target or (k > 1 and actions[k - 2] == target):
        raise DegenerateSpectrumError(
            f"degenerate spectrum: perturb a (action {format_rational(target)} of {E} "
            f"is shared by several orbits)")
    want = E.n - 1 + 2 * k
    hits = [e.orbit for e in enumerate_spectrum(E, action_cap=_horizon(E, k)) if e.cz == want]
    if len(hits) != 1:
        raise RuntimeError(f"internal error: {len(hits)} orbits of degree {want} in {E}")
    return hits[0]


def lch_rank(E, degree: int) -> int:
    """Rank of linearized contact homology of ``E`` in the given degree.

    Every orbit is good and the differential vanishes, so this counts
    orbits whose Conley-Zehnder index equals ``degree``.
    """
    E = _as_spec(E)
    if (degree - (E.n - 1)) % 2:
        return 0
    k = (degree - (E.n - 1)) // 2
    if k < 1:
        return 0
    # Raises on a tie at the k-th action, where the degree is not realised.
    orbit_of_degree(E, k)
    return sum(1 for e in enumerate_spectrum(E, action_cap=_horizon(E, k)) if e.cz == degree)


def normal_cz(E_sub, a_next: RationalLike, orbit: ReebOrbit) -> int:
    """Normal Conley-Zehnder index of ``gamma_1^m`` inside E(a_1, ..., a_l, a_next).

    The transverse linearized flow is rotation by ``2 pi t / a_next`` for
    ``t`` in ``[0, m a_1]``.
    """
    from .index import BlockPath, cz_exp_block

    E_sub = _as_spec(E_sub)
    a_next = rational(a_next)
    if orbit.j != 1:
        raise DomainError("normal_cz is defined for orbits gamma_1^m")
    _check_orbit(E_sub, orbit)
    T = orbit.m * E_sub.a[0]
    if not T < a_next:
        raise DomainError(
            f"hypothesis m a_1 < a_(l+1) fails: {format_rational(T)} >= {format_rational(a_next)}")
    return cz_exp_block(BlockPath.ellipsoid_normal(a_next, T))
