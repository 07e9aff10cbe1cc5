"""Conley-Zehnder and Maslov index arithmetic.

Paths are only handled in the closed-form case ``A(t) = exp(t J_0 S)`` with
``S`` a symmetric 2x2 block, plus direct sums and loop actions built from the
index axioms. ``SymmetricBlock`` entries are measured in units of ``2 pi``
(the matrix actually exponentiated is ``2 pi S``), which keeps the rotation
ratio ``sqrt(det) * T`` rational whenever ``det S`` is a rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Union

from .errors import DomainError, UnsupportedQueryError
from .numeric import RationalLike, format_rational, rational

PROVENANCES = ("prop41", "direct-sum", "loop-shift", "inverse", "formula-ellipsoid")


@dataclass(frozen=True)
class SymmetricBlock:
    s11: Fraction
    s12: Fraction
    s22: Fraction

    def __post_init__(self):
        for name in ("s11", "s12", "s22"):
            object.__setattr__(self, name, rational(getattr(self, name)))

    @classmethod
    def scalar(cls, c: RationalLike) -> "SymmetricBlock":
        c = rational(c)
        return cls(c, Fraction(0), c)

    @property
    def det(self) -> Fraction:
        return self.s11 * self.s22 - self.s12 * self.s12

    @property
    def trace(self) -> Fraction:
        return self.s11 + self.s22


@dataclass(frozen=True)
class BlockPath:
    """The path ``t -> exp(t J_0 (2 pi S))`` on ``[0, T]``."""

    block: SymmetricBlock
    T: Fraction

    def __post_init__(self):
        T = rational(self.T)
        if T <= 0:
            raise DomainError(f"duration must be positive, got {format_rational(T)}")
        object.__setattr__(self, "T", T)

    @classmethod
    def rotation(cls, theta: RationalLike) -> "BlockPath":
        """Rotation through ``theta`` full turns over unit time."""
        return cls(SymmetricBlock.scalar(theta), Fraction(1))

    @classmethod
    def ellipsoid_normal(cls, a: RationalLike, T: RationalLike) -> "BlockPath":
        """``S = (2 pi / a) Id`` run for time ``T``; rotation ratio ``T / a``."""
        a = rational(a)
        if a <= 0:
            raise DomainError("a must be positive")
        return cls(SymmetricBlock.scalar(1 / a), T)


@dataclass(frozen=True)
class IndexDatum:
    value: int
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __int__(self):
        return self.value


def signature(S: SymmetricBlock) -> int:
    det = S.det
    if det == 0:
        raise DomainError("degenerate S: determinant is zero")
    if det < 0:
        return 0
    return 2 if S.trace > 0 else -2


def _rational_sqrt(x: Fraction) -> Fraction:
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p != x.numerator or q * q != x.denominator:
        raise UnsupportedQueryError(
            f"unsupported block: sqrt({format_rational(x)}) is irrational")
    return Fraction(p, q)


def rotation_ratio(path: BlockPath) -> Fraction:
    """``sqrt(a_1 a_2) T / 2 pi`` for the eigenvalues ``a_i`` of ``2 pi S``."""
    return _rational_sqrt(path.block.det) * path.T


def cz_exp_block(path: BlockPath) -> int:
    sig = signature(path.block)
    if sig == 0:
        return 0
    theta = rotation_ratio(path)
    if theta.denominator == 1:
        raise DomainError(
            f"loop condition: exp(T J_0 S) = Id at rotation ratio {format_rational(theta)}")
    # (1/2 + floor(theta)) * sig with sig = +-2
    return (1 + 2 * math.floor(theta)) * (sig // 2)


def cz_direct_sum(parts: Iterable[Union[int, IndexDatum]]) -> int:
    return sum(int(p) for p in parts)


def cz_loop_shift(cz: int, maslov: int) -> int:
    """Index of ``B A`` for a loop ``B`` of Maslov index ``maslov``."""
    return cz + 2 * maslov


def cz_inverse(cz: int) -> int:
    return -cz


def maslov_rotation_loop(w: int) -> int:
    """Maslov index of ``t -> rotation(2 pi w t)``.

    The ``w``-fold product of the normalization loop (index 1); the inverse
    loop for negative ``w``.
    """
    return sum(1 if w > 0 else -1 for _ in range(abs(w)))


def virdim_punctured(n: int, p_plus: int, p_minus: int, c1: int,
                     cz_plus: int, cz_minus: int) -> int:
    if p_plus < 0 or p_minus < 0:
        raise DomainError("puncture counts must be nonnegative")
    return (n - 3) * (2 - p_plus - p_minus) + c1 + cz_plus - cz_minus


def virdim_tangency(n: int, p_plus: int, p_minus: int, c1: int,
                    cz_plus: int, cz_minus: int, k: int) -> int:
    """Virtual dimension with a contact-order-``k`` tangency constraint."""
    if k < 1:
        raise DomainError("tangency order k must be >= 1")
    return virdim_punctured(n, p_plus, p_minus, c1, cz_plus, cz_minus) - 2 * n - 2 * k + 4


def riemann_roch_index(n: int, genus: int, num_punctures: int, c1: int,
                       cz_plus: int, cz_minus: int) -> int:
    if genus < 0 or num_punctures < 0:
        raise DomainError("genus and puncture count must be nonnegative")
    euler = 2 - 2 * genus - num_punctures
    return n * euler + 2 * c1 + cz_plus - cz_minus


def ellipsoid_blocks(E, orbit) -> List[IndexDatum]:
    """Transverse rotation blocks of ``gamma_j^m``, one per axis ``i != j``.

    Block ``i`` rotates with ratio ``m a_j / a_i``; raises when that ratio is
    an integer (the orbit is degenerate).
    """
    from .reeb import _as_spec, _check_orbit

    E = _as_spec(E)
    _check_orbit(E, orbit)
    t = orbit.m * E.a[orbit.j - 1]
    return [IndexDatum(cz_exp_block(BlockPath.ellipsoid_normal(ai, t)), "prop41")
            for i, ai in enumerate(E.a, start=1) if i != orbit.j]


def ellipsoid_cz_from_blocks(E, orbit) -> IndexDatum:
    """Rebuild ``cz(gamma_j^m)`` from the index axioms.

    Direct sum of the transverse blocks, then the loop action of the
    ``m``-fold rotation of the ``j``-th coordinate circle.
    """
    blocks = ellipsoid_blocks(E, orbit)
    total = cz_loop_shift(cz_direct_sum(blocks), maslov_rotation_loop(orbit.m))
    return IndexDatum(total, "loop-shift")
