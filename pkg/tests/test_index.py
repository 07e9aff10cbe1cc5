import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from capspec.errors import DomainError, UnsupportedQueryError
from capspec.index import (
    BlockPath,
    IndexDatum,
    SymmetricBlock,
    cz_direct_sum,
    cz_exp_block,
    cz_inverse,
    cz_loop_shift,
    ellipsoid_blocks,
    ellipsoid_cz_from_blocks,
    maslov_rotation_loop,
    riemann_roch_index,
    rotation_ratio,
    signature,
    virdim_punctured,
    virdim_tangency,
)
from capspec.reeb import ReebOrbit, cz_index, enumerate_spectrum

from oracles import random_generic_ellipsoids, rotation_cz_by_crossings


def test_signature_examples():
    assert signature(SymmetricBlock(1, 0, 1)) == 2
    assert signature(SymmetricBlock(1, 0, -3)) == 0
    assert signature(SymmetricBlock(0, 1, 0)) == 0
    assert signature(SymmetricBlock(-1, 0, -2)) == -2
    with pytest.raises(DomainError, match="degenerate S"):
        signature(SymmetricBlock(1, 1, 1))


def test_signature_matches_eigenvalues():
    rng = random.Random(21)
    for _ in range(200):
        s = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
        S = SymmetricBlock(*s)
        if S.det == 0:
            continue
        eig = np.linalg.eigvalsh(np.array([[s[0], s[1]], [s[1], s[2]]], dtype=float))
        assert signature(S) == int(np.sign(eig).sum())


def test_cz_exp_block_examples():
    assert cz_exp_block(BlockPath.rotation(F(3, 10))) == 1
    assert cz_exp_block(BlockPath.ellipsoid_normal(5, 2)) == 1
    assert cz_exp_block(BlockPath(SymmetricBlock(1, 0, -3), 1)) == 0
    assert cz_exp_block(BlockPath.rotation(F(-5, 2))) == -5


def test_loop_condition_raises():
    with pytest.raises(DomainError, match="loop condition"):
        cz_exp_block(BlockPath.rotation(2))
    with pytest.raises(DomainError, match="loop condition"):
        cz_exp_block(BlockPath.ellipsoid_normal(2, 4))


def test_irrational_ratio_is_unsupported():
    with pytest.raises(UnsupportedQueryError, match="unsupported block"):
        cz_exp_block(BlockPath(SymmetricBlock(1, 0, 2), 1))


def test_non_scalar_block_uses_eigenvalue_product():
    S = SymmetricBlock(1, 0, 4)
    path = BlockPath(S, F(4, 3))
    eig = np.linalg.eigvalsh(np.diag([1.0, 4.0]))
    assert float(rotation_ratio(path)) == pytest.approx(np.sqrt(eig.prod()) * 4 / 3)
    assert cz_exp_block(path) == 5


def test_rotation_matches_crossing_count():
    for q in range(2, 13):
        for p in range(1, 10 * q):
            theta = F(p, q)
            if theta.denominator == 1:
                continue
            assert cz_exp_block(BlockPath.rotation(theta)) == rotation_cz_by_crossings(theta)


def test_loop_rotation_compatibility():
    for q in range(2, 13):
        for p in range(1, 6 * q):
            theta = F(p, q)
            if theta.denominator == 1:
                continue
            c = cz_exp_block(BlockPath.rotation(theta))
            for w in range(-5, 6):
                if theta + w <= 0:
                    continue
                assert cz_loop_shift(c, maslov_rotation_loop(w)) == \
                    cz_exp_block(BlockPath.rotation(theta + w))


def test_combinator_examples():
    assert cz_direct_sum([1, 1]) == 2
    assert cz_direct_sum([3, -3]) == 0
    assert cz_loop_shift(1, 1) == 3
    assert cz_loop_shift(5, 0) == 5
    assert cz_loop_shift(0, -2) == -4
    assert [cz_inverse(c) for c in (1, 0, 7)] == [-1, 0, -7]
    assert [maslov_rotation_loop(w) for w in (1, 0, 3, -2)] == [1, 0, 3, -2]


def test_inverse_loop_algebra():
    for c in range(-20, 21):
        for w in range(-5, 6):
            assert cz_inverse(cz_loop_shift(c, w)) == cz_loop_shift(cz_inverse(c), -w)


def test_parity_of_direct_sums():
    rng = random.Random(22)
    for _ in range(200):
        parts = []
        for _ in range(rng.randint(1, 6)):
            theta = F(rng.randint(1, 100), rng.randint(2, 12))
            if theta.denominator == 1:
                theta += F(1, 2)
            parts.append(IndexDatum(cz_exp_block(BlockPath.rotation(theta)), "prop41"))
        total = IndexDatum(cz_direct_sum(parts), "direct-sum")
        assert all(p.value % 2 == 1 for p in parts)
        assert total.value % 2 == len(parts) % 2


def test_ellipsoid_blocks_rebuild_cz():
    checked = 0
    for a in random_generic_ellipsoids(20, seed=23):
        for e in enumerate_spectrum(a, action_cap=50):
            j = e.orbit.j
            others = [x for i, x in enumerate(sorted(a), start=1) if i != j]
            if any((e.action / x).denominator == 1 for x in others):
                # rational axes: m a_j / a_i is eventually an integer and the
                # transverse block is degenerate
                with pytest.raises(DomainError, match="loop condition"):
                    ellipsoid_blocks(a, e.orbit)
                continue
            checked += 1
            blocks = ellipsoid_blocks(a, e.orbit)
            assert [b.value for b in blocks] == \
                [1 + 2 * math.floor(e.action / x) for x in others]
            rebuilt = ellipsoid_cz_from_blocks(a, e.orbit)
            assert rebuilt.provenance == "loop-shift"
            assert rebuilt.value == cz_index(a, e.orbit)
    assert checked > 1000


def test_ellipsoid_blocks_on_degenerate_orbit():
    with pytest.raises(DomainError, match="loop condition"):
        ellipsoid_blocks((1, 2), ReebOrbit(2, 1))


def test_virdim_examples():
    assert virdim_punctured(2, 1, 1, 0, 3, 3) == 0
    assert virdim_punctured(3, 2, 0, 0, 10, 0) == 10
    assert virdim_tangency(2, 1, 0, 0, 3, 0, k=1) == 0
    for args in [(2, 1, 1, 0, 3, 3), (4, 3, 0, 2, 11, 0), (3, 2, 1, -1, 7, 2)]:
        n = args[0]
        assert virdim_tangency(*args, k=1) + 2 * n - 4 + 2 == virdim_punctured(*args)


def test_virdim_ellipsoid_configuration():
    for ell in range(1, 6):
        for m in range(1, 11):
            assert virdim_tangency(ell, 1, 0, 0, ell - 1 + 2 * m, 0, k=m) == 0


def test_puncture_bound_grid():
    for n in range(1, 7):
        for p in range(1, 11):
            for k in range(1, 7):
                v = virdim_tangency(n, p, 0, 0, p * (n - 1), 0, k=k)
                assert v == 2 * (p - 1 - k)


def test_degree_constraint_for_higher_capacities():
    for n in range(1, 6):
        for p in range(1, 6):
            for k in range(1, 6):
                cz = p * (n - 3) + 2 * (k + 1)
                assert virdim_tangency(n, p, 0, 0, cz, 0, k=k) == 0


def test_virdim_errors():
    with pytest.raises(DomainError):
        virdim_tangency(2, 1, 0, 0, 3, 0, k=0)
    with pytest.raises(DomainError):
        virdim_punctured(2, -1, 0, 0, 3, 0)


def test_riemann_roch_examples():
    assert riemann_roch_index(1, 0, 0, 0, 0, 0) == 2
    assert riemann_roch_index(2, 1, 0, 0, 0, 0) == 0
    # n = 1, genus 0, p punctures: c1 = sum m_i and every asymptotic operator has cz = -1
    for ms in ([1], [2, 3], [1, 1, 4]):
        p = len(ms)
        ind = riemann_roch_index(1, 0, p, sum(ms), -p, 0)
        assert ind == 2 + 2 * sum(m - 1 for m in ms)
    with pytest.raises(DomainError):
        riemann_roch_index(1, -1, 0, 0, 0, 0)


def test_index_datum_provenance():
    with pytest.raises(ValueError):
        IndexDatum(1, "guess")
    assert int(IndexDatum(3, "inverse")) == 3
