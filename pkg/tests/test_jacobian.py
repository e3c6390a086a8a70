import random
from fractions import Fraction

import pytest

from helpers import preimage_holds, rand_zt
from krauto.jacobian import (
    PreimageResult,
    is_span_monomial,
    jacobian_preimage,
    preimage_of_polynomial,
    russell_r0,
    split,
)
from krauto.poly import MPoly, jac, t, z

R0 = russell_r0(2, 3)
KL = [(2, 3), (2, 5), (3, 4), (3, 5)]


def test_split_examples():
    sp = split(1 + z**2 + t**3, 2, 3)
    assert (sp.span_part, sp.ideal_part) == (MPoly.const(1), R0)
    sp = split(MPoly(), 2, 3)
    assert sp.span_part.is_zero() and sp.ideal_part.is_zero()
    sp = split(t, 2, 3)
    assert (sp.span_part, sp.ideal_part) == (t, MPoly())


def test_split_rejects_bad_input():
    with pytest.raises(ValueError):
        split(z, 2, 4)
    with pytest.raises(ValueError):
        split(MPoly.var("x"), 2, 3)


@pytest.mark.parametrize("k,l", KL)
def test_split_is_a_projection(k, l):
    rng = random.Random(k * 10 + l)
    for _ in range(50):
        u = rand_zt(rng, 6, 7)
        sp = split(u, k, l)
        assert sp.span_part + sp.ideal_part == u
        assert split(sp.span_part, k, l).ideal_part.is_zero()
        assert split(sp.ideal_part, k, l).span_part.is_zero()
        assert all(is_span_monomial(m[2], m[3], k, l) for m in sp.span_part.terms)


def test_preimage_examples():
    pre = jacobian_preimage(1, 0, 2, 3)
    assert (pre.h, pre.f) == (t * Fraction(-1, 2), MPoly())
    assert jac(pre.h, R0) == z
    pre = jacobian_preimage(0, 4, 2, 3)
    assert preimage_holds(pre.h, pre.f, t**4, R0)
    assert (pre.h, pre.f) == (z * t**2 * Fraction(1, 7), t * Fraction(-4, 7))


def test_preimage_rejects_span_monomial():
    with pytest.raises(ValueError):
        jacobian_preimage(0, 1, 2, 3)


def test_preimage_of_polynomial_examples():
    assert preimage_of_polynomial(R0, 2, 3) == PreimageResult(MPoly(), MPoly.const(-1))
    pre = preimage_of_polynomial(MPoly(), 2, 3)
    assert pre.h.is_zero() and pre.f.is_zero()
    pre = preimage_of_polynomial(z + R0, 2, 3)
    assert (pre.h, pre.f) == (t * Fraction(-1, 2), MPoly.const(-1))


@pytest.mark.parametrize("k,l", KL)
def test_preimage_random_ideal_parts(k, l):
    rng = random.Random(1000 + k * l)
    r0 = russell_r0(k, l)
    for _ in range(125):
        u = split(rand_zt(rng, 5, 9), k, l).ideal_part
        pre = preimage_of_polynomial(u, k, l)
        assert preimage_holds(pre.h, pre.f, u, r0)
