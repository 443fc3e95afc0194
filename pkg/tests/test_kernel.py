"""Both kernel backends must agree exactly."""

import random
from fractions import Fraction

import pytest

from homleib._kernel import _polypure

try:
    from homleib._kernel import _polycore
except ImportError:
    _polycore = None


def rand_terms(rng, nvars=4, deg=4, nterms=6):
    out = {}
    for _ in range(nterms):
        key = tuple((v, e) for v in range(nvars) if (e := rng.randint(0, deg)))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def test_pure_kernel_basics():
    one = {(): Fraction(1)}
    a = {((0, 1),): Fraction(2)}
    assert _polypure.mul_terms(a, one) == a
    assert _polypure.add_terms(a, {}) == a
    assert _polypure.pow_terms(a, 0) == one
    assert _polypure.substitute_terms(a, 0, {(): Fraction(3)}) == {(): Fraction(6)}


@pytest.mark.skipif(_polycore is None, reason="compiled kernel not built")
def test_backends_agree():
    rng = random.Random(99)
    for _ in range(200):
        a, b = rand_terms(rng), rand_terms(rng)
        assert _polycore.add_terms(a, b) == _polypure.add_terms(a, b)
        assert _polycore.mul_terms(a, b) == _polypure.mul_terms(a, b)
        assert _polycore.pow_terms(a, 3) == _polypure.pow_terms(a, 3)
        target = rand_terms(rng, nvars=3, deg=1, nterms=3)
        v = rng.randint(0, 3)
        assert _polycore.substitute_terms(a, v, target) == _polypure.substitute_terms(
            a, v, target
        )
