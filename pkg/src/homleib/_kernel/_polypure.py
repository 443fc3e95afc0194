"""Pure-Python polynomial kernels.

A polynomial is a dict mapping a monomial key to a nonzero Fraction.
A monomial key is a tuple of (variable, exponent) pairs, sorted by
variable id, with no zero exponents; the empty tuple is the constant
monomial.  These functions are the hot loops of the whole engine and
are mirrored one-for-one by the compiled kernel in _polycore.pyx.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def merge_keys(ka, kb):
    """Multiply two monomials: merge sorted exponent lists, adding exponents."""
    if not ka:
        return kb
    if not kb:
        return ka
    out = []
    i = j = 0
    la, lb = len(ka), len(kb)
    while i < la and j < lb:
        va, ea = ka[i]
        vb, eb = kb[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append((va, ea))
            i += 1
        else:
            out.append((vb, eb))
            j += 1
    out.extend(ka[i:])
    out.extend(kb[j:])
    return tuple(out)


def add_terms(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for key, coeff in b.items():
        c = out.get(key)
        if c is None:
            out[key] = coeff
        else:
            c = c + coeff
            if c:
                out[key] = c
            else:
                del out[key]
    return out


def scale_terms(a, coeff):
    if not coeff:
        return {}
    return {key: c * coeff for key, c in a.items()}


def mul_terms(a, b):
    if not a or not b:
        return {}
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = merge_keys(ka, kb)
            c = out.get(key)
            if c is None:
                out[key] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[key] = c
                else:
                    del out[key]
    return out


def pow_terms(a, n):
    if n == 0:
        return {(): _ONE}
    out = a
    for _ in range(n - 1):
        out = mul_terms(out, a)
    return out


def substitute_terms(terms, var, target):
    """Replace `var` by the polynomial `target`, fully expanded.

    Powers of the target are cached because substitution of a linear form
    into a degree-d polynomial needs every power up to d.
    """
    out = {}
    powers = [{(): _ONE}, target]
    for key, coeff in terms.items():
        k = 0
        rest = []
        for v, e in key:
            if v == var:
                k = e
            else:
                rest.append((v, e))
        piece = {tuple(rest): coeff}
        if k:
            while len(powers) <= k:
                powers.append(mul_terms(powers[-1], target))
            piece = mul_terms(piece, powers[k])
        for pk, pc in piece.items():
            c = out.get(pk)
            if c is None:
                out[pk] = pc
            else:
                c = c + pc
                if c:
                    out[pk] = c
                else:
                    del out[pk]
    return out
