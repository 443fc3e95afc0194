# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial kernels.

Same contract as _polypure: polynomials are dicts from sorted
(variable, exponent) tuples to nonzero Fraction coefficients.  The
coefficients stay exact Python Fractions; the win over the pure kernel
is in loop and tuple handling overhead.
"""

from fractions import Fraction

cdef object _ONE = Fraction(1)


cpdef tuple merge_keys(tuple ka, tuple kb):
    if not ka:
        return kb
    if not kb:
        return ka
    cdef Py_ssize_t i = 0, j = 0, la = len(ka), lb = len(kb)
    cdef long va, ea, vb, eb
    out = []
    while i < la and j < lb:
        va = <long> (<tuple> ka[i])[0]
        ea = <long> (<tuple> ka[i])[1]
        vb = <long> (<tuple> kb[j])[0]
        eb = <long> (<tuple> kb[j])[1]
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
    while i < la:
        out.append(ka[i])
        i += 1
    while j < lb:
        out.append(kb[j])
        j += 1
    return tuple(out)


cpdef dict add_terms(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
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


cpdef dict scale_terms(dict a, coeff):
    if not coeff:
        return {}
    cdef dict out = {}
    for key, c in a.items():
        out[key] = c * coeff
    return out


cpdef dict mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    cdef dict out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = merge_keys(<tuple> ka, <tuple> kb)
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


cpdef dict pow_terms(dict a, long n):
    if n == 0:
        return {(): _ONE}
    cdef dict out = a
    cdef long i
    for i in range(n - 1):
        out = mul_terms(out, a)
    return out


cpdef dict substitute_terms(dict terms, long var, dict target):
    cdef dict out = {}
    cdef list powers = [{(): _ONE}, target]
    cdef long k, v, e
    for key, coeff in terms.items():
        k = 0
        rest = []
        for ve in <tuple> key:
            v = <long> (<tuple> ve)[0]
            e = <long> (<tuple> ve)[1]
            if v == var:
                k = e
            else:
                rest.append(ve)
        piece = {tuple(rest): coeff}
        if k:
            while len(powers) <= k:
                powers.append(mul_terms(<dict> powers[len(powers) - 1], target))
            piece = mul_terms(<dict> piece, <dict> powers[k])
        for pk, pc in (<dict> piece).items():
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
