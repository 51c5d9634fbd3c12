# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse-term kernel; same contract as ``_kernel_py``.

Keys stay arbitrary-precision Python ints (the packed exponent layout can
exceed 64 bits), so the win over the fallback comes from removing bytecode
dispatch in the pair loops, not from unboxing."""

KERNEL_KIND = "compiled"

cdef object _AUX_MASK = 0xFF
cdef object _EXP_MASK = 0x3F


def mul_terms(dict A, dict B, object shift_deg, object shift_aux, object cut, long aux_cut):
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, c, prev
    if len(A) > len(B):
        A, B = B, A
    if aux_cut < 0:
        for ka, ca in A.items():
            for kb, cb in B.items():
                k = ka + kb
                if (k >> shift_deg) > cut:
                    continue
                c = ca * cb
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
    else:
        for ka, ca in A.items():
            for kb, cb in B.items():
                k = ka + kb
                if (k >> shift_deg) > cut or ((k >> shift_aux) & _AUX_MASK) > aux_cut:
                    continue
                c = ca * cb
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
    return {k: c for k, c in out.items() if c}


def shift_terms(dict A, object key, object coeff, object shift_deg, object shift_aux, object cut, long aux_cut):
    cdef dict out = {}
    cdef object ka, ca, k, c
    for ka, ca in A.items():
        k = ka + key
        if (k >> shift_deg) > cut:
            continue
        if aux_cut >= 0 and ((k >> shift_aux) & _AUX_MASK) > aux_cut:
            continue
        c = ca * coeff
        if c:
            out[k] = c
    return out


def scale_terms(dict A, object coeff):
    cdef dict out = {}
    cdef object k, ca, c
    for k, ca in A.items():
        c = ca * coeff
        if c:
            out[k] = c
    return out


def add_terms(dict A, dict B):
    cdef dict out
    cdef object k, cb, prev, c
    if not A:
        return dict(B)
    if not B:
        return dict(A)
    out = dict(A)
    for k, cb in B.items():
        prev = out.get(k)
        if prev is None:
            out[k] = cb
        else:
            c = prev + cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def reduce_terms(dict terms, tuple rules, object shift_deg, object shift_aux, object cut, long aux_cut):
    cdef dict out = {}
    cdef dict work = terms
    cdef dict nxt
    cdef dict rhs
    cdef object k, c, k2, c2, kk, cc, prev, base
    cdef object sv, power, sub_key
    cdef tuple rule
    cdef bint matched
    if not rules:
        return terms
    while work:
        nxt = {}
        for k, c in work.items():
            matched = False
            for rule in rules:
                sv = rule[0]
                power = rule[1]
                if ((k >> sv) & _EXP_MASK) >= power:
                    sub_key = rule[2]
                    rhs = rule[3]
                    base = k - sub_key
                    for k2, c2 in rhs.items():
                        kk = base + k2
                        if aux_cut >= 0 and ((kk >> shift_aux) & _AUX_MASK) > aux_cut:
                            continue
                        cc = c * c2
                        prev = nxt.get(kk)
                        nxt[kk] = cc if prev is None else prev + cc
                    matched = True
                    break
            if not matched:
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
        work = {k: c for k, c in nxt.items() if c}
    return {k: c for k, c in out.items() if c}
