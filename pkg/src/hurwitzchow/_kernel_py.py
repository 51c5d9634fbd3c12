"""Pure-Python sparse-term kernel.

Terms of a graded class are stored as ``{packed_key: coeff}`` where the
packed key is a single Python int carrying every generator exponent in a
6-bit field plus two 8-bit bookkeeping fields (auxiliary degree, total
degree) above them.  Multiplying monomials is then one integer addition and
both truncation filters are shifts, which keeps this loop cheap even before
the compiled kernel takes over.

``aux_cut < 0`` disables the auxiliary filter.  Coefficients are any objects
supporting ``+``, ``*`` and truthiness; zero results are swept out before
returning.  The compiled twin in ``_kernel.pyx`` implements the exact same
contract.
"""

KERNEL_KIND = "python"

_AUX_MASK = 0xFF
_EXP_MASK = 0x3F


def mul_terms(A, B, shift_deg, shift_aux, cut, aux_cut):
    """Raw product of two term dicts with degree filtering (no reduction)."""
    if len(A) > len(B):
        A, B = B, A
    out = {}
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


def shift_terms(A, key, coeff, shift_deg, shift_aux, cut, aux_cut):
    """A * (coeff * monomial(key)), filtered."""
    out = {}
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


def scale_terms(A, coeff):
    """A * coeff for a nonzero scalar coeff."""
    out = {}
    for k, ca in A.items():
        c = ca * coeff
        if c:
            out[k] = c
    return out


def add_terms(A, B):
    """A + B."""
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


def reduce_terms(terms, rules, shift_deg, shift_aux, cut, aux_cut):
    """Normal form under the ring's rewrite rules.

    ``rules`` is a tuple of ``(shift_v, power, sub_key, rhs_terms)`` sorted by
    generator index: whenever the exponent field at ``shift_v`` reaches
    ``power``, the monomial is rewritten through ``rhs_terms`` (its key delta
    pre-packed in ``sub_key``).  Rules are homogeneous, so total degree is
    stable; the auxiliary degree can grow, hence the filter re-check.
    """
    if not rules:
        return terms
    out = {}
    work = terms
    while work:
        nxt = {}
        for k, c in work.items():
            for sv, power, sub_key, rhs in rules:
                if ((k >> sv) & _EXP_MASK) >= power:
                    base = k - sub_key
                    for k2, c2 in rhs.items():
                        kk = base + k2
                        if aux_cut >= 0 and ((kk >> shift_aux) & _AUX_MASK) > aux_cut:
                            continue
                        cc = c * c2
                        prev = nxt.get(kk)
                        nxt[kk] = cc if prev is None else prev + cc
                    break
            else:
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
        work = {k: c for k, c in nxt.items() if c}
    return {k: c for k, c in out.items() if c}
