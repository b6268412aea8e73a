"""Pure-Python kernels.

Each function has a compiled twin in ``_ckernels`` with the same signature
and identical results; :mod:`sepiso.kernels` selects one at import time.
Point sets are int bitmasks (bit i = point i). Tables are flat row-major
lists of element indices.
"""

from __future__ import annotations


def sigma_closure_masks(masks, cap):
    """Close ``masks`` under binary union and intersection.

    Returns ``(sets, overflowed)``; sets are in discovery order. On overflow
    the list holds ``cap + 1`` entries and the search stops.
    """
    seen = set()
    order = []
    for m in masks:
        if m not in seen:
            seen.add(m)
            order.append(m)
            if len(order) > cap:
                return order, True
    i = 0
    while i < len(order):
        a = order[i]
        for j in range(i):
            b = order[j]
            for c in (a | b, a & b):
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    if len(order) > cap:
                        return order, True
        i += 1
    return order, False


def hom_law_violation(domain, src_mul, n_src, images, dst_mul, n_dst):
    """First ``(a, b)`` in ``domain`` x ``domain`` with img(ab) != img(a)img(b).

    ``images[i]`` is -1 outside the domain, so a domain that is not closed
    also reports a violation.
    """
    for a in domain:
        ia = images[a]
        row = a * n_src
        drow = ia * n_dst
        for b in domain:
            p = src_mul[row + b]
            if p < 0 or images[p] != dst_mul[drow + images[b]]:
                return (a, b)
    return None


def product_table(values, n_elems, n_points, gmul, n_g):
    """Pointwise product table of a set of G-valued functions.

    ``values`` holds ``n_elems`` rows of ``n_points`` group indices. Entry
    ``i * n_elems + j`` is the row index of row_i * row_j, or -1 if the
    product is not among the rows.
    """
    rows = [tuple(values[i * n_points:(i + 1) * n_points]) for i in range(n_elems)]
    index = {r: i for i, r in enumerate(rows)}
    out = [-1] * (n_elems * n_elems)
    for i, ri in enumerate(rows):
        base = i * n_elems
        prow = [v * n_g for v in ri]
        for j, rj in enumerate(rows):
            out[base + j] = index.get(tuple(gmul[p + v] for p, v in zip(prow, rj)), -1)
    return out


def separating_violation(coz_src, coz_img):
    """First ``(i, j)``, i < j, with disjoint source cozeros but overlapping image cozeros."""
    n = len(coz_src)
    for i in range(n):
        ci = coz_src[i]
        di = coz_img[i]
        if di == 0:
            continue
        for j in range(i + 1, n):
            if ci & coz_src[j] == 0 and di & coz_img[j]:
                return (i, j)
    return None


def singleton_supports(zmasks, nonnull, n_points):
    """Points x such that {x} is a support: no non-null element vanishes at x."""
    bad = 0
    for z, nn in zip(zmasks, nonnull):
        if nn:
            bad |= z
    return [x for x in range(n_points) if not (bad >> x) & 1]


def _max_disjoint(sc, d2):
    u = -1
    for s in sc:
        if s & d2 == 0:
            u = s if u < 0 else (u | s)
    return u


def controllable_violation(values, n_elems, n_points, coz, sz, sc):
    """First ``(f, D1, D2)`` for which no witnessing ``(U, g)`` exists.

    ``sz`` / ``sc`` are the closed zero / cozero families in report order.
    Since ``sc`` is closed under unions, a valid U exists for a given g iff
    D1 | coz(g) fits inside the largest member of ``sc`` missing D2.
    """
    umax = [_max_disjoint(sc, d2) for d2 in sz]
    rows = [tuple(values[i * n_points:(i + 1) * n_points]) for i in range(n_elems)]
    bits = [[x for x in range(n_points) if (d >> x) & 1] for d in sz]
    for f in range(n_elems):
        cf = coz[f]
        rf = rows[f]
        subs = [g for g in range(n_elems) if coz[g] & ~cf == 0]
        for d1, pts in zip(sz, bits):
            key = tuple(rf[x] for x in pts)
            needs = {d1 | coz[g] for g in subs if tuple(rows[g][x] for x in pts) == key}
            for d2, u in zip(sz, umax):
                if d1 & d2:
                    continue
                if u < 0 or not any(m & ~u == 0 for m in needs):
                    return (f, d1, d2)
    return None
