# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same signatures and results as ``_pykernels``."""

from libc.stdlib cimport malloc, calloc, free, qsort

from sepiso import _pykernels

ctypedef unsigned long long mask_t

# Direct-address membership table limit for sigma closure (2**22 bytes).
cdef int TABLE_BITS = 22


cdef mask_t* _masks(list seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef mask_t* out = <mask_t*>malloc((n + 1) * sizeof(mask_t))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = <mask_t>seq[i]
    return out


cdef long* _ints(list seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef long* out = <long*>malloc((n + 1) * sizeof(long))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = <long>seq[i]
    return out


def sigma_closure_masks(masks, long cap):
    masks = list(masks)
    cdef int width = 0
    for m in masks:
        if m < 0:
            return _pykernels.sigma_closure_masks(masks, cap)
        width = max(width, (<object>m).bit_length())
    if width > TABLE_BITS:
        return _pykernels.sigma_closure_masks(masks, cap)

    cdef Py_ssize_t size = (<Py_ssize_t>1) << width
    cdef unsigned char* seen = <unsigned char*>calloc(size, 1)
    cdef mask_t* order = <mask_t*>malloc((cap + 2) * sizeof(mask_t))
    if seen == NULL or order == NULL:
        free(seen)
        free(order)
        raise MemoryError()
    cdef Py_ssize_t count = 0, i, j
    cdef mask_t a, c
    cdef int k
    cdef bint over = False
    try:
        for m in masks:
            a = <mask_t>m
            if not seen[a]:
                seen[a] = 1
                if count > cap:
                    over = True
                    break
                order[count] = a
                count += 1
        if count > cap:
            over = True
        i = 0
        while not over and i < count:
            a = order[i]
            for j in range(i):
                for k in range(2):
                    c = (a | order[j]) if k == 0 else (a & order[j])
                    if not seen[c]:
                        seen[c] = 1
                        order[count] = c
                        count += 1
                        if count > cap:
                            over = True
                            break
                if over:
                    break
            i += 1
        return [order[i] for i in range(count)], bool(over)
    finally:
        free(seen)
        free(order)


def hom_law_violation(domain, src_mul, long n_src, images, dst_mul, long n_dst):
    cdef long* dom = _ints(list(domain))
    cdef long* smul = _ints(list(src_mul))
    cdef long* img = _ints(list(images))
    cdef long* dmul = _ints(list(dst_mul))
    cdef Py_ssize_t nd = len(domain), i, j
    cdef long a, b, p
    try:
        for i in range(nd):
            a = dom[i]
            for j in range(nd):
                b = dom[j]
                p = smul[a * n_src + b]
                if p < 0 or img[p] != dmul[img[a] * n_dst + img[b]]:
                    return (a, b)
        return None
    finally:
        free(dom)
        free(smul)
        free(img)
        free(dmul)


cdef struct keyed:
    mask_t key
    long index


cdef int _cmp_keyed(const void* x, const void* y) noexcept nogil:
    cdef mask_t a = (<keyed*>x).key
    cdef mask_t b = (<keyed*>y).key
    return (a > b) - (a < b)


cdef long _lookup(keyed* arr, long n, mask_t key) noexcept nogil:
    cdef long lo = 0, hi = n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if arr[mid].key == key:
            return arr[mid].index
        if arr[mid].key < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


def product_table(values, long n_elems, long n_points, gmul, long n_g):
    # Row keys are mixed-radix integers; they must fit in 64 bits.
    if n_g > 1 and (<object>n_g) ** n_points >= (<object>1) << 63:
        return _pykernels.product_table(values, n_elems, n_points, gmul, n_g)
    cdef long* vals = _ints(list(values))
    cdef long* gm = _ints(list(gmul))
    cdef keyed* arr = <keyed*>malloc((n_elems + 1) * sizeof(keyed))
    cdef long* out = <long*>malloc((n_elems * n_elems + 1) * sizeof(long))
    cdef long i, j, x
    cdef mask_t key
    try:
        if arr == NULL or out == NULL:
            raise MemoryError()
        for i in range(n_elems):
            key = 0
            for x in range(n_points):
                key = key * n_g + <mask_t>vals[i * n_points + x]
            arr[i].key = key
            arr[i].index = i
        qsort(arr, n_elems, sizeof(keyed), _cmp_keyed)
        for i in range(n_elems):
            for j in range(n_elems):
                key = 0
                for x in range(n_points):
                    key = key * n_g + <mask_t>gm[vals[i * n_points + x] * n_g + vals[j * n_points + x]]
                out[i * n_elems + j] = _lookup(arr, n_elems, key)
        return [out[i] for i in range(n_elems * n_elems)]
    finally:
        free(vals)
        free(gm)
        free(arr)
        free(out)


def separating_violation(coz_src, coz_img):
    cdef Py_ssize_t n = len(coz_src), i, j
    for m in coz_src:
        if m >= (<object>1) << 63:
            return _pykernels.separating_violation(coz_src, coz_img)
    for m in coz_img:
        if m >= (<object>1) << 63:
            return _pykernels.separating_violation(coz_src, coz_img)
    cdef mask_t* cs = _masks(list(coz_src))
    cdef mask_t* ci = _masks(list(coz_img))
    try:
        for i in range(n):
            if ci[i] == 0:
                continue
            for j in range(i + 1, n):
                if (cs[i] & cs[j]) == 0 and (ci[i] & ci[j]) != 0:
                    return (i, j)
        return None
    finally:
        free(cs)
        free(ci)


def singleton_supports(zmasks, nonnull, long n_points):
    if n_points > 63:
        return _pykernels.singleton_supports(zmasks, nonnull, n_points)
    cdef mask_t bad = 0
    for z, nn in zip(zmasks, nonnull):
        if nn:
            bad |= <mask_t>z
    cdef long x
    return [x for x in range(n_points) if not ((bad >> x) & 1)]


def controllable_violation(values, long n_elems, long n_points, coz, sz, sc):
    if n_points > 63:
        return _pykernels.controllable_violation(values, n_elems, n_points, coz, sz, sc)
    cdef long* vals = _ints(list(values))
    cdef mask_t* cz = _masks(list(coz))
    cdef mask_t* zs = _masks(list(sz))
    cdef mask_t* cs = _masks(list(sc))
    cdef Py_ssize_t nz = len(sz), nc = len(sc)
    cdef mask_t* umax = <mask_t*>malloc((nz + 1) * sizeof(mask_t))
    cdef unsigned char* has_u = <unsigned char*>calloc(nz + 1, 1)
    cdef mask_t* needs = <mask_t*>malloc((n_elems + 1) * sizeof(mask_t))
    cdef long f, g, x, nneed, t
    cdef Py_ssize_t k, q
    cdef mask_t cf, d1, d2, u
    cdef bint agree, ok
    try:
        if umax == NULL or has_u == NULL or needs == NULL:
            raise MemoryError()
        for k in range(nz):
            umax[k] = 0
            for q in range(nc):
                if (cs[q] & zs[k]) == 0:
                    umax[k] |= cs[q]
                    has_u[k] = 1
        for f in range(n_elems):
            cf = cz[f]
            for k in range(nz):
                d1 = zs[k]
                nneed = 0
                for g in range(n_elems):
                    if cz[g] & ~cf:
                        continue
                    agree = True
                    for x in range(n_points):
                        if (d1 >> x) & 1 and vals[g * n_points + x] != vals[f * n_points + x]:
                            agree = False
                            break
                    if agree:
                        needs[nneed] = d1 | cz[g]
                        nneed += 1
                for q in range(nz):
                    d2 = zs[q]
                    if d1 & d2:
                        continue
                    ok = False
                    if has_u[q]:
                        u = umax[q]
                        for t in range(nneed):
                            if (needs[t] & ~u) == 0:
                                ok = True
                                break
                    if not ok:
                        return (f, int(d1), int(d2))
        return None
    finally:
        free(vals)
        free(cz)
        free(zs)
        free(cs)
        free(umax)
        free(has_u)
        free(needs)
