# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row-reduction kernels; same contracts as ``_kernels_py``.

Rational matrices whose entries are all gmpy2 ``mpq`` are reduced directly
on GMP ``mpq_t`` values; anything else goes through the generic object loop.
"""
from libc.stdlib cimport malloc, free

import gmpy2 as _gmpy2
from gmpy2 cimport import_gmpy2, mpq, MPQ_Check, GMPy_MPQ_New, mpq_srcptr, mpq_ptr, __mpq_struct

import_gmpy2()


cdef extern from "gmp.h":
    void mpq_init(mpq_ptr x)
    void mpq_clear(mpq_ptr x)
    void mpq_set(mpq_ptr rop, mpq_srcptr op)
    void mpq_mul(mpq_ptr rop, mpq_srcptr a, mpq_srcptr b)
    void mpq_sub(mpq_ptr rop, mpq_srcptr a, mpq_srcptr b)
    void mpq_inv(mpq_ptr rop, mpq_srcptr op)
    void mpq_set_ui(mpq_ptr rop, unsigned long n, unsigned long d)
    int mpq_sgn(mpq_srcptr op)


def rref_inplace(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t r, j
    cdef list row
    for r in range(len(rows)):
        row = <list>rows[r]
        for j in range(ncols):
            if not MPQ_Check(row[j]):
                return _rref_objects(rows, ncols)
    return _rref_mpq(rows, ncols)


cdef list _rref_mpq(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t total = nrows * ncols
    cdef __mpq_struct *data = <__mpq_struct *>malloc(max(total, 1) * sizeof(__mpq_struct))
    cdef __mpq_struct **rp = <__mpq_struct **>malloc(max(nrows, 1) * sizeof(__mpq_struct *))
    cdef Py_ssize_t *nz = <Py_ssize_t *>malloc(max(ncols, 1) * sizeof(Py_ssize_t))
    cdef __mpq_struct tmp, inv
    cdef __mpq_struct *prow
    cdef __mpq_struct *row
    cdef __mpq_struct *swap
    cdef Py_ssize_t rank = 0, c, r, pr, j, k, nnz, i
    cdef list pivots = []
    cdef list out
    cdef mpq val
    mpq_init(&tmp)
    mpq_init(&inv)
    try:
        for r in range(nrows):
            rp[r] = data + r * ncols
            for j in range(ncols):
                mpq_init(rp[r] + j)
                val = <mpq>(<list>rows[r])[j]
                mpq_set(rp[r] + j, val.q)
        for c in range(ncols):
            if rank == nrows:
                break
            pr = -1
            for r in range(rank, nrows):
                if mpq_sgn(rp[r] + c) != 0:
                    pr = r
                    break
            if pr < 0:
                continue
            swap = rp[rank]
            rp[rank] = rp[pr]
            rp[pr] = swap
            prow = rp[rank]
            mpq_inv(&inv, prow + c)
            nnz = 0
            for j in range(c + 1, ncols):
                if mpq_sgn(prow + j) != 0:
                    mpq_mul(prow + j, prow + j, &inv)
                    nz[nnz] = j
                    nnz += 1
            mpq_set_ui(prow + c, 1, 1)
            for r in range(nrows):
                if r == rank:
                    continue
                row = rp[r]
                if mpq_sgn(row + c) == 0:
                    continue
                for k in range(nnz):
                    j = nz[k]
                    mpq_mul(&tmp, row + c, prow + j)
                    mpq_sub(row + j, row + j, &tmp)
                mpq_set_ui(row + c, 0, 1)
            pivots.append(c)
            rank += 1
        for r in range(rank):
            out = [None] * ncols
            for j in range(ncols):
                val = GMPy_MPQ_New(NULL)
                mpq_set(val.q, rp[r] + j)
                out[j] = val
            rows[r] = out
        del rows[rank:]
    finally:
        for i in range(total):
            mpq_clear(data + i)
        mpq_clear(&tmp)
        mpq_clear(&inv)
        free(data)
        free(rp)
        free(nz)
    return pivots


def _rref_objects(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t rank = 0, c, r, pr, j, k, nnz
    cdef list prow, row, nz
    cdef object f, inv, one = 1
    pivots = []
    for c in range(ncols):
        if rank == nrows:
            break
        pr = -1
        for r in range(rank, nrows):
            if (<list>rows[r])[c]:
                pr = r
                break
        if pr < 0:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        prow = <list>rows[rank]
        inv = one / prow[c]
        if inv != one:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        nnz = len(nz)
        for r in range(nrows):
            if r == rank:
                continue
            row = <list>rows[r]
            f = row[c]
            if f:
                row[c] = row[c] - f
                for k in range(nnz):
                    j = <Py_ssize_t>nz[k]
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        rank += 1
    del rows[rank:]
    return pivots


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(list rows, Py_ssize_t ncols, long long p):
    if p >= (1LL << 31):
        from ._kernels_py import rref_modp as slow
        return slow(rows, ncols, p)
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *m = <long long *>malloc(max(nrows * ncols, 1) * sizeof(long long))
    cdef Py_ssize_t rank = 0, c, r, pr, j
    cdef long long f, inv, tmp
    cdef long long *a
    cdef long long *b
    pivots = []
    try:
        for r in range(nrows):
            row = rows[r]
            for j in range(ncols):
                tmp = row[j] % p
                m[r * ncols + j] = tmp
        for c in range(ncols):
            if rank == nrows:
                break
            pr = -1
            for r in range(rank, nrows):
                if m[r * ncols + c] != 0:
                    pr = r
                    break
            if pr < 0:
                continue
            if pr != rank:
                a = m + pr * ncols
                b = m + rank * ncols
                for j in range(ncols):
                    tmp = a[j]
                    a[j] = b[j]
                    b[j] = tmp
            b = m + rank * ncols
            inv = _inv_mod(b[c], p)
            for j in range(c, ncols):
                b[j] = b[j] * inv % p
            for r in range(nrows):
                if r == rank:
                    continue
                a = m + r * ncols
                f = a[c]
                if f != 0:
                    for j in range(c, ncols):
                        if b[j] != 0:
                            a[j] = (a[j] - f * b[j]) % p
                            if a[j] < 0:
                                a[j] += p
            pivots.append(c)
            rank += 1
        rows[:] = [[m[r * ncols + j] for j in range(ncols)] for r in range(rank)]
    finally:
        free(m)
    return pivots


def struct_mul(list xs, list ys, dict rows, list out):
    cdef Py_ssize_t nx = len(xs), ny = len(ys), p, q, m, nt, k
    cdef object a, b, ab, row, t, pair
    cdef tuple xt, yt
    for p in range(nx):
        xt = <tuple>xs[p]
        row = rows.get(xt[0])
        if row is None:
            continue
        a = xt[1]
        for q in range(ny):
            yt = <tuple>ys[q]
            t = (<dict>row).get(yt[0])
            if t is None:
                continue
            ab = a * yt[1]
            nt = len(<list>t)
            for m in range(nt):
                pair = (<list>t)[m]
                k = (<tuple>pair)[0]
                out[k] = out[k] + ab * (<tuple>pair)[1]
    return out
