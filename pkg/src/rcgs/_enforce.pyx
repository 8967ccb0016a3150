# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enforce kernel; see ``_enforce_py`` for the data layout."""

from libc.stdint cimport int64_t, uint8_t


def enforce_scan(const int64_t[::1] coal, Py_ssize_t n_coal,
                 const int64_t[::1] comp, Py_ssize_t n_comp,
                 const int64_t[::1] role_start, const int64_t[::1] role_pop,
                 const int64_t[::1] role_radix, const int64_t[::1] mc,
                 Py_ssize_t mc_stride, const int64_t[::1] targets,
                 const uint8_t[::1] allowed, bint short_circuit):
    """Return ``(found, pairs_inspected)`` for the enforce double loop."""
    cdef Py_ssize_t n_roles = role_pop.shape[0]
    cdef Py_ssize_t width = role_start[n_roles]
    cdef Py_ssize_t i, j, r, k, lo, a, base_f, base_g, col
    cdef int64_t rank, rem, sub, v
    cdef int64_t inspected = 0
    cdef bint found = False, ok
    with nogil:
        for i in range(n_coal):
            base_f = i * width
            ok = True
            for j in range(n_comp):
                base_g = j * width
                rank = 0
                for r in range(n_roles):
                    lo = role_start[r]
                    a = role_start[r + 1] - lo
                    rem = role_pop[r]
                    sub = 0
                    for k in range(a - 1):
                        v = coal[base_f + lo + k] + comp[base_g + lo + k]
                        col = a - k
                        sub += mc[rem * mc_stride + col] - mc[(rem - v) * mc_stride + col]
                        rem -= v
                    rank = rank * role_radix[r] + sub
                inspected += 1
                if not allowed[targets[rank]]:
                    ok = False
                    if short_circuit:
                        break
            if ok:
                found = True
                if short_circuit:
                    break
    return found, inspected
