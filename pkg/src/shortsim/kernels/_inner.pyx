# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the training kernels."""

import numpy as np

BACKEND = "compiled"


def batch_objective_grad(w1, w2, signs, factors, double reg_lambda):
    """See shortsim.kernels._numpy.batch_objective_grad for the contract."""
    cdef double[:, :, ::1] v1 = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[:, :, ::1] v2 = np.ascontiguousarray(w2, dtype=np.float64)
    cdef double[::1] s = np.ascontiguousarray(signs, dtype=np.float64)
    cdef double[::1] f = np.ascontiguousarray(factors, dtype=np.float64)

    cdef Py_ssize_t batch = v1.shape[0]
    cdef Py_ssize_t n = v1.shape[1]
    cdef Py_ssize_t dim = v1.shape[2]

    grad_arr = np.zeros(n, dtype=np.float64)
    rep_arr = np.empty(dim, dtype=np.float64)
    cdef double[::1] grad = grad_arr
    cdef double[::1] rep = rep_arr

    cdef Py_ssize_t b, j, k
    cdef double fj, acc, dist, coef
    cdef double data_obj = 0.0
    cdef double reg = 0.0

    with nogil:
        for b in range(batch):
            for k in range(dim):
                rep[k] = 0.0
            for j in range(n):
                fj = f[j]
                for k in range(dim):
                    rep[k] += fj * (v1[b, j, k] - v2[b, j, k])
            dist = 0.0
            for k in range(dim):
                rep[k] /= n
                dist += rep[k] * rep[k]
            data_obj += s[b] * dist
            coef = 2.0 * s[b] / n
            for j in range(n):
                acc = 0.0
                for k in range(dim):
                    acc += rep[k] * (v1[b, j, k] - v2[b, j, k])
                grad[j] += coef * acc
        for j in range(n):
            reg += f[j] * f[j]
            grad[j] = grad[j] / batch + 2.0 * reg_lambda * f[j]

    return data_obj / batch + reg_lambda * reg, grad_arr


def weighted_mean_distances(w1, w2, factors):
    """See shortsim.kernels._numpy.weighted_mean_distances for the contract."""
    cdef double[:, :, ::1] v1 = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[:, :, ::1] v2 = np.ascontiguousarray(w2, dtype=np.float64)
    cdef double[::1] f = np.ascontiguousarray(factors, dtype=np.float64)

    cdef Py_ssize_t batch = v1.shape[0]
    cdef Py_ssize_t n = v1.shape[1]
    cdef Py_ssize_t dim = v1.shape[2]

    out_arr = np.empty(batch, dtype=np.float64)
    rep_arr = np.empty(dim, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] rep = rep_arr

    cdef Py_ssize_t b, j, k
    cdef double fj, dist

    with nogil:
        for b in range(batch):
            for k in range(dim):
                rep[k] = 0.0
            for j in range(n):
                fj = f[j]
                for k in range(dim):
                    rep[k] += fj * (v1[b, j, k] - v2[b, j, k])
            dist = 0.0
            for k in range(dim):
                rep[k] /= n
                dist += rep[k] * rep[k]
            out[b] = dist

    return out_arr
