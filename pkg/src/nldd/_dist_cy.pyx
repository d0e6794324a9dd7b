# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance kernels for the quadratic pairwise scans."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def sq_dists(cnp.ndarray[cnp.float64_t, ndim=1] x,
             cnp.ndarray[cnp.float64_t, ndim=2] mat):
    cdef Py_ssize_t n = mat.shape[0]
    cdef Py_ssize_t d = mat.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef Py_ssize_t i, j
    cdef double acc, diff
    for i in range(n):
        acc = 0.0
        for j in range(d):
            diff = mat[i, j] - x[j]
            acc += diff * diff
        out[i] = acc
    return out


def pairwise_sq_dists(cnp.ndarray[cnp.float64_t, ndim=2] a,
                      cnp.ndarray[cnp.float64_t, ndim=2] b):
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((na, nb))
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    for i in range(na):
        for j in range(nb):
            acc = 0.0
            for k in range(d):
                diff = a[i, k] - b[j, k]
                acc += diff * diff
            out[i, j] = acc
    return out
