"""Dense tensor kernels for Kronecker-form operators.

A state tensor ``u`` has shape ``(n_1, ..., n_d)`` and ``vec`` stacks its
entries first-index-fastest (column-major). Under that convention the mode
products implemented here satisfy, for d = 2,

    vec(mu_mode_product(u, m, 0)) == kron(eye(n_2), m) @ vec(u)
    vec(tucker_apply(u, [m1, m2])) == kron(m2, m1) @ vec(u)

and ``kron_sum_apply`` realizes the action of the Kronecker sum
``sum_mu I (x) ... (x) a_mu (x) ... (x) I`` without forming it. The cost of
every routine is one dense matrix product per direction, i.e.
O((n_1 + ... + n_d) * N) for N tensor entries.
"""

import numpy as np

__all__ = [
    "vec",
    "unvec",
    "mu_mode_product",
    "tucker_apply",
    "kron_sum_apply",
    "assemble_kron_sum",
]


def vec(u):
    """Flatten a tensor column-major (first index fastest)."""
    return np.asarray(u).reshape(-1, order="F")


def unvec(x, shape):
    """Inverse of :func:`vec` for the given shape."""
    return np.asarray(x).reshape(tuple(shape), order="F")


def mu_mode_product(u, mat, axis):
    """Apply ``mat`` along direction ``axis`` of tensor ``u``.

    Parameters
    ----------
    u : array_like, shape (n_1, ..., n_d)
    mat : array_like, shape (m, n_axis)
    axis : int
        Zero-based direction index.
    """
    u = np.asarray(u)
    mat = np.asarray(mat)
    if mat.ndim != 2:
        raise ValueError(f"factor must be a matrix, got ndim={mat.ndim}")
    if not 0 <= axis < u.ndim:
        raise ValueError(f"axis {axis} out of range for order-{u.ndim} tensor")
    if mat.shape[1] != u.shape[axis]:
        raise ValueError(
            f"factor columns {mat.shape[1]} != extent {u.shape[axis]} "
            f"of axis {axis}")
    # tensordot lowers this to a single gemm over the remaining directions
    return np.moveaxis(np.tensordot(mat, u, axes=(1, axis)), 0, axis)


def tucker_apply(u, mats):
    """Apply one matrix per direction: ``u x_1 m_1 x_2 m_2 ...``."""
    u = np.asarray(u)
    if len(mats) != u.ndim:
        raise ValueError(f"need {u.ndim} factors, got {len(mats)}")
    for axis, m in enumerate(mats):
        u = mu_mode_product(u, m, axis)
    return u


def kron_sum_apply(u, mats):
    """Action of the Kronecker sum of ``mats`` on ``u``.

    Equivalent to ``assemble_kron_sum(mats) @ vec(u)`` reshaped back, but
    never forms the big matrix.
    """
    u = np.asarray(u)
    if len(mats) != u.ndim:
        raise ValueError(f"need {u.ndim} factors, got {len(mats)}")
    out = None
    for axis, m in enumerate(mats):
        term = mu_mode_product(u, m, axis)
        out = term if out is None else out + term
    return out


def assemble_kron_sum(mats, cap=4096):
    """Explicit dense Kronecker-sum matrix. Test oracle only.

    Refuses to build anything larger than ``cap`` rows so the O(N^2)
    footprint cannot sneak into production paths.
    """
    sizes = []
    for m in mats:
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("kron-sum factors must be square matrices")
        sizes.append(m.shape[0])
    total = int(np.prod(sizes))
    if total > cap:
        raise ValueError(f"refusing to assemble {total} x {total} matrix "
                         f"(cap={cap})")
    out = np.zeros((total, total), dtype=complex)
    for axis, m in enumerate(mats):
        factor = np.eye(1)
        # column-major vec puts direction 0 in the rightmost kron slot
        for k, n in enumerate(sizes):
            block = np.asarray(m) if k == axis else np.eye(n)
            factor = np.kron(block, factor)
        out += factor
    return out
