"""Dense linear algebra: Pade matrix exponential plus small wrappers.

``expm_pade`` follows the standard degree-{3,5,7,9,13} diagonal-Pade ladder
with scaling and squaring: pick the smallest degree whose 1-norm threshold
accommodates the argument, otherwise halve the matrix until the degree-13
threshold holds and square the result back up. ``expm_taylor`` is the slow
truncated-series route kept as a cross-check.
"""

import math

import numpy as np

__all__ = ["expm_pade", "expm_taylor", "matmul", "matvec", "axpy"]

# 1-norm thresholds for the double-precision Pade degree ladder.
_THETA = (
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
)

_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0,
        56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}


def _as_square_finite(a, scale):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    if not np.isfinite(scale):
        raise ValueError("scale must be finite")
    return np.asarray(a, dtype=complex) * scale


def _pade_approximant(b, degree):
    c = _COEFFS[degree]
    n = b.shape[0]
    ident = np.eye(n, dtype=complex)
    b2 = b @ b
    if degree == 13:
        b4 = b2 @ b2
        b6 = b2 @ b4
        u = b @ (b6 @ (c[13] * b6 + c[11] * b4 + c[9] * b2)
                 + c[7] * b6 + c[5] * b4 + c[3] * b2 + c[1] * ident)
        v = (b6 @ (c[12] * b6 + c[10] * b4 + c[8] * b2)
             + c[6] * b6 + c[4] * b4 + c[2] * b2 + c[0] * ident)
    else:
        # odd coefficients build u = b * sum c[2k+1] b^(2k), even ones v
        u = c[1] * ident
        v = c[0] * ident
        power = ident
        for k in range(1, degree // 2 + 1):
            power = power @ b2
            u = u + c[2 * k + 1] * power
            v = v + c[2 * k] * power
        u = b @ u
    return np.linalg.solve(v - u, v + u)


def expm_pade(a, scale=1.0):
    """Matrix exponential ``exp(scale * a)`` by Pade scaling-and-squaring."""
    b = _as_square_finite(a, scale)
    norm = np.linalg.norm(b, 1) if b.size else 0.0
    for degree, theta in _THETA[:-1]:
        if norm <= theta:
            return _pade_approximant(b, degree)
    theta13 = _THETA[-1][1]
    squarings = max(0, math.ceil(math.log2(norm / theta13))) if norm > theta13 else 0
    f = _pade_approximant(b / (2.0 ** squarings), 13)
    for _ in range(squarings):
        f = f @ f
    return f


def expm_taylor(a, scale=1.0, terms=60):
    """Matrix exponential via a scaled truncated Taylor series.

    Halves the argument until its 1-norm is at most one, sums ``terms``
    series terms, squares back. Slow; used to cross-check expm_pade.
    """
    b = _as_square_finite(a, scale)
    norm = np.linalg.norm(b, 1) if b.size else 0.0
    squarings = max(0, math.ceil(math.log2(norm))) if norm > 1.0 else 0
    b = b / (2.0 ** squarings)
    n = b.shape[0]
    f = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, terms):
        term = term @ b / k
        f = f + term
    for _ in range(squarings):
        f = f @ f
    return f


def matmul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def matvec(a, x):
    a = np.asarray(a)
    x = np.asarray(x)
    if a.ndim != 2 or x.ndim != 1 or a.shape[1] != x.shape[0]:
        raise ValueError(f"cannot apply shape {a.shape} to vector {x.shape}")
    return a @ x


def axpy(alpha, x, y):
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    return alpha * x + y
