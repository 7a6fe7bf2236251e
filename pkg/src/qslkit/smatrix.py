"""Exact linear algebra for 2x2 complex matrices.

Singular values and Schatten norms are computed from the closed-form
eigenvalues of M^dag M (quadratic formula) rather than an iterative
factorization, so results are deterministic to the last bit and suitable
for golden-value tests.
"""

from __future__ import annotations

import math

import numpy as np

# Density matrices produced by the analytic model are exact up to rounding,
# so the validity tolerances only need to absorb floating-point noise.
HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-12


def as_matrix2(m) -> np.ndarray:
    """Coerce to a finite 2x2 complex ndarray, raising ValueError otherwise."""
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix has non-finite entries")
    return arr


def singular_values(m) -> tuple[float, float]:
    """Singular values of a 2x2 complex matrix, in descending order.

    Uses the closed-form eigenvalues of M^dag M: with t = tr(M^dag M) and
    p = |det M|^2, the eigenvalues are (t +- sqrt(t^2 - 4p)) / 2.  The
    smaller one is recovered as p / e_max for numerical stability.
    """
    a = as_matrix2(m)
    g00 = abs(a[0, 0]) ** 2 + abs(a[1, 0]) ** 2
    g11 = abs(a[0, 1]) ** 2 + abs(a[1, 1]) ** 2
    t = g00 + g11
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    p = abs(det) ** 2
    disc = max(t * t - 4.0 * p, 0.0)
    e_max = 0.5 * (t + math.sqrt(disc))
    e_min = p / e_max if e_max > 0.0 else 0.0
    return math.sqrt(e_max), math.sqrt(e_min)


def schatten_norm(m, p) -> float:
    """Schatten p-norm of a 2x2 complex matrix, p in {1, 2, inf}."""
    s1, s2 = singular_values(m)
    if p == 1:
        return s1 + s2
    if p == 2:
        return math.hypot(s1, s2)
    if p == math.inf:
        return s1
    raise ValueError(f"unsupported Schatten order p={p!r}; use 1, 2 or math.inf")


class DensityMatrix2:
    """2x2 density matrix of the qubit.

    Basis convention: index 1 is the excited state |e>, index 0 the ground
    state |g>.  Construction validates Hermiticity, unit trace and
    positivity; the stored array is immutable.
    """

    __slots__ = ("_m",)

    def __init__(self, entries):
        m = as_matrix2(entries)
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITICITY_ATOL):
            raise ValueError("density matrix is not Hermitian within 1e-12")
        tr = m[0, 0].real + m[1, 1].real
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix trace {tr} differs from 1 beyond 1e-12")
        # Hermitian 2x2 eigenvalues: mean +- radius.
        mean = 0.5 * tr
        radius = math.hypot(0.5 * (m[1, 1].real - m[0, 0].real), abs(m[1, 0]))
        if mean - radius < EIGENVALUE_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {mean - radius} < -1e-12")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        """The underlying (read-only) 2x2 complex array."""
        return self._m

    @property
    def excited_population(self) -> float:
        return self._m[1, 1].real

    @property
    def coherence(self) -> complex:
        """The |e><g| matrix element rho_eg."""
        return complex(self._m[1, 0])

    @classmethod
    def excited(cls) -> "DensityMatrix2":
        return cls([[0.0, 0.0], [0.0, 1.0]])

    @classmethod
    def ground(cls) -> "DensityMatrix2":
        return cls([[1.0, 0.0], [0.0, 0.0]])

    @classmethod
    def diagonal(cls, excited_population: float) -> "DensityMatrix2":
        return cls([[1.0 - excited_population, 0.0], [0.0, excited_population]])

    def __repr__(self) -> str:
        return f"DensityMatrix2({self._m.tolist()!r})"


def trace_distance_measure(a: DensityMatrix2, b: DensityMatrix2) -> float:
    """Similarity measure 1 - (1/4) * ||a - b||_1^2.

    Equals 1 iff a == b and 0 for orthogonal pure states (trace norm 2).
    """
    if not isinstance(a, DensityMatrix2) or not isinstance(b, DensityMatrix2):
        raise ValueError("trace_distance_measure expects DensityMatrix2 inputs")
    tn = schatten_norm(a.matrix - b.matrix, 1)
    return 1.0 - 0.25 * tn * tn
