"""Constructors for concrete algebras: matrix blocks, mutants, random instances.

These are the workhorses of the test suite and of the certification drivers.
"""

import numpy as np

from .core import StarAlgebra, unitize
from .errors import MalformedInput


def from_matrix_basis(mats, tol=1e-12):
    """Structure constants of the span of `mats` inside M_d, star = conjugate transpose.

    The matrices must be linearly independent and their span closed under
    products and adjoints.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    d = mats[0].shape[0]
    n = len(mats)
    basis = np.stack([m.reshape(-1) for m in mats], axis=1)  # (d*d, n)

    def expand(mat):
        v = mat.reshape(-1)
        x, *_ = np.linalg.lstsq(basis, v, rcond=None)
        res = float(np.linalg.norm(basis @ x - v))
        if res > tol * max(1.0, float(np.linalg.norm(v))) * 1e3:
            raise MalformedInput("matrix span is not closed under the operation")
        return x

    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            c[i, j, :] = expand(mats[i] @ mats[j])
    s = np.zeros((n, n), dtype=complex)
    for i in range(n):
        s[:, i] = expand(mats[i].conj().T)

    unit = None
    eye = np.eye(d, dtype=complex).reshape(-1)
    x, *_ = np.linalg.lstsq(basis, eye, rcond=None)
    if float(np.linalg.norm(basis @ x - eye)) <= 1e-9 * d:
        unit = x
    return StarAlgebra(c, s, unit=unit)


def matrix_algebra(n):
    """Full matrix algebra M_n with matrix-unit basis E_pq (row-major order)."""
    dim = n * n

    def idx(p, q):
        return p * n + q

    c = np.zeros((dim, dim, dim), dtype=complex)
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if q == r:
                        c[idx(p, q), idx(r, s), idx(p, s)] = 1.0
    st = np.zeros((dim, dim), dtype=complex)
    for p in range(n):
        for q in range(n):
            st[idx(q, p), idx(p, q)] = 1.0
    unit = np.zeros(dim, dtype=complex)
    for p in range(n):
        unit[idx(p, p)] = 1.0
    labels = tuple(f"E{p}{q}" for p in range(n) for q in range(n))
    return StarAlgebra(c, st, unit=unit, labels=labels)


def diagonal_algebra(n):
    """Commutative C^n with pointwise product and identity involution."""
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1.0
    return StarAlgebra(c, np.eye(n, dtype=complex), unit=np.ones(n, dtype=complex))


def direct_sum(a, b):
    n, m = a.dim, b.dim
    c = np.zeros((n + m, n + m, n + m), dtype=complex)
    c[:n, :n, :n] = a.mul
    c[n:, n:, n:] = b.mul
    s = np.zeros((n + m, n + m), dtype=complex)
    s[:n, :n] = a.star
    s[n:, n:] = b.star
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = np.concatenate([a.unit, b.unit])
    return StarAlgebra(c, s, unit=unit)


def swap_algebra():
    """C + C with the coordinate-swap involution: semisimple but not proper."""
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 0] = 1.0
    c[1, 1, 1] = 1.0
    s = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    return StarAlgebra(c, s, unit=np.array([1.0, 1.0]))


def nilpotent_line():
    """The non-unital algebra C x with x^2 = 0 and x* = x."""
    c = np.zeros((1, 1, 1), dtype=complex)
    s = np.eye(1, dtype=complex)
    return StarAlgebra(c, s)


def unitized_nilpotent():
    """Unitization of C x: hermitian, not semisimple, not proper."""
    return unitize(nilpotent_line())


def random_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _block_matrix_basis(block_sizes, abelian_dim):
    sizes = list(block_sizes) + [1] * abelian_dim
    d = sum(sizes)
    mats = []
    off = 0
    for sz in sizes:
        for p in range(sz):
            for q in range(sz):
                m = np.zeros((d, d), dtype=complex)
                m[off + p, off + q] = 1.0
                mats.append(m)
        off += sz
    return mats


def semisimple_instance(block_sizes, abelian_dim, rng, mix=True):
    """A *-algebra isomorphic to (+)M_{n_k} (+) C^m in a scrambled basis.

    The matrix realization is conjugated by a random unitary (preserving the
    conjugate-transpose involution) and the basis is mixed by a random
    well-conditioned linear map, so nothing about the block structure is
    visible in the structure constants.
    """
    mats = _block_matrix_basis(block_sizes, abelian_dim)
    d = mats[0].shape[0]
    u = random_unitary(d, rng)
    mats = [u @ m @ u.conj().T for m in mats]
    if mix:
        n = len(mats)
        # singular values in [0.5, 2]: keeps the change of basis well conditioned
        a = random_unitary(n, rng)
        b = random_unitary(n, rng)
        svals = 0.5 + 1.5 * rng.random(n)
        s = a @ np.diag(svals) @ b
        stack = np.stack([m.reshape(-1) for m in mats], axis=1) @ s
        mats = [stack[:, i].reshape(d, d) for i in range(len(mats))]
    return from_matrix_basis(mats)


def swap_mutant(pairs, rng=None):
    """C^(2*pairs) with the involution swapping each coordinate pair (non-proper)."""
    n = 2 * pairs
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1.0
    s = np.zeros((n, n), dtype=complex)
    for p in range(pairs):
        s[2 * p, 2 * p + 1] = 1.0
        s[2 * p + 1, 2 * p] = 1.0
    return StarAlgebra(c, s, unit=np.ones(n, dtype=complex))


def nilpotent_mutant(abelian_dim=0):
    """Unitized nilpotent line, optionally padded with a commutative summand."""
    alg = unitized_nilpotent()
    if abelian_dim:
        alg = direct_sum(alg, diagonal_algebra(abelian_dim))
    return alg
