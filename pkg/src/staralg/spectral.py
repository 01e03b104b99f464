"""Orthogonal-projection decompositions and everything built on them.

A normal element of a proper algebra decomposes as ``b = sum lambda_j e_j``
with distinct nonzero scalars and nonzero orthogonal projections lying in the
subalgebra generated by b. Each projection is an interpolation idempotent on
the clustered eigenvalues of the regular representation, so it stays inside
the generated subalgebra by construction. Right projections,
quasi-inverses, positive square roots and the EP witness are all read off the
decomposition of a*a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Element, distinct_eigenvalues, unital_hull
from .errors import DecompositionFailed, DegenerateInput, NoCStarNorm, NotPositive
from .linalg import KAPPA


@dataclass(frozen=True)
class SpectralDecomposition:
    source: Element
    terms: tuple  # of (complex, Element) pairs, lambda nonzero and distinct

    def eigenvalues(self):
        return [lam for lam, _ in self.terms]

    def projections(self):
        return [p for _, p in self.terms]

    def projection_sum(self):
        total = self.source.parent.zero()
        for _, p in self.terms:
            total = total + p
        return total

    def reconstruction(self):
        total = self.source.parent.zero()
        for lam, p in self.terms:
            total = total + lam * p
        return total

    def map_values(self, fn):
        """Element sum(fn(lambda_j) e_j); stays in the generated subalgebra."""
        total = self.source.parent.zero()
        for lam, p in self.terms:
            total = total + fn(lam) * p
        return total


def _certify(dec, tol):
    """Residual certificates; raises DecompositionFailed beyond tol*KAPPA."""
    b = dec.source
    scale = max(1.0, b.norm())
    worst = 0.0
    ps = dec.projections()
    for p in ps:
        worst = max(worst, (p - p.star()).norm(), (p - p * p).norm())
        if p.norm() <= tol * KAPPA:
            raise DecompositionFailed("zero projection in decomposition")
    for i in range(len(ps)):
        for j in range(len(ps)):
            if i != j:
                worst = max(worst, (ps[i] * ps[j]).norm())
    worst = max(worst, (b - dec.reconstruction()).norm() / scale)
    if worst > tol * KAPPA:
        raise DecompositionFailed(
            f"decomposition certificates fail (worst residual {worst:.3e}); "
            "the involution is likely not proper"
        )
    return worst


def spectral_decompose(b, tol=DEFAULT_TOL):
    """Write a normal element as a sum of scaled orthogonal projections.

    The zero eigenvalue is omitted. Raises DecompositionFailed when the
    certificates cannot be met, which is the expected signal on non-proper
    algebras.
    """
    scale = max(1.0, b.norm())
    normality = ((b.star() * b) - (b * b.star())).norm() / scale**2
    if normality > tol * KAPPA:
        raise DecompositionFailed(f"element is not normal (residual {normality:.3e})")
    if b.norm() <= tol:
        return SpectralDecomposition(b, ())

    hull = unital_hull(b.parent, tol)
    bh = hull.embed(b)
    one = hull.one()
    lams = distinct_eigenvalues(b, tol)
    lam_scale = max(1.0, max(abs(l) for l in lams))

    # each idempotent is p_j(b) for the interpolation polynomial with
    # p_j(lam_k) = delta_jk, i.e. the eigenprojector of the regular
    # representation applied to the unit -- computed that way directly,
    # which is far better conditioned than multiplying Lagrange factors
    mat = bh.lmat()
    evals, evecs = np.linalg.eig(mat)
    assign = np.argmin(np.abs(evals[:, None] - np.array(lams)[None, :]), axis=1)
    evecs_inv = np.linalg.inv(evecs)
    one_c = one.coeffs

    terms = []
    for j, lam in enumerate(lams):
        if abs(lam) <= tol * lam_scale:
            continue
        sel = assign == j
        coeffs = evecs[:, sel] @ (evecs_inv[sel, :] @ one_c)
        p = Element(hull.algebra, coeffs)
        p = 0.5 * (p + p.star())
        p = p * p * (3.0 * one - 2.0 * p)  # one idempotent-polishing step
        proj = hull.restrict_coeffs(p.coeffs, b.parent, tol) if hull.adjoined else p
        terms.append((lam, proj))

    dec = SpectralDecomposition(b, tuple(terms))
    _certify(dec, tol)
    return dec


def _selfadjoint_part(x):
    return 0.5 * (x + x.star())


def right_projection(a, tol=DEFAULT_TOL):
    """RP(a): the projection e with ae = a and ker(a.) contained in ker(e.)."""
    if a.norm() <= tol:
        return a.parent.zero()
    dec = spectral_decompose(_selfadjoint_part(a.star() * a), tol)
    e = dec.projection_sum()
    res = (a * e - a).norm() / max(1.0, a.norm())
    if res > tol * KAPPA:
        raise DecompositionFailed(f"RP certificate a*RP(a) = a fails (residual {res:.3e})")
    return e


def left_projection(a, tol=DEFAULT_TOL):
    return right_projection(a.star(), tol)


def quasi_inverse(a, tol=DEFAULT_TOL):
    """x with axa = a (and xax = x for this construction)."""
    if a.norm() <= tol:
        return a.parent.zero()
    dec = spectral_decompose(_selfadjoint_part(a.star() * a), tol)
    x = dec.map_values(lambda lam: 1.0 / lam) * a.star()
    res = (a * x * a - a).norm() / max(1.0, a.norm())
    if res > tol * KAPPA:
        raise DecompositionFailed(f"quasi-inverse residual {res:.3e}")
    return x


def positive_sqrt(x, tol=DEFAULT_TOL):
    """The positive y with y^2 = x, inside the subalgebra generated by x."""
    scale = max(1.0, x.norm())
    if (x - x.star()).norm() / scale > tol * KAPPA:
        raise NotPositive("element is not selfadjoint")
    if x.norm() <= tol:
        return x.parent.zero()
    dec = spectral_decompose(_selfadjoint_part(x), tol)
    lam_scale = max(1.0, max(abs(l) for l, _ in dec.terms))
    for lam, _ in dec.terms:
        if abs(lam.imag) > tol * KAPPA * lam_scale or lam.real < -tol * KAPPA * lam_scale:
            raise NotPositive(f"negative/complex spectral value {lam}")
    y = dec.map_values(lambda lam: np.sqrt(max(lam.real, 0.0)))
    res = (y * y - x).norm() / scale
    if res > tol * KAPPA:
        raise DecompositionFailed(f"square-root residual {res:.3e}")
    return y


def ep_witness(a, tol=DEFAULT_TOL):
    """Selfadjoint w in the subalgebra generated by a*a with (a*a)w^2 = RP(a) != 0."""
    if a.norm() <= tol:
        raise DegenerateInput("EP witness undefined for the zero element")
    h = _selfadjoint_part(a.star() * a)
    dec = spectral_decompose(h, tol)
    lam_scale = max(1.0, max((abs(l) for l, _ in dec.terms), default=1.0))
    for lam, _ in dec.terms:
        if lam.real < tol * lam_scale:
            raise DecompositionFailed(f"non-positive spectral value {lam} in a*a")
    if not dec.terms:
        raise DecompositionFailed("a*a has empty decomposition though a is non-zero")
    w = dec.map_values(lambda lam: 1.0 / np.sqrt(lam.real))
    proj = h * w * w
    res = (proj - dec.projection_sum()).norm()
    if res > tol * KAPPA * max(1.0, proj.norm()):
        raise DecompositionFailed(f"EP witness residual {res:.3e}")
    return w


def _gram_matrix(algebra, tol):
    """Hermitian form <a, b> = trace of left multiplication by b* a in the hull."""
    key = ("gram", round(np.log10(tol), 3))
    if key not in algebra._cache:
        hull = unital_hull(algebra, tol)
        n = algebra.dim
        emb = [hull.embed(e) for e in algebra.basis()]
        lmats = [e.lmat() for e in emb]
        smats = [hull.embed(e.star()).lmat() for e in algebra.basis()]
        g = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                g[i, j] = np.trace(smats[i] @ lmats[j])
        algebra._cache[key] = 0.5 * (g + g.conj().T)
    return algebra._cache[key]


def cstar_norm(a, tol=DEFAULT_TOL):
    """The unique pre-C*-norm, via the Gram-symmetrized regular representation.

    Any faithful *-representation computes the same value; this one needs no
    block decomposition. Raises NoCStarNorm when the trace form is not
    positive definite (non-proper involution).
    """
    algebra = a.parent
    g = _gram_matrix(algebra, tol)
    evals, evecs = np.linalg.eigh(g)
    if evals[0] <= tol * max(1.0, evals[-1]):
        raise NoCStarNorm("trace form not positive definite; no C*-norm exists")
    ghalf = evecs @ np.diag(np.sqrt(evals)) @ evecs.conj().T
    ginvhalf = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.conj().T
    # a positive-definite trace form forces properness, hence A is unital and
    # left multiplication on (A, <.,.>) is a faithful *-representation
    lmat = a.lmat()
    return float(np.linalg.norm(ghalf @ lmat @ ginvhalf, 2))
