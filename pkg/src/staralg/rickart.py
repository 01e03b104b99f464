"""Annihilators, the projection lattice, and Rickart/Baer property checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOL, Element, random_element
from .errors import DecompositionFailed, NotARightIdeal
from .linalg import KAPPA, colspace, nullspace, subspaces_equal
from .spectral import left_projection, right_projection


@dataclass(frozen=True)
class CheckReport:
    property_name: str
    passed: bool
    worst_residual: float
    seed: int | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "property": self.property_name,
            "pass": self.passed,
            "worst_residual": self.worst_residual,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass(frozen=True)
class AnnihilatorResult:
    side: str
    subspace_basis: list          # Elements, orthonormal coefficient vectors
    generator: Element | None
    is_principal_projection_ideal: bool

    @property
    def dim(self):
        return len(self.subspace_basis)


def is_projection(p, tol=DEFAULT_TOL):
    scale = max(1.0, p.norm())
    return (p - p.star()).norm() <= tol * KAPPA * scale and (p - p * p).norm() <= tol * KAPPA * scale


def proj_leq(p, q, tol=DEFAULT_TOL):
    """p <= q iff p = pq = qp, to tolerance."""
    scale = max(1.0, p.norm(), q.norm())
    return (p * q - p).norm() <= tol * KAPPA * scale and (q * p - p).norm() <= tol * KAPPA * scale


def join(e, f, tol=DEFAULT_TOL):
    """e v f = f + RP(e - ef); certified least upper bound."""
    g = f + right_projection(e - e * f, tol)
    if not is_projection(g, tol):
        raise DecompositionFailed("join output failed projection certification")
    if not (proj_leq(e, g, tol) and proj_leq(f, g, tol)):
        raise DecompositionFailed("join is not an upper bound at tolerance")
    return g


def meet(e, f, tol=DEFAULT_TOL):
    """e ^ f = e - LP(e - ef); certified greatest lower bound."""
    g = e - left_projection(e - e * f, tol)
    if not is_projection(g, tol):
        raise DecompositionFailed("meet output failed projection certification")
    if not (proj_leq(g, e, tol) and proj_leq(g, f, tol)):
        raise DecompositionFailed("meet is not a lower bound at tolerance")
    return g


def _stacked_kernel(elements, side, tol):
    mats = [a.lmat() if side == "right" else a.rmat() for a in elements]
    return nullspace(np.concatenate(mats, axis=0), tol)


def annihilator(elements, side="right", tol=DEFAULT_TOL):
    """Right (or left) annihilator of a finite set, with projection generator.

    The subspace is the exact kernel of the stacked multiplication operators.
    The generator search uses the complement of the join of the right (left)
    projections of the input elements when the algebra is unital and proper,
    falling back to the generic right-ideal search.
    """
    if not elements:
        raise NotARightIdeal("annihilator of the empty set is not defined")
    algebra = elements[0].parent
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    for a in elements[1:]:
        elements[0]._check(a)

    kernel = _stacked_kernel(elements, side, tol)
    basis = [Element(algebra, kernel[:, i]) for i in range(kernel.shape[1])]

    generator = None
    unit = algebra.unit_vector(tol)
    if unit is not None:
        try:
            j = algebra.zero()
            for a in elements:
                p = right_projection(a, tol) if side == "right" else left_projection(a, tol)
                j = join(j, p, tol)
            f = Element(algebra, unit) - j
            if _generates(f, kernel, side, tol):
                generator = f
        except DecompositionFailed:
            generator = None
    if generator is None and kernel.shape[1] == 0:
        generator = algebra.zero()
    if generator is None:
        generator = _ideal_generator(algebra, basis, side, tol)
    return AnnihilatorResult(side, basis, generator, generator is not None)


def _generates(f, subspace, side, tol):
    """span(fA) == span(subspace) (right side; Af for the left side)."""
    algebra = f.parent
    mat = f.lmat() if side == "right" else f.rmat()
    return subspaces_equal(colspace(mat, tol), subspace, np.sqrt(tol))


def _ideal_generator(algebra, basis, side, tol):
    if not basis:
        return algebra.zero()
    try:
        f = algebra.zero()
        for x in basis:
            p = left_projection(x, tol) if side == "right" else right_projection(x, tol)
            f = join(f, p, tol)
    except DecompositionFailed:
        return None
    subspace = np.stack([x.coeffs for x in basis], axis=1)
    return f if _generates(f, colspace(subspace, tol), side, tol) else None


def projection_generator(ideal_basis, tol=DEFAULT_TOL):
    """Projection f with fA = span(ideal_basis), when one exists.

    The input must be a right ideal; f is the lattice join of the left
    projections of the basis elements (x in fA forces LP(x) <= f).
    """
    if not ideal_basis:
        raise NotARightIdeal("empty basis")
    algebra = ideal_basis[0].parent
    span = colspace(np.stack([x.coeffs for x in ideal_basis], axis=1), tol)
    for x in ideal_basis:
        for e in algebra.basis():
            v = (x * e).coeffs
            res = v - span @ (span.conj().T @ v)
            if float(np.linalg.norm(res)) > np.sqrt(tol) * max(1.0, float(np.linalg.norm(v))):
                raise NotARightIdeal("subspace not closed under right multiplication")
    if span.shape[1] == 0:
        return algebra.zero()
    basis = [Element(algebra, span[:, i]) for i in range(span.shape[1])]
    return _ideal_generator(algebra, basis, "right", tol)


def check_weakly_rickart(algebra, samples=8, tol=DEFAULT_TOL, seed=0):
    """Construct RP(a) for basis and sampled elements and verify both axioms."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    tested = algebra.basis() + [random_element(algebra, rng) for _ in range(samples)]
    for a in tested:
        if a.norm() <= tol:
            continue
        try:
            e = right_projection(a, tol)
        except DecompositionFailed as exc:
            return CheckReport(
                "weakly_rickart", False, float("inf"), seed,
                witness={"element": _coeff_list(a), "reason": str(exc)},
            )
        scale = max(1.0, a.norm())
        res1 = (a * e - a).norm() / scale
        worst = max(worst, res1)
        kernel = nullspace(a.lmat(), tol)
        emat = e.lmat()
        for i in range(kernel.shape[1]):
            res2 = float(np.linalg.norm(emat @ kernel[:, i]))
            worst = max(worst, res2 / KAPPA)
            if res2 > tol * KAPPA:
                return CheckReport(
                    "weakly_rickart", False, res2, seed,
                    witness={"element": _coeff_list(a), "kernel_vector": list(map(_c2l, kernel[:, i]))},
                )
        if res1 > tol * KAPPA:
            return CheckReport(
                "weakly_rickart", False, res1, seed, witness={"element": _coeff_list(a)},
            )
    return CheckReport("weakly_rickart", True, worst, seed, details={"tested": len(tested)})


def check_baer(algebra, tol=DEFAULT_TOL, seed=0, pair_samples=32, subset_samples=8,
               singleton_limit=None):
    """Baer check: unital + weakly Rickart, plus randomized direct witnesses.

    In finite dimension the projection lattice of a Rickart *-algebra is
    automatically complete, so the reduction to 'unital and weakly Rickart'
    is exact; the sampled annihilator-generator witnesses guard the
    implementation rather than the theorem.
    """
    rng = np.random.default_rng(seed)
    if not algebra.is_unital(tol):
        return CheckReport("baer", False, 0.0, seed, witness={"reason": "no unit"})
    wr = check_weakly_rickart(algebra, samples=4, tol=tol, seed=seed)
    if not wr.passed:
        return CheckReport("baer", False, wr.worst_residual, seed,
                           witness={"reason": "not weakly Rickart", "inner": wr.witness})

    n = algebra.dim
    failures = 0
    tested = 0
    singles = algebra.basis()
    if singleton_limit is not None:
        singles = singles[:singleton_limit]
    subsets = [[s] for s in singles]
    pair_pool = min(pair_samples, n * (n - 1) // 2 if n > 1 else 0)
    for _ in range(pair_pool):
        i, j = rng.choice(n, size=2, replace=False)
        subsets.append([algebra.basis_element(int(i)), algebra.basis_element(int(j))])
    for _ in range(subset_samples):
        k = int(rng.integers(1, n + 1))
        subsets.append([random_element(algebra, rng) for _ in range(k)])

    for s in subsets:
        tested += 1
        result = annihilator(s, "right", tol)
        if not result.is_principal_projection_ideal:
            failures += 1
    passed = failures == 0
    return CheckReport("baer", passed, wr.worst_residual, seed,
                       details={"witness_subsets": tested, "generator_failures": failures})


def orthogonal_family(algebra, seed=0, tol=DEFAULT_TOL, tries=None):
    """Greedily extend an orthogonal family of nonzero projections.

    Each step compresses a random element by the complement of the current
    family sum and takes its right projection. The family size can never
    exceed dim (the projections are linearly independent); callers assert
    this exactly.
    """
    rng = np.random.default_rng(seed)
    unit = algebra.unit_vector(tol)
    if unit is None:
        raise NotARightIdeal("orthogonal family builder needs a unital algebra")
    one = Element(algebra, unit)
    family = []
    total = algebra.zero()
    tries = tries if tries is not None else 4 * algebra.dim
    for _ in range(tries):
        comp = one - total
        if comp.norm() <= tol * KAPPA:
            break
        a = comp * random_element(algebra, rng) * comp
        if a.norm() <= np.sqrt(tol):
            continue
        try:
            dec_p = right_projection(a, tol)
        except DecompositionFailed:
            continue
        if dec_p.norm() <= tol * KAPPA:
            continue
        family.append(dec_p)
        total = total + dec_p
    return family


def _c2l(z):
    return [float(z.real), float(z.imag)]


def _coeff_list(a):
    return [_c2l(z) for z in a.coeffs]
