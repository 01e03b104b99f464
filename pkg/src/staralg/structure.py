"""Radical, properness/hermitian checks, central atoms, Abelian split,
matrix-unit block isomorphisms, and the composite structure report."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    Element,
    StarAlgebra,
    random_element,
    random_selfadjoint,
    spectrum,
    unital_hull,
    validate,
)
from .errors import (
    DecompositionFailed,
    DegenerateRandomness,
    InternalInconsistency,
    MalformedInput,
    ValidationFailed,
)
from .linalg import KAPPA, colspace, nullspace
from .rickart import CheckReport, check_baer, check_weakly_rickart, is_projection
from .spectral import _gram_matrix, spectral_decompose


# -- radical and the basic checks ---------------------------------------------

def radical(algebra, tol=DEFAULT_TOL):
    """Jacobson radical via the trace-form kernel of the unital hull.

    Valid over characteristic zero; every returned basis element is verified
    nilpotent through its regular representation.
    """
    hull = unital_hull(algebra, tol)
    big = hull.algebra
    nh = big.dim
    lstack = np.stack([big.left_mat(np.eye(nh)[i]) for i in range(nh)])
    form = np.einsum("iab,jba->ij", lstack, lstack)
    kernel = nullspace(form, tol)

    basis = []
    for i in range(kernel.shape[1]):
        v = kernel[:, i]
        if hull.adjoined:
            if abs(v[0]) > np.sqrt(tol):
                raise InternalInconsistency("radical vector leaves the base algebra")
            v = v[1:]
        basis.append(v)
    if not basis:
        return []
    mat = colspace(np.stack(basis, axis=1), tol)
    out = []
    for i in range(mat.shape[1]):
        x = Element(algebra, mat[:, i])
        m = hull.embed(x).lmat()
        s = max(1.0, float(np.linalg.norm(m, 2)))
        if float(np.linalg.norm(np.linalg.matrix_power(m / s, nh), 2)) > tol * KAPPA:
            raise InternalInconsistency("trace-form kernel element is not nilpotent")
        out.append(x)
    return out


def check_proper(algebra, tol=DEFAULT_TOL, seed=0):
    """Properness via positive definiteness of <a,b> = tr(L_{b*a}) on the hull.

    On failure the report carries a witness minimizing |a*a| over basis
    elements and the non-positive eigenspace of the Gram matrix.
    """
    g = _gram_matrix(algebra, tol)
    evals, evecs = np.linalg.eigh(g)
    min_eig, max_eig = float(evals[0]), float(evals[-1])
    passed = min_eig > tol * max(1.0, max_eig)
    details = {"gram_min_eig": min_eig, "gram_max_eig": max_eig}

    if passed:
        # belt-and-braces witness search: no normalized a may have a*a ~ 0
        rng = np.random.default_rng(seed)
        for a in algebra.basis() + [random_element(algebra, rng) for _ in range(8)]:
            if a.norm() <= tol:
                continue
            a = (1.0 / a.norm()) * a
            if (a.star() * a).norm() <= tol:
                raise InternalInconsistency(
                    "positive definite trace form but a*a = 0 witness found"
                )
        return CheckReport("proper", True, 0.0, seed, details=details)

    rng = np.random.default_rng(seed)
    bad = evecs[:, evals <= tol * max(1.0, max_eig)]
    candidates = [e.coeffs for e in algebra.basis()]
    candidates += [bad[:, i] for i in range(bad.shape[1])]
    for _ in range(32):
        if bad.shape[1]:
            w = rng.standard_normal(bad.shape[1]) + 1j * rng.standard_normal(bad.shape[1])
            candidates.append(bad @ w)
    best = None
    for v in candidates:
        nv = float(np.linalg.norm(v))
        if nv <= tol:
            continue
        a = Element(algebra, v / nv)
        score = (a.star() * a).norm()
        if best is None or score < best[0]:
            best = (score, a)
    witness = {"element": [[float(z.real), float(z.imag)] for z in best[1].coeffs],
               "norm_a_star_a": best[0]}
    return CheckReport("proper", False, best[0], seed, witness=witness, details=details)


def quotient_by_radical(algebra, rad_basis, tol=DEFAULT_TOL):
    """A / rad as a StarAlgebra on the orthogonal complement of the radical."""
    r = np.stack([x.coeffs for x in rad_basis], axis=1)
    u = nullspace(r.conj().T, tol)
    k = u.shape[1]
    c = np.zeros((k, k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            c[i, j, :] = u.conj().T @ algebra.mul_coeffs(u[:, i], u[:, j])
    s = u.conj().T @ algebra.star @ np.conj(u)
    unit = None
    uv = algebra.unit_vector(tol)
    if uv is not None:
        unit = u.conj().T @ uv
    return StarAlgebra(c, s, unit=unit), u


def check_hermitian(algebra, tol=DEFAULT_TOL, seed=0, rad_basis=None):
    """Hermitian iff the quotient by the radical is proper; spot-checks spectra."""
    if rad_basis is None:
        rad_basis = radical(algebra, tol)
    if len(rad_basis) == algebra.dim:
        # radical quotient is the zero algebra, vacuously proper
        inner = CheckReport("proper", True, 0.0, seed)
    elif rad_basis:
        quotient, _ = quotient_by_radical(algebra, rad_basis, tol)
        inner = check_proper(quotient, tol, seed)
    else:
        inner = check_proper(algebra, tol, seed)

    rng = np.random.default_rng(seed)
    worst_imag = 0.0
    spectra_real = True
    for _ in range(6):
        b = random_selfadjoint(algebra, rng)
        sp = spectrum(b, tol)
        scale = max(1.0, max(abs(p) for p in sp.points))
        imag = max(abs(p.imag) for p in sp.points) / scale
        worst_imag = max(worst_imag, imag)
        if imag > tol * KAPPA:
            spectra_real = False
    passed = inner.passed and spectra_real
    if inner.passed != spectra_real:
        # Theorem-level equivalence; a disagreement means tolerance breakdown
        raise InternalInconsistency(
            f"radical-quotient properness ({inner.passed}) disagrees with "
            f"selfadjoint spectra reality (worst imag {worst_imag:.3e})"
        )
    return CheckReport(
        "hermitian", passed, worst_imag, seed,
        witness=None if passed else {"quotient_check": inner.witness},
        details={"radical_dim": len(rad_basis), "worst_spectrum_imag": worst_imag},
    )


# -- center and central atoms -------------------------------------------------

@dataclass(frozen=True)
class CentralDecomposition:
    center_basis: list
    atoms: list
    block_dims: list


def center(algebra, tol=DEFAULT_TOL):
    """Orthonormal basis of the center via the commutation linear system."""
    mats = []
    for i in range(algebra.dim):
        e = np.eye(algebra.dim)[i]
        mats.append(algebra.left_mat(e) - algebra.right_mat(e))
    kernel = nullspace(np.concatenate(mats, axis=0), tol)
    return [Element(algebra, kernel[:, i]) for i in range(kernel.shape[1])]


def _span_dim(vectors, tol):
    if not vectors:
        return 0
    return colspace(np.stack(vectors, axis=1), tol).shape[1]


def _corner_span(algebra, p, tol):
    vecs = [(p * e * p).coeffs for e in algebra.basis()]
    return colspace(np.stack(vecs, axis=1), tol)


def central_atoms(algebra, tol=DEFAULT_TOL, seed=0):
    """Central primitive idempotents by joint refinement of the center.

    Repeatedly splits non-primitive central projections with spectral
    decompositions of random central selfadjoint elements.
    """
    one = algebra.one(tol)
    zbasis = center(algebra, tol)
    zmat = np.stack([z.coeffs for z in zbasis], axis=1)
    rng = np.random.default_rng(seed)

    def primitive(z):
        return _span_dim([(z * c).coeffs for c in zbasis], tol) == 1

    def random_central_selfadjoint():
        w = rng.standard_normal(len(zbasis)) + 1j * rng.standard_normal(len(zbasis))
        s = Element(algebra, zmat @ w)
        return 0.5 * (s + s.star())

    atoms = [one]
    for _ in range(4 * algebra.dim + 8):
        idx = next((i for i, z in enumerate(atoms) if not primitive(z)), None)
        if idx is None:
            break
        z = atoms[idx]
        x = z * random_central_selfadjoint() * z
        if x.norm() <= np.sqrt(tol):
            continue
        dec = spectral_decompose(x, tol)
        parts = list(dec.projections())
        rem = z - dec.projection_sum()
        if rem.norm() > np.sqrt(tol):
            if not is_projection(rem, tol):
                continue
            parts.append(rem)
        if len(parts) >= 2:
            atoms = atoms[:idx] + parts + atoms[idx + 1:]
    else:
        raise DegenerateRandomness("central-atom refinement did not terminate; retry with a new seed")

    total = algebra.zero()
    for z in atoms:
        total = total + z
    if (total - one).norm() > tol * KAPPA:
        raise InternalInconsistency("central atoms do not sum to the unit")
    for i, zi in enumerate(atoms):
        for j, zj in enumerate(atoms):
            if i != j and (zi * zj).norm() > tol * KAPPA:
                raise InternalInconsistency("central atoms are not orthogonal")

    block_dims = [int(_corner_span(algebra, z, tol).shape[1]) for z in atoms]
    order = np.argsort([-d for d in block_dims], kind="stable")
    atoms = [atoms[i] for i in order]
    block_dims = [block_dims[i] for i in order]
    return CentralDecomposition(zbasis, atoms, block_dims)


# -- subalgebra extraction ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubAlgebra:
    parent: StarAlgebra
    algebra: StarAlgebra | None   # None encodes the zero subalgebra
    inclusion: np.ndarray         # (parent_dim, sub_dim), orthonormal columns

    @property
    def dim(self):
        return 0 if self.algebra is None else self.algebra.dim

    def embed(self, a):
        return Element(self.parent, self.inclusion @ a.coeffs)

    def restrict(self, a):
        return Element(self.algebra, self.inclusion.conj().T @ a.coeffs)


def subalgebra_from_span(parent, vectors, tol=DEFAULT_TOL, unit_coeffs=None):
    """Sub-StarAlgebra on an orthonormalized basis of a *-closed, closed span."""
    u = colspace(vectors, tol)
    k = u.shape[1]
    if k == 0:
        return SubAlgebra(parent, None, u)
    c = np.zeros((k, k, k), dtype=complex)
    worst = 0.0
    for i in range(k):
        for j in range(k):
            prod = parent.mul_coeffs(u[:, i], u[:, j])
            c[i, j, :] = u.conj().T @ prod
            worst = max(worst, float(np.linalg.norm(u @ c[i, j, :] - prod)))
    s = u.conj().T @ parent.star @ np.conj(u)
    if worst > np.sqrt(tol):
        raise MalformedInput(f"span is not multiplicatively closed (residual {worst:.3e})")
    unit = None if unit_coeffs is None else u.conj().T @ unit_coeffs
    return SubAlgebra(parent, StarAlgebra(c, s, unit=unit), u)


def _image_subalgebra(algebra, p, tol):
    """The ideal pA for a central projection p, as a SubAlgebra with unit p."""
    vecs = np.stack([(p * e).coeffs for e in algebra.basis()], axis=1)
    if float(np.linalg.norm(vecs)) <= tol:
        return SubAlgebra(algebra, None, np.zeros((algebra.dim, 0), dtype=complex))
    return subalgebra_from_span(algebra, vecs, tol, unit_coeffs=p.coeffs)


def _is_commutative(sub, tol):
    if sub.algebra is None or sub.dim == 1:
        return True
    c = sub.algebra.mul
    return float(np.max(np.abs(c - c.transpose(1, 0, 2)))) <= tol * KAPPA * max(1.0, float(np.max(np.abs(c))))


def abelian_split(algebra, tol=DEFAULT_TOL, seed=0, decomposition=None):
    """The unique central projection h with hA commutative, (1-h)A properly non-Abelian."""
    dec = decomposition or central_atoms(algebra, tol, seed)
    h = algebra.zero()
    for z in dec.atoms:
        block = _image_subalgebra(algebra, z, tol)
        if _is_commutative(block, tol):
            h = h + z
    one = algebra.one(tol)
    m_sub = _image_subalgebra(algebra, one - h, tol)
    b_sub = _image_subalgebra(algebra, h, tol)
    return h, m_sub, b_sub


# -- matrix units for a simple block ------------------------------------------

def _minimal_projections(block, tol, rng):
    one = block.one(tol)
    projections = [one]
    for _ in range(6 * block.dim + 16):
        idx = next(
            (i for i, p in enumerate(projections) if _corner_span(block, p, tol).shape[1] > 1),
            None,
        )
        if idx is None:
            return projections
        p = projections[idx]
        x = p * random_selfadjoint(block, rng) * p
        if x.norm() <= np.sqrt(tol):
            continue
        dec = spectral_decompose(x, tol)
        parts = list(dec.projections())
        rem = p - dec.projection_sum()
        if rem.norm() > np.sqrt(tol):
            if not is_projection(rem, tol):
                continue
            parts.append(rem)
        if len(parts) >= 2:
            projections = projections[:idx] + parts + projections[idx + 1:]
    raise DegenerateRandomness("minimal-projection refinement did not terminate")


def matrix_unit_residual(block, units, tol=DEFAULT_TOL):
    """Worst defect of the matrix-unit relations for a candidate system."""
    n = len(units)
    one = block.one(tol)
    worst = 0.0
    for p in range(n):
        for q in range(n):
            worst = max(worst, (units[p][q].star() - units[q][p]).norm())
            for r in range(n):
                for s in range(n):
                    prod = units[p][q] * units[r][s]
                    expect = units[p][s] if q == r else block.zero()
                    worst = max(worst, (prod - expect).norm())
    diag = block.zero()
    for p in range(n):
        diag = diag + units[p][p]
    return max(worst, (diag - one).norm())


def block_star_isomorphism(block, tol=DEFAULT_TOL, seed=0):
    """Matrix-unit system certifying that a simple block is M_n.

    Returns an n x n list of elements u[p][q] with u[p][q]u[r][s] =
    delta_qr u[p][s], u[p][q]* = u[q][p] and sum u[p][p] = unit.
    """
    rng = np.random.default_rng(seed)
    last_exc = None
    for attempt in range(5):
        try:
            return _matrix_units_once(block, tol, rng)
        except (DegenerateRandomness, DecompositionFailed) as exc:
            last_exc = exc
    raise DegenerateRandomness(f"matrix-unit construction kept failing: {last_exc}")


def _matrix_units_once(block, tol, rng):
    one = block.one(tol)
    projections = _minimal_projections(block, tol, rng)
    n = len(projections)
    if n * n != block.dim:
        raise InternalInconsistency(
            f"{n} minimal projections in a block of dimension {block.dim}; block is not simple"
        )
    if n == 1:
        return [[one]]

    e1 = projections[0]
    for _ in range(8):
        b = random_element(block, rng)
        xs = [e1 * b * ep for ep in projections]
        if all(x.norm() > np.sqrt(tol) for x in xs[1:]):
            break
    else:
        raise DegenerateRandomness("random element kept producing zero corners")

    row = [e1]
    for p in range(1, n):
        x = xs[p]
        s = x.star() * x                      # a positive multiple of e_p
        ep = projections[p]
        t = complex(np.vdot(ep.coeffs, s.coeffs) / np.vdot(ep.coeffs, ep.coeffs))
        if t.real <= tol or (s - t.real * ep).norm() > np.sqrt(tol) * max(1.0, abs(t)):
            raise DegenerateRandomness("corner element is not a scalar multiple of the atom")
        row.append((1.0 / np.sqrt(t.real)) * x)

    units = [[row[p].star() * row[q] for q in range(n)] for p in range(n)]
    worst = matrix_unit_residual(block, units, tol)
    if worst > tol * KAPPA:
        raise DecompositionFailed(f"matrix-unit relations residual {worst:.3e}")
    return units


# -- the composite report -----------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    dim: int
    unital: bool
    proper: bool
    hermitian: bool
    semisimple: bool
    radical_dim: int
    weakly_rickart: bool
    baer: bool
    abelian_projection_h: list | None
    block_sizes_nonabelian: list
    abelian_dim: int
    block_isomorphisms: list
    abelian_atoms: list
    residuals: dict
    witness: dict | None
    tol: float
    seed: int

    def to_dict(self):
        return {
            "dim": self.dim,
            "unital": self.unital,
            "proper": self.proper,
            "hermitian": self.hermitian,
            "semisimple": self.semisimple,
            "radical_dim": self.radical_dim,
            "weakly_rickart": self.weakly_rickart,
            "baer": self.baer,
            "abelian_projection_h": self.abelian_projection_h,
            "blocks": self.block_sizes_nonabelian,
            "abelian_dim": self.abelian_dim,
            "block_isomorphisms": self.block_isomorphisms,
            "abelian_atoms": self.abelian_atoms,
            "residuals": self.residuals,
            "witness": self.witness,
            "tol": self.tol,
            "seed": self.seed,
        }


def _coeffs_json(coeffs):
    return [[float(z.real), float(z.imag)] for z in coeffs]


def analyze(algebra, tol=DEFAULT_TOL, seed=0, wr_samples=8, baer_pairs=4, baer_subsets=2):
    """Run every checker and certify the block structure on Baer instances."""
    report = validate(algebra, tol)
    if not report.passed:
        raise ValidationFailed(report)

    unital = algebra.is_unital(tol)
    proper_rep = check_proper(algebra, tol, seed)
    rad = radical(algebra, tol)
    semisimple = not rad
    herm_rep = check_hermitian(algebra, tol, seed, rad_basis=rad)
    wr_rep = check_weakly_rickart(algebra, samples=wr_samples, tol=tol, seed=seed)

    expected = proper_rep.passed
    if (herm_rep.passed and semisimple) != expected or wr_rep.passed != expected:
        raise InternalInconsistency(
            f"equivalence coherence violated: proper={proper_rep.passed} "
            f"hermitian={herm_rep.passed} semisimple={semisimple} "
            f"weakly_rickart={wr_rep.passed}"
        )

    residuals = {
        "associativity_defect": report.associativity_defect,
        "involution_defect": report.involution_defect,
        "gram_min_eig": proper_rep.details.get("gram_min_eig"),
        "weakly_rickart_worst": wr_rep.worst_residual,
    }
    witness = proper_rep.witness

    baer = False
    h_json = None
    blocks = []
    abelian_dim = 0
    isomorphisms = []
    abelian_atoms = []
    if unital and wr_rep.passed:
        baer_rep = check_baer(
            algebra, tol, seed,
            pair_samples=baer_pairs, subset_samples=baer_subsets, singleton_limit=3,
        )
        baer = baer_rep.passed
        residuals["baer_generator_failures"] = baer_rep.details.get("generator_failures", 0)

    if baer:
        dec = central_atoms(algebra, tol, seed)
        h, m_sub, b_sub = abelian_split(algebra, tol, seed, decomposition=dec)
        h_json = _coeffs_json(h.coeffs)
        abelian_dim = b_sub.dim
        worst_units = 0.0
        for z, d in zip(dec.atoms, dec.block_dims):
            block = _image_subalgebra(algebra, z, tol)
            if _is_commutative(block, tol):
                abelian_atoms.append(_coeffs_json(z.coeffs))
                continue
            units = block_star_isomorphism(block.algebra, tol, seed)
            n = len(units)
            blocks.append(n)
            worst_units = max(worst_units, matrix_unit_residual(block.algebra, units, tol))
            isomorphisms.append({
                "size": n,
                "atom": _coeffs_json(z.coeffs),
                "matrix_units": [
                    [_coeffs_json(block.embed(units[p][q]).coeffs) for q in range(n)]
                    for p in range(n)
                ],
            })
        blocks.sort()
        if sum(n * n for n in blocks) + abelian_dim != algebra.dim:
            raise InternalInconsistency(
                f"block dimensions {blocks} + abelian {abelian_dim} != dim {algebra.dim}"
            )
        if any(n < 2 for n in blocks):
            raise InternalInconsistency("non-abelian summand contains a 1x1 block")
        residuals["matrix_unit_worst"] = worst_units

    return StructureReport(
        dim=algebra.dim,
        unital=unital,
        proper=proper_rep.passed,
        hermitian=herm_rep.passed,
        semisimple=semisimple,
        radical_dim=len(rad),
        weakly_rickart=wr_rep.passed,
        baer=baer,
        abelian_projection_h=h_json,
        block_sizes_nonabelian=blocks,
        abelian_dim=abelian_dim,
        block_isomorphisms=isomorphisms,
        abelian_atoms=abelian_atoms,
        residuals=residuals,
        witness=witness,
        tol=tol,
        seed=seed,
    )
