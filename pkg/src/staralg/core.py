"""Finite-dimensional complex *-algebras presented by structure constants.

An algebra of dimension n is stored as a tensor ``mul`` with
``e_i e_j = sum_k mul[i, j, k] e_k`` and an involution matrix ``star`` with
``(e_i)* = sum_k star[k, i] e_k``; on coefficient vectors the involution acts
as ``v -> star @ conj(v)``.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditioned, MalformedInput, ParentMismatch
from .linalg import cluster_points

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    mul: np.ndarray                 # (n, n, n) complex
    star: np.ndarray                # (n, n) complex
    unit: np.ndarray | None = None  # optional coefficient vector, validated not trusted
    labels: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=complex)
        star = np.asarray(self.star, dtype=complex)
        n = mul.shape[0] if mul.ndim == 3 else 0
        if mul.ndim != 3 or mul.shape != (n, n, n) or n < 1:
            raise MalformedInput(f"mul tensor has shape {mul.shape}, expected (n,n,n)")
        if star.shape != (n, n):
            raise MalformedInput(f"star matrix has shape {star.shape}, expected ({n},{n})")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "star", star)
        if self.unit is not None:
            u = np.asarray(self.unit, dtype=complex)
            if u.shape != (n,):
                raise MalformedInput("unit vector length does not match dim")
            object.__setattr__(self, "unit", u)

    @property
    def dim(self):
        return self.mul.shape[0]

    # -- element constructors -------------------------------------------------

    def element(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (self.dim,):
            raise MalformedInput(f"coefficient vector length {coeffs.shape} != dim {self.dim}")
        return Element(self, coeffs)

    def basis_element(self, i):
        v = np.zeros(self.dim, dtype=complex)
        v[i] = 1.0
        return Element(self, v)

    def zero(self):
        return Element(self, np.zeros(self.dim, dtype=complex))

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    # -- multiplication operators --------------------------------------------

    def left_mat(self, coeffs):
        """Matrix of x -> a x on coefficient vectors."""
        return np.einsum("i,ijk->kj", coeffs, self.mul)

    def right_mat(self, coeffs):
        """Matrix of x -> x a on coefficient vectors."""
        return np.einsum("j,ijk->ki", coeffs, self.mul)

    def star_coeffs(self, coeffs):
        return self.star @ np.conj(coeffs)

    def mul_coeffs(self, a, b):
        return np.einsum("i,j,ijk->k", a, b, self.mul)

    # -- unit detection -------------------------------------------------------

    def _unit_solution(self):
        """Least-squares two-sided unit and its relative residual (cached)."""
        if "unit_lsq" not in self._cache:
            n = self.dim
            lhs = np.concatenate(
                [
                    self.mul.transpose(0, 1, 2).reshape(n, n * n).T,   # rows (j,k): sum_i u_i c[i,j,k]
                    self.mul.transpose(1, 0, 2).reshape(n, n * n).T,   # rows (j,k): sum_i u_i c[j,i,k]
                ]
            )
            rhs = np.concatenate([np.eye(n).reshape(n * n), np.eye(n).reshape(n * n)]).astype(complex)
            u, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
            res = float(np.linalg.norm(lhs @ u - rhs)) / np.sqrt(2 * n)
            self._cache["unit_lsq"] = (u, res)
        return self._cache["unit_lsq"]

    def unit_vector(self, tol=DEFAULT_TOL):
        """Coefficients of the two-sided unit, or None if the algebra is non-unital."""
        u, res = self._unit_solution()
        return u if res <= tol else None

    def is_unital(self, tol=DEFAULT_TOL):
        return self.unit_vector(tol) is not None

    def one(self, tol=DEFAULT_TOL):
        u = self.unit_vector(tol)
        if u is None:
            raise MalformedInput("algebra has no unit")
        return Element(self, u)


@dataclass(frozen=True, eq=False)
class Element:
    parent: StarAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    def _check(self, other):
        if other.parent is not self.parent:
            raise ParentMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.parent, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return Element(self.parent, self.coeffs - other.coeffs)

    def __neg__(self):
        return Element(self.parent, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.parent, self.parent.mul_coeffs(self.coeffs, other.coeffs))
        if isinstance(other, numbers.Number):
            return Element(self.parent, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return Element(self.parent, self.coeffs * other)
        return NotImplemented

    def star(self):
        return Element(self.parent, self.parent.star_coeffs(self.coeffs))

    def norm(self):
        """Euclidean norm of the coefficient vector (basis-dependent scale)."""
        return float(np.linalg.norm(self.coeffs))

    def lmat(self):
        return self.parent.left_mat(self.coeffs)

    def rmat(self):
        return self.parent.right_mat(self.coeffs)

    def is_zero(self, tol=DEFAULT_TOL):
        return self.norm() <= tol

    def __repr__(self):
        return f"Element({np.array2string(self.coeffs, precision=4, suppress_small=True)})"


# -- arithmetic as free functions (mirrors of the methods) ---------------------

def mul(a, b):
    return a * b


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def scale(lam, a):
    return lam * a


def star(a):
    return a.star()


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    dim: int
    associativity_defect: float
    involution_defect: float
    unit_defect: float
    tol: float
    passed: bool

    def to_dict(self):
        return {
            "dim": self.dim,
            "associativity_defect": self.associativity_defect,
            "involution_defect": self.involution_defect,
            "unit_defect": self.unit_defect,
            "tol": self.tol,
            "passed": self.passed,
        }


def validate(algebra, tol=DEFAULT_TOL):
    """Check the *-algebra axioms on basis elements, to tolerance."""
    c = algebra.mul
    s = algebra.star
    scale_ = max(1.0, float(np.max(np.abs(c)))) ** 2

    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    assoc = float(np.max(np.abs(left - right)))

    # (e_i)** = e_i : star is antilinear, so applying it twice conjugates
    dstar = float(np.max(np.abs(s @ np.conj(s) - np.eye(algebra.dim))))
    # (e_i e_j)* = (e_j)* (e_i)*
    lhs = np.einsum("kl,ijl->ijk", s, np.conj(c))
    rhs = np.einsum("aj,bi,abk->ijk", s, s, c)
    inv = max(dstar, float(np.max(np.abs(lhs - rhs))))

    unit_defect = 0.0
    if algebra.unit is not None:
        u = algebra.unit
        for j in range(algebra.dim):
            ej = np.zeros(algebra.dim)
            ej[j] = 1.0
            unit_defect = max(
                unit_defect,
                float(np.linalg.norm(algebra.mul_coeffs(u, ej) - ej)),
                float(np.linalg.norm(algebra.mul_coeffs(ej, u) - ej)),
            )

    passed = max(assoc, inv, unit_defect) <= tol * scale_
    return ValidationReport(algebra.dim, assoc, inv, unit_defect, tol, passed)


# -- unitization and the unital hull ------------------------------------------

def unitize(algebra):
    """Standard unitization: adjoin a unit at index 0, embed A as indices 1..n.

    Always adjoins a new unit, even on unital input.
    """
    n = algebra.dim
    c = np.zeros((n + 1, n + 1, n + 1), dtype=complex)
    c[0, 0, 0] = 1.0
    for i in range(n):
        c[0, i + 1, i + 1] = 1.0
        c[i + 1, 0, i + 1] = 1.0
    c[1:, 1:, 1:] = algebra.mul
    s = np.zeros((n + 1, n + 1), dtype=complex)
    s[0, 0] = 1.0
    s[1:, 1:] = algebra.star
    unit = np.zeros(n + 1, dtype=complex)
    unit[0] = 1.0
    labels = None
    if algebra.labels is not None:
        labels = ("1",) + tuple(algebra.labels)
    return StarAlgebra(c, s, unit=unit, labels=labels)


@dataclass(frozen=True, eq=False)
class UnitalHull:
    """A unital algebra containing A: either A itself or its unitization."""

    algebra: StarAlgebra
    embed_mat: np.ndarray  # (hull_dim, dim)
    adjoined: bool
    unit_coeffs: np.ndarray

    def embed(self, a):
        return Element(self.algebra, self.embed_mat @ a.coeffs)

    def restrict_coeffs(self, coeffs, parent, tol=DEFAULT_TOL):
        """Pull hull coefficients back to A; error if outside A at tol."""
        proj = self.embed_mat.conj().T @ coeffs
        back = self.embed_mat @ proj
        res = float(np.linalg.norm(back - coeffs))
        if res > tol * max(1.0, float(np.linalg.norm(coeffs))) * 1e3:
            raise IllConditioned("hull element does not lie in the base algebra", res)
        return Element(parent, proj)

    def one(self):
        return Element(self.algebra, self.unit_coeffs)


def unital_hull(algebra, tol=DEFAULT_TOL):
    """A itself when a unit exists; otherwise the unitization (cached)."""
    key = ("hull", round(np.log10(tol), 3))
    if key not in algebra._cache:
        u = algebra.unit_vector(tol)
        if u is not None:
            hull = UnitalHull(algebra, np.eye(algebra.dim, dtype=complex), False, u)
        else:
            big = unitize(algebra)
            emb = np.zeros((algebra.dim + 1, algebra.dim), dtype=complex)
            emb[1:, :] = np.eye(algebra.dim)
            hull = UnitalHull(big, emb, True, big.unit)
        algebra._cache[key] = hull
    return algebra._cache[key]


# -- minimal polynomial and spectrum ------------------------------------------

def minimal_polynomial(a, tol=DEFAULT_TOL):
    """Monic minimal polynomial of `a`, computed in the unital hull.

    Returns coefficients highest-degree first (numpy convention). Uses the
    Krylov sequence of the left-regular representation with least-squares
    dependence decisions at the given tolerance.
    """
    hull = unital_hull(a.parent, tol)
    m = hull.embed(a).lmat()
    nh = m.shape[0]
    s = max(1.0, float(np.linalg.norm(m, 2)))
    ms = m / s

    powers = [np.eye(nh, dtype=complex).reshape(-1)]
    cur = np.eye(nh, dtype=complex)
    best = None
    for deg in range(1, nh + 1):
        cur = cur @ ms
        target = cur.reshape(-1)
        k = np.stack(powers, axis=1)
        x, *_ = np.linalg.lstsq(k, target, rcond=None)
        res = float(np.linalg.norm(k @ x - target)) / max(1.0, float(np.linalg.norm(target)))
        if best is None or res < best[0]:
            best = (res, deg, x)
        if res <= tol:
            break
        powers.append(target)

    res, deg, x = best
    if res > np.sqrt(tol):
        raise IllConditioned("no reliable Krylov dependence found", res)
    # scaled poly: z^deg - sum_j x_j z^j ; unscale roots by s
    coeffs = np.zeros(deg + 1, dtype=complex)
    coeffs[0] = 1.0
    for j in range(deg):
        coeffs[deg - j] = -x[j] * s ** (deg - j)
    return coeffs


@dataclass(frozen=True)
class Spectrum:
    points: tuple
    includes_forced_zero: bool

    def real_parts_only(self, tol=DEFAULT_TOL):
        scale_ = max(1.0, max(abs(p) for p in self.points))
        return all(abs(p.imag) <= tol * 1e3 * scale_ for p in self.points)


def distinct_eigenvalues(a, tol=DEFAULT_TOL):
    """Clustered eigenvalues of the regular representation in the unital hull.

    This set equals the root set of the minimal polynomial of `a` but is
    computed through an eigenvalue solver, which is far better conditioned
    than polynomial coefficient root-finding at moderate dimensions.
    """
    hull = unital_hull(a.parent, tol)
    m = hull.embed(a).lmat()
    vals = np.linalg.eigvals(m)
    return cluster_points([complex(v) for v in vals], tol)


def spectrum(a, tol=DEFAULT_TOL):
    """Spectrum of `a`; 0 is adjoined for non-unital parents."""
    pts = distinct_eigenvalues(a, tol)
    forced = unital_hull(a.parent, tol).adjoined
    if forced and not any(abs(p) <= tol * max(1.0, max(abs(q) for q in pts)) for p in pts):
        pts.append(0j)  # defensive; the hull representation always has kernel
    return Spectrum(tuple(pts), forced)


# -- random elements ----------------------------------------------------------

def random_element(algebra, rng, scale_=1.0):
    n = algebra.dim
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return Element(algebra, scale_ * v / np.sqrt(2 * n))


def random_selfadjoint(algebra, rng, scale_=1.0):
    a = random_element(algebra, rng, scale_)
    return 0.5 * (a + a.star())


# -- JSON interchange ---------------------------------------------------------

def algebra_to_json(algebra, tol=DEFAULT_TOL):
    """Sparse JSON form; see README for the schema."""
    n = algebra.dim
    mul_entries = []
    for i, j, k in zip(*np.nonzero(np.abs(algebra.mul) > 0)):
        v = algebra.mul[i, j, k]
        mul_entries.append([int(i), int(j), int(k), float(v.real), float(v.imag)])
    star_entries = []
    for k, i in zip(*np.nonzero(np.abs(algebra.star) > 0)):
        v = algebra.star[k, i]
        star_entries.append([int(i), int(k), float(v.real), float(v.imag)])
    out = {"dim": n, "mul": mul_entries, "star": star_entries}
    u = algebra.unit_vector(tol)
    out["unital"] = u is not None
    if algebra.unit is not None:
        out["unit"] = [[float(x.real), float(x.imag)] for x in algebra.unit]
    if algebra.labels is not None:
        out["labels"] = list(algebra.labels)
    return out


def algebra_from_json(data):
    try:
        n = int(data["dim"])
        c = np.zeros((n, n, n), dtype=complex)
        for i, j, k, re, im in data["mul"]:
            c[int(i), int(j), int(k)] = re + 1j * im
        s = np.zeros((n, n), dtype=complex)
        for i, k, re, im in data["star"]:
            s[int(k), int(i)] = re + 1j * im
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedInput(f"bad algebra JSON: {exc}") from exc
    unit = None
    if data.get("unit") is not None:
        unit = np.array([re + 1j * im for re, im in data["unit"]], dtype=complex)
    labels = tuple(data["labels"]) if data.get("labels") else None
    return StarAlgebra(c, s, unit=unit, labels=labels)
