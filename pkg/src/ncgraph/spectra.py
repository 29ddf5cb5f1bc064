"""Laplacian spectra: closed-form rules, the AC-group formula and a certified numeric oracle.

Three independent routes end in the same :class:`Spectrum` type:

* clique-union and complement rules (pure multiset arithmetic),
* the AC-group formula, driven by the centralizer partition of the group,
* cyclic Jacobi on the Laplacian, rounded to integers and then certified
  eigenvalue by eigenvalue with exact integer rank computations.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numba
import numpy as np

from .errors import DomainError, SolverError
from .graphs import CliqueUnion, SimpleGraph
from .groups import FiniteGroup, center, centralizer_partition, is_ac_group

DEFAULT_TOL = 1e-8
JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50
BAREISS_MAX_DIM = 128


def _exact(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Rational):
        f = Fraction(value)
        return f.numerator if f.denominator == 1 else f
    if isinstance(value, str):
        return _exact(Fraction(value))
    raise TypeError(f"eigenvalues must be exact integers or rationals, got {value!r}")


@dataclass(frozen=True)
class Spectrum:
    """Merged multiset of (eigenvalue, multiplicity), strictly ascending."""

    entries: tuple = ()

    def __post_init__(self):
        vals = [v for v, _ in self.entries]
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise DomainError("spectrum entries must be strictly ascending; use Spectrum.from_terms")
        if any(m <= 0 for _, m in self.entries):
            raise DomainError("multiplicities must be positive")

    @classmethod
    def from_terms(cls, terms) -> Spectrum:
        """Merge (value, multiplicity) terms; zero multiplicities vanish, negative ones are an error."""
        acc = defaultdict(int)
        for value, mult in terms:
            mult = int(mult)
            if mult < 0:
                raise DomainError(f"negative multiplicity {mult} for eigenvalue {value}")
            if mult:
                acc[_exact(value)] += mult
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def from_values(cls, values) -> Spectrum:
        return cls.from_terms((v, 1) for v in values)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def eigenvalues(self) -> list:
        return [v for v, _ in self.entries]

    def multiplicity(self, value) -> int:
        return dict(self.entries).get(_exact(value), 0)

    def trace(self):
        return sum(v * m for v, m in self.entries)

    def values(self) -> list:
        """Eigenvalues with repetition, ascending."""
        return [v for v, m in self.entries for _ in range(m)]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "{" + ", ".join(f"{v}^{m}" for v, m in self.entries) + "}"

    def to_json(self) -> list[dict]:
        return [
            {"eigenvalue": v if isinstance(v, int) else f"{v.numerator}/{v.denominator}", "multiplicity": m}
            for v, m in self.entries
        ]

    @classmethod
    def from_json(cls, data) -> Spectrum:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_terms((d["eigenvalue"], d["multiplicity"]) for d in data)


def laplacian(g: SimpleGraph) -> np.ndarray:
    a = g.adjacency.astype(np.int64)
    return np.diag(a.sum(axis=1)) - a


def spectrum_of_clique_union(u: CliqueUnion) -> Spectrum:
    terms = [(0, u.clique_count)]
    terms += [(m, l * (m - 1)) for m, l in u.parts]
    return Spectrum.from_terms(terms)


def spectrum_of_complement(s: Spectrum, v: int) -> Spectrum:
    """Laplacian spectrum of the complement of a graph on v vertices with spectrum s."""
    if s.total != v:
        raise DomainError(f"spectrum has {s.total} eigenvalues, graph has {v} vertices")
    if s.multiplicity(0) < 1:
        raise DomainError("a Laplacian spectrum always contains 0")
    terms = [(0, 1)]
    for alpha, a in s.entries:
        terms.append((v - alpha, a - 1 if alpha == 0 else a))
    return Spectrum.from_terms(terms)


def spectrum_ac_structural(G: FiniteGroup) -> Spectrum:
    if G.is_abelian:
        raise DomainError(f"{G.name} is abelian")
    if not is_ac_group(G):
        raise DomainError(f"{G.name} is not an AC-group; use the numeric route")
    part = centralizer_partition(G)
    order, z = G.order, len(center(G))
    terms = [(0, 1), (order - z, part.n - 1)]
    terms += [(order - x, x - z - 1) for x in part.sizes]
    return Spectrum.from_terms(terms)


@dataclass(frozen=True)
class NumericSpectrum:
    values: np.ndarray
    residual: float  # off-diagonal Frobenius norm at exit
    sweeps: int


@numba.njit(cache=True)
def _jacobi_cyclic(a, rel_tol, max_sweeps):
    n = a.shape[0]
    off0 = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                off0 += a[i, j] * a[i, j]
    off0 = np.sqrt(off0)
    if off0 == 0.0:
        return 0, 0.0
    off = off0
    for sweep in range(1, max_sweeps + 1):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        off = np.sqrt(off)
        if off < rel_tol * off0:
            return sweep, off
    return -1, off


def spectrum_numeric(L, rel_tol: float = JACOBI_REL_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> NumericSpectrum:
    """All eigenvalues of a symmetric matrix by cyclic row-major Jacobi sweeps."""
    a = np.array(L, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
        raise DomainError("Jacobi needs a square symmetric matrix")
    if a.shape[0] == 0:
        return NumericSpectrum(np.zeros(0), 0.0, 0)
    sweeps, off = _jacobi_cyclic(a, rel_tol, max_sweeps)
    if sweeps < 0:
        raise SolverError(f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})")
    return NumericSpectrum(np.sort(np.diag(a)), float(off), int(sweeps))


class NonIntegralSpectrum(DomainError):
    def __init__(self, value: float, tol: float):
        self.value = value
        super().__init__(f"eigenvalue {value!r} is not within {tol:g} of an integer")


def round_to_integer_spectrum(ns: NumericSpectrum, tol: float = DEFAULT_TOL) -> Spectrum:
    vals = np.asarray(ns.values, dtype=float)
    rounded = np.rint(vals)
    bad = np.flatnonzero(np.abs(vals - rounded) > tol)
    if bad.size:
        raise NonIntegralSpectrum(float(vals[bad[0]]), tol)
    return Spectrum.from_values(int(r) for r in rounded)


def bareiss_rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on exact Python integers.

    Column pivot is the first row (at or below the current one) with a
    nonzero entry in that column.
    """
    rows = [[int(x) for x in r] for r in M]
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    prev, rank = 1, 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = rows[i]
            a = row[c]
            if a:
                rows[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                rows[i] = [p * x // prev for x in row]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def exact_rank(M, backend: str = "auto") -> int:
    """Exact rank of an integer matrix.

    ``bareiss`` is the in-house elimination above; ``flint`` delegates to
    FLINT's exact integer matrix rank. ``auto`` picks Bareiss up to
    BAREISS_MAX_DIM rows and FLINT beyond, where Python big-integer
    elimination becomes impractically slow.
    """
    M = np.asarray(M, dtype=object)
    if backend == "auto":
        backend = "bareiss" if max(M.shape, default=0) <= BAREISS_MAX_DIM else "flint"
    if backend == "bareiss":
        return bareiss_rank(M.tolist())
    if backend == "flint":
        import flint

        if M.size == 0:
            return 0
        return int(flint.fmpz_mat([[int(x) for x in row] for row in M.tolist()]).rank())
    raise ValueError(f"unknown rank backend {backend!r}")


def certify_multiplicity(L, lam: int, backend: str = "auto") -> int:
    """Exact multiplicity of the integer ``lam`` as an eigenvalue of symmetric integer L."""
    L = np.asarray(L, dtype=np.int64)
    n = L.shape[0]
    return n - exact_rank(L - int(lam) * np.eye(n, dtype=np.int64), backend)


@dataclass(frozen=True)
class LIntegrality:
    integral: bool
    certificate: Spectrum | None = None
    reason: str = ""

    def __bool__(self):
        return self.integral


def certified_integer_spectrum(L, tol: float = DEFAULT_TOL, backend: str = "auto") -> Spectrum:
    """Round the Jacobi spectrum, then replace each multiplicity by its exact value.

    Raises NonIntegralSpectrum if rounding fails and DomainError if the
    certified multiplicities do not account for every eigenvalue.
    """
    L = np.asarray(L, dtype=np.int64)
    rounded = round_to_integer_spectrum(spectrum_numeric(L), tol)
    certified = Spectrum.from_terms((v, certify_multiplicity(L, v, backend)) for v in rounded.eigenvalues)
    if certified.total != L.shape[0]:
        raise DomainError(
            f"certified multiplicities sum to {certified.total}, dimension is {L.shape[0]}; rounded {rounded}"
        )
    return certified


def is_l_integral(g: SimpleGraph, tol: float = DEFAULT_TOL, backend: str = "auto") -> LIntegrality:
    try:
        cert = certified_integer_spectrum(laplacian(g), tol, backend)
    except DomainError as exc:
        return LIntegrality(False, None, str(exc))
    return LIntegrality(True, cert)
