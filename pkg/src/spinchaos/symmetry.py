"""Fixed-magnetization bitstring bases and their symmetry decomposition.

Conventions used everywhere in the package:

* bit value 0 means sigma_z eigenvalue +1 ("up"), bit value 1 means -1;
* site ``i`` lives at bit position ``L - 1 - i`` of the basis integer, so
  the binary string of a state reads sites 0..L-1 left to right;
* ``sz_twice`` is twice the total magnetization, i.e. (#zeros - #ones).

Sectors of fixed (Sz, S, R) are carved out of a fixed-Sz basis by
diagonalizing the total-spin operator and then the reflection parities
inside each spin eigenspace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import ConfigError, NumericalError
from .lattice import ReflectionMap


@dataclass(frozen=True)
class SectorBasis:
    """All L-bit states with a fixed number of up spins, ascending order."""

    L: int
    sz_twice: int
    states: np.ndarray = field(repr=False)
    # occupations[a, i] is the bit of state a at site i (1 = down spin)
    occupations: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_of(self, states) -> np.ndarray:
        """Positions of the given state integers (must belong to the basis)."""
        idx = np.searchsorted(self.states, states)
        if np.any(self.states[idx] != states):
            raise ValueError("state outside this Sz sector")
        return idx

    def bitstring(self, position: int) -> str:
        return format(int(self.states[position]), f"0{self.L}b")


def sz_basis(L: int, sz_twice: int) -> SectorBasis:
    """Basis of the fixed-Sz subspace with 2*Sz = ``sz_twice``."""
    if L < 1:
        raise ConfigError("need at least one site")
    if abs(sz_twice) > L or (L + sz_twice) % 2 != 0:
        raise ConfigError(f"2*Sz = {sz_twice} incompatible with L = {L}")
    n_down = (L - sz_twice) // 2
    states = np.sort(
        np.fromiter(
            (
                sum(1 << (L - 1 - i) for i in sites)
                for sites in combinations(range(L), n_down)
            ),
            dtype=np.int64,
            count=_binomial(L, n_down),
        )
    )
    shifts = np.arange(L - 1, -1, -1, dtype=np.int64)
    occ = ((states[:, None] >> shifts[None, :]) & 1).astype(np.int8)
    return SectorBasis(L=L, sz_twice=sz_twice, states=states, occupations=occ)


def _binomial(n: int, k: int) -> int:
    from math import comb

    return comb(n, k) if 0 <= k <= n else 0


def z_values(basis: SectorBasis) -> np.ndarray:
    """Matrix of sigma_z eigenvalues, shape (dim, L), entries +-1."""
    return 1.0 - 2.0 * basis.occupations


def total_spin_matrix(basis: SectorBasis) -> np.ndarray:
    """Matrix of S^2 = (sum_i vec(sigma)_i / 2)^2 in the bitstring basis."""
    L, N = basis.L, basis.dim
    z = z_values(basis)
    diag = 3.0 * L / 4.0 + (basis.sz_twice**2 - L) / 4.0
    s2 = np.zeros((N, N))
    np.fill_diagonal(s2, diag)
    for i in range(L):
        for j in range(i + 1, L):
            anti = np.nonzero(z[:, i] * z[:, j] < 0)[0]
            if len(anti) == 0:
                continue
            mask = (1 << (L - 1 - i)) | (1 << (L - 1 - j))
            partner = basis.index_of(basis.states[anti] ^ mask)
            s2[anti, partner] += 1.0
    return s2


def parity_permutation(basis: SectorBasis, refl: ReflectionMap) -> np.ndarray:
    """Index array pi with pi[a] = position of the reflected state of a."""
    if len(refl.perm) != basis.L:
        raise ConfigError("reflection does not match the basis size")
    L = basis.L
    shift = np.array([L - 1 - refl.perm[i] for i in range(L)], dtype=np.int64)
    reflected = (basis.occupations.astype(np.int64) << shift[None, :]).sum(axis=1)
    return basis.index_of(reflected)


def parity_matrix(basis: SectorBasis, refl: ReflectionMap) -> np.ndarray:
    """Dense permutation matrix of the lattice reflection on the basis."""
    pi = parity_permutation(basis, refl)
    N = basis.dim
    p = np.zeros((N, N))
    p[pi, np.arange(N)] = 1.0
    return p


@dataclass(frozen=True)
class SymmetrySector:
    """Orthonormal block of fixed (Sz, S, parities) inside a SectorBasis.

    ``vectors`` has one orthonormal column per sector state, expressed in
    the coordinates of the parent basis.  ``parities`` holds one +-1 entry
    per resolved reflection (empty when parity was not resolved).
    """

    sz_twice: int
    spin: float
    parities: tuple
    vectors: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def spin_from_eigenvalue(value: float) -> float:
    """Round an S^2 eigenvalue to the nearest valid S (integer or half-odd)."""
    s = 0.5 * (np.sqrt(max(4.0 * value + 1.0, 0.0)) - 1.0)
    s = round(2.0 * s) / 2.0
    if abs(value - s * (s + 1.0)) > 0.25:
        raise NumericalError(f"S^2 eigenvalue {value} is not close to any S(S+1)")
    return s


def _split_by_spin(vectors: np.ndarray, s2: np.ndarray):
    """Refine a block of orthonormal columns into total-spin eigenspaces."""
    block = vectors.T @ s2 @ vectors
    w, u = np.linalg.eigh(0.5 * (block + block.T))
    refined = vectors @ u
    labels = [spin_from_eigenvalue(val) for val in w]
    out = []
    start = 0
    for stop in range(1, len(labels) + 1):
        if stop == len(labels) or labels[stop] != labels[start]:
            out.append((labels[start], refined[:, start:stop]))
            start = stop
    return out


def _split_by_parity(vectors: np.ndarray, pi: np.ndarray):
    """Refine a block into reflection-parity eigenspaces (R = +1 first)."""
    block = vectors.T @ vectors[pi]
    w, u = np.linalg.eigh(0.5 * (block + block.T))
    if np.any(np.abs(np.abs(w) - 1.0) > 1e-6):
        raise NumericalError("reflection parity eigenvalues are not close to +-1")
    refined = vectors @ u
    out = []
    for sign in (1, -1):
        cols = np.nonzero(np.sign(w).astype(int) == sign)[0]
        if len(cols):
            out.append((sign, refined[:, cols]))
    return out


def _fix_column_signs(v: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(v), axis=0)
    signs = np.sign(v[idx, np.arange(v.shape[1])])
    signs[signs == 0] = 1.0
    return v * signs


def decompose_sectors(basis: SectorBasis, use_spin: bool = True, refl=None) -> list:
    """Split a fixed-Sz basis into orthonormal (Sz, S, R) symmetry sectors.

    Parameters
    ----------
    basis : SectorBasis
    use_spin : bool
        Resolve the total-spin quantum number S.
    refl : ReflectionMap or sequence of ReflectionMap, optional
        Reflection(s) whose parity is resolved inside each spin block; with
        several reflections every +-1 combination becomes its own sector.

    Sectors are ordered by ascending S, then parity tuples with +1 before
    -1.  The stacked sector vectors form an orthogonal dim x dim matrix.
    """
    refls = []
    if refl is not None:
        refls = [refl] if isinstance(refl, ReflectionMap) else list(refl)

    blocks = [(np.nan, (), np.eye(basis.dim))]
    if use_spin:
        s2 = total_spin_matrix(basis)
        blocks = [(s, (), vec) for s, vec in _split_by_spin(blocks[0][2], s2)]
    for r in refls:
        pi = parity_permutation(basis, r)
        blocks = [
            (s, par + (sign,), vec)
            for s, par, v in blocks
            for sign, vec in _split_by_parity(v, pi)
        ]

    blocks.sort(key=lambda b: (b[0] if use_spin else 0.0, tuple((1 - p) // 2 for p in b[1])))
    sectors = [
        SymmetrySector(
            sz_twice=basis.sz_twice,
            spin=s,
            parities=par,
            vectors=_fix_column_signs(vec),
        )
        for s, par, vec in blocks
    ]
    if sum(sec.dim for sec in sectors) != basis.dim:
        raise NumericalError("sector dimensions do not add up to the basis dimension")
    return sectors


def project_into_sector(matrix: np.ndarray, sector: SymmetrySector) -> np.ndarray:
    """Restrict an operator given in the parent basis to a symmetry sector."""
    v = sector.vectors
    return v.T @ matrix @ v
