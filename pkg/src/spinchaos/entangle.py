"""Entanglement measures for states living in a fixed-Sz sector.

Reduced density matrices are assembled directly from sector amplitudes
(the full 2^L vector is never materialized): amplitudes are grouped by
(block bits, environment bits) into a rectangular matrix M, and
rho = M M^T.  On top of this sit the two-qubit concurrence, block
purities and entropies, the Meyer-Wallach global entanglement, and a
fermionic purity over number-conserving quadratic observables obtained
through the Jordan-Wigner mapping (site order = fermion mode order,
bit value 1 = occupied mode).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .lattice import LatticeSpec, bonds
from .symmetry import SectorBasis

MAX_BLOCK = 8
NORM_TOL = 1e-8

# sigma_y (x) sigma_y is real in the computational basis
_YY = np.array(
    [[0.0, 0.0, 0.0, -1.0],
     [0.0, 0.0, 1.0, 0.0],
     [0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0]]
)


@dataclass(frozen=True)
class ReducedDensity:
    """State of a site subset after tracing out the rest of the lattice."""

    sites: tuple
    rho: np.ndarray = field(repr=False)

    @property
    def n_sites(self) -> int:
        return len(self.sites)


class SiteBlockIndex:
    """Precomputed bookkeeping for tracing a sector state to a site block.

    Splitting every basis bitstring into (block bits, environment bits)
    once makes repeated reduced-density evaluations over many states a
    couple of dense matrix products.
    """

    def __init__(self, basis: SectorBasis, sites):
        sites = tuple(sites)
        if len(sites) == 0 or len(set(sites)) != len(sites):
            raise ConfigError("block sites must be distinct and non-empty")
        if any(s < 0 or s >= basis.L for s in sites):
            raise ConfigError("block site out of range")
        if len(sites) > MAX_BLOCK:
            raise ConfigError(f"blocks of more than {MAX_BLOCK} sites are not supported")
        self.basis = basis
        self.sites = sites
        occ = basis.occupations.astype(np.int64)
        sub_w = 1 << np.arange(len(sites) - 1, -1, -1, dtype=np.int64)
        self.sub_index = occ[:, list(sites)] @ sub_w
        env_sites = [s for s in range(basis.L) if s not in sites]
        if env_sites:
            env_w = 1 << np.arange(len(env_sites) - 1, -1, -1, dtype=np.int64)
            env_code = occ[:, env_sites] @ env_w
        else:
            env_code = np.zeros(basis.dim, dtype=np.int64)
        _, self.env_rank = np.unique(env_code, return_inverse=True)
        self.n_env = int(self.env_rank.max()) + 1
        self.dim = 1 << len(sites)

    def amplitude_matrix(self, states: np.ndarray) -> np.ndarray:
        """Group state amplitudes by (block, environment); shape (K, dim, n_env)."""
        states = np.asarray(states, dtype=np.float64)
        single = states.ndim == 1
        cols = states[:, None] if single else states
        out = np.zeros((cols.shape[1], self.dim, self.n_env))
        out[:, self.sub_index, self.env_rank] = cols.T
        return out

    def reduced_density_many(self, states: np.ndarray) -> np.ndarray:
        m = self.amplitude_matrix(states)
        return np.einsum("kae,kbe->kab", m, m)

    def reduced_density(self, state: np.ndarray) -> np.ndarray:
        return self.reduced_density_many(state)[0]

    def purity_many(self, states: np.ndarray) -> np.ndarray:
        """Tr rho^2 for every state column."""
        rho = self.reduced_density_many(states)
        return np.einsum("kab,kab->k", rho, rho)


def reduced_density(state, basis: SectorBasis, sites) -> ReducedDensity:
    """Partial trace of a normalized sector state down to ``sites``."""
    state = _check_state(state, basis)
    idx = SiteBlockIndex(basis, sites)
    return ReducedDensity(sites=idx.sites, rho=idx.reduced_density(state))


def _check_state(state, basis: SectorBasis) -> np.ndarray:
    state = np.asarray(state, dtype=np.float64)
    if state.shape != (basis.dim,):
        raise ValueError(f"state must have shape ({basis.dim},)")
    if abs(np.linalg.norm(state) - 1.0) > NORM_TOL:
        raise ValueError("state is not normalized")
    return state


def pure_concurrence(psi4) -> float:
    """Concurrence of a pure two-qubit state, |<psi| yy |psi*>|."""
    psi4 = np.asarray(psi4)
    if psi4.shape != (4,):
        raise ValueError("expected a 4-component pure state")
    return float(abs(np.conj(psi4) @ _YY @ np.conj(psi4)))


def concurrence_many(rhos: np.ndarray) -> np.ndarray:
    """Two-qubit mixed-state concurrence of a stack of 4x4 density matrices."""
    rhos = np.asarray(rhos, dtype=np.float64)
    if rhos.shape[-2:] != (4, 4):
        raise ValueError("expected 4x4 density matrices")
    flat = rhos.reshape(-1, 4, 4)
    if float(np.min(np.linalg.eigvalsh(0.5 * (flat + flat.transpose(0, 2, 1))))) < -1e-8:
        raise ValueError("density matrix is not positive semidefinite")
    rho_t = _YY @ flat @ _YY
    ev = np.linalg.eigvals(flat @ rho_t).real
    lam = np.sqrt(np.clip(ev, 0.0, None))
    lam.sort(axis=1)
    c = lam[:, 3] - lam[:, 2] - lam[:, 1] - lam[:, 0]
    return np.clip(c, 0.0, None).reshape(rhos.shape[:-2])


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of
    the eigenvalues of rho (yy rho* yy).  States here are real, so
    rho* = rho.
    """
    if isinstance(rho, ReducedDensity):
        if rho.n_sites != 2:
            raise ValueError("concurrence needs a two-site reduced density")
        rho = rho.rho
    return float(concurrence_many(np.asarray(rho)[None, :, :])[0])


def mean_nn_concurrence(state, basis: SectorBasis, lattice: LatticeSpec) -> float:
    """Concurrence averaged over all nearest-neighbor bonds."""
    state = _check_state(state, basis)
    vals = [
        concurrence(reduced_density(state, basis, (i, j))) for i, j in bonds(lattice)
    ]
    return float(np.mean(vals))


@dataclass(frozen=True)
class PartitionScheme:
    """Disjoint equal-size site blocks covering the whole lattice."""

    blocks: tuple

    def __post_init__(self):
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise ConfigError("all blocks must have the same size")
        flat = [s for b in self.blocks for s in b]
        if len(flat) != len(set(flat)):
            raise ConfigError("blocks must be disjoint")

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def n_sites(self) -> int:
        return sum(len(b) for b in self.blocks)


def default_partitions(lattice: LatticeSpec, n: int) -> PartitionScheme:
    """Canonical partition of the lattice into n-site blocks.

    Chains are cut into contiguous blocks.  Grids are cut along rows when
    the row length divides n evenly, along columns otherwise; half-lattice
    blocks split the grid into a left and a right half.  For the 3x4 grid
    this gives row-wise dominoes (n=2), the four columns (n=3), the three
    rows (n=4), and the two 3x2 halves (n=6).
    """
    L = lattice.n_sites
    if n < 1 or L % n != 0:
        raise ConfigError(f"block size {n} does not divide {L} sites")
    if lattice.kind == "chain" or n == 1:
        blocks = tuple(
            tuple(range(b * n, (b + 1) * n)) for b in range(L // n)
        )
        return PartitionScheme(blocks=blocks)
    rows, cols = lattice.rows, lattice.cols
    if cols % n == 0:
        blocks = tuple(
            tuple(lattice.site(r, c0 + c) for c in range(n))
            for r in range(rows)
            for c0 in range(0, cols, n)
        )
    elif rows % n == 0:
        blocks = tuple(
            tuple(lattice.site(r0 + r, c) for r in range(n))
            for c in range(cols)
            for r0 in range(0, rows, n)
        )
    elif n == L // 2 and cols % 2 == 0:
        half = cols // 2
        blocks = tuple(
            tuple(lattice.site(r, c0 + c) for r in range(rows) for c in range(half))
            for c0 in (0, half)
        )
    else:
        blocks = tuple(tuple(range(b * n, (b + 1) * n)) for b in range(L // n))
    return PartitionScheme(blocks=blocks)


def block_indexers(basis: SectorBasis, partition: PartitionScheme) -> list:
    if partition.n_sites != basis.L:
        raise ConfigError("partition does not cover the basis sites")
    return [SiteBlockIndex(basis, b) for b in partition.blocks]


def n_local_purity(state, basis: SectorBasis, partition: PartitionScheme) -> float:
    """Block-local purity averaged over the partition.

    Per block, (2^n Tr rho_b^2 - 1) / (2^n - 1): 1 on block-product
    states, 0 when every block is maximally mixed.  Equivalent to the
    normalized sum of squared expectations of all traceless block-local
    observables.
    """
    state = _check_state(state, basis)
    return float(n_local_purity_many(state[:, None], basis, partition)[0])


def n_local_purity_many(
    states: np.ndarray, basis: SectorBasis, partition: PartitionScheme, indexers=None
) -> np.ndarray:
    idx = indexers if indexers is not None else block_indexers(basis, partition)
    d = 1 << partition.block_size
    acc = np.zeros(np.atleast_2d(states.T).shape[0])
    for ix in idx:
        acc += (d * ix.purity_many(states) - 1.0) / (d - 1.0)
    return acc / len(idx)


def meyer_wallach(state, basis: SectorBasis) -> float:
    """Global entanglement Q = 1 - P_1 (average single-site purity)."""
    part = PartitionScheme(blocks=tuple((i,) for i in range(basis.L)))
    return 1.0 - n_local_purity(state, basis, part)


def block_entropies(rho) -> tuple:
    """(linear entropy, von Neumann entropy in bits) of a reduced density."""
    if isinstance(rho, ReducedDensity):
        rho = rho.rho
    p = np.linalg.eigvalsh(rho)
    linear = float(1.0 - np.sum(p**2))
    p = p[p > 1e-12]
    von_neumann = float(-np.sum(p * np.log2(p)))
    return linear, von_neumann


class HopIndex:
    """Jordan-Wigner matrix elements of c_i^dag c_j on a fixed-Sz basis.

    For every site pair i < j the states with an occupied mode j and an
    empty mode i are recorded together with the target state and the
    string sign (parity of occupied modes strictly between i and j).
    """

    def __init__(self, basis: SectorBasis):
        self.basis = basis
        L = basis.L
        occ = basis.occupations
        states = basis.states
        self.pairs = []
        for i in range(L):
            for j in range(i + 1, L):
                rows = np.nonzero((occ[:, i] == 0) & (occ[:, j] == 1))[0]
                mask = (1 << (L - 1 - i)) | (1 << (L - 1 - j))
                target = basis.index_of(states[rows] ^ mask)
                between = occ[rows, i + 1 : j].sum(axis=1) if j > i + 1 else np.zeros(
                    len(rows), dtype=np.int64
                )
                sign = 1.0 - 2.0 * (between % 2)
                self.pairs.append((i, j, rows, target, sign))

    def hopping_many(self, states: np.ndarray) -> np.ndarray:
        """<c_i^dag c_j> for every pair i < j and state column; shape (npairs, K)."""
        cols = np.atleast_2d(states.T).T
        out = np.empty((len(self.pairs), cols.shape[1]))
        for k, (_, _, rows, target, sign) in enumerate(self.pairs):
            out[k] = np.einsum("rk,rk->k", cols[target] * sign[:, None], cols[rows])
        return out

    def occupation_many(self, states: np.ndarray) -> np.ndarray:
        """<n_i> for every site and state column; shape (L, K)."""
        cols = np.atleast_2d(states.T).T
        return self.basis.occupations.T.astype(np.float64) @ (cols**2)


def fermionic_purity(state, basis: SectorBasis) -> float:
    """Purity over number-conserving quadratic fermion observables.

    With K_ij = <c_i^dag c_j> (real for the real states handled here, so
    the antisymmetric combination <c_i^dag c_j - c_j^dag c_i> vanishes
    identically),

        P = (2/L) sum_{i<j} (2 K_ij)^2 + (4/L) sum_i (K_ii - 1/2)^2.

    Equals 1 exactly on occupation bitstrings and any other Slater
    determinant of the L site modes.
    """
    state = _check_state(state, basis)
    return float(fermionic_purity_many(state[:, None], basis)[0])


def fermionic_purity_many(
    states: np.ndarray, basis: SectorBasis, hop: HopIndex | None = None
) -> np.ndarray:
    hop = hop if hop is not None else HopIndex(basis)
    L = basis.L
    k = hop.hopping_many(states)
    dens = hop.occupation_many(states)
    return (8.0 / L) * np.sum(k**2, axis=0) + (4.0 / L) * np.sum(
        (dens - 0.5) ** 2, axis=0
    )


def predicted_p1(xi_c: float, n: int) -> float:
    """Local purity predicted from NPC under the inverse-proportionality law.

    P_1 = N/(N-1) * (1/xi) - 1/(N-1): exactly 1 for a basis state
    (xi = 1) and 0 for a perfectly uniform state (xi = N).
    """
    if xi_c < 1:
        raise ValueError("NPC is at least 1")
    return float(n / (n - 1) / xi_c - 1.0 / (n - 1))
