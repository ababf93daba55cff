"""Disorder realizations and sector Hamiltonians of the spin-1/2 model.

The model couples every nearest-neighbor pair with an isotropic exchange
term and applies a z bias field on every site,

    H = sum_i (eps_i / 2) sigma_z^(i)
      + sum_{bonds (i,j)} (J_ij / 4) vec(sigma)^(i) . vec(sigma)^(j),

with eps_i = eps + d_eps_i and J_ij = J + d_J_ij drawn independently.
In a fixed-Sz bitstring basis (bit 0 = up) the matrix is real symmetric:
the Ising part is diagonal, the flip-flop part connects states that
differ by swapping one antiparallel bond.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .lattice import LatticeSpec, bonds
from .symmetry import SectorBasis, z_values

DISORDER_LAWS = ("uniform", "gaussian")
# Controls the gaussian variant: the standard deviation of each draw is
# spread / GAUSSIAN_SPREAD_FACTOR, so the two laws are compared at equal
# nominal spread.
GAUSSIAN_SPREAD_FACTOR = 4.0


@dataclass(frozen=True)
class ModelParams:
    """Mean and spread of the on-site energies and exchange couplings."""

    eps_mean: float
    eps_spread: float
    j_mean: float
    j_spread: float
    disorder_law: str = "uniform"

    def __post_init__(self):
        if self.eps_spread < 0 or self.j_spread < 0:
            raise ConfigError("disorder spreads must be non-negative")
        if self.disorder_law not in DISORDER_LAWS:
            raise ConfigError(f"unknown disorder law {self.disorder_law!r}")


@dataclass
class Realization:
    """One draw of on-site energies and bond couplings, with its seed."""

    eps: np.ndarray
    j: np.ndarray
    seed: int


def sample_realization(params: ModelParams, lattice: LatticeSpec, seed: int) -> Realization:
    """Draw one disorder realization.

    The PCG64 stream seeded with ``seed`` is consumed in a fixed order:
    all site energies in site order, then all bond couplings in canonical
    bond order.  Uniform disorder is drawn on [-spread/2, spread/2];
    gaussian disorder has zero mean and sigma = spread/4.  The same
    (params, lattice, seed) triple always reproduces the same realization.
    """
    if seed < 0:
        raise ConfigError("seeds must be non-negative")
    rng = np.random.default_rng(seed)
    n_sites = lattice.n_sites
    n_bonds = len(bonds(lattice))
    if params.disorder_law == "uniform":
        d_eps = rng.uniform(-params.eps_spread / 2, params.eps_spread / 2, n_sites)
        d_j = rng.uniform(-params.j_spread / 2, params.j_spread / 2, n_bonds)
    else:
        d_eps = rng.normal(0.0, params.eps_spread / GAUSSIAN_SPREAD_FACTOR, n_sites)
        d_j = rng.normal(0.0, params.j_spread / GAUSSIAN_SPREAD_FACTOR, n_bonds)
    return Realization(eps=params.eps_mean + d_eps, j=params.j_mean + d_j, seed=seed)


def clean_realization(lattice: LatticeSpec, j_mean: float, eps_mean: float = 0.0) -> Realization:
    """Disorder-free couplings: eps_i = eps_mean, J_ij = j_mean."""
    return Realization(
        eps=np.full(lattice.n_sites, float(eps_mean)),
        j=np.full(len(bonds(lattice)), float(j_mean)),
        seed=-1,
    )


@dataclass(frozen=True)
class SectorHamiltonian:
    """Dense real symmetric Hamiltonian restricted to a fixed-Sz basis."""

    basis: SectorBasis
    matrix: np.ndarray = field(repr=False)


def build_sector_hamiltonian(
    real: Realization, lattice: LatticeSpec, basis: SectorBasis
) -> SectorHamiltonian:
    """Assemble the Hamiltonian of one realization in a fixed-Sz sector.

    Diagonal entry for bitstring b:  sum_i (eps_i/2) z_i +
    sum_bonds (J_ij/4) z_i z_j  with z = +-1.  Off-diagonal entry J_ij/2
    between states related by swapping an antiparallel pair on bond (i,j).
    The matrix is exactly symmetric by construction.
    """
    blist = bonds(lattice)
    if lattice.n_sites != basis.L:
        raise ConfigError("lattice size does not match the basis")
    if len(real.eps) != lattice.n_sites or len(real.j) != len(blist):
        raise ConfigError("realization arrays do not match the lattice")
    z = z_values(basis)
    N = basis.dim
    h = np.zeros((N, N))
    diag = z @ (np.asarray(real.eps, dtype=np.float64) / 2.0)
    for k, (i, j) in enumerate(blist):
        zz = z[:, i] * z[:, j]
        diag += (real.j[k] / 4.0) * zz
        anti = np.nonzero(zz < 0)[0]
        if len(anti) == 0:
            continue
        mask = (1 << (basis.L - 1 - i)) | (1 << (basis.L - 1 - j))
        partner = basis.index_of(basis.states[anti] ^ mask)
        h[anti, partner] += real.j[k] / 2.0
    h[np.arange(N), np.arange(N)] = diag
    return SectorHamiltonian(basis=basis, matrix=h)
