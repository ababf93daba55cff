"""spinchaos: exact diagonalization of disordered Heisenberg spin lattices
with level-statistics, delocalization, and entanglement diagnostics."""

from .errors import ConfigError, NumericalError, StatisticsError
from .hamiltonian import (
    ModelParams,
    Realization,
    SectorHamiltonian,
    build_sector_hamiltonian,
    clean_realization,
    sample_realization,
)
from .lattice import Bond, LatticeSpec, ReflectionMap, bonds, chain, grid, reflections
from .linalg import Spectrum, eigh
from .symmetry import (
    SectorBasis,
    SymmetrySector,
    decompose_sectors,
    parity_matrix,
    sz_basis,
    total_spin_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Bond",
    "ConfigError",
    "LatticeSpec",
    "ModelParams",
    "NumericalError",
    "Realization",
    "ReflectionMap",
    "SectorBasis",
    "SectorHamiltonian",
    "Spectrum",
    "StatisticsError",
    "SymmetrySector",
    "__version__",
    "bonds",
    "build_sector_hamiltonian",
    "chain",
    "clean_realization",
    "decompose_sectors",
    "eigh",
    "grid",
    "parity_matrix",
    "reflections",
    "sample_realization",
    "sz_basis",
    "total_spin_matrix",
]
