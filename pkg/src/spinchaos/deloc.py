"""Number of principal components (NPC) in several reference frames.

NPC of a normalized state is 1 / sum_n |<n|psi>|^4: the effective number
of frame states supporting the state.  Frames provided here: the
computational basis itself, the eigenbasis of the clean exchange
Hamiltonian (J-basis), and the eigenbasis of the previous disorder
realization (relative delocalization).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import symmetry
from .errors import ConfigError
from .hamiltonian import build_sector_hamiltonian, clean_realization
from .lattice import LatticeSpec, reflections
from .linalg import Spectrum, eigh, fix_signs
from .symmetry import SectorBasis

NORM_TOL = 1e-8


@dataclass(frozen=True)
class BasisFrame:
    """Orthogonal map from sector coordinates to a reference frame.

    ``transform`` holds the frame vectors as columns; ``None`` stands for
    the identity (computational basis).
    """

    label: str
    transform: np.ndarray | None = field(repr=False, default=None)

    def coefficients(self, states: np.ndarray) -> np.ndarray:
        """Expand states (columns) in the frame."""
        if self.transform is None:
            return states
        return self.transform.T @ states


def c_basis_frame() -> BasisFrame:
    return BasisFrame(label="c_basis", transform=None)


def npc_columns(coeffs: np.ndarray) -> np.ndarray:
    """NPC of each column of a coefficient matrix (columns must be unit)."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.float64))
    norms = np.sum(coeffs**2, axis=0)
    if np.any(np.abs(norms - 1.0) > NORM_TOL):
        raise ValueError("states are not normalized in the frame")
    return 1.0 / np.sum(coeffs**4, axis=0)


def npc(state, frame: BasisFrame | None = None) -> float:
    """Number of principal components of one state in the given frame."""
    state = np.asarray(state, dtype=np.float64)
    if abs(np.linalg.norm(state) - 1.0) > NORM_TOL:
        raise ValueError("state is not normalized")
    coeffs = state if frame is None else frame.coefficients(state[:, None])[:, 0]
    return float(npc_columns(coeffs[:, None])[0])


def goe_npc(n: int) -> float:
    """Expected NPC of an n-dimensional random real (GOE-like) state, (n+2)/3."""
    if n < 1:
        raise ConfigError("dimension must be at least 1")
    return (n + 2) / 3.0


def resolved_eigenbasis(matrix: np.ndarray, commuting_ops) -> Spectrum:
    """Eigendecomposition with degeneracies resolved against commuting operators.

    Within every degenerate eigenvalue block the basis is refined by
    simultaneous diagonalization with each operator in ``commuting_ops``
    (in order), then the usual sign convention is applied.  This pins the
    otherwise arbitrary basis of degenerate eigenspaces.
    """
    spec = eigh(matrix)
    values, vectors = spec.values, spec.vectors.copy()
    scale = max(1.0, float(np.max(np.abs(values))))
    tol = 1e-8 * scale
    start = 0
    n = len(values)
    for stop in range(1, n + 1):
        if stop < n and values[stop] - values[stop - 1] <= tol:
            continue
        if stop - start > 1:
            block = vectors[:, start:stop]
            for op in commuting_ops:
                block = _refine(block, op)
            vectors[:, start:stop] = block
        start = stop
    return Spectrum(values=values, vectors=fix_signs(vectors))


def _refine(block: np.ndarray, op: np.ndarray) -> np.ndarray:
    small = block.T @ op @ block
    _, u = np.linalg.eigh(0.5 * (small + small.T))
    return block @ u


def j_basis_frame(lattice: LatticeSpec, basis: SectorBasis, j_mean: float) -> BasisFrame:
    """Eigenbasis of the clean exchange Hamiltonian on the sector.

    Degenerate eigenspaces are resolved deterministically by simultaneous
    diagonalization with the total-spin operator and the lattice
    reflections, in that order.
    """
    if j_mean == 0:
        raise ConfigError("the J-basis needs a nonzero mean coupling")
    h = build_sector_hamiltonian(clean_realization(lattice, j_mean), lattice, basis).matrix
    ops = [symmetry.total_spin_matrix(basis)]
    for refl in reflections(lattice):
        ops.append(symmetry.parity_matrix(basis, refl))
    spec = resolved_eigenbasis(h, ops)
    return BasisFrame(label="j_basis", transform=spec.vectors)


def relative_npc(spectra) -> list:
    """Average NPC of each realization's eigenvectors in the previous one's basis.

    ``spectra`` is an ordered sequence of :class:`Spectrum` from
    consecutive disorder realizations; entry k of the result pairs
    realizations k and k+1.
    """
    spectra = list(spectra)
    if len(spectra) < 2:
        raise ValueError("need at least two consecutive realizations")
    dims = {s.dim for s in spectra}
    if len(dims) != 1:
        raise ValueError("all spectra must share the sector dimension")
    out = []
    for prev, cur in zip(spectra[:-1], spectra[1:]):
        coeffs = prev.vectors.T @ cur.vectors
        out.append(float(np.mean(npc_columns(coeffs))))
    return out


@dataclass
class NpcProfile:
    """Per-eigenstate NPC along the spectrum plus window averages."""

    energies: np.ndarray = field(repr=False)
    npcs: np.ndarray = field(repr=False)
    full_mean: float = 0.0
    central_mean: float = 0.0
    central_window: int = 0


def npc_energy_profile(
    spectrum: Spectrum, frame: BasisFrame | None = None, central: int = 100
) -> NpcProfile:
    """(energy, NPC) pairs for every eigenstate, with full and central means.

    The central window holds the ``central`` eigenstates in the middle of
    the energy-ordered spectrum (all of them if the sector is smaller).
    """
    coeffs = frame.coefficients(spectrum.vectors) if frame else spectrum.vectors
    xis = npc_columns(coeffs)
    window = min(central, spectrum.dim)
    start = (spectrum.dim - window) // 2
    return NpcProfile(
        energies=spectrum.values.copy(),
        npcs=xis,
        full_mean=float(np.mean(xis)),
        central_mean=float(np.mean(xis[start : start + window])),
        central_window=window,
    )
