"""Lattice geometries, nearest-neighbor bond sets, and reflection symmetries.

Only open boundary conditions are supported.  Sites are indexed
``0 .. n_sites-1``; rectangular grids use row-major order,
``site = row * cols + col``.  Every downstream module (bitstring bases,
fermionization order, partition blocks) relies on this single ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConfigError


class Bond(NamedTuple):
    """Unordered nearest-neighbor pair stored with ``i < j``."""

    i: int
    j: int


@dataclass(frozen=True)
class LatticeSpec:
    """An open chain (``kind="chain"``) or rectangular grid (``kind="grid"``)."""

    kind: str
    rows: int
    cols: int

    def __post_init__(self):
        if self.kind not in ("chain", "grid"):
            raise ConfigError(f"unknown lattice kind {self.kind!r}")
        if self.kind == "chain":
            if self.rows != 1 or self.cols < 2:
                raise ConfigError("chain needs a single row and at least 2 sites")
        else:
            if self.rows < 2 or self.cols < 2:
                raise ConfigError("grid needs rows >= 2 and cols >= 2")

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    def site(self, row: int, col: int) -> int:
        return row * self.cols + col


def chain(n_sites: int) -> LatticeSpec:
    """Open chain of ``n_sites`` spins."""
    return LatticeSpec("chain", 1, n_sites)


def grid(rows: int, cols: int) -> LatticeSpec:
    """Open rectangular grid of ``rows x cols`` spins, row-major site order."""
    return LatticeSpec("grid", rows, cols)


@dataclass(frozen=True)
class ReflectionMap:
    """Involutive site permutation that maps the bond set onto itself."""

    perm: tuple
    label: str

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ConfigError("reflection is not a permutation")
        if any(self.perm[self.perm[i]] != i for i in range(n)):
            raise ConfigError("reflection is not an involution")

    def apply(self, site: int) -> int:
        return self.perm[site]


def bonds(spec: LatticeSpec) -> list:
    """Nearest-neighbor bonds of the lattice, sorted by ``(i, j)``.

    A chain of L sites has L-1 bonds; an R x C grid has
    R*(C-1) horizontal plus C*(R-1) vertical bonds.
    """
    out = []
    if spec.kind == "chain":
        out = [Bond(i, i + 1) for i in range(spec.n_sites - 1)]
    else:
        for r in range(spec.rows):
            for c in range(spec.cols - 1):
                out.append(Bond(spec.site(r, c), spec.site(r, c + 1)))
        for r in range(spec.rows - 1):
            for c in range(spec.cols):
                out.append(Bond(spec.site(r, c), spec.site(r + 1, c)))
    return sorted(out)


def reflections(spec: LatticeSpec) -> list:
    """Reflection symmetries of the open lattice.

    Chains have the single end-to-end flip; grids have a horizontal
    (column-reversing) and a vertical (row-reversing) flip.
    """
    if spec.kind == "chain":
        L = spec.n_sites
        return [ReflectionMap(tuple(L - 1 - i for i in range(L)), "chain_flip")]
    horiz = tuple(
        spec.site(r, spec.cols - 1 - c)
        for r in range(spec.rows)
        for c in range(spec.cols)
    )
    vert = tuple(
        spec.site(spec.rows - 1 - r, c)
        for r in range(spec.rows)
        for c in range(spec.cols)
    )
    return [
        ReflectionMap(horiz, "grid_horizontal"),
        ReflectionMap(vert, "grid_vertical"),
    ]
