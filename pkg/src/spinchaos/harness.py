"""Ensemble orchestration: disorder-case sweeps, per-eigenstate scatter
dumps, analytic-vs-Monte-Carlo baselines, and CSV emission.

A sweep walks a grid of disorder ratios; at every ratio it draws
``realizations`` independent disorder realizations (seed = master seed +
running realization index, ratio-major order), diagonalizes each in the
configured symmetry sector, evaluates the enabled diagnostics, and
aggregates ensemble means with standard errors.  Identical configurations
produce byte-identical CSV output regardless of the worker-thread count.
"""
from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import deloc, entangle, rmt, spectral, symmetry
from .errors import ConfigError, StatisticsError
from .hamiltonian import ModelParams, build_sector_hamiltonian, sample_realization
from .lattice import LatticeSpec, bonds, chain, grid, reflections
from .linalg import Spectrum, eigh
from .spectral import UnfoldingConfig, unfold
from .symmetry import sz_basis

CASES = ("J_over_deps", "dJ_over_J", "dJ_over_deps")
SECTOR_MODES = ("sz0", "sz0_s1", "sz0_s1_r")
REFLECTION_MODES = ("horizontal", "vertical", "both")

# canonical ordering of statistic columns in CSV output
_STAT_ORDER = (
    "eta", "xi_c", "xi_c_central", "xi_j", "xi_j_central", "xi_r",
    "concurrence", "p1", "p2", "p3", "p4", "p6", "q1", "pu",
    "e_lin_n6", "s_vn_n6",
)


@dataclass(frozen=True)
class MeasureFlags:
    """Which diagnostics a sweep evaluates."""

    lsi: bool = True
    xi_c: bool = True
    xi_j: bool = False
    xi_r: bool = False
    concurrence: bool = False
    purities: tuple = ()
    fermionic: bool = False
    entropies: bool = False

    def __post_init__(self):
        object.__setattr__(self, "purities", tuple(int(n) for n in self.purities))
        if any(n < 1 for n in self.purities):
            raise ConfigError("purity block sizes must be positive")


@dataclass(frozen=True)
class SweepConfig:
    """Full description of one ensemble run."""

    lattice: LatticeSpec
    case: str
    ratio_grid: tuple
    realizations: int
    master_seed: int
    sector_mode: str = "sz0"
    reflection_mode: str = "horizontal"
    disorder_law: str = "uniform"
    unfolding: UnfoldingConfig = field(default_factory=UnfoldingConfig)
    measures: MeasureFlags = field(default_factory=MeasureFlags)
    central_band: int | None = None
    lsi_pooled: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ratio_grid", tuple(float(r) for r in self.ratio_grid))
        if self.case not in CASES:
            raise ConfigError(f"unknown case {self.case!r}")
        if self.sector_mode not in SECTOR_MODES:
            raise ConfigError(f"unknown sector mode {self.sector_mode!r}")
        if self.reflection_mode not in REFLECTION_MODES:
            raise ConfigError(f"unknown reflection mode {self.reflection_mode!r}")
        if not self.ratio_grid:
            raise ConfigError("ratio grid is empty")
        if list(self.ratio_grid) != sorted(self.ratio_grid):
            raise ConfigError("ratio grid must be sorted ascending")
        for r in self.ratio_grid:
            _check_ratio(self.case, r)
        if self.realizations < 1:
            raise ConfigError("need at least one realization")
        if self.master_seed < 0:
            raise ConfigError("master seed must be non-negative")
        if self.lattice.n_sites % 2 != 0:
            raise ConfigError("sweeps analyze the Sz = 0 sector; need an even site count")
        if self.central_band is not None and self.central_band < 1:
            raise ConfigError("central band size must be positive")


def _check_ratio(case: str, ratio: float) -> None:
    if ratio < 0:
        raise ConfigError("ratios must be non-negative")
    if ratio == 0 and case != "dJ_over_J":
        raise ConfigError("ratio 0 (clean exchange limit) is only meaningful for dJ_over_J")


def resolve_case(case: str, ratio: float, disorder_law: str = "uniform") -> ModelParams:
    """Model parameters for one point of a disorder case.

    The denominator of each case fixes the energy unit (set to 1):

    * ``J_over_deps``   - constant exchange J = ratio over on-site disorder,
      eps = 1, d_eps = 1, dJ = 0;
    * ``dJ_over_J``     - random exchange dJ = ratio around J = 1, d_eps = 0
      (ratio 0 is the clean exchange limit);
    * ``dJ_over_deps``  - purely random exchange dJ = ratio over on-site
      disorder, eps = 1, d_eps = 1, J = 0.
    """
    if case not in CASES:
        raise ConfigError(f"unknown case {case!r}")
    _check_ratio(case, ratio)
    if case == "J_over_deps":
        return ModelParams(1.0, 1.0, float(ratio), 0.0, disorder_law)
    if case == "dJ_over_J":
        return ModelParams(1.0, 0.0, 1.0, float(ratio), disorder_law)
    return ModelParams(1.0, 1.0, 0.0, float(ratio), disorder_law)


def config_to_dict(config: SweepConfig) -> dict:
    d = asdict(config)
    d["lattice"] = {"kind": config.lattice.kind, "rows": config.lattice.rows,
                    "cols": config.lattice.cols}
    return d


def config_hash(config: SweepConfig) -> str:
    """Short stable digest of the configuration, stamped on every output row."""
    blob = json.dumps(config_to_dict(config), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


class _SectorContext:
    """Symmetry sector, projector, and cached index structures for a sweep."""

    def __init__(self, config: SweepConfig):
        self.config = config
        self.lattice = config.lattice
        self.basis = sz_basis(self.lattice.n_sites, 0)
        self.bonds = bonds(self.lattice)
        self.projector = None
        if config.sector_mode != "sz0":
            refl = None
            if config.sector_mode == "sz0_s1_r":
                refl = self._selected_reflections()
            sectors = symmetry.decompose_sectors(self.basis, use_spin=True, refl=refl)
            wanted = [
                s for s in sectors
                if s.spin == 1.0 and all(p == 1 for p in s.parities)
            ]
            if not wanted:
                raise ConfigError("no (S=1, R=+1) sector in this basis")
            self.projector = wanted[0].vectors
        self.dim = self.basis.dim if self.projector is None else self.projector.shape[1]
        self._jframe = None
        self._bond_idx = None
        self._partitions = {}
        self._hop = None
        self._entropy_idx = None

    def _selected_reflections(self):
        refls = reflections(self.lattice)
        if self.lattice.kind == "chain":
            return refls
        mode = self.config.reflection_mode
        if mode == "horizontal":
            return [refls[0]]
        if mode == "vertical":
            return [refls[1]]
        return refls

    # -- lazy caches -------------------------------------------------------

    def jframe(self) -> np.ndarray:
        """Clean-exchange eigenbasis in working (sector) coordinates."""
        if self._jframe is None:
            if self.projector is None:
                self._jframe = deloc.j_basis_frame(self.lattice, self.basis, 1.0).transform
            else:
                from .hamiltonian import clean_realization

                hj = build_sector_hamiltonian(
                    clean_realization(self.lattice, 1.0), self.lattice, self.basis
                ).matrix
                v = self.projector
                ops = []
                for refl in reflections(self.lattice):
                    pi = symmetry.parity_permutation(self.basis, refl)
                    ops.append(v.T @ v[pi])
                self._jframe = deloc.resolved_eigenbasis(v.T @ hj @ v, ops).vectors
        return self._jframe

    def bond_indexers(self):
        if self._bond_idx is None:
            self._bond_idx = [
                entangle.SiteBlockIndex(self.basis, b) for b in self.bonds
            ]
        return self._bond_idx

    def partition_indexers(self, n: int):
        if n not in self._partitions:
            part = entangle.default_partitions(self.lattice, n)
            self._partitions[n] = entangle.block_indexers(self.basis, part)
        return self._partitions[n]

    def hop_index(self):
        if self._hop is None:
            self._hop = entangle.HopIndex(self.basis)
        return self._hop

    def entropy_indexers(self):
        if self._entropy_idx is None:
            self._entropy_idx = self.partition_indexers(self.basis.L // 2)
        return self._entropy_idx

    def to_c_basis(self, vectors: np.ndarray) -> np.ndarray:
        return vectors if self.projector is None else self.projector @ vectors


@dataclass
class _RealizationResult:
    seed: int
    eta: float | None
    sample: spectral.SpacingSample | None
    per_state: dict            # name -> per-eigenstate ndarray
    energies: np.ndarray
    vectors: np.ndarray | None # sector coords, kept only when xi_r is enabled
    degenerate: int
    clamped: int
    warned: bool


def _measure_realization(ctx: _SectorContext, params: ModelParams, seed: int) -> _RealizationResult:
    config = ctx.config
    flags = config.measures
    real = sample_realization(params, ctx.lattice, seed)
    h = build_sector_hamiltonian(real, ctx.lattice, ctx.basis).matrix
    if ctx.projector is not None:
        if params.eps_spread != 0:
            raise ConfigError("total-spin sectors require zero on-site disorder")
        v = ctx.projector
        h = v.T @ h @ v
    spec = eigh(0.5 * (h + h.T))

    eta = None
    sample = None
    degenerate = clamped = 0
    warned = False
    if flags.lsi:
        try:
            sample = unfold(spec.values, config.unfolding)
            eta = spectral.lsi(sample)
            degenerate, clamped = sample.degenerate, sample.clamped
            warned = sample.warning is not None
        except StatisticsError:
            sample = None

    per_state: dict = {"energy": spec.values.copy()}
    cvecs = ctx.to_c_basis(spec.vectors)
    if flags.xi_c:
        per_state["xi_c"] = deloc.npc_columns(cvecs)
    if flags.xi_j:
        per_state["xi_j"] = deloc.npc_columns(ctx.jframe().T @ spec.vectors)
    if flags.concurrence:
        acc = np.zeros(spec.dim)
        for ix in ctx.bond_indexers():
            acc += entangle.concurrence_many(ix.reduced_density_many(cvecs))
        per_state["concurrence"] = acc / len(ctx.bonds)
    for n in flags.purities:
        idx = ctx.partition_indexers(n)
        d = 1 << n
        acc = np.zeros(spec.dim)
        for ix in idx:
            acc += (d * ix.purity_many(cvecs) - 1.0) / (d - 1.0)
        per_state[f"p{n}"] = acc / len(idx)
    if 1 in flags.purities:
        per_state["q1"] = 1.0 - per_state["p1"]
    if flags.fermionic:
        per_state["pu"] = entangle.fermionic_purity_many(cvecs, ctx.basis, ctx.hop_index())
    if flags.entropies:
        lin = np.zeros(spec.dim)
        vn = np.zeros(spec.dim)
        idx = ctx.entropy_indexers()
        for ix in idx:
            p = np.linalg.eigvalsh(ix.reduced_density_many(cvecs))
            lin += 1.0 - np.sum(p**2, axis=1)
            plog = np.where(p > 1e-12, p * np.log2(np.clip(p, 1e-300, None)), 0.0)
            vn += -np.sum(plog, axis=1)
        per_state["e_lin_n6"] = lin / len(idx)
        per_state["s_vn_n6"] = vn / len(idx)

    return _RealizationResult(
        seed=seed,
        eta=eta,
        sample=sample,
        per_state=per_state,
        energies=spec.values,
        vectors=spec.vectors if flags.xi_r else None,
        degenerate=degenerate,
        clamped=clamped,
        warned=warned,
    )


@dataclass
class DiagnosticsRow:
    """Ensemble averages of the enabled diagnostics at one ratio point."""

    ratio: float
    sector_dim: int
    realizations: int
    seeds: tuple
    stats: dict                 # name -> (mean, standard error)
    degenerate_mean: float
    clamped_mean: float
    eta_omitted: bool
    warnings: int
    config_hash: str


def _mean_se(values) -> tuple:
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    se = float(arr.std(ddof=1) / np.sqrt(len(arr))) if len(arr) > 1 else 0.0
    return mean, se


def _central_slice(n: int, window: int) -> slice:
    w = min(window, n)
    start = (n - w) // 2
    return slice(start, start + w)


def run_sweep(config: SweepConfig, threads: int = 1) -> list:
    """Run the configured ensemble sweep; one DiagnosticsRow per ratio.

    Seeds are ``master_seed + k`` with k the running realization index in
    ratio-major order, so every realization in a sweep is distinct and the
    whole run is reproducible.  eta is computed per realization and then
    averaged (set ``lsi_pooled`` to pool unfolded spacings instead).  A
    sector too small for spacing statistics flags the row and omits eta.
    """
    ctx = _SectorContext(config)
    digest = config_hash(config)
    flags = config.measures
    rows = []
    next_index = 0
    for ratio in config.ratio_grid:
        params = resolve_case(config.case, ratio, config.disorder_law)
        seeds = tuple(config.master_seed + next_index + k for k in range(config.realizations))
        next_index += config.realizations

        def work(seed, _params=params):
            return _measure_realization(ctx, _params, seed)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = pool.map(work, seeds)
                row = _aggregate(ctx, config, ratio, seeds, results, digest, flags)
        else:
            row = _aggregate(ctx, config, ratio, seeds, map(work, seeds), digest, flags)
        rows.append(row)
    return rows


def _aggregate(ctx, config, ratio, seeds, results, digest, flags) -> DiagnosticsRow:
    etas, samples = [], []
    scalars: dict = {}
    xi_r_vals = []
    degenerate, clamped, warnings = [], [], 0
    eta_omitted = False
    prev_vectors = None
    central = config.central_band

    for res in results:
        if flags.lsi:
            if res.eta is None:
                eta_omitted = True
            else:
                etas.append(res.eta)
                samples.append(res.sample)
                degenerate.append(res.degenerate)
                clamped.append(res.clamped)
                warnings += int(res.warned)
        for name, values in res.per_state.items():
            if name == "energy":
                continue
            scalars.setdefault(name, []).append(float(np.mean(values)))
            if central is not None and name in ("xi_c", "xi_j"):
                sl = _central_slice(len(values), central)
                scalars.setdefault(f"{name}_central", []).append(float(np.mean(values[sl])))
        if flags.xi_r:
            if prev_vectors is not None:
                coeffs = prev_vectors.T @ res.vectors
                xi_r_vals.append(float(np.mean(deloc.npc_columns(coeffs))))
            prev_vectors = res.vectors

    stats = {}
    if flags.lsi and etas:
        if config.lsi_pooled:
            stats["eta"] = (spectral.lsi(spectral.pooled_sample(samples)), 0.0)
        else:
            stats["eta"] = _mean_se(etas)
    for name, values in scalars.items():
        stats[name] = _mean_se(values)
    if flags.xi_r and xi_r_vals:
        stats["xi_r"] = _mean_se(xi_r_vals)

    return DiagnosticsRow(
        ratio=ratio,
        sector_dim=ctx.dim,
        realizations=config.realizations,
        seeds=seeds,
        stats=stats,
        degenerate_mean=float(np.mean(degenerate)) if degenerate else 0.0,
        clamped_mean=float(np.mean(clamped)) if clamped else 0.0,
        eta_omitted=eta_omitted,
        warnings=warnings,
        config_hash=digest,
    )


@dataclass
class ScatterTable:
    """Per-eigenstate diagnostics for one ratio point."""

    columns: list
    rows: np.ndarray = field(repr=False)
    config_hash: str = ""


def run_scatter(config: SweepConfig, ratio: float) -> ScatterTable:
    """Per-eigenstate dump at one ratio: one row per eigenstate per realization.

    Columns depend on the enabled measures; relative delocalization (when
    enabled) is reported per eigenstate against the previous realization's
    eigenbasis and is NaN for the first realization.
    """
    _check_ratio(config.case, ratio)
    ctx = _SectorContext(config)
    params = resolve_case(config.case, ratio, config.disorder_law)
    flags = config.measures
    seeds = tuple(config.master_seed + k for k in range(config.realizations))
    names = ["energy"]
    for key in ("xi_c", "xi_j"):
        if getattr(flags, key):
            names.append(key)
    if flags.xi_r:
        names.append("xi_r")
    if flags.concurrence:
        names.append("concurrence")
    names += [f"p{n}" for n in flags.purities]
    if 1 in flags.purities:
        names.append("q1")
    if flags.fermionic:
        names.append("pu")
    if flags.entropies:
        names += ["e_lin_n6", "s_vn_n6"]

    blocks = []
    prev_vectors = None
    for k, seed in enumerate(seeds):
        res = _measure_realization(ctx, params, seed)
        if flags.xi_r:
            if prev_vectors is None:
                res.per_state["xi_r"] = np.full(len(res.energies), np.nan)
            else:
                coeffs = prev_vectors.T @ res.vectors
                res.per_state["xi_r"] = deloc.npc_columns(coeffs)
            prev_vectors = res.vectors
        cols = [np.full(len(res.energies), float(k)), np.full(len(res.energies), float(seed))]
        cols += [res.per_state[name] for name in names]
        blocks.append(np.column_stack(cols))
    return ScatterTable(
        columns=["realization", "seed"] + names,
        rows=np.vstack(blocks),
        config_hash=config_hash(config),
    )


@dataclass
class SpectrumDump:
    """Raw sector eigenvalues for every realization at one ratio."""

    ratio: float
    seeds: tuple
    energies: list
    config_hash: str


def run_spectrum(config: SweepConfig, ratio: float) -> SpectrumDump:
    """Diagonalize every realization at one ratio and keep the raw spectra."""
    _check_ratio(config.case, ratio)
    ctx = _SectorContext(config)
    params = resolve_case(config.case, ratio, config.disorder_law)
    seeds = tuple(config.master_seed + k for k in range(config.realizations))
    energies = []
    for seed in seeds:
        real = sample_realization(params, ctx.lattice, seed)
        h = build_sector_hamiltonian(real, ctx.lattice, ctx.basis).matrix
        if ctx.projector is not None:
            v = ctx.projector
            h = v.T @ h @ v
        energies.append(eigh(0.5 * (h + h.T)).values)
    return SpectrumDump(ratio=ratio, seeds=seeds, energies=energies,
                        config_hash=config_hash(config))


@dataclass
class BaselineReport:
    """Analytic vs Monte-Carlo reference values for random sector states."""

    L: int
    N0: int
    samples: int
    seed: int
    purity_rows: list   # (n, analytic, enumerated, mc_mean, mc_se)
    npc_row: tuple      # (analytic, mc_mean, mc_se)


def run_baseline(samples: int = 10_000, seed: int = 902_100, L: int = 12) -> BaselineReport:
    """Expected block purities and NPC of random real Sz=0 states.

    The ``analytic`` column holds the closed-form reference values; the
    ``enumerated`` column holds the exact projection enumeration; the
    Monte-Carlo columns average ``samples`` random states.  The NPC row
    calibrates the (N+2)/3 baseline on the same sector dimension.
    """
    if samples < 2:
        raise ConfigError("need at least two samples")
    basis = sz_basis(L, 0)
    n0 = basis.dim
    analytic = rmt.expected_purities(L).expected
    enumerated = rmt.expected_purities_enumerated(L).expected
    sizes = [n for n in rmt.PURITY_BLOCK_SIZES if n in analytic and L % n == 0]
    indexers = {
        n: entangle.block_indexers(basis, entangle.default_partitions(chain(L), n))
        for n in sizes
    }

    rng = np.random.default_rng(seed)
    sums = {n: [] for n in sizes}
    npc_vals = []
    chunk = 250
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        states = rng.standard_normal((n0, k))
        states /= np.linalg.norm(states, axis=0)
        npc_vals.append(deloc.npc_columns(states))
        for n in sizes:
            d = 1 << n
            acc = np.zeros(k)
            for ix in indexers[n]:
                acc += (d * ix.purity_many(states) - 1.0) / (d - 1.0)
            sums[n].append(acc / len(indexers[n]))
        done += k

    purity_rows = []
    for n in sizes:
        vals = np.concatenate(sums[n])
        mean, se = _mean_se(vals)
        purity_rows.append((n, analytic[n], enumerated[n], mean, se))
    npc_all = np.concatenate(npc_vals)
    mean, se = _mean_se(npc_all)
    return BaselineReport(
        L=L, N0=n0, samples=samples, seed=seed,
        purity_rows=purity_rows,
        npc_row=(deloc.goe_npc(n0), mean, se),
    )


def format_baseline(report: BaselineReport) -> str:
    lines = [
        f"random real states in the Sz=0 sector: L={report.L}, dim={report.N0}, "
        f"{report.samples} samples (seed {report.seed})",
        f"{'n':>3} {'analytic':>14} {'enumerated':>14} {'mc_mean':>14} {'mc_se':>12}",
    ]
    for n, ana, enum, mc, se in report.purity_rows:
        lines.append(f"{n:>3} {ana:>14.6e} {enum:>14.6e} {mc:>14.6e} {se:>12.2e}")
    ana, mc, se = report.npc_row
    lines.append(f"NPC {ana:>14.6f} {'':>14} {mc:>14.6f} {se:>12.2e}")
    return "\n".join(lines)


# -- CSV emission ----------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_sweep_csv(path_or_file, rows) -> None:
    """Sweep rows as CSV: one line per ratio, stats as mean/se column pairs."""
    rows = list(rows)
    present = [s for s in _STAT_ORDER if any(s in r.stats for r in rows)]
    header = ["ratio", "sector_dim", "realizations"]
    for s in present:
        header += [f"{s}_mean", f"{s}_se"]
    header += ["degenerate_mean", "clamped_mean", "eta_omitted", "warnings",
               "seeds", "config_hash"]
    with _open_out(path_or_file) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in rows:
            line = [_fmt(float(r.ratio)), r.sector_dim, r.realizations]
            for s in present:
                mean, se = r.stats.get(s, (float("nan"), float("nan")))
                line += [_fmt(float(mean)), _fmt(float(se))]
            line += [_fmt(r.degenerate_mean), _fmt(r.clamped_mean),
                     int(r.eta_omitted), r.warnings,
                     ";".join(str(s) for s in r.seeds), r.config_hash]
            writer.writerow(line)


def write_scatter_csv(path_or_file, table: ScatterTable) -> None:
    with _open_out(path_or_file) as fh:
        writer = csv.writer(fh)
        writer.writerow(table.columns + ["config_hash"])
        for row in table.rows:
            writer.writerow([_fmt(float(x)) for x in row] + [table.config_hash])


def write_spectrum_csv(path_or_file, dump: SpectrumDump) -> None:
    with _open_out(path_or_file) as fh:
        writer = csv.writer(fh)
        writer.writerow(["realization", "seed", "level", "energy", "config_hash"])
        for k, (seed, energies) in enumerate(zip(dump.seeds, dump.energies)):
            for lvl, e in enumerate(energies):
                writer.writerow([k, seed, lvl, _fmt(float(e)), dump.config_hash])


def write_baseline_csv(path_or_file, report: BaselineReport) -> None:
    with _open_out(path_or_file) as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "analytic", "enumerated", "mc_mean", "mc_se"])
        for n, ana, enum, mc, se in report.purity_rows:
            writer.writerow([n, _fmt(ana), _fmt(enum), _fmt(mc), _fmt(se)])
        ana, mc, se = report.npc_row
        writer.writerow(["npc", _fmt(ana), "", _fmt(mc), _fmt(se)])


class _open_out:
    """Open a path for writing, or pass a file-like object through."""

    def __init__(self, path_or_file):
        self.target = path_or_file
        self.fh = None

    def __enter__(self):
        if hasattr(self.target, "write"):
            return self.target
        self.fh = open(self.target, "w", newline="", encoding="utf-8")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()
        return False


# -- configuration files ---------------------------------------------------

_CONFIG_KEYS = {
    "lattice", "case", "ratios", "realizations", "master_seed", "sector",
    "reflection", "disorder_law", "unfolding", "measures", "central_band",
    "lsi_pooled",
}
_MEASURE_KEYS = {
    "lsi", "xi_c", "xi_j", "xi_r", "concurrence", "purities", "fermionic",
    "entropies",
}


def config_from_dict(data: dict, **overrides) -> SweepConfig:
    """Build a SweepConfig from a parsed configuration mapping.

    Keyword overrides replace top-level keys (the CLI maps its flags
    through here).  Unknown keys are rejected.
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be a mapping")
    data = dict(data)
    data.update({k: v for k, v in overrides.items() if v is not None})
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    try:
        lat = data["lattice"]
        case = data["case"]
        ratios = data["ratios"]
        realizations = int(data["realizations"])
        master_seed = int(data["master_seed"])
    except KeyError as exc:
        raise ConfigError(f"missing configuration key: {exc.args[0]}") from exc
    if not isinstance(lat, dict) or "kind" not in lat:
        raise ConfigError("lattice must be a mapping with a 'kind' key")
    if lat["kind"] == "chain":
        lattice = chain(int(lat.get("sites", 0)))
    elif lat["kind"] == "grid":
        lattice = grid(int(lat.get("rows", 0)), int(lat.get("cols", 0)))
    else:
        raise ConfigError(f"unknown lattice kind {lat['kind']!r}")
    unf = data.get("unfolding", {}) or {}
    if set(unf) - {"poly_degree", "edge_trim"}:
        raise ConfigError("unknown unfolding keys")
    meas = data.get("measures", {}) or {}
    if set(meas) - _MEASURE_KEYS:
        raise ConfigError(f"unknown measure keys: {sorted(set(meas) - _MEASURE_KEYS)}")
    if "purities" in meas and meas["purities"] is not None:
        meas = dict(meas, purities=tuple(meas["purities"]))
    return SweepConfig(
        lattice=lattice,
        case=case,
        ratio_grid=tuple(float(r) for r in ratios),
        realizations=realizations,
        master_seed=master_seed,
        sector_mode=data.get("sector", "sz0"),
        reflection_mode=data.get("reflection", "horizontal"),
        disorder_law=data.get("disorder_law", "uniform"),
        unfolding=UnfoldingConfig(**unf),
        measures=MeasureFlags(**meas),
        central_band=data.get("central_band"),
        lsi_pooled=bool(data.get("lsi_pooled", False)),
    )


def load_config(path, **overrides) -> SweepConfig:
    """Load a YAML sweep configuration file (CLI flags override file keys)."""
    import yaml

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration file: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed configuration file: {exc}") from exc
    return config_from_dict(data, **overrides)
