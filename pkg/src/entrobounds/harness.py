"""Verification campaigns: sampled bound checks over parameter grids.

Determinism contract: the campaign seed and the case counter fully
determine every sampled state.  Case ``k`` of a campaign with seed ``s``
uses ``numpy.random.default_rng([s, k])``, so reports are reproducible
bit-for-bit under the same config (wall-clock runtime is therefore kept
out of the report payload).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bnd
from . import couplings as cpl
from . import gibbs as gb
from .dc_optimizer import dc_minimize, estimate_kappa
from .entropies import shannon_entropy, von_neumann_entropy
from .linalg import fidelity, operator_norm, trace_distance, HermitianOperator
from .states import (
    BipartiteState,
    DensityOperator,
    sample_pure_bipartite,
    sample_qc_state,
    sample_state,
    vector_marginals,
)

SUITES = ("fannes", "af", "dc", "couplings", "cor_pure", "gibbs",
          "energy_bounds", "tightness")

REPORT_COLUMNS = ("suite", "case", "variant", "dim", "energy", "epsilon",
                  "epsilon_prime", "lhs", "rhs", "slack", "valid", "kappa_estimated")

SCHEMA_LINE = "# entrobounds-report v1: " + ",".join(REPORT_COLUMNS)


class ConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    suite: str
    dims: tuple = (2, 3, 4)
    energies: tuple = (1.0, 2.0)
    epsilons: tuple = (0.1, 0.3, 0.5)
    samples: int = 100
    seed: int = 0
    tolerance: float = 1e-9
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {SUITES}")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if not self.dims or not self.energies or not self.epsilons:
            raise ConfigError("grids must be non-empty")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list
    runtime: float = 0.0  # informational only; never serialized

    @property
    def min_slack(self) -> float:
        return min((r["slack"] for r in self.records), default=math.inf)

    @property
    def max_slack(self) -> float:
        return max((r["slack"] for r in self.records), default=-math.inf)

    @property
    def violations(self) -> int:
        tol = self.config.tolerance
        return sum(1 for r in self.records if r["slack"] < -tol)


def _rng(seed: int, case: int) -> np.random.Generator:
    return np.random.default_rng([seed, case])


def _record(suite, case, variant, *, dim=None, energy=None, epsilon=None,
            epsilon_prime=None, lhs=None, rhs=None, tol=1e-9, kappa_estimated=False):
    slack = rhs - lhs
    return {
        "suite": suite, "case": case, "variant": variant,
        "dim": dim, "energy": energy, "epsilon": epsilon,
        "epsilon_prime": epsilon_prime,
        "lhs": lhs, "rhs": rhs, "slack": slack,
        "valid": bool(slack >= -tol),
        "kappa_estimated": bool(kappa_estimated),
    }


def _from_report(suite, case, rep: bnd.BoundReport, tol):
    return _record(suite, case, rep.params.variant, dim=rep.params.dim_d,
                   epsilon=rep.params.epsilon, lhs=rep.lhs, rhs=rep.rhs, tol=tol,
                   kappa_estimated=rep.params.kappa_is_estimate)


# -- suites -------------------------------------------------------------------


def _suite_fannes(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            rho = sample_state(d, d, rng)
            sigma = sample_state(d, d, rng)
            records.append(_from_report("fannes", case, bnd.check_fannes(rho, sigma),
                                        cfg.tolerance))
            case += 1
    return records


def _suite_af(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            rho = BipartiteState(sample_state(d * d, d * d, rng), (d, d))
            sigma = BipartiteState(sample_state(d * d, d * d, rng), (d, d))
            records.append(_from_report("af", case, bnd.check_af(rho, sigma), cfg.tolerance))
            case += 1
            rng = _rng(cfg.seed, case)
            rho = sample_qc_state(d, d, rng)
            sigma = sample_qc_state(d, d, rng)
            records.append(_from_report(
                "af", case, bnd.check_af(rho, sigma, classical_b=True), cfg.tolerance))
            case += 1
    return records


def _suite_dc(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            gens = [sample_state(d, d, rng).mat for _ in range(3)]
            model = bnd.ConvexSetModel(generators=gens)
            rho = sample_state(d, d, rng)
            sigma = sample_state(d, d, rng)
            rep = bnd.check_dc(rho, sigma, model, rng=rng, n_probes=50)
            records.append(_from_report("dc", case, rep, cfg.tolerance))
            case += 1
    return records


def _suite_couplings(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            rho = sample_state(d, d, rng)
            sigma = sample_state(d, d, rng)
            eps = trace_distance(rho, sigma)
            qc = cpl.quantum_coupling(rho, sigma)
            records.append(_record("couplings", case, "quantum_overlap_psi", dim=d,
                                   epsilon=eps, lhs=1.0 - eps, rhs=qc.overlap_psi,
                                   tol=cfg.tolerance))
            records.append(_record("couplings", case, "quantum_fidelity_theta", dim=d,
                                   epsilon=eps, lhs=1.0 - eps,
                                   rhs=fidelity(qc.psi.as_density(), qc.theta),
                                   tol=cfg.tolerance))
            dc_ = cpl.diagonal_coupling(rho, sigma)
            records.append(_record("couplings", case, "diagonal_largest_eigenvalue",
                                   dim=d, epsilon=eps, lhs=1.0 - eps,
                                   rhs=dc_.largest_eigenvalue, tol=cfg.tolerance))
            case += 1
    return records


def _suite_cor_pure(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            phi = sample_pure_bipartite(d, d, rng)
            psi = sample_pure_bipartite(d, d, rng)
            records.append(_from_report(
                "cor_pure", case, bnd.check_cor_pure(phi, psi, which="ef"), cfg.tolerance))
            case += 1
    return records


def _suite_gibbs(cfg: CampaignConfig):
    h = gb.HamiltonianSpec.oscillators([1.0], n_max=256)
    records = []
    for case, e in enumerate(cfg.energies):
        sol = gb.solve_beta(h, e)
        direct = shannon_entropy(sol.diagonal_probabilities())
        records.append(_record("gibbs", case, "formula_vs_direct", dim=h.dim, energy=e,
                               lhs=abs(sol.entropy - direct), rhs=cfg.tolerance,
                               tol=cfg.tolerance))
    return records


def _suite_energy_bounds(cfg: CampaignConfig):
    records, case = [], 0
    n_max = 40
    h = gb.HamiltonianSpec.oscillators([1.0], n_max=n_max)
    for e in cfg.energies:
        for _ in range(cfg.samples):
            rng = _rng(cfg.seed, case)
            rho = gb.sample_energy_constrained(h, e, rng=rng)
            sigma = gb.sample_energy_constrained(h, e, rng=rng)
            eps = trace_distance(rho, sigma)
            lhs = abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma))
            records.append(_record("energy_bounds", case, "lemma4", dim=h.dim, energy=e,
                                   epsilon=eps, lhs=lhs,
                                   rhs=gb.lemma4_bound(h, e, max(eps, 1e-12)),
                                   tol=cfg.tolerance))
            ep = min(1.0, eps + 0.1)
            records.append(_record("energy_bounds", case, "meta5", dim=h.dim, energy=e,
                                   epsilon=eps, epsilon_prime=ep, lhs=lhs,
                                   rhs=gb.meta5_bound(h, e, eps, ep), tol=cfg.tolerance))
            case += 1
    return records


def _suite_tightness(cfg: CampaignConfig):
    records, case = [], 0
    for d in cfg.dims:
        for eps in cfg.epsilons:
            if not 0.0 < eps <= 1.0 - 1.0 / d:
                continue
            rho, sigma = bnd.tightness_witness_fannes(d, eps)
            records.append(_from_report("tightness", case, bnd.check_fannes(rho, sigma),
                                        cfg.tolerance))
            case += 1
            rho2, sigma2 = bnd.tightness_witness_af(d, eps)
            rep = bnd.check_af(rho2, sigma2)
            records.append(_from_report("tightness", case, rep, cfg.tolerance))
            case += 1
    return records


_SUITE_RUNNERS = {
    "fannes": _suite_fannes,
    "af": _suite_af,
    "dc": _suite_dc,
    "couplings": _suite_couplings,
    "cor_pure": _suite_cor_pure,
    "gibbs": _suite_gibbs,
    "energy_bounds": _suite_energy_bounds,
    "tightness": _suite_tightness,
}


def run_campaign(config: CampaignConfig) -> CampaignReport:
    records = _SUITE_RUNNERS[config.suite](config)
    report = CampaignReport(config=config, records=records)
    if config.output:
        write_report(report, config.output, config.format)
    return report


# -- serialization -------------------------------------------------------------


def _format_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_report(report: CampaignReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.records, indent=2, default=_format_value) + "\n"
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\r\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
    writer.writerow(REPORT_COLUMNS)
    for rec in report.records:
        writer.writerow([_format_value(rec[c]) for c in REPORT_COLUMNS])
    return buf.getvalue()


def write_report(report: CampaignReport, path: str, fmt: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(render_report(report, fmt))


def emit_gibbs_table(hamiltonian: gb.HamiltonianSpec, energies, path=None):
    """Tabulate (E, beta, Z, S_formula, S_direct, |diff|) over an E-grid.

    Unsolvable rows are marked with an ``error`` column instead of
    being dropped.
    """
    rows = []
    for e in energies:
        try:
            sol = gb.solve_beta(hamiltonian, e)
            direct = shannon_entropy(sol.diagonal_probabilities())
            rows.append({"E": e, "beta": sol.beta, "Z": sol.partition,
                         "S_formula": sol.entropy, "S_direct": direct,
                         "abs_diff": abs(sol.entropy - direct), "error": ""})
        except gb.EnergyDomainError as exc:
            rows.append({"E": e, "beta": None, "Z": None, "S_formula": None,
                         "S_direct": None, "abs_diff": None, "error": str(exc)})
    if path:
        cols = ("E", "beta", "Z", "S_formula", "S_direct", "abs_diff", "error")
        with open(path, "w", newline="") as fh:
            fh.write("# entrobounds-gibbs-table v1: " + ",".join(cols) + "\r\n")
            writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
            writer.writerow(cols)
            for row in rows:
                writer.writerow([_format_value(row[c]) for c in cols])
    return rows
