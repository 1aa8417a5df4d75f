"""Plain-text report writers.

Two formats per run: line-oriented ``key=value`` records with every float at
17 significant digits (bit-exact, machine-parseable, byte-identical across
reruns of the same configuration) and a fixed-width human-readable summary.
"""

from __future__ import annotations

from .pipeline import DiscoveryReport
from .simulation import SimulationReport

__all__ = [
    "write_discovery_report",
    "write_power_curves",
    "write_simulation_report",
]


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _record(kind: str, items) -> str:
    return " ".join([f"record={kind}"] + [f"{k}={_fmt(v)}" for k, v in items])


def write_simulation_report(report: SimulationReport, records_path, summary_path) -> None:
    """Emit study results as key=value records plus a summary table."""
    lines = []
    for r in report.rows:
        lines.append(
            _record(
                "cell",
                [
                    ("theta", r.theta),
                    ("tau", r.tau),
                    ("lambda2", r.lambda2),
                    ("family", r.family),
                    ("epsilon", r.epsilon),
                    ("fixed_p", r.fixed_p),
                    ("procedure", r.procedure),
                    ("alpha", r.alpha),
                    ("avg_power", r.avg_power),
                    ("power_stderr", r.power_stderr),
                    ("avg_fdr", r.avg_fdr),
                    ("fdr_stderr", r.fdr_stderr),
                    ("avg_pfdr", r.avg_pfdr),
                    ("pfdr_stderr", r.pfdr_stderr),
                    ("zero_rejection_replicates", r.n_zero_rejections),
                    ("K", r.K),
                    ("M", r.M),
                    ("M1", r.M1),
                    ("seed", r.seed),
                    ("qvalue_lambda_s", r.qvalue_lambda_s),
                ],
            )
        )
    with open(records_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    header = (
        f"{'theta':>7} {'tau':>5} {'lambda2':>8} {'family':<16} {'proc':<7}"
        f" {'power':>7} {'fdr':>7} {'pfdr':>7} {'zeroR':>6}"
    )
    rows = [header, "-" * len(header)]
    for r in report.rows:
        pfdr = f"{r.avg_pfdr:7.4f}" if r.avg_pfdr is not None else f"{'NA':>7}"
        rows.append(
            f"{r.theta:7.3g} {r.tau:5.3g} {r.lambda2:8.4g} {r.family:<16} {r.procedure:<7}"
            f" {r.avg_power:7.4f} {r.avg_fdr:7.4f} {pfdr} {r.n_zero_rejections:6d}"
        )
    with open(summary_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")


def write_discovery_report(report: DiscoveryReport, records_path, summary_path) -> None:
    """Emit an analysis run: provenance, per-family fits, and discovery counts."""
    cfg = report.config
    lines = [
        _record(
            "meta",
            [
                ("data", cfg.data_path),
                ("labels", cfg.labels_path),
                ("n_rows", report.n_rows),
                ("n_cols", report.n_cols),
                ("training_cols", ",".join(str(c + 1) for c in report.training_cols)),
                ("split", report.split_source.replace(" ", "")),
                ("seed", cfg.seed),
                ("qvalue_lambda_s", cfg.qvalue_lambda_s),
                ("procedures", ",".join(cfg.procedures)),
                ("alphas", ",".join(_fmt(a) for a in cfg.alphas)),
                ("degenerate_rows", len(report.degenerate_rows)),
            ],
        )
    ]
    for fam in report.families:
        lines.append(
            _record(
                "family",
                [
                    ("family", fam.label),
                    ("skipped", int(fam.skipped)),
                    ("skip_reason", (fam.skip_reason or "").replace(" ", "_") or None),
                    ("epsilon", fam.epsilon),
                    ("fixed_p", fam.fixed_p),
                    ("p_raw", fam.p_raw),
                    ("p_hat", fam.p_hat),
                    ("theta_hat", fam.theta_hat),
                    ("tau2_hat", fam.tau2_hat),
                ],
            )
        )
    for fam in report.active_families():
        for (procedure, alpha), dec in fam.decisions.items():
            rejected = report.rejected_ids(fam.label, procedure, alpha)
            lines.append(
                _record(
                    "cell",
                    [
                        ("family", fam.label),
                        ("procedure", procedure),
                        ("alpha", alpha),
                        ("discoveries", dec.n_rejected),
                        ("threshold", dec.threshold_used),
                        ("rejected", ";".join(rejected) if rejected else None),
                    ],
                )
            )
    with open(records_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    summary = [
        f"analysis of {cfg.data_path} ({report.n_rows} rows x {report.n_cols} cols)",
        f"training columns (1-based): {', '.join(str(c + 1) for c in report.training_cols)}"
        f"  [{report.split_source}]",
        f"degenerate rows: {len(report.degenerate_rows)}",
        "",
    ]
    for fam in report.families:
        if fam.skipped:
            summary.append(f"family {fam.label}: SKIPPED ({fam.skip_reason})")
        else:
            bits = []
            if fam.p_hat is not None:
                bits.append(f"p_hat={fam.p_hat:.4g}")
            if fam.p_raw is not None:
                bits.append(f"raw={fam.p_raw:.4g}")
            if fam.theta_hat is not None:
                bits.append(f"theta_hat={fam.theta_hat:.4g} tau2_hat={fam.tau2_hat:.4g}")
            summary.append(f"family {fam.label}: {' '.join(bits) if bits else 'baseline'}")
    summary.append("")
    active = report.active_families()
    for procedure in cfg.procedures:
        summary.append(f"discoveries, {procedure} procedure:")
        head = f"{'alpha':>7} " + " ".join(f"{fam.label:>16}" for fam in active)
        summary.append(head)
        for alpha in cfg.alphas:
            cells = " ".join(
                f"{fam.n_discoveries(procedure, alpha):16d}" for fam in active
            )
            summary.append(f"{alpha:7.3g} {cells}")
        summary.append("")
    with open(summary_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(summary) + "\n")


def write_power_curves(curves, path) -> None:
    """Emit (eta, mu, lambda2_star) triples, one series per eta, as TSV.

    ``curves`` maps eta -> (mu_grid, lambda2_star) arrays.
    """
    lines = ["eta\tmu\tlambda2_star"]
    for eta, (mu_grid, boundary) in curves.items():
        for mu, l2 in zip(mu_grid, boundary):
            lines.append(f"{_fmt(float(eta))}\t{_fmt(float(mu))}\t{_fmt(float(l2))}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
