"""Experiment configuration, persistent records, tables, and figures.

A record is one JSON file per run, named by the content hash of its
configuration, so a results directory is append-only and re-running the
same seeded config reproduces the numeric payload byte for byte (only the
`meta` block carries volatile data such as timestamps).
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

__version__ = "0.1.0"

CSV_COLUMNS = [
    "experiment_id",
    "n",
    "p",
    "target",
    "mode",
    "radius_lo",
    "radius_hi",
    "witness",
    "seed",
    "margin",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Echo of everything that determines a run's numeric output."""

    command: str
    params: dict

    def canonical_json(self) -> str:
        return json.dumps(
            {"command": self.command, "params": self.params},
            sort_keys=True,
            separators=(",", ":"),
            allow_nan=True,
        )

    @property
    def experiment_id(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


@dataclass
class ExperimentRecord:
    config: ExperimentConfig
    payload: dict
    passed: bool
    meta: dict = field(default_factory=dict)

    def finalize(self, wall_clock: float) -> "ExperimentRecord":
        self.meta = {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "wall_clock_s": wall_clock,
            "version": __version__,
        }
        return self

    def deterministic_json(self) -> str:
        """Payload serialization excluding the volatile meta block."""
        return json.dumps(
            {
                "config": {"command": self.config.command, "params": self.config.params},
                "experiment_id": self.config.experiment_id,
                "passed": self.passed,
                "payload": self.payload,
            },
            sort_keys=True,
            indent=1,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "config": {"command": self.config.command, "params": self.config.params},
                "experiment_id": self.config.experiment_id,
                "passed": self.passed,
                "payload": self.payload,
                "meta": self.meta,
            },
            sort_keys=True,
            indent=1,
        )

    def save(self, results_dir: Path) -> Path:
        results_dir = Path(results_dir)
        results_dir.mkdir(parents=True, exist_ok=True)
        path = results_dir / f"{self.config.experiment_id}.json"
        path.write_text(self.to_json())
        return path


def load_record(path: Path) -> ExperimentRecord:
    raw = json.loads(Path(path).read_text())
    config = ExperimentConfig(raw["config"]["command"], raw["config"]["params"])
    rec = ExperimentRecord(config, raw["payload"], raw["passed"], raw.get("meta", {}))
    return rec


def estimate_payload(est) -> dict:
    """JSON form of a RadiusEstimate-like dataclass."""
    out = dataclasses.asdict(est)
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


def table_rows(records) -> list:
    """Flatten radius-style records into CSV rows; mixed kinds are an error."""
    rows = []
    footers = []
    for rec in records:
        if "estimates" not in rec.payload:
            raise ValueError(
                f"record {rec.config.experiment_id} ({rec.config.command}) "
                "carries no radius estimates; cannot mix report kinds"
            )
        params = rec.config.params
        for entry in rec.payload["estimates"]:
            est = entry["estimate"]
            rows.append(
                [
                    rec.config.experiment_id,
                    _fmt(entry.get("n", params.get("n", ""))),
                    _fmt(entry.get("p", params.get("p", ""))),
                    entry.get("target", params.get("target", "")),
                    entry.get("mode", params.get("mode", "")),
                    _fmt(est["lower"]),
                    _fmt(est["upper"]),
                    est["witness"],
                    _fmt(params.get("seed", "")),
                    _fmt(est.get("margin")),
                ]
            )
        if "spread" in rec.payload:
            footers.append(
                f"# max_pairwise_delta_radius={_fmt(rec.payload['spread'])}"
            )
    return rows, footers


def emit_table(records, fmt: str = "csv") -> str:
    """Render records as CSV (17 significant digits) or an aligned text table."""
    rows, footers = table_rows(records)
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row)
        for footer in footers:
            buf.write(footer + "\n")
        return buf.getvalue()
    if fmt == "text":
        table = [CSV_COLUMNS] + [[str(x) for x in row] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(CSV_COLUMNS))]
        lines = []
        for r in table:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        lines.extend(footers)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


# -- figures -------------------------------------------------------------------


def render_figures(records, out_stem: Path) -> list:
    """Render one figure per plottable record next to the table output.

    Sweep-style records get the radius-versus-parameter curve with the 1/3
    reference line; independence records a per-target bar chart; probe
    records a margin histogram when per-item margins are present.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    for rec in records:
        payload = rec.payload
        fig = None
        if "sweep_points" in payload:
            alphas = [p["alpha"] for p in payload["sweep_points"]]
            radii = [p["radius"] for p in payload["sweep_points"]]
            fig, ax = plt.subplots(figsize=(5.0, 3.2))
            ax.plot(alphas, radii, lw=1.2)
            ax.axhline(1.0 / 3.0, color="gray", ls="--", lw=0.8, label="1/3")
            ax.set_xlabel("family parameter")
            ax.set_ylabel("critical radius")
            ax.legend(frameon=False)
        elif "spread" in payload and "estimates" in payload:
            labels = [e["target"] for e in payload["estimates"]]
            values = [e["estimate"]["lower"] for e in payload["estimates"]]
            fig, ax = plt.subplots(figsize=(5.0, 3.2))
            ax.bar(range(len(values)), values, color="#4878a8")
            ax.axhline(1.0 / 3.0, color="gray", ls="--", lw=0.8, label="1/3")
            ax.set_xticks(range(len(labels)))
            ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=7)
            ax.set_ylabel("radius estimate")
            ax.legend(frameon=False)
        elif "margins" in payload:
            fig, ax = plt.subplots(figsize=(5.0, 3.2))
            ax.hist(payload["margins"], bins=40, color="#4878a8")
            ax.axvline(0.0, color="red", lw=0.8)
            ax.set_xlabel("Bohr-condition margin")
            ax.set_ylabel("count")
        if fig is None:
            continue
        path = Path(f"{out_stem}_{rec.config.command}_{rec.config.experiment_id}.png")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
