"""Experiment orchestration: topology construction, semantic exchange, JCS frames.

All randomness is derived from ``(master_seed, experiment label, replication)``
through :func:`derive_seed`; nothing touches a global random state. Rows are
sorted by ``(n_nodes, replication, policy)`` before they are returned, so
tables are identical whether replications run serially or in worker processes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import platform
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .config import ScenarioConfig, resolve_payload, serialize_config
from .discovery import (
    DiscoveryPolicy,
    DiscoveryTimeout,
    build_nodes,
    reduction_ratio,
    run_blind_discovery,
    run_sensing_assisted_discovery,
)
from .geometry import BeamConfig, place_nodes
from .jcs_link import FrameOverflowError, frame_budget, linear_to_db
from .semantics import efficiency_gain, raw_payload_bits, semantic_payload_bits

PAPER_REDUCTION_AT_100 = 0.492

DISCOVERY_COLUMNS = ("n_nodes", "seed", "policy", "slots_used", "completed")
DISCOVERY_SUMMARY_COLUMNS = (
    "n_nodes", "replications", "blind_mean_slots", "blind_std_slots",
    "assisted_mean_slots", "assisted_std_slots", "mean_reduction", "timeouts",
)
SEMANTICS_COLUMNS = ("source", "raw_bits", "semantic_bits", "efficiency_gain")
JCS_COLUMNS = (
    "payload_bits", "comm_snr_db", "comm_rate_bps", "comm_time_s",
    "sensing_time_s", "radar_snr_db", "radar_mi_bits",
)
POLICIES = ("blind", "sensing_assisted")


def derive_seed(master_seed: int, experiment_label: str, replication_index: int) -> int:
    """Stable 64-bit stream seed hashed from the triple."""
    msg = f"{master_seed}\x1f{experiment_label}\x1f{replication_index}".encode()
    return int.from_bytes(hashlib.blake2b(msg, digest_size=8).digest(), "big")


def _fig4_label(n: int) -> str:
    return f"fig4/n={n}"


@dataclass
class DiscoveryTable:
    rows: list[dict] = field(default_factory=list)
    summary: list[dict] = field(default_factory=list)
    seeds: list[dict] = field(default_factory=list)

    def summary_for(self, n: int) -> dict:
        return next(s for s in self.summary if s["n_nodes"] == n)


def _fig4_replication(cfg: ScenarioConfig, n: int, rep: int) -> list[dict]:
    seed = derive_seed(cfg.experiment.master_seed, _fig4_label(n), rep)
    g, d = cfg.geometry, cfg.discovery
    positions = place_nodes(n, (g.area_width, g.area_height), np.random.default_rng([seed, 0]))

    blind_beam = BeamConfig(d.blind_beamwidth or g.beamwidth)
    assisted_beam = BeamConfig(g.beamwidth)
    noise_rng = np.random.default_rng([seed, 3])
    runs = {
        "blind": lambda: run_blind_discovery(
            build_nodes(positions, blind_beam, g.radius),
            g.radius,
            DiscoveryPolicy("blind", d.transmit_probability),
            np.random.default_rng([seed, 1]),
            d.slot_cap,
        ),
        "sensing_assisted": lambda: run_sensing_assisted_discovery(
            build_nodes(positions, assisted_beam, g.radius, noise_rng, d.position_noise_m),
            g.radius,
            noise_rng,
            d.slot_cap,
            d.position_noise_m,
        ),
    }
    rows = []
    for policy in POLICIES:
        try:
            res = runs[policy]()
        except DiscoveryTimeout as exc:
            res = exc.partial
        rows.append(dict(n_nodes=n, seed=seed, policy=policy, slots_used=res.slots_used,
                         completed=res.completed, replication=rep))
    return rows


def _fig4_task(args):
    return _fig4_replication(*args)


def run_fig4_experiment(cfg: ScenarioConfig, workers: int | None = None) -> DiscoveryTable:
    """Slots to complete topology construction, blind vs. sensing-assisted."""
    workers = cfg.experiment.workers if workers is None else workers
    tasks = [(cfg, n, rep) for n in cfg.experiment.node_counts for rep in range(cfg.experiment.replications)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_fig4_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        chunks = [_fig4_task(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["n_nodes"], r["replication"], POLICIES.index(r["policy"])))

    table = DiscoveryTable()
    for r in rows:
        if r["policy"] == POLICIES[0]:
            table.seeds.append(dict(experiment="fig4", n_nodes=r["n_nodes"],
                                    replication=r["replication"], seed=r["seed"]))
        table.rows.append({k: r[k] for k in DISCOVERY_COLUMNS})

    for n in cfg.experiment.node_counts:
        blind = [r for r in rows if r["n_nodes"] == n and r["policy"] == "blind"]
        assisted = [r for r in rows if r["n_nodes"] == n and r["policy"] == "sensing_assisted"]
        ratios = [
            reduction_ratio(b["slots_used"], a["slots_used"])
            for b, a in zip(blind, assisted)
            if b["slots_used"] > 0
        ]
        table.summary.append(dict(
            n_nodes=n,
            replications=len(blind),
            blind_mean_slots=_mean([r["slots_used"] for r in blind]),
            blind_std_slots=_std([r["slots_used"] for r in blind]),
            assisted_mean_slots=_mean([r["slots_used"] for r in assisted]),
            assisted_std_slots=_std([r["slots_used"] for r in assisted]),
            mean_reduction=_mean(ratios),
            timeouts=sum(not r["completed"] for r in blind + assisted),
        ))
    return table


def _mean(xs) -> float:
    return float(statistics.fmean(xs)) if xs else math.nan


def _std(xs) -> float:
    return float(statistics.stdev(xs)) if len(xs) > 1 else 0.0


def run_fig5_experiment(cfg: ScenarioConfig) -> list[dict]:
    """Raw versus semantic payload bits and the resulting efficiency gain."""
    rows = []
    for spec in cfg.payloads:
        raw, sem = raw_payload_bits(spec), semantic_payload_bits(spec)
        rows.append(dict(source=spec.name, raw_bits=raw, semantic_bits=sem,
                         efficiency_gain=efficiency_gain(raw, sem)))
    return rows


@dataclass
class JcsTable:
    rows: list[dict] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)


def run_fig6_experiment(cfg: ScenarioConfig) -> JcsTable:
    """One time-division frame budget per configured payload, ascending in size."""
    table = JcsTable()
    payloads = sorted((resolve_payload(cfg, ref), ref) for ref in cfg.jcs.payloads)
    for bits, ref in payloads:
        try:
            fb = frame_budget(bits, cfg.rf, cfg.jcs.comm_distance, cfg.jcs.target_distance)
        except FrameOverflowError as exc:
            table.errors.append(dict(payload=ref, payload_bits=bits, error=str(exc)))
            continue
        table.rows.append(dict(
            payload_bits=bits,
            comm_snr_db=linear_to_db(fb.comm_snr),
            comm_rate_bps=fb.comm_rate,
            comm_time_s=fb.comm_time,
            sensing_time_s=fb.sensing_time,
            radar_snr_db=linear_to_db(fb.radar_snr),
            radar_mi_bits=fb.radar_mi,
        ))
    return table


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


@dataclass
class RunArtifacts:
    discovery_table: DiscoveryTable | None = None
    semantics_table: list[dict] | None = None
    jcs_table: JcsTable | None = None
    manifest: dict = field(default_factory=dict)


def run_experiments(cfg: ScenarioConfig, which=("fig4", "fig5", "fig6"), workers: int | None = None) -> RunArtifacts:
    art = RunArtifacts()
    timings = {}
    if "fig4" in which:
        t0 = time.perf_counter()
        art.discovery_table = run_fig4_experiment(cfg, workers)
        timings["fig4"] = time.perf_counter() - t0
    if "fig5" in which:
        t0 = time.perf_counter()
        art.semantics_table = run_fig5_experiment(cfg)
        timings["fig5"] = time.perf_counter() - t0
    if "fig6" in which:
        t0 = time.perf_counter()
        art.jcs_table = run_fig6_experiment(cfg)
        timings["fig6"] = time.perf_counter() - t0

    art.manifest = dict(
        package_version=__version__,
        python=platform.python_version(),
        numpy=np.__version__,
        master_seed=cfg.experiment.master_seed,
        experiments=list(which),
        config=serialize_config(cfg),
        seeds=art.discovery_table.seeds if art.discovery_table else [],
        wall_time_s=timings,
    )
    if art.discovery_table is not None:
        art.manifest["discovery_summary"] = art.discovery_table.summary
        largest = max(cfg.experiment.node_counts)
        art.manifest["reduction_reference"] = dict(
            n_nodes=largest,
            simulated=art.discovery_table.summary_for(largest)["mean_reduction"],
            published_at_100_nodes=PAPER_REDUCTION_AT_100,
        )
    if art.jcs_table is not None and art.jcs_table.errors:
        art.manifest["jcs_errors"] = art.jcs_table.errors
    return art


def write_artifacts(art: RunArtifacts, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, text):
        path = out / name
        path.write_text(text, encoding="utf-8", newline="")
        written.append(path)

    if art.discovery_table is not None:
        put("discovery.csv", to_csv(art.discovery_table.rows, DISCOVERY_COLUMNS))
        put("discovery_summary.csv", to_csv(art.discovery_table.summary, DISCOVERY_SUMMARY_COLUMNS))
    if art.semantics_table is not None:
        put("semantics.csv", to_csv(art.semantics_table, SEMANTICS_COLUMNS))
    if art.jcs_table is not None:
        put("jcs.csv", to_csv(art.jcs_table.rows, JCS_COLUMNS))
    put("manifest.json", json.dumps(art.manifest, indent=2, sort_keys=True) + "\n")
    return written


__all__ = [
    "DISCOVERY_COLUMNS",
    "DISCOVERY_SUMMARY_COLUMNS",
    "JCS_COLUMNS",
    "PAPER_REDUCTION_AT_100",
    "SEMANTICS_COLUMNS",
    "DiscoveryTable",
    "JcsTable",
    "RunArtifacts",
    "derive_seed",
    "run_experiments",
    "run_fig4_experiment",
    "run_fig5_experiment",
    "run_fig6_experiment",
    "to_csv",
    "write_artifacts",
]

