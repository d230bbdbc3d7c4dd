"""Scenario configuration as sectioned ``key = value`` text.

Every key is optional; omitted keys take the defaults below, which mirror the
published simulation setup. Unknown sections or keys are errors so that a
typo never silently falls back to a default.

[geometry]    area_width, area_height (m), radius (m), beamwidth (rad; ``pi/6`` style accepted)
[discovery]   transmit_probability, slot_cap (slots), position_noise_m (m),
              blind_beamwidth (rad; empty means same as geometry.beamwidth)
[rf]          transmit_power (W), carrier_frequency (Hz), bandwidth (Hz), antenna_gain (dBi per end),
              frame_duration (s), noise_figure (dB), radar_cross_section (m^2),
              system_temperature (K), rate_efficiency (fraction of Shannon rate)
[jcs]         comm_distance (m), target_distance (m),
              payloads (comma list of ``<payload>:raw``, ``<payload>:semantic`` or a bit count)
[payload.<name>]  source, width, height (px), bits_per_pixel, semantic_ratio
[entropy]     levels (comma list), weights (comma list)
[experiment]  node_counts (comma list), replications, master_seed, workers
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field, fields, replace

from .discovery import DEFAULT_SLOT_CAP
from .geometry import TWO_PI
from .jcs_link import RfParams
from .purpose import OrderParameters
from .semantics import PayloadSpec, camvid, cityscapes, raw_payload_bits, semantic_payload_bits


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class GeometryConfig:
    area_width: float = 2000.0
    area_height: float = 2000.0
    radius: float = 200.0
    beamwidth: float = math.pi / 6


@dataclass(frozen=True)
class DiscoveryConfig:
    transmit_probability: float = 0.5
    slot_cap: int = DEFAULT_SLOT_CAP
    position_noise_m: float = 0.0
    blind_beamwidth: float | None = None


@dataclass(frozen=True)
class JcsConfig:
    comm_distance: float = 200.0
    target_distance: float = 100.0
    payloads: tuple[str, ...] = ("cityscapes:raw", "camvid:raw", "cityscapes:semantic")


@dataclass(frozen=True)
class ExperimentConfig:
    node_counts: tuple[int, ...] = tuple(range(10, 101, 10))
    replications: int = 30
    master_seed: int = 0
    workers: int = 1


def _default_payloads() -> tuple[PayloadSpec, ...]:
    return (cityscapes(), camvid())


@dataclass(frozen=True)
class ScenarioConfig:
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    discovery: DiscoveryConfig = field(default_factory=DiscoveryConfig)
    rf: RfParams = field(default_factory=RfParams)
    jcs: JcsConfig = field(default_factory=JcsConfig)
    payloads: tuple[PayloadSpec, ...] = field(default_factory=_default_payloads)
    entropy: OrderParameters = field(default_factory=OrderParameters)
    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)

    def payload(self, name: str) -> PayloadSpec:
        for p in self.payloads:
            if p.name == name:
                return p
        raise KeyError(name)

    def with_overrides(self, *, seed: int | None = None, replications: int | None = None,
                       workers: int | None = None) -> ScenarioConfig:
        exp = self.experiment
        if seed is not None:
            exp = replace(exp, master_seed=_check_seed("experiment.master_seed", seed))
        if replications is not None:
            if replications < 1:
                raise ConfigError("experiment.replications", "must be >= 1")
            exp = replace(exp, replications=replications)
        if workers is not None:
            if workers < 1:
                raise ConfigError("experiment.workers", "must be >= 1")
            exp = replace(exp, workers=workers)
        return replace(self, experiment=exp)


_ANGLE = re.compile(r"^\s*(?:(?P<mul>[0-9.eE+-]+)\s*\*\s*)?pi(?:\s*/\s*(?P<div>[0-9.eE+-]+))?\s*$")


def _to_float(key: str, text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise ConfigError(key, f"must be finite, got {text!r}")
    return v


def _to_angle(key: str, text: str) -> float:
    m = _ANGLE.match(text)
    if not m:
        return _to_float(key, text)
    mul = _to_float(key, m["mul"]) if m["mul"] else 1.0
    div = _to_float(key, m["div"]) if m["div"] else 1.0
    if div == 0:
        raise ConfigError(key, "division by zero")
    return mul * math.pi / div


def _to_int(key: str, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {text!r}") from None


def _to_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _check_seed(key: str, seed: int) -> int:
    if not 0 <= seed < 2**64:
        raise ConfigError(key, f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _positive(key: str, v: float) -> float:
    if not v > 0:
        raise ConfigError(key, f"must be positive, got {v!r}")
    return v


def _beamwidth(key: str, v: float) -> float:
    if not 0 < v <= TWO_PI + 1e-12:
        raise ConfigError(key, f"must be in (0, 2*pi], got {v!r}")
    return min(v, TWO_PI)


def _take(section: configparser.SectionProxy, allowed: set[str]) -> dict[str, str]:
    values = dict(section.items())
    for k in values:
        if k not in allowed:
            raise ConfigError(f"{section.name}.{k}", "unknown key")
    return values


def parse_config(text: str) -> ScenarioConfig:
    parser = configparser.ConfigParser(
        interpolation=None, default_section="__none__", inline_comment_prefixes=(";", "#")
    )
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("<document>", f"syntax error: {exc}") from None

    cfg = ScenarioConfig()
    known = {"geometry", "discovery", "rf", "jcs", "entropy", "experiment"}
    for name in parser.sections():
        if name not in known and not name.startswith("payload."):
            raise ConfigError(name, "unknown section")

    if parser.has_section("geometry"):
        v = _take(parser["geometry"], {f.name for f in fields(GeometryConfig)})
        g = {}
        for k in ("area_width", "area_height", "radius"):
            if k in v:
                g[k] = _positive(f"geometry.{k}", _to_float(f"geometry.{k}", v[k]))
        if "beamwidth" in v:
            g["beamwidth"] = _beamwidth("geometry.beamwidth", _to_angle("geometry.beamwidth", v["beamwidth"]))
        cfg = replace(cfg, geometry=replace(cfg.geometry, **g))

    if parser.has_section("discovery"):
        v = _take(parser["discovery"], {f.name for f in fields(DiscoveryConfig)})
        d = {}
        if "transmit_probability" in v:
            p = _to_float("discovery.transmit_probability", v["transmit_probability"])
            if not 0 < p < 1:
                raise ConfigError("discovery.transmit_probability", f"must be in (0, 1), got {p!r}")
            d["transmit_probability"] = p
        if "slot_cap" in v:
            cap = _to_int("discovery.slot_cap", v["slot_cap"])
            if cap < 1:
                raise ConfigError("discovery.slot_cap", "must be >= 1")
            d["slot_cap"] = cap
        if "position_noise_m" in v:
            s = _to_float("discovery.position_noise_m", v["position_noise_m"])
            if s < 0:
                raise ConfigError("discovery.position_noise_m", "must be non-negative")
            d["position_noise_m"] = s
        if "blind_beamwidth" in v:
            raw = v["blind_beamwidth"].strip()
            d["blind_beamwidth"] = (
                _beamwidth("discovery.blind_beamwidth", _to_angle("discovery.blind_beamwidth", raw))
                if raw else None
            )
        cfg = replace(cfg, discovery=replace(cfg.discovery, **d))

    if parser.has_section("rf"):
        v = _take(parser["rf"], {f.name for f in fields(RfParams)})
        r = {k: _to_float(f"rf.{k}", t) for k, t in v.items()}
        try:
            rf = replace(cfg.rf, **r)
        except ValueError as exc:
            bad = next((k for k in r if k in str(exc)), next(iter(r)))
            raise ConfigError(f"rf.{bad}", str(exc)) from None
        cfg = replace(cfg, rf=rf)

    payload_sections = [s for s in parser.sections() if s.startswith("payload.")]
    if payload_sections:
        specs = []
        allowed = {"source", "width", "height", "bits_per_pixel", "semantic_ratio"}
        for sec in payload_sections:
            name = sec.removeprefix("payload.")
            v = _take(parser[sec], allowed)
            if "source" not in v:
                raise ConfigError(f"{sec}.source", "required")
            kw = dict(source=v["source"].strip(), name=name)
            for k in ("width", "height", "bits_per_pixel"):
                if k == "bits_per_pixel" and k not in v:
                    continue
                if k not in v:
                    raise ConfigError(f"{sec}.{k}", "required")
                kw[k] = _to_int(f"{sec}.{k}", v[k])
            if "semantic_ratio" in v:
                kw["semantic_ratio"] = _to_float(f"{sec}.semantic_ratio", v["semantic_ratio"])
            try:
                specs.append(PayloadSpec(**kw))
            except ValueError as exc:
                bad = next((k for k in kw if k in str(exc)), "source")
                raise ConfigError(f"{sec}.{bad}", str(exc)) from None
        cfg = replace(cfg, payloads=tuple(specs))

    if parser.has_section("jcs"):
        v = _take(parser["jcs"], {f.name for f in fields(JcsConfig)})
        j = {}
        for k in ("comm_distance", "target_distance"):
            if k in v:
                j[k] = _positive(f"jcs.{k}", _to_float(f"jcs.{k}", v[k]))
        if "payloads" in v:
            j["payloads"] = tuple(_to_list(v["payloads"]))
        cfg = replace(cfg, jcs=replace(cfg.jcs, **j))

    if parser.has_section("entropy"):
        v = _take(parser["entropy"], {"levels", "weights"})
        levels = tuple(_to_list(v["levels"])) if "levels" in v else cfg.entropy.levels
        weights = (
            tuple(_to_float("entropy.weights", w) for w in _to_list(v["weights"]))
            if "weights" in v else cfg.entropy.weights
        )
        try:
            cfg = replace(cfg, entropy=OrderParameters(levels, weights))
        except ValueError as exc:
            key = "entropy.levels" if "unknown" in str(exc) else "entropy.weights"
            raise ConfigError(key, str(exc)) from None

    if parser.has_section("experiment"):
        v = _take(parser["experiment"], {f.name for f in fields(ExperimentConfig)})
        e = {}
        if "node_counts" in v:
            counts = tuple(_to_int("experiment.node_counts", t) for t in _to_list(v["node_counts"]))
            if not counts or any(c < 1 for c in counts):
                raise ConfigError("experiment.node_counts", "must be a non-empty list of positive counts")
            e["node_counts"] = counts
        for k in ("replications", "workers"):
            if k in v:
                x = _to_int(f"experiment.{k}", v[k])
                if x < 1:
                    raise ConfigError(f"experiment.{k}", "must be >= 1")
                e[k] = x
        if "master_seed" in v:
            e["master_seed"] = _check_seed("experiment.master_seed",
                                           _to_int("experiment.master_seed", v["master_seed"]))
        cfg = replace(cfg, experiment=replace(cfg.experiment, **e))

    _check_payload_refs(cfg)
    return cfg


def resolve_payload(cfg: ScenarioConfig, ref: str) -> int:
    """Bits for a ``jcs.payloads`` entry: ``name:raw``, ``name:semantic`` or a literal count."""
    if ":" not in ref:
        bits = _to_int("jcs.payloads", ref)
        if bits < 0:
            raise ConfigError("jcs.payloads", f"payload must be non-negative, got {bits}")
        return bits
    name, kind = (s.strip() for s in ref.split(":", 1))
    try:
        spec = cfg.payload(name)
    except KeyError:
        raise ConfigError("jcs.payloads", f"no [payload.{name}] section for {ref!r}") from None
    if kind == "raw":
        return raw_payload_bits(spec)
    if kind == "semantic":
        return semantic_payload_bits(spec)
    raise ConfigError("jcs.payloads", f"payload kind must be 'raw' or 'semantic', got {kind!r}")


def _check_payload_refs(cfg: ScenarioConfig) -> None:
    for ref in cfg.jcs.payloads:
        resolve_payload(cfg, ref)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (tuple, list)):
        return ", ".join(_fmt(x) for x in v)
    if v is None:
        return ""
    return str(v)


def serialize_config(cfg: ScenarioConfig) -> str:
    """Render a config so that ``parse_config(serialize_config(c)) == c``."""
    out = []

    def section(name, obj, skip=()):
        out.append(f"[{name}]")
        for f in fields(obj):
            if f.name not in skip:
                out.append(f"{f.name} = {_fmt(getattr(obj, f.name))}")
        out.append("")

    section("geometry", cfg.geometry)
    section("discovery", cfg.discovery)
    section("rf", cfg.rf)
    section("jcs", cfg.jcs)
    for p in cfg.payloads:
        section(f"payload.{p.name}", p, skip=("name",))
    out += ["[entropy]", f"levels = {_fmt(cfg.entropy.levels)}", f"weights = {_fmt(cfg.entropy.weights)}", ""]
    section("experiment", cfg.experiment)
    return "\n".join(out)


def load_config(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
