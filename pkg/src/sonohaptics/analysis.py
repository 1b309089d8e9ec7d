"""Scene feedback analysis, trace replay, and noisy-gaze selection simulation.

``analyze`` quantifies how distinguishable the cues of a scene (or of a
local cluster) are via pairwise pitch/amplitude gaps. ``simulate`` is a
geometric proxy for selection robustness: it perturbs ideal gaze rays with
Gaussian angular noise and counts how often the sphere cast resolves the
wrong object. It models tracker noise and target geometry only, not human
perception, so its numbers are trend indicators rather than study results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import crossmodal
from .crossmodal import FeedbackCue, HeadPose
from .engine import Engine, EngineConfig, EngineEvent, GazeSample, SceneIndex, sphere_cast
from .scene import Scene, scene_stats

DEFAULT_NOISE_SIGMA_DEG = 1.652  # head-free gaze tracker accuracy
DEFAULT_EYE_ORIGIN = (0.0, 1.2, 0.0)


@dataclass(frozen=True)
class DistinctivenessReport:
    mode: str
    cues: dict[str, FeedbackCue]
    min_pitch_gap_hz: float
    mean_pitch_gap_hz: float
    min_amplitude_gap: float
    mean_amplitude_gap: float
    cluster: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "objects": {oid: cue.to_dict() for oid, cue in sorted(self.cues.items())},
            "min_pitch_gap_hz": self.min_pitch_gap_hz,
            "mean_pitch_gap_hz": self.mean_pitch_gap_hz,
            "min_amplitude_gap": self.min_amplitude_gap,
            "mean_amplitude_gap": self.mean_amplitude_gap,
        }
        if self.cluster is not None:
            out["cluster"] = list(self.cluster)
        return out


def _pairwise_gaps(values: list[float]) -> tuple[float, float]:
    if len(values) < 2:
        return 0.0, 0.0
    gaps = [
        abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]
    ]
    return min(gaps), float(np.mean(gaps))


def analyze(
    scene: Scene,
    mode: str = "global",
    anchor: str | None = None,
    radius: float = 1.0,
    head: HeadPose = HeadPose(),
) -> DistinctivenessReport:
    """Compute the cue table and pairwise gap statistics for a scene."""
    params = scene_stats(scene)
    if mode == "global":
        cues = {o.id: crossmodal.global_cue(o, params, head) for o in scene.visible}
        cluster = None
    elif mode == "local":
        if anchor is None:
            raise ValueError("local mode requires an anchor object id")
        try:
            anchor_obj = scene.get(anchor)
        except KeyError:
            raise ValueError(f"unknown anchor id {anchor!r}") from None
        members = [
            o
            for o in scene.visible
            if float(np.linalg.norm(np.subtract(o.position, anchor_obj.position))) <= radius
        ]
        values = crossmodal.local_assignments(members)
        cues = {}
        for o in members:
            pan = crossmodal.pan_from_direction(head.forward, head.position, o.position)
            pitch, amplitude = values[o.id]
            cues[o.id] = FeedbackCue(pitch, amplitude, pan, o.material)
        cluster = tuple(sorted(cues))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    pitches = [c.pitch_hz for c in cues.values()]
    amplitudes = [c.amplitude for c in cues.values()]
    min_p, mean_p = _pairwise_gaps(pitches)
    min_a, mean_a = _pairwise_gaps(amplitudes)
    return DistinctivenessReport(mode, cues, min_p, mean_p, min_a, mean_a, cluster)


# -- trace replay ------------------------------------------------------------

COMMANDS = ("activate", "deactivate", "enter_local", "exit_local", "select")


class TraceError(ValueError):
    """Trace line malformed; message carries the 1-based line number."""


def _parse_trace_line(raw: dict, line_no: int) -> dict:
    if "cmd" in raw:
        if raw["cmd"] not in COMMANDS:
            raise TraceError(f"line {line_no}: unknown command {raw['cmd']!r}")
        return raw
    try:
        GazeSample(
            t=float(raw["t"]),
            eye_origin=tuple(raw["origin"]),
            eye_dir=tuple(raw["dir"]),
            head_forward=tuple(raw["head_forward"]),
            head_pos=tuple(raw["head_pos"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceError(f"line {line_no}: invalid gaze sample: {exc}") from exc
    return raw


def iter_trace(path: str | Path):
    """Yield parsed trace entries (gaze dicts or command dicts) from JSONL."""
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TraceError(f"line {line_no}: malformed JSON: {exc}") from exc
            yield _parse_trace_line(raw, line_no)


def apply_trace_entry(engine: Engine, entry: dict) -> list[EngineEvent]:
    """Apply one parsed trace entry to an engine and return its events."""
    if "cmd" in entry:
        t = float(entry.get("t", 0.0))
        cmd = entry["cmd"]
        if cmd == "activate":
            return engine.activate(t)
        if cmd == "deactivate":
            return engine.deactivate(t)
        if cmd == "enter_local":
            return engine.enter_local(t)
        if cmd == "exit_local":
            return engine.exit_local(t)
        return engine.confirm_selection(t)
    sample = GazeSample(
        t=float(entry["t"]),
        eye_origin=tuple(entry["origin"]),
        eye_dir=tuple(entry["dir"]),
        head_forward=tuple(entry["head_forward"]),
        head_pos=tuple(entry["head_pos"]),
    )
    return engine.step(sample)


def replay(scene: Scene, trace_path: str | Path, config: EngineConfig = EngineConfig()) -> list[EngineEvent]:
    """Feed a trace file through a fresh engine and collect all events."""
    engine = Engine(scene, config)
    events: list[EngineEvent] = []
    for entry in iter_trace(trace_path):
        events.extend(apply_trace_entry(engine, entry))
    return events


def write_event_log(events: list[EngineEvent], path: str | Path) -> None:
    """Serialize events as canonical JSONL (sorted keys, bare floats)."""
    with open(path, "w", encoding="utf-8") as handle:
        for event in events:
            handle.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")


# -- selection simulation ----------------------------------------------------


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    noise_sigma_deg: float
    error_rate: float
    give_up_rate: float
    per_object_errors: dict[str, int]
    per_object_trials: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "noise_sigma_deg": self.noise_sigma_deg,
            "error_rate": self.error_rate,
            "give_up_rate": self.give_up_rate,
            "per_object_errors": dict(sorted(self.per_object_errors.items())),
            "per_object_trials": dict(sorted(self.per_object_trials.items())),
        }


def _perpendicular_basis(d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([0.0, 1.0, 0.0]) if abs(d[1]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = np.cross(d, helper)
    u /= np.linalg.norm(u)
    v = np.cross(d, u)
    return u, v


def simulate(
    scene: Scene,
    noise_sigma_deg: float = DEFAULT_NOISE_SIGMA_DEG,
    trials: int = 1000,
    seed: int = 0,
    eye_origin: tuple[float, float, float] = DEFAULT_EYE_ORIGIN,
    cast_radius: float = 0.5,
) -> SimulationReport:
    """Monte-Carlo selection proxy under Gaussian gaze-direction noise.

    Each trial aims a ray from the eye origin at a uniformly chosen target's
    bbox center, tilts it by independent per-axis angular noise, and counts
    an error when the sphere cast resolves a different object or nothing.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    visible = scene.visible
    if not visible:
        raise ValueError("scene has no non-hidden objects")

    rng = np.random.default_rng(seed)
    index = SceneIndex(scene)
    origin = np.asarray(eye_origin, dtype=np.float64)
    errors = 0
    give_ups = 0
    per_errors = {o.id: 0 for o in visible}
    per_trials = {o.id: 0 for o in visible}

    for _ in range(trials):
        target = visible[rng.integers(len(visible))]
        per_trials[target.id] += 1
        d = np.asarray(target.bbox.center, dtype=np.float64) - origin
        d /= np.linalg.norm(d)
        if noise_sigma_deg > 0.0:
            u, v = _perpendicular_basis(d)
            theta_u, theta_v = np.radians(rng.normal(0.0, noise_sigma_deg, size=2))
            d = d + np.tan(theta_u) * u + np.tan(theta_v) * v
            d /= np.linalg.norm(d)
        resolved = sphere_cast(index, tuple(origin), tuple(d), cast_radius)
        if resolved is None:
            give_ups += 1
            errors += 1
            per_errors[target.id] += 1
        elif resolved != target.id:
            errors += 1
            per_errors[target.id] += 1

    return SimulationReport(
        trials=trials,
        noise_sigma_deg=noise_sigma_deg,
        error_rate=errors / trials,
        give_up_rate=give_ups / trials,
        per_object_errors=per_errors,
        per_object_trials=per_trials,
    )
