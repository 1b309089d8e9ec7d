"""Gaze target resolution and the feedback mode state machine.

Target resolution is a swept-sphere cast: a ray tested against every
non-hidden object's bounding box inflated by the cast radius; the hit with
the smallest nonnegative entry distance wins. The engine itself is a
single-owner state machine driven by a serialized stream of gaze samples and
commands; cue emission is edge-triggered on hover changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import crossmodal
from .crossmodal import FeedbackCue, HeadPose
from .scene import Scene, SceneObject, SizeNormalizationParams, scene_stats

Vec3 = tuple[float, float, float]


class EngineError(RuntimeError):
    pass


class NoAnchorError(EngineError):
    """Local mode requested before any object has been gazed at."""


@dataclass(frozen=True)
class GazeSample:
    t: float
    eye_origin: Vec3
    eye_dir: Vec3
    head_forward: Vec3
    head_pos: Vec3

    def __post_init__(self) -> None:
        for name, v in (("eye_dir", self.eye_dir), ("head_forward", self.head_forward)):
            norm = float(np.linalg.norm(v))
            if abs(norm - 1.0) > 1e-6:
                raise ValueError(f"{name} must be unit-norm, got |v| = {norm}")


@dataclass(frozen=True)
class EngineConfig:
    cast_radius: float = 0.5
    local_radius: float = 1.0
    cue_kind: str = "sonohaptics"  # sonohaptics | static | silent
    snap_to_scale: bool = False
    cue_duration_s: float = crossmodal.DEFAULT_CUE_DURATION_S

    def __post_init__(self) -> None:
        if self.cast_radius <= 0 or self.local_radius <= 0:
            raise ValueError("radii must be positive")
        if self.cue_kind not in ("sonohaptics", "static", "silent"):
            raise ValueError(f"unknown cue kind {self.cue_kind!r}")


@dataclass(frozen=True)
class EngineEvent:
    t: float
    type: str
    object: str | None = None
    cue: FeedbackCue | None = None
    mode: str | None = None
    cluster: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        out: dict = {"t": self.t, "type": self.type}
        if self.object is not None or self.type == "selection_confirmed":
            out["object"] = self.object
        if self.cue is not None:
            out["cue"] = self.cue.to_dict()
        if self.mode is not None:
            out["mode"] = self.mode
        if self.cluster is not None:
            out["cluster"] = list(self.cluster)
        return out


class SceneIndex:
    """Precomputed bbox arrays for vectorized sphere casting."""

    def __init__(self, scene: Scene):
        visible = scene.visible
        self.ids = [o.id for o in visible]
        centers = np.array([o.bbox.center for o in visible], dtype=np.float64)
        half = np.array([o.bbox.extents for o in visible], dtype=np.float64) / 2.0
        self.lo = centers - half
        self.hi = centers + half


def sphere_cast(
    scene: Scene | SceneIndex,
    origin: Vec3,
    direction: Vec3,
    radius: float,
) -> str | None:
    """Return the id of the nearest object swept-hit by the gaze ray.

    Each non-hidden bbox is inflated by the cast radius on every axis and
    slab-tested against the ray; the hit with the smallest nonnegative entry
    distance wins (an origin inside a box counts as entry distance 0). Ties
    break on object id.
    """
    index = scene if isinstance(scene, SceneIndex) else SceneIndex(scene)
    if not index.ids:
        return None
    o = np.asarray(origin, dtype=np.float64)
    d = np.asarray(direction, dtype=np.float64)

    lo = index.lo - radius
    hi = index.hi + radius
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = (lo - o) / d
        t2 = (hi - o) / d
    # Axes with zero direction: hit iff origin inside the slab.
    zero = d == 0.0
    inside = (o >= lo) & (o <= hi)
    near = np.where(zero, np.where(inside, -np.inf, np.inf), np.minimum(t1, t2))
    far = np.where(zero, np.where(inside, np.inf, -np.inf), np.maximum(t1, t2))

    t_near = near.max(axis=1)
    t_far = far.min(axis=1)
    hit = (t_near <= t_far) & (t_far >= 0.0)
    if not hit.any():
        return None
    entry = np.maximum(t_near, 0.0)
    entry[~hit] = np.inf
    best = min((entry[i], index.ids[i]) for i in np.flatnonzero(hit))
    return best[1]


@dataclass
class EngineState:
    mode: str = "idle"  # idle | global | local
    hovered: str | None = None
    anchor: str | None = None
    local_cluster: tuple[str, ...] = ()
    local_values: dict[str, tuple[float, float]] = field(default_factory=dict)


class Engine:
    """Single-owner feedback engine over an immutable scene.

    All mutations flow through the command/sample methods below; callers with
    concurrent producers must serialize externally (e.g. a message queue).
    """

    def __init__(self, scene: Scene, config: EngineConfig = EngineConfig()):
        self.scene = scene
        self.config = config
        self.params: SizeNormalizationParams = scene_stats(scene)
        self.state = EngineState()
        self._index = SceneIndex(scene)

    # -- commands ----------------------------------------------------------

    def activate(self, t: float = 0.0) -> list[EngineEvent]:
        if self.state.mode != "idle":
            return []
        self.state.mode = "global"
        return [EngineEvent(t, "activated")]

    def deactivate(self, t: float = 0.0) -> list[EngineEvent]:
        if self.state.mode == "idle":
            return []
        self.state = EngineState()
        return [EngineEvent(t, "deactivated")]

    def enter_local(self, t: float = 0.0) -> list[EngineEvent]:
        if self.state.mode != "global":
            return []
        anchor_id = self.state.anchor
        if anchor_id is None:
            raise NoAnchorError("local mode requires a previously gazed object")
        anchor = self.scene.get(anchor_id)
        r = self.config.local_radius
        cluster = [
            o
            for o in self.scene.visible
            if float(np.linalg.norm(np.subtract(o.position, anchor.position))) <= r
        ]
        values = crossmodal.local_assignments(cluster)
        self.state.mode = "local"
        self.state.local_cluster = tuple(sorted(o.id for o in cluster))
        self.state.local_values = values
        return [EngineEvent(t, "mode_changed", mode="local", cluster=self.state.local_cluster)]

    def exit_local(self, t: float = 0.0) -> list[EngineEvent]:
        if self.state.mode != "local":
            return []
        self.state.mode = "global"
        self.state.local_cluster = ()
        self.state.local_values = {}
        return [EngineEvent(t, "mode_changed", mode="global")]

    def confirm_selection(self, t: float = 0.0) -> list[EngineEvent]:
        if self.state.mode == "idle":
            return []
        return [EngineEvent(t, "selection_confirmed", object=self.state.hovered)]

    # -- gaze --------------------------------------------------------------

    def step(self, sample: GazeSample) -> list[EngineEvent]:
        """Process one gaze sample; emits events only on hover changes."""
        if self.state.mode == "idle":
            return []
        target = sphere_cast(
            self._index, sample.eye_origin, sample.eye_dir, self.config.cast_radius
        )
        if target == self.state.hovered:
            return []
        events: list[EngineEvent] = []
        if self.state.hovered is not None:
            events.append(EngineEvent(sample.t, "hover_exit", object=self.state.hovered))
        self.state.hovered = target
        if target is not None:
            self.state.anchor = target
            events.append(
                EngineEvent(sample.t, "hover_enter", object=target,
                            cue=self._cue_for(target, sample))
            )
        return events

    # -- cue assembly ------------------------------------------------------

    def _cue_for(self, object_id: str, sample: GazeSample) -> FeedbackCue:
        obj = self.scene.get(object_id)
        head = HeadPose(position=sample.head_pos, forward=sample.head_forward)
        if self.state.mode == "local":
            pan = crossmodal.pan_from_direction(head.forward, head.position, obj.position)
            if object_id not in self.state.local_values:
                return FeedbackCue(0.0, 0.0, pan, obj.material,
                                   self.config.cue_duration_s, kind="silent")
            if self.config.cue_kind != "sonohaptics":
                return crossmodal.global_cue(obj, self.params, head,
                                             kind=self.config.cue_kind,
                                             duration_s=self.config.cue_duration_s)
            pitch, amplitude = self.state.local_values[object_id]
            return FeedbackCue(pitch, amplitude, pan, obj.material,
                               self.config.cue_duration_s)
        return crossmodal.global_cue(
            obj,
            self.params,
            head,
            kind=self.config.cue_kind,
            snap_to_scale=self.config.snap_to_scale,
            duration_s=self.config.cue_duration_s,
        )
