"""Visual-to-audio-haptic mappings and cue assembly.

Two fitted polynomials drive the global feedback mode: lightness to audio
pitch and normalized face area to vibration amplitude. Both are strictly
increasing on their domains, so the ordinal association between visual
property and cue parameter is preserved. Out-of-domain inputs clamp instead
of extrapolating (the amplitude parabola turns over past its vertex, which
would break the size ordering).

Local mode ignores the polynomials and redistributes pitch and amplitude
uniformly over the full output ranges among the clustered objects, which
maximizes pairwise contrast.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import colorimetry
from .scene import MATERIALS, SceneObject, SizeNormalizationParams

# Audio pitch output range: equal-temperament C3..B5.
PITCH_MIN_HZ = 130.81
PITCH_MAX_HZ = 987.77

# Haptic drive amplitude output range.
AMP_MIN = 0.125
AMP_MAX = 1.0

# Cube side lengths used in the data-collection study (display units).
STUDY_SIDE_MIN = 46.0
STUDY_SIDE_MAX = 147.0
STUDY_SIDE_MID = (STUDY_SIDE_MIN + STUDY_SIDE_MAX) / 2.0  # 96.5

# Face-area domain of the size->amplitude model (display units squared).
AREA_MIN = STUDY_SIDE_MIN**2  # 2116
AREA_MAX = STUDY_SIDE_MAX**2  # 21609

# Lightness -> pitch polynomial coefficients (constant, linear, quadratic).
PITCH_COEFFS = (184.05, 0.375, 0.054)

# Area -> amplitude polynomial coefficients.
AMP_COEFFS = (0.275, 3.80e-05, -6.01e-10)

# Static baseline cue: constant beep regardless of object properties.
STATIC_PITCH_HZ = 220.0
STATIC_DURATION_S = 0.2

DEFAULT_CUE_DURATION_S = 0.2

# 36 equal-temperament semitones C3 (MIDI 48) .. B5 (MIDI 83).
SEMITONE_TABLE_HZ = tuple(440.0 * 2.0 ** ((m - 69) / 12.0) for m in range(48, 84))


@dataclass(frozen=True)
class FeedbackCue:
    """Fully resolved cue for one hover event."""

    pitch_hz: float
    amplitude: float
    pan: float
    timbre: str
    duration_s: float = DEFAULT_CUE_DURATION_S
    kind: str = "sonohaptics"  # sonohaptics | static | silent

    def __post_init__(self) -> None:
        if self.kind == "sonohaptics":
            if not PITCH_MIN_HZ - 1e-9 <= self.pitch_hz <= PITCH_MAX_HZ + 1e-9:
                raise ValueError(f"pitch {self.pitch_hz} Hz outside cue range")
            if not AMP_MIN - 1e-9 <= self.amplitude <= AMP_MAX + 1e-9:
                raise ValueError(f"amplitude {self.amplitude} outside cue range")
        if not -1.0 <= self.pan <= 1.0:
            raise ValueError(f"pan {self.pan} outside [-1, 1]")
        if self.duration_s <= 0.0:
            raise ValueError("duration must be positive")

    def to_dict(self) -> dict:
        return {
            "pitch_hz": self.pitch_hz,
            "amplitude": self.amplitude,
            "pan": self.pan,
            "timbre": self.timbre,
            "duration_s": self.duration_s,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class TimbrePreset:
    """Parametric modal-impact preset for one material.

    ``modes`` are (frequency ratio, relative gain, decay time) triples; decay
    is the T60 time of the exponentially decaying partial. Materials with a
    noisy character (paper, fabric) add a low-passed noise burst.
    """

    material: str
    base_hz: float
    modes: tuple[tuple[float, float, float], ...]
    noise_gain: float = 0.0
    noise_cutoff_hz: float = 4000.0
    noise_decay_s: float = 0.05

    def __post_init__(self) -> None:
        if not self.modes and self.noise_gain <= 0.0:
            raise ValueError(f"preset {self.material!r} has no modes and no noise")
        for ratio, gain, decay in self.modes:
            if ratio <= 0 or decay <= 0 or not 0.0 < gain <= 1.0:
                raise ValueError(f"preset {self.material!r} has an invalid mode")

    def to_dict(self) -> dict:
        return {
            "material": self.material,
            "base_hz": self.base_hz,
            "modes": [list(m) for m in self.modes],
            "noise_gain": self.noise_gain,
            "noise_cutoff_hz": self.noise_cutoff_hz,
            "noise_decay_s": self.noise_decay_s,
        }


DEFAULT_TIMBRE_PRESETS: dict[str, TimbrePreset] = {
    "metal": TimbrePreset("metal", 800.0, ((1.0, 1.0, 1.2), (2.76, 0.6, 0.9), (5.40, 0.35, 0.6))),
    "glass": TimbrePreset("glass", 1200.0, ((1.0, 1.0, 0.6), (2.32, 0.55, 0.45), (4.25, 0.3, 0.3))),
    "ceramic": TimbrePreset("ceramic", 900.0, ((1.0, 1.0, 0.35), (2.5, 0.5, 0.25), (4.1, 0.3, 0.18))),
    "wood": TimbrePreset("wood", 400.0, ((1.0, 1.0, 0.12), (2.1, 0.5, 0.08), (3.0, 0.25, 0.06))),
    "plastic": TimbrePreset("plastic", 500.0, ((1.0, 1.0, 0.10), (1.9, 0.45, 0.07), (2.8, 0.2, 0.05))),
    "paper": TimbrePreset("paper", 1500.0, ((1.0, 0.4, 0.05),), noise_gain=0.8,
                          noise_cutoff_hz=6000.0, noise_decay_s=0.05),
    "fabric": TimbrePreset("fabric", 300.0, (), noise_gain=1.0,
                           noise_cutoff_hz=1200.0, noise_decay_s=0.08),
}

assert set(DEFAULT_TIMBRE_PRESETS) == set(MATERIALS)


def load_timbre_presets(path: str | Path) -> dict[str, TimbrePreset]:
    """Load a preset table from JSON, filling gaps from the defaults."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    presets = dict(DEFAULT_TIMBRE_PRESETS)
    for material, spec in raw.items():
        if material not in MATERIALS:
            raise ValueError(f"unknown material {material!r} in preset file")
        presets[material] = TimbrePreset(
            material=material,
            base_hz=float(spec["base_hz"]),
            modes=tuple(tuple(m) for m in spec.get("modes", ())),
            noise_gain=float(spec.get("noise_gain", 0.0)),
            noise_cutoff_hz=float(spec.get("noise_cutoff_hz", 4000.0)),
            noise_decay_s=float(spec.get("noise_decay_s", 0.05)),
        )
    return presets


def timbre_for_material(material: str) -> TimbrePreset:
    return DEFAULT_TIMBRE_PRESETS[material]


def pitch_from_lightness(lightness: float) -> float:
    """Map CIELAB lightness (0-100) to audio pitch in Hz.

    Quadratic fit, strictly increasing on the lightness domain; output is
    clamped to the C3..B5 cue range (the polynomial stays inside it anyway).
    """
    l = min(max(lightness, 0.0), 100.0)
    c0, c1, c2 = PITCH_COEFFS
    p = c0 + c1 * l + c2 * l * l
    return min(max(p, PITCH_MIN_HZ), PITCH_MAX_HZ)


def amplitude_from_size(area: float) -> float:
    """Map normalized face area (study units squared) to haptic amplitude.

    The parabola's vertex sits near s = 31614, beyond the clamped domain
    [2116, 21609], so the mapping is strictly increasing where it is used.
    """
    s = min(max(area, AREA_MIN), AREA_MAX)
    c0, c1, c2 = AMP_COEFFS
    a = c0 + c1 * s + c2 * s * s
    return min(max(a, AMP_MIN), AMP_MAX)


def amplitude_polynomial(area: float) -> float:
    """Raw amplitude polynomial without domain clamping (for diagnostics)."""
    c0, c1, c2 = AMP_COEFFS
    return c0 + c1 * area + c2 * area * area


def _linmap(value: float, lo: float, hi: float) -> float:
    if hi <= lo:
        return STUDY_SIDE_MID
    frac = (value - lo) / (hi - lo)
    return STUDY_SIDE_MIN + frac * (STUDY_SIDE_MAX - STUDY_SIDE_MIN)


def normalize_size(obj: SceneObject, params: SizeNormalizationParams) -> float:
    """Rescale an object's silhouette into study units and return its area.

    Width and height are min-max normalized over the scene and mapped onto
    the study's side-length range [46, 147]; a degenerate axis (all objects
    equal) maps to the midpoint 96.5.
    """
    w, h = obj.silhouette
    w_scaled = _linmap(w, params.min_w, params.max_w)
    h_scaled = _linmap(h, params.min_h, params.max_h)
    return w_scaled * h_scaled


def pan_from_direction(
    head_forward: tuple[float, float, float],
    head_pos: tuple[float, float, float],
    obj_pos: tuple[float, float, float],
) -> float:
    """Signed horizontal azimuth of the object, scaled to pan in [-1, 1].

    Coordinates are y-up; both the head forward vector and the head-to-object
    vector are projected onto the horizontal plane. +90 degrees (full right)
    maps to +1. Objects straight above or below the head pan to center.
    """
    fx, _, fz = head_forward
    to = (obj_pos[0] - head_pos[0], obj_pos[2] - head_pos[2])
    fwd = (fx, fz)
    fwd_norm = math.hypot(*fwd)
    to_norm = math.hypot(*to)
    if fwd_norm < 1e-12 or to_norm < 1e-12:
        return 0.0
    # right vector in the horizontal plane: up x forward
    right = (fz, -fx)
    theta = math.degrees(math.atan2(to[0] * right[0] + to[1] * right[1],
                                    to[0] * fwd[0] + to[1] * fwd[1]))
    return min(max(theta / 90.0, -1.0), 1.0)


def quantize_to_scale(freq_hz: float) -> float:
    """Snap a frequency to the nearest of the 36 semitones C3..B5.

    Distance is measured in log-frequency; inputs outside the table clamp to
    the nearest end. Off by default in cue assembly (the pitch model output
    is continuous).
    """
    if freq_hz <= 0.0:
        raise ValueError("frequency must be positive")
    log_f = math.log(freq_hz)
    return min(SEMITONE_TABLE_HZ, key=lambda s: abs(math.log(s) - log_f))


@dataclass(frozen=True)
class HeadPose:
    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    forward: tuple[float, float, float] = (0.0, 0.0, 1.0)


def global_cue(
    obj: SceneObject,
    params: SizeNormalizationParams,
    head: HeadPose = HeadPose(),
    kind: str = "sonohaptics",
    snap_to_scale: bool = False,
    duration_s: float = DEFAULT_CUE_DURATION_S,
) -> FeedbackCue:
    """Assemble the global-mode cue for one object.

    kind="static" yields the constant 220 Hz / 0.2 s baseline beep and
    kind="silent" a muted cue; both keep the object's pan so directionality
    is preserved where applicable.
    """
    pan = pan_from_direction(head.forward, head.position, obj.position)
    if kind == "static":
        return FeedbackCue(STATIC_PITCH_HZ, 0.0, pan, obj.material,
                           STATIC_DURATION_S, kind="static")
    if kind == "silent":
        return FeedbackCue(0.0, 0.0, pan, obj.material, duration_s, kind="silent")

    pitch = pitch_from_lightness(colorimetry.object_lightness(obj))
    if snap_to_scale:
        pitch = quantize_to_scale(pitch)
    amplitude = amplitude_from_size(normalize_size(obj, params))
    return FeedbackCue(pitch, amplitude, pan, obj.material, duration_s)


def _uniform_levels(lo: float, hi: float, k: int) -> list[float]:
    if k == 1:
        return [(lo + hi) / 2.0]
    step = (hi - lo) / (k - 1)
    return [lo + i * step for i in range(k)]


def local_assignments(cluster: list[SceneObject]) -> dict[str, tuple[float, float]]:
    """Uniformly redistribute pitch and amplitude over a local cluster.

    Objects are ranked by lightness (ascending) for pitch and, independently,
    by face area (ascending) for amplitude; each rank axis is spread evenly
    over the full output range. Ties break on object id so the result is
    deterministic and permutation-invariant.
    """
    if not cluster:
        raise ValueError("local cluster must not be empty")
    k = len(cluster)
    by_lightness = sorted(cluster, key=lambda o: (colorimetry.object_lightness(o), o.id))
    by_area = sorted(cluster, key=lambda o: (o.face_area, o.id))
    pitches = _uniform_levels(PITCH_MIN_HZ, PITCH_MAX_HZ, k)
    amps = _uniform_levels(AMP_MIN, AMP_MAX, k)
    out: dict[str, tuple[float, float]] = {}
    for i, obj in enumerate(by_lightness):
        out[obj.id] = (pitches[i], 0.0)
    for i, obj in enumerate(by_area):
        out[obj.id] = (out[obj.id][0], amps[i])
    return out
