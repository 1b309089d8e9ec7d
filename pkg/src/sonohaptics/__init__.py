"""Cross-modal audio-haptic feedback engine for gaze-based object selection."""

from .colorimetry import LabColor, object_lightness, srgb_to_lab
from .crossmodal import (
    FeedbackCue,
    HeadPose,
    TimbrePreset,
    amplitude_from_size,
    global_cue,
    local_assignments,
    normalize_size,
    pan_from_direction,
    pitch_from_lightness,
    quantize_to_scale,
    timbre_for_material,
)
from .engine import Engine, EngineConfig, EngineEvent, GazeSample, sphere_cast
from .scene import (
    Scene,
    SceneObject,
    SizeNormalizationParams,
    load_scene,
    scene_stats,
)
from .synthesis import (
    HapticBuffer,
    StereoBuffer,
    SynthConfig,
    render_cue_audio,
    render_cue_haptics,
    write_wav,
)

__version__ = "0.1.0"
