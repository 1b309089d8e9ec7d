"""Cue rendering: stereo audio, 4-channel haptic waveforms, WAV export.

The audio layer is a windowed sine pulse at the cue pitch mixed with a
parametric modal impact for the object's material, peak-normalized and
panned with a constant-power law. The haptic layer drives four actuators
with an identical amplitude-scaled sine at the actuator carrier frequency.
All rendering is deterministic: noise-based timbre components use a seeded
generator.
"""

from __future__ import annotations

import json
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .crossmodal import DEFAULT_TIMBRE_PRESETS, FeedbackCue, TimbrePreset


@dataclass(frozen=True)
class SynthConfig:
    sample_rate: int = 48000
    haptic_rate: int = 1000
    haptic_carrier_hz: float = 170.0  # typical LRA resonance
    edge_s: float = 0.005  # raised-cosine attack/release
    peak: float = 0.9
    pulse_gain: float = 1.0
    timbre_gain: float = 0.5
    noise_seed: int = 0
    presets: dict | None = None  # material -> TimbrePreset override

    def preset(self, material: str) -> TimbrePreset:
        table = self.presets or DEFAULT_TIMBRE_PRESETS
        return table[material]


@dataclass(frozen=True)
class StereoBuffer:
    sample_rate: int
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self) -> None:
        if self.left.shape != self.right.shape:
            raise ValueError("channel length mismatch")
        if self.left.size and max(np.abs(self.left).max(), np.abs(self.right).max()) > 1.0:
            raise ValueError("samples exceed full scale")

    @property
    def n_frames(self) -> int:
        return int(self.left.size)


@dataclass(frozen=True)
class HapticBuffer:
    sample_rate: int
    channels: tuple[np.ndarray, ...]  # 4 actuators, identical drive

    def __post_init__(self) -> None:
        if len(self.channels) != 4:
            raise ValueError("haptic buffer needs exactly 4 channels")
        n = self.channels[0].size
        if any(c.size != n for c in self.channels):
            raise ValueError("channel length mismatch")

    def to_json(self) -> str:
        return json.dumps(
            {"sample_rate": self.sample_rate,
             "channels": [np.round(c, 6).tolist() for c in self.channels]}
        )


def _envelope(n: int, rate: int, edge_s: float) -> np.ndarray:
    """Flat envelope with raised-cosine edges; avoids spectral splatter."""
    env = np.ones(n)
    edge = min(int(round(edge_s * rate)), n // 2)
    if edge > 0:
        ramp = 0.5 - 0.5 * np.cos(np.linspace(0.0, np.pi, edge))
        env[:edge] = ramp
        env[-edge:] = ramp[::-1]
    return env


def pan_gains(pan: float) -> tuple[float, float]:
    """Constant-power stereo gains; gL^2 + gR^2 == 1 for every pan."""
    angle = (pan + 1.0) * np.pi / 4.0
    return float(np.cos(angle)), float(np.sin(angle))


def _brickwall_lowpass(signal: np.ndarray, cutoff_hz: float, rate: int) -> np.ndarray:
    spectrum = np.fft.rfft(signal)
    freqs = np.fft.rfftfreq(signal.size, 1.0 / rate)
    spectrum[freqs > cutoff_hz] = 0.0
    return np.fft.irfft(spectrum, n=signal.size)


def _render_timbre(preset: TimbrePreset, t: np.ndarray, cfg: SynthConfig) -> np.ndarray:
    out = np.zeros_like(t)
    nyquist = cfg.sample_rate / 2.0
    for ratio, gain, decay in preset.modes:
        f = preset.base_hz * ratio
        if f >= nyquist:
            continue
        tau = decay / 6.9078  # decay is T60
        out += gain * np.sin(2.0 * np.pi * f * t) * np.exp(-t / tau)
    if preset.noise_gain > 0.0:
        rng = np.random.default_rng(cfg.noise_seed)
        noise = rng.standard_normal(t.size)
        noise = _brickwall_lowpass(noise, preset.noise_cutoff_hz, cfg.sample_rate)
        peak = np.abs(noise).max()
        if peak > 0:
            noise /= peak
        tau = preset.noise_decay_s / 6.9078
        out += preset.noise_gain * noise * np.exp(-t / tau)
    return out


def render_cue_audio(cue: FeedbackCue, cfg: SynthConfig = SynthConfig()) -> StereoBuffer:
    """Render one cue to a stereo buffer.

    silent cues render as zeros; static cues render the bare 220 Hz pulse
    with no material layer. The mono mix is peak-normalized to cfg.peak
    before panning, so pan alone controls channel balance.
    """
    n = max(int(round(cue.duration_s * cfg.sample_rate)), 1)
    if cue.kind == "silent":
        zeros = np.zeros(n)
        return StereoBuffer(cfg.sample_rate, zeros, zeros.copy())

    t = np.arange(n) / cfg.sample_rate
    env = _envelope(n, cfg.sample_rate, cfg.edge_s)
    mono = cfg.pulse_gain * np.sin(2.0 * np.pi * cue.pitch_hz * t) * env
    if cue.kind == "sonohaptics" and cfg.timbre_gain > 0.0:
        mono = mono + cfg.timbre_gain * _render_timbre(cfg.preset(cue.timbre), t, cfg) * env

    peak = np.abs(mono).max()
    if peak > 0:
        mono = mono * (cfg.peak / peak)
    g_left, g_right = pan_gains(cue.pan)
    return StereoBuffer(cfg.sample_rate, g_left * mono, g_right * mono)


def render_cue_haptics(cue: FeedbackCue, cfg: SynthConfig = SynthConfig()) -> HapticBuffer:
    """Render the 4-channel haptic drive waveform for one cue.

    All four actuators receive the identical signal: the cue amplitude scales
    a sine at the carrier frequency under the same raised-cosine envelope
    used for audio.
    """
    n = max(int(round(cue.duration_s * cfg.haptic_rate)), 1)
    if cue.kind == "silent" or cue.amplitude == 0.0:
        channel = np.zeros(n)
    else:
        t = np.arange(n) / cfg.haptic_rate
        env = _envelope(n, cfg.haptic_rate, cfg.edge_s)
        channel = cue.amplitude * np.sin(2.0 * np.pi * cfg.haptic_carrier_hz * t) * env
    return HapticBuffer(cfg.haptic_rate, tuple(channel.copy() for _ in range(4)))


def write_wav(buf: StereoBuffer, path: str | Path) -> None:
    """Write a stereo buffer as 16-bit PCM RIFF/WAVE."""
    interleaved = np.empty(buf.n_frames * 2, dtype=np.int16)
    interleaved[0::2] = np.clip(np.round(buf.left * 32767.0), -32768, 32767).astype(np.int16)
    interleaved[1::2] = np.clip(np.round(buf.right * 32767.0), -32768, 32767).astype(np.int16)
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(2)
        wav.setsampwidth(2)
        wav.setframerate(buf.sample_rate)
        wav.writeframes(interleaved.tobytes())


def read_wav(path: str | Path) -> StereoBuffer:
    """Read a 16-bit stereo WAV back into float channels (round-trip checks)."""
    with wave.open(str(path), "rb") as wav:
        if wav.getnchannels() != 2 or wav.getsampwidth() != 2:
            raise ValueError("expected 16-bit stereo WAV")
        rate = wav.getframerate()
        data = np.frombuffer(wav.readframes(wav.getnframes()), dtype=np.int16)
    samples = data.astype(np.float64) / 32767.0
    left = np.clip(samples[0::2], -1.0, 1.0)
    right = np.clip(samples[1::2], -1.0, 1.0)
    return StereoBuffer(rate, left, right)
