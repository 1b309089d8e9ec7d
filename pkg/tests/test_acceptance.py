"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines. Tolerances are fixed here and are not calibration knobs.
"""

from __future__ import annotations

import numpy as np
import pytest

from sonohaptics import crossmodal
from sonohaptics.analysis import replay, simulate, write_event_log
from sonohaptics.colorimetry import srgb_to_lab, srgb_to_lab_array
from sonohaptics.crossmodal import (
    AMP_MAX,
    AMP_MIN,
    PITCH_MAX_HZ,
    PITCH_MIN_HZ,
    FeedbackCue,
    amplitude_from_size,
    amplitude_polynomial,
    global_cue,
    local_assignments,
    pitch_from_lightness,
)
from sonohaptics.engine import sphere_cast
from sonohaptics.scene import scene_stats
from sonohaptics.synthesis import SynthConfig, pan_gains, render_cue_audio, render_cue_haptics

from conftest import FIXTURES, make_object, make_scene, random_scene
from test_engine import brute_force_cast


def kendall_tau(x, y) -> float:
    """O(n^2) concordance-based Kendall tau; independent of the mappings."""
    n = len(x)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = np.sign(x[j] - x[i]) * np.sign(y[j] - y[i])
            concordant += s > 0
            discordant += s < 0
    return (concordant - discordant) / (n * (n - 1) / 2)


def test_criterion_1_pitch_model():
    assert pitch_from_lightness(0.0) == 184.05
    c0, c1, c2 = 184.05, 0.375, 0.054
    for l in (25.0, 50.0, 75.0, 100.0):
        assert abs(pitch_from_lightness(l) - (c0 + c1 * l + c2 * l**2)) < 1e-6
    grid = np.linspace(0.0, 100.0, 101)
    tau = kendall_tau(grid, [pitch_from_lightness(l) for l in grid])
    assert tau == 1.0
    print("\nPASS criterion 1: pitch model exact at anchors, Kendall tau = 1")


def test_criterion_2_amplitude_model():
    assert amplitude_polynomial(0.0) == 0.275
    grid = np.linspace(2116.0, 21609.0, 101)
    values = [amplitude_from_size(s) for s in grid]
    assert kendall_tau(grid, values) == 1.0
    for s in np.linspace(-1e4, 1e6, 301):
        assert 0.125 <= amplitude_from_size(float(s)) <= 1.0
    print("PASS criterion 2: amplitude model constant term exact, Kendall tau = 1, clamped")


def test_criterion_3_colorimetry():
    from skimage.color import rgb2lab

    assert srgb_to_lab((255, 255, 255)).L == pytest.approx(100.0, abs=1e-9)
    assert srgb_to_lab((0, 0, 0)).L == 0.0
    grid = np.linspace(0, 255, 17)
    r, g, b = np.meshgrid(grid, grid, grid, indexing="ij")
    rgb = np.stack([r, g, b], axis=-1)
    max_dl = np.abs(srgb_to_lab_array(rgb)[..., 0] - rgb2lab(rgb / 255.0)[..., 0]).max()
    assert max_dl < 0.1
    print(f"PASS criterion 3: colorimetry endpoints exact, lattice |dL| max {max_dl:.4f} < 0.1")


def test_criterion_4_local_amplification():
    rng = np.random.default_rng(2024)
    pitch_span = PITCH_MAX_HZ - PITCH_MIN_HZ  # 856.96
    amp_span = AMP_MAX - AMP_MIN  # 0.875
    for _ in range(1000):
        k = int(rng.integers(2, 9))
        scene = random_scene(rng, n_objects=k)
        params = scene_stats(scene)
        cluster = list(scene.visible)

        local = local_assignments(cluster)
        local_pitches = sorted(v[0] for v in local.values())
        local_amps = sorted(v[1] for v in local.values())
        local_pitch_gap = min(b - a for a, b in zip(local_pitches, local_pitches[1:]))
        local_amp_gap = min(b - a for a, b in zip(local_amps, local_amps[1:]))
        assert abs(local_pitch_gap - pitch_span / (k - 1)) < 1e-6
        assert abs(local_amp_gap - amp_span / (k - 1)) < 1e-6

        cues = [global_cue(o, params) for o in cluster]
        global_pitches = sorted(c.pitch_hz for c in cues)
        global_amps = sorted(c.amplitude for c in cues)
        global_pitch_gap = min(b - a for a, b in zip(global_pitches, global_pitches[1:]))
        global_amp_gap = min(b - a for a, b in zip(global_amps, global_amps[1:]))
        assert local_pitch_gap > global_pitch_gap
        assert local_amp_gap > global_amp_gap
    print("PASS criterion 4: local gaps exact 856.96/(k-1), 0.875/(k-1); exceed global gaps (1000 scenes)")


def test_criterion_5_sphere_cast_oracle_equivalence():
    rng = np.random.default_rng(99)
    mismatches = 0
    total = 0
    for _ in range(2000):
        scene = random_scene(rng, n_objects=10)
        origins = rng.uniform(-6, 6, size=(50, 3))
        dirs = rng.normal(size=(50, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        radius = float(rng.uniform(0.1, 1.0))
        for origin, d in zip(origins, dirs):
            total += 1
            if sphere_cast(scene, tuple(origin), tuple(d), radius) != brute_force_cast(
                scene, tuple(origin), tuple(d), radius
            ):
                mismatches += 1
    assert total == 100_000
    assert mismatches == 0
    print("PASS criterion 5: sphere cast == brute-force oracle on 100000 pairs, 0 mismatches")


def test_criterion_6_synthesis():
    cfg = SynthConfig(timbre_gain=0.0)
    for pitch in np.linspace(130.81, 987.77, 20):
        cue = FeedbackCue(float(pitch), 0.5, 0.0, "metal", 1.0)
        buf = render_cue_audio(cue, cfg)
        mono = buf.left + buf.right
        spectrum = np.abs(np.fft.rfft(mono))
        freqs = np.fft.rfftfreq(mono.size, 1.0 / cfg.sample_rate)
        assert abs(freqs[np.argmax(spectrum)] - pitch) <= 1.0

    for pan in np.linspace(-1.0, 1.0, 101):
        g_left, g_right = pan_gains(float(pan))
        assert abs(g_left**2 + g_right**2 - 1.0) < 1e-9

    hcfg = SynthConfig()
    edge = int(round(hcfg.edge_s * hcfg.haptic_rate))
    amplitudes = [0.125, 0.25, 0.5, 1.0]
    rms = []
    for amp in amplitudes:
        buf = render_cue_haptics(FeedbackCue(440.0, amp, 0.0, "metal", 0.2), hcfg)
        plateau = buf.channels[0][edge:-edge]
        rms.append(float(np.sqrt(np.mean(plateau**2))))
    slope = np.polyfit(amplitudes, rms, 1)[0]
    assert abs(slope - 1.0 / np.sqrt(2.0)) / (1.0 / np.sqrt(2.0)) < 0.01
    print("PASS criterion 6: pulse fundamental within 1 Hz, pan power within 1e-9, haptic RMS linear within 1%")


def test_criterion_7_determinism(tmp_path, living_room):
    trace = FIXTURES / "traces" / "sweep-500.jsonl"
    assert sum(1 for _ in open(trace)) == 500
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_event_log(replay(living_room, trace), out1)
    write_event_log(replay(living_room, trace), out2)
    assert out1.read_bytes() == out2.read_bytes()

    r1 = simulate(living_room, noise_sigma_deg=1.652, trials=2000, seed=123)
    r2 = simulate(living_room, noise_sigma_deg=1.652, trials=2000, seed=123)
    assert r1 == r2
    print("PASS criterion 7: replay byte-identical, simulation seed-stable")


def test_criterion_8_simulation_trend(sim_range):
    rates = {}
    for sigma in (0.0, 0.5, 1.652, 5.0):
        rates[sigma] = simulate(sim_range, noise_sigma_deg=sigma, trials=10_000, seed=31).error_rate
    assert rates[0.0] == 0.0
    ordered = [rates[s] for s in (0.0, 0.5, 1.652, 5.0)]
    for lo, hi in zip(ordered, ordered[1:]):
        assert hi >= lo - 0.02

    report = simulate(sim_range, noise_sigma_deg=1.652, trials=10_000, seed=17)
    small_err = sum(v for k, v in report.per_object_errors.items() if k.startswith("small"))
    small_n = sum(v for k, v in report.per_object_trials.items() if k.startswith("small"))
    large_err = sum(v for k, v in report.per_object_errors.items() if k.startswith("large"))
    large_n = sum(v for k, v in report.per_object_trials.items() if k.startswith("large"))
    assert small_err / small_n >= large_err / large_n
    print(
        "PASS criterion 8: error 0 at sigma=0, non-decreasing in sigma "
        f"{[round(r, 4) for r in ordered]}, small {small_err / small_n:.4f} >= large {large_err / large_n:.4f}"
    )


def test_criterion_9_static_baseline(living_room):
    params = scene_stats(living_room)
    for obj in living_room.visible:
        cue = global_cue(obj, params, kind="static")
        assert cue.pitch_hz == 220.0
        assert cue.duration_s == 0.2
    extremes = make_scene(
        make_object("white", rgb=(255, 255, 255), extents=(2, 2, 2)),
        make_object("black", position=(1, 0, 2), rgb=(0, 0, 0), extents=(0.01, 0.01, 0.01)),
    )
    for obj in extremes.objects:
        cue = global_cue(obj, scene_stats(extremes), kind="static")
        assert (cue.pitch_hz, cue.duration_s) == (220.0, 0.2)
    print("PASS criterion 9: static cue is 220.0 Hz / 0.2 s for every object")


def test_criterion_10_demo_protocol_conformance():
    """Scripted live session matches offline replay; one playback per hover.

    Delegates to the demo client's integration suite, which spawns this
    package's session server, drives a scripted session over TCP, diffs the
    observed stream against the offline replay CLI, and counts playback
    invocations against a mocked audio layer.
    """
    import shutil
    import subprocess
    import time
    from pathlib import Path

    frontend = Path(__file__).resolve().parent.parent / "frontend"
    if shutil.which("npx") is None or not (frontend / "node_modules").is_dir():
        pytest.fail("frontend toolchain missing; run `npm install` in frontend/")
    start = time.perf_counter()
    proc = subprocess.run(
        ["npx", "vitest", "run", "tests/integration.test.ts"],
        cwd=frontend,
        capture_output=True,
        text=True,
        timeout=60,
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "2 passed" in proc.stdout
    assert elapsed < 10.0
    print(
        "PASS criterion 10: live stream equals offline replay and each audible "
        f"hover played exactly once ({elapsed:.2f}s)"
    )
