#!/usr/bin/env python3
"""Generate the fixture scenes and the fixture gaze trace.

Regenerating is deterministic; outputs are committed under fixtures/. The
script verifies that every non-hidden object in each scene resolves to
itself under a noiseless sphere cast from the default eye origin, so the
simulation's zero-noise baseline is exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from sonohaptics.analysis import DEFAULT_EYE_ORIGIN
from sonohaptics.engine import sphere_cast
from sonohaptics.scene import load_scene

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

# Living-room object roster: (id, name, material, rgb, extents, distance)
LIVING_ROOM = [
    ("tree-photo-large", "tree photo large", "wood", (82, 104, 60), (0.9, 0.65, 0.04), 4.4),
    ("tv", "tv", "plastic", (18, 18, 20), (1.2, 0.68, 0.08), 4.6),
    ("vase-white-tall", "vase white tall", "ceramic", (238, 236, 230), (0.14, 0.42, 0.14), 3.0),
    ("can-black", "can black", "metal", (28, 28, 30), (0.07, 0.12, 0.07), 2.6),
    ("wine-white-blue-label", "wine white and blue label", "glass", (214, 222, 234), (0.08, 0.32, 0.08), 2.8),
    ("plant-pot-green", "plant pot green", "ceramic", (76, 126, 62), (0.24, 0.22, 0.24), 3.2),
    ("ash-tray-yellow", "ash tray yellow", "ceramic", (222, 188, 48), (0.12, 0.05, 0.12), 2.5),
    ("tv-remote", "tv remote", "plastic", (40, 40, 44), (0.05, 0.22, 0.03), 2.4),
    ("tree-photo-small", "tree photo small", "wood", (96, 118, 72), (0.42, 0.3, 0.03), 3.8),
    ("person-photo", "person photo", "wood", (168, 148, 122), (0.36, 0.46, 0.03), 3.9),
    ("bottle-black-tall", "bottle black tall", "ceramic", (24, 24, 26), (0.09, 0.36, 0.09), 2.9),
    ("bottle-gray-short", "bottle gray short", "ceramic", (136, 136, 138), (0.1, 0.2, 0.1), 2.7),
    ("speaker", "speaker", "wood", (52, 40, 32), (0.28, 0.5, 0.26), 3.6),
    ("vase-yellow-blue", "vase yellow and blue", "ceramic", (208, 174, 64), (0.16, 0.3, 0.16), 3.1),
    ("lamp-yellow", "lamp yellow", "wood", (226, 192, 88), (0.3, 0.9, 0.3), 4.2),
    ("cushion-flowers", "cushion flowers", "fabric", (188, 96, 120), (0.48, 0.48, 0.18), 2.8),
    ("bottle-white-tall", "bottle white tall", "ceramic", (242, 240, 236), (0.09, 0.38, 0.09), 3.0),
    ("bottle-gray-tall", "bottle gray tall", "ceramic", (128, 128, 130), (0.09, 0.4, 0.09), 3.1),
    ("wine-beige-label", "wine beige label", "glass", (196, 178, 148), (0.08, 0.32, 0.08), 2.9),
    ("can-white", "can white", "metal", (236, 236, 236), (0.07, 0.12, 0.07), 2.5),
    ("tin-container-green", "tin container green", "metal", (64, 120, 80), (0.16, 0.2, 0.16), 3.3),
    ("metal-clock", "metal clock", "metal", (170, 172, 178), (0.3, 0.3, 0.08), 4.0),
    ("vase-silver", "vase silver", "ceramic", (190, 192, 198), (0.13, 0.34, 0.13), 3.2),
    ("box-blue", "box blue", "fabric", (52, 74, 150), (0.4, 0.28, 0.3), 3.4),
]


def ring_directions(count: int) -> list[tuple[float, float, float]]:
    """Directions on three elevation rings with staggered azimuths."""
    dirs = []
    rings = [(-18.0, 0.0), (6.0, 22.5), (30.0, 45.0)]
    per_ring = count // len(rings)
    for elev_deg, offset in rings:
        for i in range(per_ring):
            az = math.radians(offset + i * (360.0 / per_ring))
            el = math.radians(elev_deg)
            dirs.append((math.cos(el) * math.sin(az), math.sin(el), math.cos(el) * math.cos(az)))
    return dirs


def build_living_room() -> dict:
    eye = np.array(DEFAULT_EYE_ORIGIN)
    dirs = ring_directions(len(LIVING_ROOM))
    objects = []
    for (oid, name, material, rgb, extents, dist), d in zip(LIVING_ROOM, dirs):
        pos = (eye + dist * np.array(d)).round(4).tolist()
        objects.append(
            {
                "id": oid,
                "name": name,
                "position": pos,
                "bbox": {"center": pos, "extents": list(extents)},
                "material": material,
                "color": {"rgb": list(rgb)},
                "hidden": False,
            }
        )
    return {"version": 1, "name": "living-room-1", "objects": objects}


def build_sim_range() -> dict:
    """Far-field scene with alternating small/large targets for simulation."""
    eye = np.array(DEFAULT_EYE_ORIGIN)
    objects = []
    for i in range(12):
        small = i % 2 == 0
        az = math.radians(-82.5 + i * 15.0 + (7.5 if i >= 6 else 0.0))
        el = math.radians(-10.0 if i < 6 else 12.0)
        d = np.array([math.cos(el) * math.sin(az), math.sin(el), math.cos(el) * math.cos(az)])
        pos = (eye + 8.0 * d).round(4).tolist()
        ext = 0.08 if small else 0.6
        gray = 60 + i * 15
        objects.append(
            {
                "id": f"{'small' if small else 'large'}-{i:02d}",
                "name": f"{'small' if small else 'large'} target {i}",
                "position": pos,
                "bbox": {"center": pos, "extents": [ext, ext, ext]},
                "material": "plastic",
                "color": {"rgb": [gray, gray, gray]},
                "hidden": False,
            }
        )
    return {"version": 1, "name": "sim-range-1", "objects": objects}


def verify_clear_sightlines(path: Path) -> None:
    scene = load_scene(path)
    for obj in scene.visible:
        d = np.subtract(obj.bbox.center, DEFAULT_EYE_ORIGIN)
        d = d / np.linalg.norm(d)
        hit = sphere_cast(scene, DEFAULT_EYE_ORIGIN, tuple(d), 0.5)
        if hit != obj.id:
            raise SystemExit(f"{path.name}: ray to {obj.id!r} resolves to {hit!r}")


def build_trace(scene_path: Path, out_path: Path, lines: int = 500) -> None:
    scene = load_scene(scene_path)
    rng = np.random.default_rng(7)
    eye = np.array(DEFAULT_EYE_ORIGIN)
    targets = [o for o in scene.visible]

    def gaze_line(t: float, direction: np.ndarray) -> dict:
        d = direction / np.linalg.norm(direction)
        return {
            "t": round(t, 3),
            "origin": eye.tolist(),
            "dir": d.round(8).tolist(),
            "head_forward": [0.0, 0.0, 1.0],
            "head_pos": eye.tolist(),
        }

    entries: list[dict] = []
    t = 0.0

    def advance() -> float:
        nonlocal t
        t = round(t + 0.02, 3)
        return t

    entries.append({"cmd": "activate", "t": t})
    # Two sweep/select passes with a local-mode episode in the middle.
    script = targets[:8] + [None] + targets[8:16] + [None] + targets[16:]
    for obj in script:
        for _ in range(12):
            if obj is None:
                direction = np.array([0.0, -1.0, 0.0])  # floor: no object there
            else:
                direction = np.subtract(obj.bbox.center, eye)
                direction = direction + rng.normal(0.0, 0.01, size=3)
            entries.append(gaze_line(advance(), direction))
        if obj is not None and obj.id == "vase-white-tall":
            entries.append({"cmd": "enter_local", "t": advance()})
            for _ in range(10):
                direction = np.subtract(obj.bbox.center, eye) + rng.normal(0.0, 0.01, size=3)
                entries.append(gaze_line(advance(), direction))
            entries.append({"cmd": "exit_local", "t": advance()})
        if obj is not None and obj.id in ("tv", "speaker", "box-blue"):
            entries.append({"cmd": "select", "t": advance()})
    entries.append({"cmd": "deactivate", "t": advance()})
    entries.append({"cmd": "activate", "t": advance()})
    # Pad with dwell samples on the last target to reach the requested length.
    last = targets[-1]
    while len(entries) < lines - 1:
        direction = np.subtract(last.bbox.center, eye) + rng.normal(0.0, 0.01, size=3)
        entries.append(gaze_line(advance(), direction))
    entries.append({"cmd": "deactivate", "t": advance()})
    entries = entries[:lines]

    with open(out_path, "w", encoding="utf-8") as handle:
        for entry in entries:
            handle.write(json.dumps(entry, sort_keys=True) + "\n")


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "traces").mkdir(exist_ok=True)

    living = FIXTURES / "living-room-1.json"
    living.write_text(json.dumps(build_living_room(), indent=2) + "\n")
    verify_clear_sightlines(living)

    sim = FIXTURES / "sim-range-1.json"
    sim.write_text(json.dumps(build_sim_range(), indent=2) + "\n")
    verify_clear_sightlines(sim)

    build_trace(living, FIXTURES / "traces" / "sweep-500.jsonl")
    print("fixtures written and verified")


if __name__ == "__main__":
    main()
