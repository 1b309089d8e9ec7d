from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from sonohaptics.scene import BBox, Scene, SceneObject

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def make_object(
    oid: str,
    position=(0.0, 0.0, 2.0),
    extents=(0.2, 0.2, 0.2),
    material: str = "plastic",
    rgb=(128, 128, 128),
    hidden: bool = False,
) -> SceneObject:
    return SceneObject(
        id=oid,
        name=oid,
        position=tuple(position),
        bbox=BBox(center=tuple(position), extents=tuple(extents)),
        material=material,
        rgb=tuple(rgb),
        hidden=hidden,
    )


def make_scene(*objects: SceneObject, name: str = "test") -> Scene:
    return Scene(name=name, objects=tuple(objects))


def random_scene(rng: np.random.Generator, n_objects: int = 10) -> Scene:
    objects = []
    for i in range(n_objects):
        position = rng.uniform(-5.0, 5.0, size=3)
        extents = rng.uniform(0.05, 1.0, size=3)
        gray = int(rng.integers(0, 256))
        objects.append(
            make_object(f"obj-{i:02d}", position=position, extents=extents,
                        rgb=(gray, gray, gray))
        )
    return make_scene(*objects, name="random")


@pytest.fixture(scope="session")
def living_room() -> Scene:
    from sonohaptics.scene import load_scene

    return load_scene(FIXTURES / "living-room-1.json")


@pytest.fixture(scope="session")
def sim_range() -> Scene:
    from sonohaptics.scene import load_scene

    return load_scene(FIXTURES / "sim-range-1.json")
