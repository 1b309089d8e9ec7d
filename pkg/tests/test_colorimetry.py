from __future__ import annotations

import numpy as np
import pytest
from PIL import Image

from sonohaptics.colorimetry import (
    TextureError,
    object_lightness,
    srgb_to_lab,
    srgb_to_lab_array,
)
from sonohaptics.scene import BBox, SceneObject

from conftest import make_object


def textured_object(path: str) -> SceneObject:
    return SceneObject(
        id="tex", name="tex", position=(0, 0, 2),
        bbox=BBox((0, 0, 2), (0.2, 0.2, 0.2)),
        material="plastic", texture=path,
    )


def test_white_point_exact():
    lab = srgb_to_lab((255, 255, 255))
    assert lab.L == pytest.approx(100.0, abs=1e-9)
    assert abs(lab.a) < 0.01 and abs(lab.b) < 0.01


def test_black_exact():
    assert srgb_to_lab((0, 0, 0)) == (0.0, 0.0, 0.0)


def test_red_against_reference():
    lab = srgb_to_lab((255, 0, 0))
    assert lab.L == pytest.approx(53.24, abs=0.1)
    assert lab.a == pytest.approx(80.09, abs=0.1)
    assert lab.b == pytest.approx(67.20, abs=0.1)


def test_gray_monotonicity():
    levels = [srgb_to_lab((g, g, g)).L for g in range(256)]
    assert all(a < b for a, b in zip(levels, levels[1:]))


def test_lattice_against_skimage_oracle():
    from skimage.color import rgb2lab

    grid = np.linspace(0, 255, 17)
    r, g, b = np.meshgrid(grid, grid, grid, indexing="ij")
    rgb = np.stack([r, g, b], axis=-1)
    ours = srgb_to_lab_array(rgb)
    reference = rgb2lab(rgb / 255.0)
    assert np.abs(ours[..., 0] - reference[..., 0]).max() < 0.1


def test_base_color_lightness():
    assert object_lightness(make_object("o", rgb=(0, 0, 0))) == 0.0
    assert object_lightness(make_object("o", rgb=(255, 255, 255))) == pytest.approx(100.0)


def test_uniform_texture_lightness(tmp_path):
    path = tmp_path / "white.png"
    Image.new("RGB", (8, 8), (255, 255, 255)).save(path)
    assert object_lightness(textured_object(str(path))) == pytest.approx(100.0)


def test_half_black_half_white_texture(tmp_path):
    pixels = np.zeros((4, 8, 3), dtype=np.uint8)
    pixels[:, 4:, :] = 255
    path = tmp_path / "bw.png"
    Image.fromarray(pixels).save(path)
    assert object_lightness(textured_object(str(path))) == pytest.approx(50.0, abs=0.01)


def test_texture_permutation_invariance(tmp_path):
    rng = np.random.default_rng(3)
    pixels = rng.integers(0, 256, size=(6, 6, 3), dtype=np.uint8)
    shuffled = pixels.reshape(-1, 3).copy()
    rng.shuffle(shuffled, axis=0)
    p1, p2 = tmp_path / "a.png", tmp_path / "b.png"
    Image.fromarray(pixels).save(p1)
    Image.fromarray(shuffled.reshape(6, 6, 3)).save(p2)
    l1 = object_lightness(textured_object(str(p1)))
    l2 = object_lightness(textured_object(str(p2)))
    assert l1 == pytest.approx(l2, abs=1e-9)


def test_rgba_alpha_ignored(tmp_path):
    path = tmp_path / "rgba.png"
    Image.new("RGBA", (4, 4), (255, 255, 255, 0)).save(path)
    assert object_lightness(textured_object(str(path))) == pytest.approx(100.0)


def test_unreadable_texture_raises(tmp_path):
    missing = textured_object(str(tmp_path / "nope.png"))
    with pytest.raises(TextureError):
        object_lightness(missing)
    garbage = tmp_path / "garbage.png"
    garbage.write_bytes(b"not a png at all")
    with pytest.raises(TextureError):
        object_lightness(textured_object(str(garbage)))
