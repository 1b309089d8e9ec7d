"""sRGB to CIELAB conversion and per-object lightness extraction.

Uses the IEC 61966-2-1 sRGB transfer function and the D65 white point with
the 2-degree standard observer. The white point is derived from the forward
matrix itself so that (255, 255, 255) maps to exactly L = 100.
"""

from __future__ import annotations

import numpy as np

from .scene import SceneObject

# sRGB linear RGB -> XYZ (D65, 2 deg observer)
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_WHITE = _RGB_TO_XYZ @ np.ones(3)

_DELTA = 6.0 / 29.0


class TextureError(ValueError):
    """Texture file missing or undecodable."""


class LabColor(tuple):
    """CIELAB color; L in [0, 100] for in-gamut sRGB inputs."""

    __slots__ = ()

    def __new__(cls, L: float, a: float, b: float):
        return super().__new__(cls, (float(L), float(a), float(b)))

    @property
    def L(self) -> float:
        return self[0]

    @property
    def a(self) -> float:
        return self[1]

    @property
    def b(self) -> float:
        return self[2]


def _srgb_linearize(channels: np.ndarray) -> np.ndarray:
    c = channels / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA**3, np.cbrt(t), t / (3.0 * _DELTA**2) + 4.0 / 29.0)


def srgb_to_lab_array(rgb: np.ndarray) -> np.ndarray:
    """Convert an (..., 3) array of sRGB values (0-255) to CIELAB."""
    linear = _srgb_linearize(np.asarray(rgb, dtype=np.float64))
    xyz = linear @ _RGB_TO_XYZ.T
    f = _lab_f(xyz / _WHITE)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    lab = np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)
    return lab


def srgb_to_lab(rgb: tuple[int, int, int]) -> LabColor:
    """Convert one sRGB triple (0-255 per channel) to CIELAB."""
    lab = srgb_to_lab_array(np.asarray(rgb, dtype=np.float64))
    return LabColor(lab[0], lab[1], lab[2])


def texture_lightness(path: str) -> float:
    """Mean per-pixel CIELAB L over an 8-bit RGB/RGBA image; alpha ignored."""
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as img:
            pixels = np.asarray(img.convert("RGB"), dtype=np.float64)
    except (OSError, UnidentifiedImageError) as exc:
        raise TextureError(f"cannot read texture {path}: {exc}") from exc
    return float(srgb_to_lab_array(pixels)[..., 0].mean())


def object_lightness(obj: SceneObject) -> float:
    """Lightness of an object's color source.

    Base-color objects yield the L of that color. Textured objects yield the
    mean of per-pixel L values (conversion happens before averaging, so the
    result is a true lightness average rather than an averaged color).
    """
    if obj.rgb is not None:
        return srgb_to_lab(obj.rgb).L
    assert obj.texture is not None
    return texture_lightness(obj.texture)
