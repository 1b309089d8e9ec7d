"""Scene representation, JSON ingestion, and size-normalization statistics.

A scene is an immutable collection of selectable objects. Each object has a
position, an axis-aligned bounding box, a material tag, and a color source
(either a flat sRGB base color or a texture image). Scenes are loaded from a
versioned JSON file and validated eagerly; after loading they are safe to
share read-only across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

MATERIALS = ("ceramic", "glass", "plastic", "metal", "wood", "fabric", "paper")

SCHEMA_VERSION = 1


class SceneError(ValueError):
    """Base class for scene loading/validation failures."""


class SceneParseError(SceneError):
    """Scene file is not valid JSON or misses required structure."""


class SceneValidationError(SceneError):
    """Scene content violates an invariant; message names the object id."""


class EmptySceneError(SceneError):
    """Operation requires at least one non-hidden object."""


Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box given by center and full extents (meters)."""

    center: Vec3
    extents: Vec3

    @property
    def lo(self) -> Vec3:
        return tuple(c - e / 2.0 for c, e in zip(self.center, self.extents))

    @property
    def hi(self) -> Vec3:
        return tuple(c + e / 2.0 for c, e in zip(self.center, self.extents))


@dataclass(frozen=True)
class SceneObject:
    """One selectable object in the scene.

    Exactly one of ``rgb`` or ``texture`` is set. ``rgb`` is an sRGB triple
    with 0-255 channels; ``texture`` is a path to a PNG image, resolved
    relative to the scene file.
    """

    id: str
    name: str
    position: Vec3
    bbox: BBox
    material: str
    rgb: tuple[int, int, int] | None = None
    texture: str | None = None
    hidden: bool = False

    @property
    def silhouette(self) -> tuple[float, float]:
        """(width, height) as the two largest bbox extents, descending."""
        a, b, _ = sorted(self.bbox.extents, reverse=True)
        return a, b

    @property
    def face_area(self) -> float:
        """Product of the two largest extents; the selectable face area."""
        w, h = self.silhouette
        return w * h


@dataclass(frozen=True)
class Scene:
    name: str
    objects: tuple[SceneObject, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_id", {o.id: o for o in self.objects})

    def get(self, object_id: str) -> SceneObject:
        return self._by_id[object_id]

    @property
    def visible(self) -> tuple[SceneObject, ...]:
        return tuple(o for o in self.objects if not o.hidden)


@dataclass(frozen=True)
class SizeNormalizationParams:
    """Per-scene extrema of object silhouette widths and heights (meters)."""

    min_w: float
    max_w: float
    min_h: float
    max_h: float


def _vec3(value, obj_id: str, field: str) -> Vec3:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SceneValidationError(f"object {obj_id!r}: {field} must be a 3-vector")
    return tuple(float(v) for v in value)


def _parse_object(raw: dict, index: int) -> SceneObject:
    obj_id = raw.get("id")
    if not isinstance(obj_id, str) or not obj_id:
        raise SceneValidationError(f"object at index {index}: missing or empty id")

    material = raw.get("material")
    if material not in MATERIALS:
        raise SceneValidationError(
            f"object {obj_id!r}: unknown material {material!r} "
            f"(expected one of {', '.join(MATERIALS)})"
        )

    bbox_raw = raw.get("bbox")
    if not isinstance(bbox_raw, dict):
        raise SceneValidationError(f"object {obj_id!r}: missing bbox")
    extents = _vec3(bbox_raw.get("extents"), obj_id, "bbox.extents")
    if any(e <= 0.0 for e in extents):
        raise SceneValidationError(f"object {obj_id!r}: non-positive bbox extent {extents}")
    bbox = BBox(center=_vec3(bbox_raw.get("center"), obj_id, "bbox.center"), extents=extents)

    color = raw.get("color")
    rgb = None
    texture = None
    if isinstance(color, dict) and "rgb" in color:
        channels = color["rgb"]
        if not isinstance(channels, (list, tuple)) or len(channels) != 3:
            raise SceneValidationError(f"object {obj_id!r}: color.rgb must have 3 channels")
        rgb = tuple(int(c) for c in channels)
        if any(c < 0 or c > 255 for c in rgb):
            raise SceneValidationError(f"object {obj_id!r}: rgb channel out of [0, 255]")
    elif isinstance(color, dict) and "texture" in color:
        texture = str(color["texture"])
    else:
        raise SceneValidationError(f"object {obj_id!r}: color must carry 'rgb' or 'texture'")

    return SceneObject(
        id=obj_id,
        name=str(raw.get("name", obj_id)),
        position=_vec3(raw.get("position"), obj_id, "position"),
        bbox=bbox,
        material=material,
        rgb=rgb,
        texture=texture,
        hidden=bool(raw.get("hidden", False)),
    )


def load_scene(path: str | Path) -> Scene:
    """Load and validate a scene from a versioned JSON file.

    Texture paths are rewritten to be relative to the scene file's directory
    so objects stay resolvable regardless of the caller's cwd.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise SceneParseError(f"cannot read scene file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"malformed JSON in {path}: {exc}") from exc

    if not isinstance(raw, dict):
        raise SceneParseError(f"{path}: top level must be a JSON object")
    version = raw.get("version")
    if version != SCHEMA_VERSION:
        raise SceneParseError(f"{path}: unsupported scene version {version!r}")
    objects_raw = raw.get("objects")
    if not isinstance(objects_raw, list):
        raise SceneParseError(f"{path}: 'objects' must be a list")

    objects = []
    seen: set[str] = set()
    for i, obj_raw in enumerate(objects_raw):
        obj = _parse_object(obj_raw, i)
        if obj.id in seen:
            raise SceneValidationError(f"duplicate object id {obj.id!r}")
        seen.add(obj.id)
        if obj.texture is not None:
            obj = SceneObject(
                **{**obj.__dict__, "texture": str((path.parent / obj.texture))}
            )
        objects.append(obj)

    return Scene(name=str(raw.get("name", path.stem)), objects=tuple(objects))


def scene_stats(scene: Scene) -> SizeNormalizationParams:
    """Compute per-scene silhouette extrema over non-hidden objects."""
    visible = scene.visible
    if not visible:
        raise EmptySceneError(f"scene {scene.name!r} has no non-hidden objects")
    widths = [o.silhouette[0] for o in visible]
    heights = [o.silhouette[1] for o in visible]
    return SizeNormalizationParams(
        min_w=min(widths), max_w=max(widths), min_h=min(heights), max_h=max(heights)
    )


def scene_to_dict(scene: Scene) -> dict:
    """Serialize a scene back to its JSON schema (used by the wire protocol)."""
    objects = []
    for o in scene.objects:
        color = {"rgb": list(o.rgb)} if o.rgb is not None else {"texture": o.texture}
        objects.append(
            {
                "id": o.id,
                "name": o.name,
                "position": list(o.position),
                "bbox": {"center": list(o.bbox.center), "extents": list(o.bbox.extents)},
                "material": o.material,
                "color": color,
                "hidden": o.hidden,
            }
        )
    return {"version": SCHEMA_VERSION, "name": scene.name, "objects": objects}
