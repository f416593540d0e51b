"""Simulated workspace: colored cubes observed in a camera frame, plus the
camera-to-base extrinsics a fiducial calibration would provide.

Objects are centroids, not point clouds; cube size is kept only so the
executor can compute a grasp height at the top face.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .se3 import Transform, is_rotation

COLORS = ("red", "green", "blue")

DATA_DIR = Path(__file__).parent / "data"
DEMO_SCENE_PATH = DATA_DIR / "demo_scene.json"


class SceneFormatError(ValueError):
    """Scene document violates the schema; message names the offending field."""


@dataclass(frozen=True)
class SceneObject:
    id: str
    color: str
    size_m: float
    position_cam: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position_cam",
                           np.asarray(self.position_cam, dtype=float).reshape(3))
        if self.color not in COLORS:
            raise SceneFormatError(f"object {self.id!r}: unknown color {self.color!r}")
        if not self.size_m > 0:
            raise SceneFormatError(f"object {self.id!r}: size_m must be positive")


@dataclass(frozen=True)
class CameraExtrinsics:
    t_base_cam: Transform
    noise_sigma_m: float = 0.0

    def __post_init__(self):
        if not self.t_base_cam.is_valid():
            raise SceneFormatError("extrinsics.rotation: not a valid rotation matrix")
        if self.noise_sigma_m < 0:
            raise SceneFormatError("noise_sigma_m must be non-negative")


@dataclass(frozen=True)
class Detection:
    object_id: str
    color: str
    position_base: np.ndarray
    size_m: float

    def __post_init__(self):
        object.__setattr__(self, "position_base",
                           np.asarray(self.position_base, dtype=float).reshape(3))


def load_scene(document) -> tuple[list[SceneObject], CameraExtrinsics]:
    """Parse a scene document (dict, JSON text, or path) into objects and
    extrinsics, rejecting schema violations with field-level messages."""
    if isinstance(document, (str, Path)) and Path(str(document)).exists():
        document = json.loads(Path(document).read_text())
    elif isinstance(document, (str, bytes)):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise SceneFormatError("scene document must be a JSON object")

    objects = []
    for i, obj in enumerate(document.get("objects", [])):
        for key in ("id", "color", "size_m", "position_cam"):
            if key not in obj:
                raise SceneFormatError(f"objects[{i}]: missing field {key!r}")
        pos = obj["position_cam"]
        if len(pos) != 3 or not np.all(np.isfinite(pos)):
            raise SceneFormatError(f"objects[{i}].position_cam: need 3 finite values")
        objects.append(SceneObject(obj["id"], obj["color"], obj["size_m"], pos))
    ids = [o.id for o in objects]
    if len(set(ids)) != len(ids):
        raise SceneFormatError("objects: duplicate ids")

    ext_doc = document.get("extrinsics")
    if ext_doc is None:
        raise SceneFormatError("missing field 'extrinsics'")
    for key in ("rotation", "translation"):
        if key not in ext_doc:
            raise SceneFormatError(f"extrinsics: missing field {key!r}")
    rotation = np.asarray(ext_doc["rotation"], dtype=float)
    if rotation.shape == (9,):
        rotation = rotation.reshape(3, 3)
    if rotation.shape != (3, 3) or not is_rotation(rotation, tol=1e-6):
        raise SceneFormatError("extrinsics.rotation: not a valid 3x3 rotation")
    extrinsics = CameraExtrinsics(
        Transform(rotation, ext_doc["translation"]),
        float(document.get("noise_sigma_m", 0.0)))
    return objects, extrinsics


def camera_to_base(p_cam, ext: CameraExtrinsics,
                   rng: np.random.Generator | None = None) -> np.ndarray:
    """p_base = R p_cam + t, plus optional seeded per-axis Gaussian noise."""
    p = ext.t_base_cam.apply(p_cam)
    if ext.noise_sigma_m > 0:
        if rng is None:
            rng = np.random.default_rng()
        p = p + rng.normal(0.0, ext.noise_sigma_m, size=3)
    return p


def base_to_camera(p_base, ext: CameraExtrinsics) -> np.ndarray:
    return ext.t_base_cam.inverse().apply(p_base)


def detect(objects: list[SceneObject], ext: CameraExtrinsics,
           color_filter: str | None = None,
           rng: np.random.Generator | None = None) -> list[Detection]:
    """Objects matching the filter (or all), positions converted to the base
    frame, deterministically ordered by id."""
    if color_filter is not None and color_filter not in COLORS:
        raise SceneFormatError(f"unknown color filter {color_filter!r}")
    picked = [o for o in objects if color_filter is None or o.color == color_filter]
    picked.sort(key=lambda o: o.id)
    return [Detection(o.id, o.color, camera_to_base(o.position_cam, ext, rng), o.size_m)
            for o in picked]
