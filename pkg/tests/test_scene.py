import numpy as np
import pytest

from nlarm.scene import (DEMO_SCENE_PATH, CameraExtrinsics, SceneFormatError,
                         base_to_camera, camera_to_base, detect, load_scene)
from nlarm.se3 import Transform


@pytest.fixture()
def demo():
    return load_scene(DEMO_SCENE_PATH)


def make_doc(**overrides):
    doc = {
        "objects": [
            {"id": "red-1", "color": "red", "size_m": 0.03, "position_cam": [0, 0, 0.3]},
        ],
        "extrinsics": {"rotation": np.eye(3).tolist(), "translation": [0, 0, 0]},
    }
    doc.update(overrides)
    return doc


class TestLoadScene:
    def test_demo_scene_loads(self, demo):
        objects, ext = demo
        assert len(objects) == 3
        assert {o.color for o in objects} == {"red", "green", "blue"}
        assert ext.noise_sigma_m == 0.0

    def test_demo_scene_objects_in_workspace_annulus(self, demo):
        objects, ext = demo
        for det in detect(objects, ext):
            radius = np.hypot(*det.position_base[:2])
            assert 0.12 <= radius <= 0.18

    def test_unknown_color_rejected_with_field_name(self):
        doc = make_doc()
        doc["objects"][0]["color"] = "purple"
        with pytest.raises(SceneFormatError, match="purple"):
            load_scene(doc)

    def test_missing_field_named(self):
        doc = make_doc()
        del doc["objects"][0]["size_m"]
        with pytest.raises(SceneFormatError, match="size_m"):
            load_scene(doc)

    def test_non_positive_size_rejected(self):
        doc = make_doc()
        doc["objects"][0]["size_m"] = 0.0
        with pytest.raises(SceneFormatError, match="size_m"):
            load_scene(doc)

    def test_bad_rotation_rejected(self):
        doc = make_doc(extrinsics={"rotation": (np.eye(3) * 2).tolist(),
                                   "translation": [0, 0, 0]})
        with pytest.raises(SceneFormatError, match="rotation"):
            load_scene(doc)

    def test_duplicate_ids_rejected(self):
        doc = make_doc()
        doc["objects"].append(dict(doc["objects"][0]))
        with pytest.raises(SceneFormatError, match="duplicate"):
            load_scene(doc)

    def test_empty_object_list_valid(self):
        objects, ext = load_scene(make_doc(objects=[]))
        assert objects == []
        assert detect(objects, ext) == []


class TestCameraToBase:
    def test_identity(self):
        ext = CameraExtrinsics(Transform.identity())
        p = np.array([0.1, 0.2, 0.3])
        assert np.allclose(camera_to_base(p, ext), p)

    def test_pure_translation(self):
        ext = CameraExtrinsics(Transform(np.eye(3), [0.1, 0, 0]))
        assert np.allclose(camera_to_base([0, 0, 0.3], ext), [0.1, 0, 0.3])

    def test_inverse_round_trip(self):
        rng = np.random.default_rng(50)
        from nlarm.se3 import se3_exp
        for _ in range(20):
            w = rng.uniform(-1, 1, 3)
            ext = CameraExtrinsics(se3_exp(np.concatenate([w, rng.uniform(-0.5, 0.5, 3)])))
            p = rng.uniform(-0.3, 0.3, 3)
            assert np.allclose(base_to_camera(camera_to_base(p, ext), ext), p,
                               atol=1e-12)

    def test_affine_three_point_check(self):
        ext = CameraExtrinsics(Transform(np.eye(3)[[1, 2, 0]].T, [0.05, -0.1, 0.2]))
        rng = np.random.default_rng(51)
        p, q = rng.normal(size=3), rng.normal(size=3)
        a, b = 0.7, 1.4
        lhs = camera_to_base(a * p + b * q, ext)
        rhs = (a * camera_to_base(p, ext) + b * camera_to_base(q, ext)
               - (a + b - 1) * ext.t_base_cam.position)
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_seeded_noise_reproducible(self):
        ext = CameraExtrinsics(Transform.identity(), noise_sigma_m=0.002)
        p = [0.1, 0.1, 0.3]
        a = camera_to_base(p, ext, np.random.default_rng(7))
        b = camera_to_base(p, ext, np.random.default_rng(7))
        assert np.array_equal(a, b)
        assert not np.allclose(a, p)  # noise actually applied


class TestDetect:
    def test_color_filter(self, demo):
        objects, ext = demo
        reds = detect(objects, ext, color_filter="red")
        assert [d.object_id for d in reds] == ["red-1"]

    def test_no_filter_sorted_by_id(self, demo):
        objects, ext = demo
        ids = [d.object_id for d in detect(objects, ext)]
        assert ids == sorted(ids)
        assert len(ids) == 3

    def test_filtered_counts_partition_total(self, demo):
        objects, ext = demo
        total = len(detect(objects, ext))
        by_color = sum(len(detect(objects, ext, color_filter=c))
                       for c in ("red", "green", "blue"))
        assert by_color == total

    def test_two_red_cubes_both_returned(self):
        doc = make_doc(objects=[
            {"id": "red-1", "color": "red", "size_m": 0.03, "position_cam": [0, 0, 0.3]},
            {"id": "red-2", "color": "red", "size_m": 0.03, "position_cam": [0.1, 0, 0.3]},
        ])
        objects, ext = load_scene(doc)
        assert [d.object_id for d in detect(objects, ext, color_filter="red")] == \
            ["red-1", "red-2"]

    def test_seeded_detect_identical(self, demo):
        objects, _ = demo
        ext = CameraExtrinsics(Transform.identity(), noise_sigma_m=0.001)
        a = detect(objects, ext, rng=np.random.default_rng(3))
        b = detect(objects, ext, rng=np.random.default_rng(3))
        assert all(np.array_equal(x.position_base, y.position_base)
                   for x, y in zip(a, b))
