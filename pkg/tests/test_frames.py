import json

import numpy as np
import pytest

from framekit import (
    Frame,
    FrameParseError,
    SingularOperator,
    Tolerance,
    apply_invertible,
    classify,
    cp_failure_pairs,
    complement_property,
    fixture_frame,
    frame_bounds,
    frame_operator,
    load_frame,
    load_measurements,
    measure,
)
from framekit.frames import parse_frame_csv, parse_frame_json


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eps_rank=0.0)
    with pytest.raises(ValueError):
        Tolerance(eps_val=-1e-9)
    with pytest.raises(ValueError):
        Tolerance(eps_residual=float("nan"))


def test_frame_validation():
    with pytest.raises(FrameParseError):
        Frame(np.array([1.0, 2.0]))  # 1-D
    with pytest.raises(FrameParseError):
        Frame(np.array([[np.inf, 0.0]]))
    with pytest.raises(FrameParseError):
        Frame(np.empty((0, 2)))
    f = Frame([[1, 2], [3, 4]])
    assert f.n == 2 and f.dim == 2
    with pytest.raises(ValueError):
        f.vectors[0, 0] = 99.0  # read-only


def test_frame_operator_and_bounds_r3():
    f = fixture_frame("r3-example")
    np.testing.assert_allclose(frame_operator(f), 4.0 * np.eye(3), atol=1e-12)
    a, b = frame_bounds(f)
    assert abs(a - 4.0) <= 1e-10 and abs(b - 4.0) <= 1e-10


def test_frame_operator_permutation_invariant():
    rng = np.random.default_rng(11)
    vecs = rng.standard_normal((5, 3))
    perm = rng.permutation(5)
    np.testing.assert_allclose(
        frame_operator(Frame(vecs)), frame_operator(Frame(vecs[perm])), atol=1e-12
    )


def test_classify_flags():
    r3 = classify(fixture_frame("r3-example"))
    assert r3.is_frame and r3.is_tight and r3.is_equal_norm
    assert not r3.is_parseval and not r3.is_unit_norm

    parseval = classify(Frame(np.array([[1.0, 0.0], [0.0, 1.0]])))
    assert parseval.is_parseval and parseval.is_tight and parseval.is_unit_norm

    not_spanning = classify(Frame(np.array([[1.0, 0.0], [2.0, 0.0]])))
    assert not not_spanning.is_frame


def test_measure_values_and_errors():
    f = fixture_frame("r2-weak")
    np.testing.assert_array_equal(measure(f, [3.0, 5.0]), [64.0, 4.0])
    with pytest.raises(ValueError):
        measure(f, [1.0, 2.0, 3.0])


def test_apply_invertible_measurement_relation():
    f = fixture_frame("r3-example")
    rng = np.random.default_rng(5)
    T = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
    g = apply_invertible(f, T)
    x = rng.standard_normal(3)
    np.testing.assert_allclose(measure(g, x), measure(f, T.T @ x), atol=1e-9)


def test_apply_invertible_rejects_singular():
    f = fixture_frame("r2-weak")
    with pytest.raises(SingularOperator):
        apply_invertible(f, np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_tight_frames_preserve_norms_on_equal_measurement_pairs():
    # tight frame => ||x||^2 = (1/A) sum of measurements, so equal-measurement
    # pairs from the oracle must have equal norms
    f = fixture_frame("r3-example")
    assert classify(f).is_tight
    _, witness = complement_property(f)
    for pair in cp_failure_pairs(f, witness, samples=6, rng_seed=1):
        assert abs(np.linalg.norm(pair.x) - np.linalg.norm(pair.y)) <= 1e-9


def test_parse_frame_csv_and_errors():
    f = parse_frame_csv("1, 2\n3, 4\n")
    np.testing.assert_array_equal(f.vectors, [[1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(FrameParseError):
        parse_frame_csv("1, 2\n3\n")  # ragged
    with pytest.raises(FrameParseError):
        parse_frame_csv("a, b\n")
    with pytest.raises(FrameParseError):
        parse_frame_csv("\n\n")


def test_parse_frame_json_and_errors():
    f = parse_frame_json(json.dumps({"m": 2, "vectors": [[1, 0], [0, 1]]}))
    assert f.dim == 2
    with pytest.raises(FrameParseError):
        parse_frame_json(json.dumps({"m": 3, "vectors": [[1, 0]]}))  # declared m mismatch
    with pytest.raises(FrameParseError):
        parse_frame_json("{not json")
    with pytest.raises(FrameParseError):
        parse_frame_json(json.dumps({"rows": [[1, 0]]}))


def test_load_frame_sniffs_format(tmp_path):
    csv_path = tmp_path / "f.csv"
    csv_path.write_text("1,1\n1,-1\n")
    json_path = tmp_path / "f.json"
    json_path.write_text(json.dumps({"m": 2, "vectors": [[1, 1], [1, -1]]}))
    np.testing.assert_array_equal(load_frame(csv_path).vectors, load_frame(json_path).vectors)


def test_load_measurements(tmp_path):
    p = tmp_path / "y.txt"
    p.write_text("1.5\n\n2.0\n0\n")
    np.testing.assert_array_equal(load_measurements(p), [1.5, 2.0, 0.0])
    np.testing.assert_array_equal(load_measurements(p, n=3), [1.5, 2.0, 0.0])
    with pytest.raises(FrameParseError):
        load_measurements(p, n=4)
    bad = tmp_path / "bad.txt"
    bad.write_text("1.0\n-0.5\n")
    with pytest.raises(FrameParseError):
        load_measurements(bad)
    notnum = tmp_path / "notnum.txt"
    notnum.write_text("1.0\nxyz\n")
    with pytest.raises(FrameParseError):
        load_measurements(notnum)
