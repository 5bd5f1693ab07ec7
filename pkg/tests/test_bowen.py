import math
import os

import numpy as np
import pytest

from lieentropy import (
    EstimatorParams,
    ImproperMapError,
    box_system,
    compactify,
    dynamic_distance,
    estimate_entropy,
    spanning_count,
    torus_system,
    write_csv,
)
from lieentropy.bowen import _OrbitCache, chordal_embed, sample_space


def test_torus_distance_wraps():
    sys2 = torus_system([[1, 0], [0, 1]])
    assert dynamic_distance(sys2, [0.95, 0.0], [0.05, 0.0], 0) == pytest.approx(0.1)


def test_dynamic_distance_grows_with_depth():
    cat = torus_system([[2, 1], [1, 1]])
    x, y = [0.3, 0.4], [0.31, 0.4]
    d0 = dynamic_distance(cat, x, y, 0)
    d4 = dynamic_distance(cat, x, y, 4)
    assert d4 > d0


def test_spanning_count_monotone_in_n_and_eps():
    cat = torus_system([[2, 1], [1, 1]])
    pts, _ = sample_space(cat, 64)
    cache = _OrbitCache(cat, pts, None)
    counts = [spanning_count(cat, pts, n, 0.1, _cache=cache)[0] for n in range(5)]
    assert counts == sorted(counts)
    coarse = spanning_count(cat, pts, 2, 0.2, _cache=cache)[0]
    fine = spanning_count(cat, pts, 2, 0.05, _cache=cache)[0]
    assert coarse <= fine


def test_doubling_map_slope():
    sys1 = torus_system([[2]])
    res = estimate_entropy(sys1, EstimatorParams(n_max=14, eps_list=(0.02, 0.01), grid_density=65536))
    assert res.estimate == pytest.approx(math.log(2), abs=0.05)


def test_rotation_and_identity_are_flat():
    rot = torus_system([[0, -1], [1, 0]])
    res = estimate_entropy(rot, EstimatorParams(n_max=10, eps_list=(0.1, 0.05), grid_density=128))
    assert abs(res.estimate) < 0.02
    ident = torus_system([[1, 0], [0, 1]])
    res = estimate_entropy(ident, EstimatorParams(n_max=10, eps_list=(0.1, 0.05), grid_density=128))
    assert abs(res.estimate) < 0.02


def test_saturated_tiny_grid_unreliable():
    cat = torus_system([[2, 1], [1, 1]])
    res = estimate_entropy(cat, EstimatorParams(n_max=10, eps_list=(0.05,), grid_density=16))
    assert not res.reliable


def test_box_escape_raises():
    grow = box_system(lambda p: 2.0 * p, bounds=((-1, 1),))
    with pytest.raises(ValueError):
        dynamic_distance(grow, [0.5], [0.6], 4)


def test_compactify_accepts_proper_rejects_bounded():
    half = compactify(lambda p: p / 2.0, dim=1)
    assert half.kind == "sphere_compactification"
    with pytest.raises(ImproperMapError):
        compactify(lambda p: np.tanh(p), dim=1)


def test_chordal_embed_infinity_pole():
    pts = np.array([[0.0], [1e9]])
    emb = chordal_embed(pts, at_inf=np.array([False, True]))
    assert emb[1].tolist() == [0.0, 1.0]
    assert np.linalg.norm(emb[0] - np.array([0.0, -1.0])) < 1e-12


def test_contraction_estimate_zero():
    half = compactify(lambda p: p / 2.0, dim=1)
    res = estimate_entropy(half, EstimatorParams(n_max=12, eps_list=(0.1, 0.05), grid_density=2048))
    assert abs(res.estimate) < 0.02
    assert res.reliable


def test_csv_columns(tmp_path):
    rot = torus_system([[0, -1], [1, 0]])
    res = estimate_entropy(rot, EstimatorParams(n_max=6, eps_list=(0.1,), grid_density=64))
    out = tmp_path / "counts.csv"
    write_csv(res, str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,eps,count,slope"
    assert len(lines) >= 2
    first = lines[1].split(",")
    assert len(first) == 4


def test_orbit_cache_threadsafe_extension():
    cat = torus_system([[2, 1], [1, 1]])
    pts, _ = sample_space(cat, 32)
    cache = _OrbitCache(cat, pts, None)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=4) as pool:
        shapes = list(pool.map(lambda n: cache.stacked(n).shape, [3, 5, 2, 7]))
    for n, shape in zip([3, 5, 2, 7], shapes):
        assert shape == (len(pts), n + 1, 2)
