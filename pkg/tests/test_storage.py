"""Tests for the persistence layer.

The wire format for rationals is "p/q" with reduced fractions and no
whitespace; integers may omit "/q". File round-trips must be lossless and
order preserving, and the cache must reject corrupted entries via its
checksum sidecar instead of returning damaged data.
"""

import json
import os
from fractions import Fraction

import pytest

from extremeforms.core import FormVector
from extremeforms.search import ExtremeSet, extreme_points
from extremeforms.storage import (
    FILE_FORMAT_VERSION,
    cache_key,
    cache_load,
    cache_store,
    default_cache_dir,
    format_rational,
    parse_point_list,
    parse_rational,
    read_extreme_set,
    write_extreme_set,
)

F = Fraction


# ---------------------------------------------------------------------------
# rational wire format
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("value, text", [
    (F(1, 2), "1/2"),
    (F(-3, 4), "-3/4"),
    (F(3), "3"),
    (F(0), "0"),
    (F(-5), "-5"),
    (F(2, 4), "1/2"),
    (F(7, 8), "7/8"),
])
def test_format_rational(value, text):
    assert format_rational(value) == text


@pytest.mark.parametrize("text, value", [
    ("1/2", F(1, 2)),
    ("-7/8", F(-7, 8)),
    ("3", F(3)),
    ("0", F(0)),
    ("-5", F(-5)),
    ("2/4", F(1, 2)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", [
    "", "1/0", "1.5", " 1/2", "1/2 ", "1 / 2", "1/2/3", "a/b", "--1", "+1",
])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_rational_round_trip_random():
    import random

    rng = random.Random(7)
    for _ in range(200):
        value = F(rng.randint(-50, 50), rng.randint(1, 50))
        assert parse_rational(format_rational(value)) == value


def test_parse_point_list():
    assert parse_point_list("1/2,1/2,0,0") == (F(1, 2), F(1, 2), F(0), F(0))
    assert parse_point_list("1") == (F(1),)


def test_parse_point_list_reports_position():
    with pytest.raises(ValueError, match="entry 2"):
        parse_point_list("1/2,oops,0")
    with pytest.raises(ValueError, match="entry 3"):
        parse_point_list("0,1,")
    with pytest.raises(ValueError, match="entry 1"):
        parse_point_list("")


# ---------------------------------------------------------------------------
# extreme-set files
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def set12():
    return extreme_points(1, 2)


def test_json_file_shape(tmp_path, set22):
    path = tmp_path / "points.json"
    write_extreme_set(path, set22, fmt="json")
    payload = json.loads(path.read_text())
    assert payload["format-version"] == FILE_FORMAT_VERSION
    assert payload["m"] == 2
    assert payload["n"] == 2
    assert payload["count"] == 16
    assert len(payload["points"]) == 16
    assert payload["points"][0] == [format_rational(c)
                                    for c in set22.points[0].coeffs]
    assert "complete" not in payload


def test_json_round_trip(tmp_path, set22):
    path = tmp_path / "points.json"
    write_extreme_set(path, set22, fmt="json")
    loaded = read_extreme_set(path)
    assert loaded == set22
    assert [p.coeffs for p in loaded.points] == [p.coeffs
                                                 for p in set22.points]
    assert loaded.complete


def test_csv_round_trip(tmp_path, set12):
    path = tmp_path / "points.csv"
    write_extreme_set(path, set12, fmt="csv")
    first = path.read_text().splitlines()[0]
    assert first.startswith("#")
    assert f"format-version={FILE_FORMAT_VERSION}" in first
    assert "m=1" in first and "n=2" in first and "count=4" in first
    loaded = read_extreme_set(path)
    assert loaded == set12
    assert [p.coeffs for p in loaded.points] == [p.coeffs
                                                 for p in set12.points]


def test_half_integer_coordinates_survive(tmp_path, set22):
    for fmt in ("json", "csv"):
        path = tmp_path / f"points.{fmt}"
        write_extreme_set(path, set22, fmt=fmt)
        loaded = read_extreme_set(path)
        assert (F(1, 2), F(1, 2), F(1, 2), F(-1, 2)) in loaded


def test_partial_set_round_trip(tmp_path, set12):
    partial = ExtremeSet(1, 2, set12.points[:1], complete=False)
    path = tmp_path / "partial.json"
    write_extreme_set(path, partial, fmt="json")
    payload = json.loads(path.read_text())
    assert payload["complete"] is False
    loaded = read_extreme_set(path)
    assert not loaded.complete
    assert loaded.points == partial.points


def test_read_detects_format_by_content(tmp_path, set12):
    path = tmp_path / "noext"
    write_extreme_set(path, set12, fmt="json")
    assert read_extreme_set(path) == set12
    write_extreme_set(path, set12, fmt="csv")
    assert read_extreme_set(path) == set12


def test_read_rejects_corruption(tmp_path, set12):
    path = tmp_path / "points.json"
    write_extreme_set(path, set12, fmt="json")
    payload = json.loads(path.read_text())

    payload["count"] = 99
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        read_extreme_set(path)

    payload["count"] = len(set12)
    payload["format-version"] = 999
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        read_extreme_set(path)

    payload["format-version"] = FILE_FORMAT_VERSION
    payload["points"][0] = payload["points"][0][:-1]
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        read_extreme_set(path)


def test_write_rejects_unknown_format(tmp_path, set12):
    with pytest.raises(ValueError):
        write_extreme_set(tmp_path / "x", set12, fmt="xml")


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def test_default_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("EXTREMEFORMS_CACHE", str(tmp_path / "alt"))
    assert default_cache_dir() == tmp_path / "alt"
    monkeypatch.delenv("EXTREMEFORMS_CACHE")
    assert default_cache_dir().name == "extremeforms"


def test_cache_key_distinguishes_runs():
    keys = {
        cache_key("enum", 2, 2),
        cache_key("enum", 3, 2),
        cache_key("planar", 3, 2),
        cache_key("kg", 3, 2, extra={"d": 2, "seed": 0}),
        cache_key("kg", 3, 2, extra={"d": 3, "seed": 0}),
    }
    assert len(keys) == 5
    key = cache_key("enum", 2, 2)
    assert key == cache_key("enum", 2, 2)
    assert f"v{FILE_FORMAT_VERSION}" in key
    assert "/" not in key and os.sep not in key


def test_cache_store_and_load(tmp_path):
    data = b'{"hello": 1}'
    key = cache_key("enum", 2, 2)
    stored = cache_store(tmp_path, key, data)
    assert stored.parent == tmp_path
    assert cache_load(tmp_path, key) == data
    assert cache_load(tmp_path, cache_key("enum", 3, 2)) is None


def test_cache_rejects_corruption(tmp_path):
    key = cache_key("planar", 3, 2)
    cache_store(tmp_path, key, b"payload bytes")
    entry = tmp_path / key
    raw = bytearray(entry.read_bytes())
    raw[0] ^= 0xFF
    entry.write_bytes(bytes(raw))
    assert cache_load(tmp_path, key) is None


def test_cache_missing_sidecar(tmp_path):
    key = cache_key("planar", 4, 2)
    cache_store(tmp_path, key, b"payload")
    for sidecar in tmp_path.glob(f"{key}.*"):
        sidecar.unlink()
    assert cache_load(tmp_path, key) is None


def test_cache_overwrite_is_atomic_replacement(tmp_path):
    key = cache_key("enum", 1, 2)
    cache_store(tmp_path, key, b"first")
    cache_store(tmp_path, key, b"second")
    assert cache_load(tmp_path, key) == b"second"
    leftovers = [p for p in tmp_path.iterdir() if "tmp" in p.name.lower()]
    assert leftovers == []
