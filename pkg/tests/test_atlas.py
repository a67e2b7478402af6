from pathlib import Path

import pytest
from importlib import resources

from dhwp.atlas import (
    Atlas,
    AtlasKey,
    OPEN_KEYS,
    parse_atlas_text,
    serialize_entry,
)
from dhwp.errors import AtlasParseError, CacheCorruptionError
from dhwp.model import verify_factorization


def test_appendix_is_fully_loaded(atlas):
    entries = atlas.appendix_entries()
    assert len(entries) == 75
    by_v = {}
    for e in entries:
        by_v[e.key.v] = by_v.get(e.key.v, 0) + 1
    assert by_v == {8: 6, 12: 30, 15: 18, 16: 21}


def test_every_appendix_entry_verifies_with_its_header(atlas):
    for entry in atlas.appendix_entries():
        fac = entry.factorization
        verdict = verify_factorization(fac.host, fac, entry.key.spec())
        assert verdict.valid, (entry.key, verdict.first_failure)
        # any valid factorization of the complete host has v-1 factors
        assert len(fac.factors) == entry.key.v - 1


def test_expected_keys_present(atlas):
    assert atlas.lookup(AtlasKey(8, 4, 8, 3, 4)).provenance == "appendix"
    item35 = atlas.lookup(AtlasKey(16, 8, 16, 2, 13))
    assert item35.provenance == "appendix"
    assert len(item35.factorization.factors) == 15
    open_entry = atlas.lookup(AtlasKey(15, 3, 5, 12, 2))
    assert open_entry.status == "unknown-open" and open_entry.factorization is None
    assert atlas.lookup(AtlasKey(100, 4, 6, 50, 49)) is None


def test_appendix_coverage_completeness(atlas):
    # odd-r appendix coverage per order; everything else is generated data
    for r in range(1, 7):
        assert atlas.lookup(AtlasKey(8, 4, 8, r, 7 - r))
    for (m, n) in [(4, 6), (4, 12), (6, 12)]:
        for r in range(1, 11):
            assert atlas.lookup(AtlasKey(12, m, n, r, 11 - r))
    for r in range(1, 15):
        assert atlas.lookup(AtlasKey(16, 4, 16, r, 15 - r))
    for r in range(2, 15, 2):
        assert atlas.lookup(AtlasKey(16, 8, 16, r, 15 - r))
    for (m, n, missing) in [(3, 5, {11, 13}), (3, 15, {13}), (5, 15, set())]:
        for r in range(1, 15, 2):
            entry = atlas.lookup(AtlasKey(15, m, n, r, 14 - r))
            if r in missing:
                assert entry.status == "unknown-open"
            else:
                assert entry.status == "verified"


def test_corrections_file_documents_repairs():
    text = (
        resources.files("dhwp").joinpath("data/appendix/CORRECTIONS.md").read_text()
    )
    assert text.count("- entry HWP*") == 4


def test_serialize_parse_round_trip_bit_exact():
    root = resources.files("dhwp").joinpath("data/appendix")
    checked = 0
    for item in root.iterdir():
        if not item.name.endswith(".txt"):
            continue
        text = item.read_text()
        entries = parse_atlas_text(text)
        rebuilt = [
            line
            for e in entries
            for line in serialize_entry(e.key, e.factorization).splitlines()
        ]
        original = [
            line for line in text.splitlines() if line and not line.startswith("#")
        ]
        assert rebuilt == original
        checked += len(entries)
    assert checked == 75


def test_parse_rejects_malformed_and_invalid():
    with pytest.raises(AtlasParseError):
        parse_atlas_text("HWP* 3 3 4\n")
    with pytest.raises(AtlasParseError):
        parse_atlas_text("HWP* 3 3 4 2 0\n(0,1,x)\n")
    # structurally fine but not a factorization: missing second factor
    with pytest.raises(AtlasParseError) as err:
        parse_atlas_text("HWP* 3 3 4 2 0\n(0,1,2)\n")
    assert "HWP*(3;3^2,4^0)" in str(err.value)


def test_parse_empty_input():
    assert parse_atlas_text("") == []
    assert parse_atlas_text("# just a comment\n") == []


def test_ensure_generated_caches_and_reloads(tmp_path):
    atlas = Atlas(cache_dir=tmp_path)
    # an all-digon factorization: generatable but deliberately not shipped
    key = AtlasKey(8, 2, 8, 7, 0)
    entry = atlas.ensure_generated(key, time_limit=60)
    assert entry.status == "verified"
    assert next(Path(tmp_path).glob("*.txt"), None) is not None
    fresh = Atlas(cache_dir=tmp_path)
    again = fresh.lookup(key)
    assert again is not None and again.status == "verified"
    assert again.factorization.factors == entry.factorization.factors


def test_cache_corruption_detected(tmp_path):
    atlas = Atlas(cache_dir=tmp_path)
    bad = tmp_path / "hwp_6_3_6_2_3.txt"
    bad.write_text("HWP* 6 3 6 2 3\n(0,1,2)(3,4,5)\n")
    with pytest.raises(CacheCorruptionError):
        atlas.lookup(AtlasKey(6, 3, 6, 2, 3))


def test_every_stored_entry_verifies_with_its_key(atlas):
    verified = 0
    for entry in atlas.entries():
        if entry.factorization is None:
            assert entry.status == "unknown-open"
            continue
        verdict = verify_factorization(
            entry.factorization.host, entry.factorization, entry.key.spec()
        )
        assert verdict.valid, (entry.key, verdict.first_failure)
        verified += 1
    assert verified == 110  # 75 transcribed + 35 generated


def test_generated_provenance_recorded(atlas):
    assert atlas.lookup(AtlasKey(15, 3, 15, 0, 14)).provenance == "generated-doubling"
    assert atlas.lookup(AtlasKey(12, 4, 6, 11, 0)).provenance == "generated-search"
    assert atlas.lookup(AtlasKey(16, 4, 16, 15, 0)).provenance == "composite"


def test_open_keys_registry():
    assert AtlasKey(15, 3, 5, 12, 2) in OPEN_KEYS
    assert len(OPEN_KEYS) == 4
