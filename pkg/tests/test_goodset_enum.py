import pytest

from pentile.goodset_enum import (EnumStats, consecutive_triple, emit_tables, load_golden,
                                  parse_tables, recurse, write_tsv)

X0 = ((1, 1, 1, 0, 0),)
W = (0, 0, 0, 2, 2)


def test_recurse_respects_singleton_exclusion():
    full, cut = set(), set()
    recurse(X0, frozenset(), full, EnumStats())
    recurse(X0, frozenset({W}), cut, EnumStats())
    assert any(W in X for X in full)
    assert all(W not in X for X in cut)
    assert cut == {X for X in full if W not in X}


def test_golden_file_shape(golden):
    assert len(golden) == 371
    assert [r[0] for r in golden] == list(range(1, 372))


def test_pentile_data_override(tmp_path, monkeypatch):
    (tmp_path / "table1.txt").write_text("# index dim struck basis\n1 3 1 11100\n")
    monkeypatch.setenv("PENTILE_DATA", str(tmp_path))
    assert load_golden() == [(1, 3, True, ((1, 1, 1, 0, 0),))]


def test_struck_flag_is_consecutive_triple():
    assert consecutive_triple(((0, 1, 1, 1, 0),))
    assert consecutive_triple(((1, 1, 0, 0, 1),))
    assert not consecutive_triple(((1, 1, 0, 1, 0),))


@pytest.mark.slow
def test_tables_round_trip_and_are_deterministic(enumeration, tmp_path):
    records, info = enumeration
    text = emit_tables(records)
    parsed = parse_tables(text)
    assert len(parsed) == 371
    for r in records:
        assert parsed[r.index] == (r.dim, r.struck, r.basis)
    write_tsv(records, tmp_path / "a.tsv")
    write_tsv(records, tmp_path / "b.tsv")
    assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()


@pytest.mark.slow
def test_every_class_is_closed_good_and_open(enumeration):
    from pentile.vectypes import compat, is_good, open_witness
    records, _ = enumeration
    reps = {r.maximal_set for r in records}
    assert len(reps) == len(records)
    for r in records:
        assert compat(r.maximal_set) == r.maximal_set
        assert is_good(r.maximal_set)
        assert open_witness(r.maximal_set) is not None
