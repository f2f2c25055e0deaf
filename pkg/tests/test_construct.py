import numpy as np
import pytest

from packcolor.construct import (
    BAND_BASE, BandPattern, ConstructionError, LatticeFormatError, LatticePattern, Segment,
    SpiralLayout, _build, _repair, assemble, band_coloring, band_pair_distance, band_word,
    decompose, default_lattice, path_band_pattern, i_band, i_strip, layout, lattice_conflict,
    path_gaps_ok, read_lattice, shift_distance_bound, strip_coloring, strip_rows, sweep_rows,
)
from packcolor.graph import distance
from packcolor.pattern import FiniteColoring, PeriodicColoring, verify_finite, verify_periodic


def test_band_membership():
    b = i_band(5, 2)
    assert b.vertices(-5, 15) == [-3, 2, 7, 12]
    assert 12 in b and 13 not in b


def test_strip_range_and_errors():
    assert i_strip(30, 3).bands == range(3, 27)
    with pytest.raises(IndexError):
        i_strip(25, 2)
    with pytest.raises(IndexError):
        i_band(5, 5)


def test_shipped_lattice_valid():
    lat = default_lattice()
    cells = lat.cells
    assert cells.shape == (24, 24) and cells.max() <= 17
    a, b = np.indices(cells.shape)
    assert np.array_equal(cells == 1, (a + b) % 2 == lat.parity)
    assert lattice_conflict(cells) is None


def test_lattice_conflict_brute_force():
    cells = default_lattice().cells
    pts = [(x, y, cells[x, y]) for x in range(24) for y in range(24)]
    for i, (x, y, v) in enumerate(pts[::7]):
        for (p, q, w) in pts:
            if (p, q) != (x, y) and w == v:
                dx, dy = abs(x - p), abs(y - q)
                assert min(dx, 24 - dx) + min(dy, 24 - dy) > v


def test_lattice_loader_rejects_seam_conflict():
    cells = default_lattice().cells.copy()
    # a 1 at column 0 next to a 1 at column 23 across the seam
    cells[0, 0], cells[23, 0] = 1, 1
    text = "\n".join(" ".join(map(str, row)) for row in cells)
    with pytest.raises(LatticeFormatError):
        read_lattice(text)


def test_lattice_loader_rejects_shapes_and_colors():
    with pytest.raises(LatticeFormatError):
        read_lattice("1 2\n2 1\n")
    cells = default_lattice().cells.copy()
    cells[0, 1] = 18
    with pytest.raises(LatticeFormatError):
        LatticePattern(cells)
    cells = default_lattice().cells.copy()
    cells[0, 1] = 1  # breaks the checkerboard
    with pytest.raises(LatticeFormatError):
        LatticePattern(cells)


def test_other_checkerboard_class_is_accepted():
    cells = np.roll(default_lattice().cells, 1, axis=1)
    lat = LatticePattern(cells)
    assert lat.parity != default_lattice().parity
    assert not np.array_equal(strip_rows(lat, 0, 48), strip_rows(default_lattice(), 0, 48))
    assert assemble(75, lattice=lat).verdict.valid


def test_strip_coloring_valid_on_window():
    t = 30
    col = strip_coloring(t, 3, rows=200)
    n = 200 * t
    entries = np.zeros(n, dtype=np.int32)
    for v, c in col.items():
        entries[v] = c
    assert verify_finite(FiniteColoring(t, entries)).valid
    assert max(col.values()) <= 17


def test_strip_shift_by_24_is_identity():
    lat = default_lattice()
    assert np.array_equal(strip_rows(lat, 5, 72), strip_rows(lat, 29, 72))
    assert np.array_equal(strip_rows(lat, 5, 72), strip_rows(lat, -19, 72))


def test_band_words():
    assert band_word(18) == tuple(x for v in range(18, 36) for x in (1, v))
    assert band_word(3) == (1, 3, 1, 4, 1, 5)
    with pytest.raises(ValueError):
        band_word(2)
    pat = BandPattern(18, 0)
    assert pat.period == 36 and set(pat.word[::2]) == {1}
    assert sorted(pat.word[1::2]) == list(range(18, 36))


def test_band_is_a_path_coloring():
    for k in range(3, 20):
        assert path_gaps_ok(band_word(k))


def test_band_coloring_offsets():
    col = band_coloring(600, 18, start=-13, band=24)
    assert col[24 + 23 * 600] == 1 and col[24 + 24 * 600] == 18 and col[24 + 14 * 600] == 31
    assert len(col) == 36


def test_band_pair_distance_formula():
    for k in range(11, 26):
        d = band_pair_distance(600, k)
        assert d == shift_distance_bound(k) == min(k, 36 - k) + 25 > 35


def test_band_pair_direct_check():
    # two bands 25 columns apart, shifted by 11 rows, checked by the finite verifier
    t = 120
    entries = np.zeros(80 * t, dtype=np.int32)
    for v, c in band_coloring(t, 18, 0, band=10).items():
        for rep in range(2):
            if c != 1:
                entries[v + 36 * rep * t] = c
    for v, c in band_coloring(t, 18, 11, band=35).items():
        for rep in range(2):
            if c != 1 and v + 36 * rep * t < len(entries):
                entries[v + 36 * rep * t] = c
    assert verify_finite(FiniteColoring(t, entries)).valid


def test_path_band_small():
    assert path_band_pattern(1).word == (1, 2, 1, 3)
    p2 = path_band_pattern(2)
    assert p2.period <= 40 and set(p2.word) <= set(range(2, 9)) and path_gaps_ok(p2.word)


def test_path_band_18_shipped_and_valid():
    p = path_band_pattern(18)
    assert set(p.word) <= set(range(18, 57)) and path_gaps_ok(p.word)
    assert p.period == 144


def test_path_band_annealing_fallback():
    p = path_band_pattern(4, max_period=0, anneal_periods=(24, 36, 48))
    assert p.method.startswith("annealing")
    assert set(p.word) <= set(range(4, 15)) and path_gaps_ok(p.word)


def test_path_band_budget_failure_is_reported():
    with pytest.raises(ConstructionError):
        path_band_pattern(5, max_period=3)


def test_literal_consecutive_word_fails_on_path():
    assert not path_gaps_ok(list(range(18, 57)))


def test_decomposition():
    assert decompose(575) == ("odd", 23, 23)
    assert decompose(25) == ("odd", 1, 1)
    assert decompose(648) == ("even", 24, 24)
    assert decompose(98) == ("even", 2, 2)
    for t in (24, 26, 71, 95, 120, 2):
        with pytest.raises(ConstructionError):
            decompose(t)


@pytest.mark.parametrize("t", [25, 75, 575, 98, 648, 1001, 1000])
def test_layout_tiles_all_columns(t):
    lay = layout(t)
    lay.check()
    kinds = [s.kind for s in lay.segments]
    assert kinds.count("band") + kinds.count("path-band") == lay.r
    assert kinds.count("path-band") == (0 if t % 2 else 1)


def test_odd_layout_matches_written_order():
    segs = layout(75).segments
    assert [(s.kind, s.first) for s in segs[:4]] == [("strip", 0), ("band", 24), ("strip", 25), ("band", 49)]
    assert [s.shift for s in segs if s.kind == "band"] == [0, -13, -24]


@pytest.mark.parametrize("r,t", sweep_rows())
def test_sweep_row(r, t):
    asm = assemble(t)
    col = asm.coloring
    assert asm.verdict.valid and verify_periodic(col).valid
    assert col.period == (72 if t % 2 else 144) * t
    assert col.colors == (35 if t % 2 else 56)
    assert not asm.deviations
    word = col.word
    # color 1 never on adjacent vertices
    assert not np.any((word == 1) & (np.roll(word, -1) == 1))
    assert not np.any((word == 1) & (np.roll(word, -t) == 1))
    # strips use 1..17, ordinary bands 1 and 18..35
    grid = word.reshape(-1, t)
    for seg in asm.layout.segments:
        vals = set(np.unique(grid[:, seg.first:seg.last + 1]).tolist())
        if seg.kind == "strip":
            assert vals <= set(range(1, 18))
        elif seg.kind == "band":
            assert vals <= {1} | set(range(18, 36))
        else:
            assert vals <= set(range(18, 57))


def test_larger_t_also_verifies():
    for t in (601, 999, 700, 1200):
        assert assemble(t).verdict.valid


def test_report_lists_segments():
    text = assemble(98).report()
    assert "even case" in text and "path-band" in text and "verdict: valid" in text
    assert "period = 14112 = 144t" in text


def test_fallback_repairs_wrong_shifts():
    lay = layout(125)
    segs = [Segment(s.kind, s.first, (-13 if s.shift == 0 else 0), s.pattern) if s.kind == "band" else s
            for s in lay.segments]
    bad = SpiralLayout(lay.spec, lay.r, lay.s, lay.case, segs)
    lat = default_lattice()
    v = verify_periodic(PeriodicColoring(125, _build(bad, lat, None)))
    assert not v.valid
    fixed, word, verdict, dev = _repair(bad, lat, None, v, None)
    assert verdict.valid and dev
    assert verify_periodic(PeriodicColoring(125, word)).valid


def test_component_failure_reported():
    cells = default_lattice().cells.copy()

    class Broken(LatticePattern):
        def validate(self):
            pass
    broken = Broken(cells)
    cells[cells >= 2] = 2
    object.__setattr__(broken, "cells", cells)
    with pytest.raises(ConstructionError) as err:
        assemble(25, lattice=broken, fallback=False)
    assert err.value.verdict is not None and not err.value.verdict.valid
