import math

import numpy as np
import pytest

from iccsim.lattice import (
    COMPUTING,
    DATA,
    Constellation,
    LatticeConfig,
    bits_to_symbol,
    build_constellations,
    hard_decide,
    label_bits,
    mod_lattice,
    quantize_fine,
    symbol_to_bits,
)

CFG = LatticeConfig()
DATA_C, COMP_C = build_constellations(CFG)


class TestLatticeConfig:
    def test_defaults(self):
        assert CFG.delta == 2.0
        assert CFG.m_points == 4
        assert CFG.sqrt_m == 2
        assert CFG.fine_spacing == 1.0
        assert CFG.offset == 0.5
        assert CFG.rate_bits == 2

    def test_sixteen_points(self):
        cfg = LatticeConfig(2.0, 16)
        assert cfg.sqrt_m == 4
        assert cfg.fine_spacing == 0.5
        assert cfg.offset == 0.5
        assert cfg.rate_bits == 4

    def test_rejects_bad_delta(self):
        for delta in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                LatticeConfig(delta, 4)

    def test_rejects_bad_m(self):
        for m in (0, 1, 2, 3, 8, 9, 12, 36, 4.0):  # not a square power of two >= 4
            with pytest.raises(ValueError):
                LatticeConfig(2.0, m)


class TestModLattice:
    def test_examples(self):
        assert mod_lattice(0.0, 2.0) == 0.0
        assert mod_lattice(2.3, 2.0) == pytest.approx(0.3, abs=1e-12)
        assert mod_lattice(0.5 - 1.2j, 2.0) == pytest.approx(0.5 + 0.8j, abs=1e-12)
        assert mod_lattice(-3.0 + 0.25j, 2.0) == pytest.approx(-1.0 + 0.25j, abs=1e-12)

    def test_boundary_is_half_open(self):
        # +delta/2 belongs to the next cell: it folds to -delta/2
        assert mod_lattice(1.0 + 1.0j, 2.0) == -1.0 - 1.0j
        assert mod_lattice(-1.0, 2.0) == -1.0

    def test_range(self):
        rng = np.random.default_rng(0)
        a = rng.uniform(-50, 50, 10 ** 5) + 1j * rng.uniform(-50, 50, 10 ** 5)
        r = mod_lattice(a, 2.0)
        assert np.all(r.real >= -1.0) and np.all(r.real < 1.0)
        assert np.all(r.imag >= -1.0) and np.all(r.imag < 1.0)

    def test_periodicity(self):
        rng = np.random.default_rng(1)
        a = rng.uniform(-8, 8, 10 ** 5) + 1j * rng.uniform(-8, 8, 10 ** 5)
        shifts = rng.integers(-5, 6, 10 ** 5) + 1j * rng.integers(-5, 6, 10 ** 5)
        err = np.abs(mod_lattice(a + 2.0 * shifts, 2.0) - mod_lattice(a, 2.0))
        assert float(err.max()) <= 1e-9

    def test_idempotence_exact(self):
        rng = np.random.default_rng(2)
        a = rng.uniform(-20, 20, 10 ** 5) + 1j * rng.uniform(-20, 20, 10 ** 5)
        r = mod_lattice(a, 2.0)
        assert np.array_equal(mod_lattice(r, 2.0), r)

    def test_scalar_in_scalar_out(self):
        out = mod_lattice(3.7, 2.0)
        assert isinstance(out, complex)

    def test_rejects_bad_delta(self):
        with pytest.raises(ValueError):
            mod_lattice(1.0, 0.0)
        with pytest.raises(ValueError):
            mod_lattice(1.0, -2.0)


class TestQuantizeFine:
    def test_examples(self):
        assert quantize_fine(0.43 - 0.9j, CFG) == 0.5 - 0.5j
        assert quantize_fine(0.0, CFG) == pytest.approx(0.5 + 0.5j)  # round-half-even at -0.5 ties up
        assert quantize_fine(-1.2 + 2.6j, CFG) == -1.5 + 2.5j

    def test_grid_membership(self):
        rng = np.random.default_rng(3)
        a = rng.uniform(-6, 6, 10 ** 4) + 1j * rng.uniform(-6, 6, 10 ** 4)
        q = quantize_fine(a, CFG)
        # every output sits on the offset integer grid
        assert np.allclose((q.real - 0.5) % 1.0, 0.0, atol=1e-12)
        assert np.allclose((q.imag - 0.5) % 1.0, 0.0, atol=1e-12)

    def test_matches_brute_force(self):
        # independent oracle: explicit nearest-point search over a grid window
        rng = np.random.default_rng(4)
        n = 10 ** 5
        a = rng.uniform(-4, 4, n) + 1j * rng.uniform(-4, 4, n)
        levels = np.arange(-10, 11) + 0.5  # fine grid levels per dimension
        dist_re = np.abs(a.real[:, None] - levels[None, :])
        dist_im = np.abs(a.imag[:, None] - levels[None, :])
        near_re = levels[np.argmin(dist_re, axis=1)]
        near_im = levels[np.argmin(dist_im, axis=1)]
        sorted_re = np.sort(dist_re, axis=1)
        sorted_im = np.sort(dist_im, axis=1)
        tie = (sorted_re[:, 1] - sorted_re[:, 0] < 1e-9) | (sorted_im[:, 1] - sorted_im[:, 0] < 1e-9)
        q = quantize_fine(a, CFG)
        ok = ~tie
        assert np.allclose(q.real[ok], near_re[ok], atol=1e-12)
        assert np.allclose(q.imag[ok], near_im[ok], atol=1e-12)


class TestConstellations:
    def test_data_points_exact(self):
        assert DATA_C.kind == DATA
        # canonical order: row-major over (imag, real)
        expected = np.array([-0.5 - 0.5j, 0.5 - 0.5j, -0.5 + 0.5j, 0.5 + 0.5j])
        assert np.array_equal(DATA_C.points, expected)

    def test_computing_points(self):
        assert COMP_C.kind == COMPUTING
        r = math.sqrt(0.5)
        expected = np.array([-r * 1j, r, -r, r * 1j])
        assert np.allclose(COMP_C.points, expected, atol=1e-12)
        assert len(COMP_C) == 4
        assert COMP_C.bit_labels == ()

    def test_rotation_preserves_power(self):
        assert np.mean(np.abs(DATA_C.points) ** 2) == pytest.approx(0.5, abs=1e-12)
        assert np.mean(np.abs(COMP_C.points) ** 2) == pytest.approx(0.5, abs=1e-12)
        assert np.allclose(np.abs(COMP_C.points), np.abs(DATA_C.points), atol=1e-12)

    def test_points_read_only(self):
        with pytest.raises(ValueError):
            DATA_C.points[0] = 0.0

    def test_sixteen_point_cell_and_power(self):
        cfg = LatticeConfig(2.0, 16)
        data, comp = build_constellations(cfg)
        assert len(data) == 16
        assert np.all(np.abs(data.points.real) <= 1.0 - 1e-12)
        assert np.all(np.abs(data.points.imag) <= 1.0 - 1e-12)
        # 4-level offset grid {-0.75,-0.25,0.25,0.75} per dimension
        assert np.mean(np.abs(data.points) ** 2) == pytest.approx(0.625, abs=1e-12)

    def test_gray_labels_roundtrip(self):
        for c in (DATA_C, build_constellations(LatticeConfig(2.0, 16))[0]):
            for bits in c.bit_labels:
                assert symbol_to_bits(bits_to_symbol(bits, c), c) == bits

    def test_gray_adjacent_levels_differ_by_one_bit(self):
        data, _ = build_constellations(LatticeConfig(2.0, 16))
        pts = data.points
        labels = label_bits(data)
        for i in range(len(pts)):
            for k in range(len(pts)):
                d = pts[i] - pts[k]
                if abs(d) == pytest.approx(0.5, abs=1e-12):  # nearest neighbours
                    assert int(np.sum(labels[i] != labels[k])) == 1

    def test_bit_mapping_examples(self):
        assert bits_to_symbol("11", DATA_C) == 0.5 + 0.5j
        assert bits_to_symbol("00", DATA_C) == -0.5 - 0.5j
        assert bits_to_symbol("10", DATA_C) == 0.5 - 0.5j
        assert symbol_to_bits(-0.5 + 0.5j, DATA_C) == "01"

    def test_symbol_to_bits_rejects_off_constellation(self):
        with pytest.raises(ValueError):
            symbol_to_bits(0.4 + 0.5j, DATA_C)
        with pytest.raises(ValueError):
            bits_to_symbol("011", DATA_C)
        with pytest.raises(ValueError):
            symbol_to_bits(0.5 + 0.5j, COMP_C)


class TestHardDecide:
    def test_examples(self):
        idx, pt = hard_decide(0.9 + 0.1j, DATA_C)
        assert (idx, pt) == (3, 0.5 + 0.5j)
        idx, pt = hard_decide(-0.4 - 10.0j, DATA_C)
        assert (idx, pt) == (0, -0.5 - 0.5j)

    def test_tie_takes_lowest_index(self):
        idx, pt = hard_decide(0.0, DATA_C)
        assert idx == 0 and pt == -0.5 - 0.5j

    def test_array_form(self):
        idx, pts = hard_decide(np.array([0.6 + 0.6j, -0.6 + 0.4j]), DATA_C)
        assert np.array_equal(idx, [3, 2])
        assert np.array_equal(pts, [0.5 + 0.5j, -0.5 + 0.5j])

    def test_computing_constellation(self):
        idx, pt = hard_decide(0.6 + 0.05j, COMP_C)
        assert pt == COMP_C.points[1]
        assert idx == 1


class TestInterferenceRemoval:
    def test_exhaustive_pairs_exact(self):
        # mod(mod(v - s) + s) == v for every (data, computing) pair
        for v in DATA_C.points:
            for s in COMP_C.points:
                folded = mod_lattice(mod_lattice(v - s, CFG.delta) + s, CFG.delta)
                assert folded == v

    def test_random_samples(self):
        rng = np.random.default_rng(5)
        n = 10 ** 5
        v = DATA_C.points[rng.integers(0, 4, n)]
        s = COMP_C.points[rng.integers(0, 4, n)]
        folded = mod_lattice(mod_lattice(v - s, CFG.delta) + s, CFG.delta)
        assert float(np.abs(folded - v).max()) <= 1e-9
