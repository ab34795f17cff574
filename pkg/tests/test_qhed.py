import numpy as np
import pytest

from qimedge.encoders import GrayImage
from qimedge.errors import ContractError, MeasurementError, ValidationError
from qimedge.qhed import (
    DifferenceGrid,
    PipelineConfig,
    ScanDirection,
    extract_differences,
    frqi_measure_and_prepare,
    qhed_core,
    scan_frqi,
    scan_qpie,
)
from qimedge.statevector import StateVector

H = ScanDirection.HORIZONTAL
V = ScanDirection.VERTICAL


def gray(values):
    return GrayImage(np.asarray(values, dtype=float))


def random_image(rng, side, lo=0.0, hi=1.0):
    img = rng.uniform(lo, hi, (side, side))
    if img.max() == 0.0:
        img[0, 0] = 0.5
    return GrayImage(img)


def core_formula(c):
    """Oracle: neighbor sums and differences interleaved, cyclic."""
    nxt = np.roll(c, -1)
    out = np.empty(2 * c.size)
    out[0::2] = (c + nxt) / 2
    out[1::2] = (c - nxt) / 2
    return out


def diff_oracle(img, direction, boundary_mode):
    """Oracle: differences computed straight from the pixels."""
    mat = img.pixels.T if direction is V else img.pixels
    c = mat.ravel() / np.linalg.norm(mat)
    d = ((c - np.roll(c, -1)) / 2).reshape(mat.shape)
    if boundary_mode == "clipped":
        d[:, -1] = 0.0
    return d.T if direction is V else d


class TestQhedCore:
    def test_four_pixel_pattern(self):
        c = np.array([0.1, 0.5, 0.3, np.sqrt(1 - 0.35)])
        state = qhed_core(StateVector(2, c.astype(complex)))
        expected = [
            (c[0] + c[1]) / 2, (c[0] - c[1]) / 2,
            (c[1] + c[2]) / 2, (c[1] - c[2]) / 2,
            (c[2] + c[3]) / 2, (c[2] - c[3]) / 2,
            (c[3] + c[0]) / 2, (c[3] - c[0]) / 2,
        ]
        np.testing.assert_allclose(state.amplitudes.real, expected, rtol=0.0, atol=1e-12)

    def test_uniform_input_has_zero_differences(self):
        state = qhed_core(StateVector(2, np.full(4, 0.5, dtype=complex)))
        np.testing.assert_allclose(state.amplitudes.real[1::2], 0.0, atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_formula_oracle_random(self, n):
        rng = np.random.default_rng(n)
        for _ in range(20):
            c = rng.uniform(0, 1, 4**n)
            c /= np.linalg.norm(c)
            state = qhed_core(StateVector(2 * n, c.astype(complex)))
            np.testing.assert_allclose(
                state.amplitudes.real, core_formula(c), rtol=0.0, atol=1e-12
            )

    def test_paper_literal_moves_differences_to_even_slots(self):
        c = np.array([0.1, 0.5, 0.3, np.sqrt(1 - 0.35)])
        plus = qhed_core(StateVector(2, c.astype(complex)), ancilla="plus")
        lit = qhed_core(StateVector(2, c.astype(complex)), ancilla="paper-literal")
        np.testing.assert_allclose(
            lit.amplitudes.real[0::2], -plus.amplitudes.real[1::2], atol=1e-12
        )
        np.testing.assert_allclose(
            lit.amplitudes.real[1::2], -plus.amplitudes.real[0::2], atol=1e-12
        )


class TestExtractDifferences:
    def test_clipped_two_by_two(self):
        c = np.array([0.1, 0.5, 0.3, np.sqrt(1 - 0.35)])
        state = qhed_core(StateVector(2, c.astype(complex)))
        grid = extract_differences(state, 2, H, "clipped")
        expected = np.array([[(c[0] - c[1]) / 2, 0.0], [(c[2] - c[3]) / 2, 0.0]])
        np.testing.assert_allclose(grid.values, expected, atol=1e-12)

    def test_cyclic_keeps_wrap_term(self):
        c = np.array([0.1, 0.5, 0.3, np.sqrt(1 - 0.35)])
        state = qhed_core(StateVector(2, c.astype(complex)))
        grid = extract_differences(state, 2, H, "cyclic")
        expected = ((c - np.roll(c, -1)) / 2).reshape(2, 2)
        np.testing.assert_allclose(grid.values, expected, atol=1e-12)

    def test_wrong_size_rejected(self):
        state = qhed_core(StateVector(2, np.full(4, 0.5, dtype=complex)))
        with pytest.raises(ContractError):
            extract_differences(state, 4, H)

    def test_imaginary_parts_rejected(self):
        amps = np.full(8, np.sqrt(1 / 8) * 1j)
        with pytest.raises(ContractError):
            extract_differences(StateVector(3, amps), 2, H)


class TestScanQpie:
    def test_constant_rows_horizontal(self):
        grid = scan_qpie(gray([[1, 1], [0, 0]]), H, "clipped")
        np.testing.assert_allclose(grid.values, 0.0, atol=1e-12)

    def test_constant_rows_vertical(self):
        grid = scan_qpie(gray([[1, 1], [0, 0]]), V, "clipped")
        c = 2**-0.5
        np.testing.assert_allclose(grid.values, [[c / 2, c / 2], [0, 0]], atol=1e-12)

    def test_striped_columns_horizontal(self):
        grid = scan_qpie(gray([[1, 0], [1, 0]]), H, "clipped")
        c = 2**-0.5
        np.testing.assert_allclose(grid.values, [[c / 2, 0], [c / 2, 0]], atol=1e-12)

    def test_constant_image_zero_grid(self):
        for direction in (H, V):
            grid = scan_qpie(gray(np.full((4, 4), 0.6)), direction)
            np.testing.assert_allclose(grid.values, 0.0, atol=1e-12)

    @pytest.mark.parametrize("direction", [H, V])
    @pytest.mark.parametrize("boundary", ["clipped", "cyclic"])
    def test_matches_pixel_oracle(self, direction, boundary):
        rng = np.random.default_rng(17)
        for n in (1, 2, 3):
            img = random_image(rng, 1 << n)
            grid = scan_qpie(img, direction, boundary)
            np.testing.assert_allclose(
                grid.values, diff_oracle(img, direction, boundary), rtol=0.0, atol=1e-10
            )

    def test_transpose_duality(self):
        rng = np.random.default_rng(23)
        img = random_image(rng, 8)
        vert = scan_qpie(img, V)
        horiz_of_t = scan_qpie(img.transpose(), H)
        np.testing.assert_array_equal(vert.values, horiz_of_t.values.T)


class TestFrqiMeasureAndPrepare:
    def test_uniform_intensity_branch_probabilities(self):
        img = gray(np.full((2, 2), 0.5))  # angles are all pi/3
        rec, state = frqi_measure_and_prepare(img, "forced-0")
        assert abs(rec.probability - 0.25) < 1e-12
        np.testing.assert_allclose(state.amplitudes.real, 0.5, atol=1e-10)

    def test_binary_image_branch0_support(self):
        img = gray([[1, 0], [0, 1]])
        rec, state = frqi_measure_and_prepare(img, "forced-0")
        np.testing.assert_allclose(
            state.amplitudes.real, [2**-0.5, 0, 0, 2**-0.5], atol=1e-10
        )
        rec, state = frqi_measure_and_prepare(img, "forced-1")
        np.testing.assert_allclose(
            state.amplitudes.real, [0, 2**-0.5, 2**-0.5, 0], atol=1e-10
        )

    def test_branch_states_match_collapse_formulas(self):
        rng = np.random.default_rng(31)
        img = random_image(rng, 4, 0.05, 0.95)
        cos_amp = img.flat()
        sin_amp = np.sqrt(1 - cos_amp**2)
        rec0, s0 = frqi_measure_and_prepare(img, "forced-0")
        rec1, s1 = frqi_measure_and_prepare(img, "forced-1")
        np.testing.assert_allclose(
            s0.amplitudes.real, cos_amp / np.linalg.norm(cos_amp), atol=1e-10
        )
        np.testing.assert_allclose(
            s1.amplitudes.real, sin_amp / np.linalg.norm(sin_amp), atol=1e-10
        )
        assert abs(rec0.probability - np.sum(cos_amp**2) / 16) < 1e-12
        assert abs(rec1.probability - np.sum(sin_amp**2) / 16) < 1e-12
        assert abs(rec0.probability + rec1.probability - 1.0) < 1e-12

    def test_impossible_branch(self):
        with pytest.raises(MeasurementError):
            frqi_measure_and_prepare(gray(np.ones((2, 2))), "forced-1")


class TestScanFrqi:
    def test_binary_branch0_equals_qpie(self):
        img = gray([[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
        cfg = PipelineConfig(branch_policy="forced-0")
        for direction in (H, V):
            frqi_grid, rec = scan_frqi(img, direction, cfg)
            assert rec.outcome == 0
            qpie_grid = scan_qpie(img, direction)
            np.testing.assert_allclose(
                frqi_grid.values, qpie_grid.values, rtol=0.0, atol=1e-10
            )

    def test_binary_branch1_flips_signs(self):
        img = gray([[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
        g0, _ = scan_frqi(img, H, PipelineConfig(branch_policy="forced-0"))
        g1, _ = scan_frqi(img, H, PipelineConfig(branch_policy="forced-1"))
        np.testing.assert_array_equal(np.sign(g1.values), -np.sign(g0.values))
        np.testing.assert_array_equal(g0.values != 0, g1.values != 0)

    def test_constant_image_zero_grid_both_branches(self):
        img = gray(np.full((4, 4), 0.7))
        for policy in ("forced-0", "forced-1"):
            grid, _ = scan_frqi(img, H, PipelineConfig(branch_policy=policy))
            np.testing.assert_allclose(grid.values, 0.0, atol=1e-12)

    def test_branch_locations_agree_on_interior_images(self):
        rng = np.random.default_rng(37)
        levels = np.linspace(0.05, 0.95, 7)
        for _ in range(5):
            img = GrayImage(rng.choice(levels, size=(8, 8)))
            for direction in (H, V):
                g0, _ = scan_frqi(img, direction, PipelineConfig(branch_policy="forced-0"))
                g1, _ = scan_frqi(img, direction, PipelineConfig(branch_policy="forced-1"))
                np.testing.assert_array_equal(
                    np.abs(g0.values) > 1e-13, np.abs(g1.values) > 1e-13
                )

    def test_transpose_duality(self):
        rng = np.random.default_rng(41)
        img = random_image(rng, 8, 0.05, 0.95)
        cfg = PipelineConfig()
        vert, _ = scan_frqi(img, V, cfg)
        horiz_of_t, _ = scan_frqi(img.transpose(), H, cfg)
        np.testing.assert_array_equal(vert.values, horiz_of_t.values.T)

    def test_sampled_policy_is_deterministic(self):
        rng = np.random.default_rng(43)
        img = random_image(rng, 4, 0.2, 0.8)
        cfg = PipelineConfig(branch_policy="sampled", seed=7)
        a = scan_frqi(img, H, cfg)
        b = scan_frqi(img, H, cfg)
        assert a[1] == b[1]
        np.testing.assert_array_equal(a[0].values, b[0].values)

    def test_paper_literal_grid_is_negated(self):
        img = gray([[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
        plus, _ = scan_frqi(img, H, PipelineConfig(branch_policy="forced-0"))
        lit, _ = scan_frqi(
            img, H, PipelineConfig(branch_policy="forced-0", ancilla="paper-literal")
        )
        np.testing.assert_allclose(lit.values, -plus.values, atol=1e-12)


class TestDifferenceGrid:
    def test_clipped_invariant_enforced(self):
        bad = np.ones((2, 2))
        with pytest.raises(ValidationError):
            DifferenceGrid(bad, H, "clipped")

    def test_bad_boundary_mode(self):
        with pytest.raises(ValidationError):
            DifferenceGrid(np.zeros((2, 2)), H, "wrapped")

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            PipelineConfig(method="sobel")
        with pytest.raises(ValidationError):
            PipelineConfig(boundary_mode="torus")
        with pytest.raises(ValidationError):
            PipelineConfig(ancilla="minus")
