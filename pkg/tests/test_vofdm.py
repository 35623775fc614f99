"""
Unit tests for vector blocks and the parameterized DFT.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import random_buffer
from scbench.errors import InvalidArgumentError, InvalidSpecError
from scbench.transforms import OpCounter, dft_forward, dft_inverse
from scbench.vofdm import (
    Direction,
    SymbolSpec,
    VectorBlocks,
    from_blocks,
    pdft_forward,
    pdft_inverse,
    pdft_l2,
    to_blocks,
)


def block_sum_oracle(x: np.ndarray, l_blocks: int) -> np.ndarray:
    """y[q·M+m] = (1/L)·Σ_l x[l·M+m]·e^{+j2πql/L}, evaluated as a matrix product"""
    blocks = x.reshape(l_blocks, -1)
    q = np.arange(l_blocks)
    w = np.exp(2j * np.pi * np.outer(q, q) / l_blocks)
    return (w @ blocks).reshape(-1) / l_blocks


class TestSymbolSpec:
    def test_block_len_derived(self):
        spec = SymbolSpec.from_n(12, 4)
        assert spec.block_len == 3

    @pytest.mark.parametrize("n,l_blocks", [(5, 2), (4, 0), (4, 5), (0, 1), (100000, 3)])
    def test_invalid_numerology(self, n, l_blocks):
        with pytest.raises(InvalidSpecError):
            SymbolSpec.from_n(n, l_blocks)

    def test_block_len_mismatch(self):
        with pytest.raises(InvalidSpecError):
            SymbolSpec(n=12, l_blocks=4, block_len=4)

    def test_frozen(self):
        spec = SymbolSpec.from_n(4, 2)
        with pytest.raises(AttributeError):
            spec.n = 8


class TestBlocks:
    def test_to_blocks_two_blocks(self):
        vb = to_blocks([1, 2, 3, 4], SymbolSpec.from_n(4, 2))
        assert_array_equal(vb.blocks, [[1, 2], [3, 4]])

    def test_to_blocks_three_blocks(self):
        vb = to_blocks(np.arange(1, 7), SymbolSpec.from_n(6, 3))
        assert_array_equal(vb.blocks, [[1, 2], [3, 4], [5, 6]])

    def test_from_blocks(self):
        spec = SymbolSpec.from_n(4, 2)
        vb = VectorBlocks(spec=spec, blocks=np.array([[1, 2], [3, 4]], dtype=complex))
        assert_array_equal(from_blocks(vb), [1, 2, 3, 4])

    def test_single_sample_blocks(self):
        spec = SymbolSpec.from_n(3, 3)
        vb = VectorBlocks(spec=spec, blocks=np.array([[1j], [2j], [3j]]))
        assert_array_equal(from_blocks(vb), [1j, 2j, 3j])

    @pytest.mark.parametrize("n,l_blocks", [(8, 2), (12, 3), (156, 3), (20, 20)])
    def test_round_trip(self, rng, n, l_blocks):
        spec = SymbolSpec.from_n(n, l_blocks)
        x = random_buffer(rng, n)
        assert_array_equal(from_blocks(to_blocks(x, spec)), x)

    def test_length_mismatch(self):
        with pytest.raises(InvalidSpecError):
            to_blocks([1, 2, 3], SymbolSpec.from_n(4, 2))

    def test_wrong_block_shape(self):
        with pytest.raises(InvalidSpecError):
            VectorBlocks(spec=SymbolSpec.from_n(4, 2), blocks=np.zeros((4, 1)))


class TestPdftInverse:
    @pytest.mark.parametrize("n,l_blocks", [(4, 2), (6, 3), (12, 4), (156, 3), (1024, 1024), (1024, 1)])
    def test_matches_block_sums(self, rng, n, l_blocks):
        x = random_buffer(rng, n)
        out = pdft_inverse(x, SymbolSpec.from_n(n, l_blocks))
        assert np.max(np.abs(out - block_sum_oracle(x, l_blocks))) < 1e-9

    def test_single_block_is_identity(self, rng):
        x = random_buffer(rng, 10)
        assert_allclose(pdft_inverse(x, SymbolSpec.from_n(10, 1)), x, atol=1e-12)

    def test_one_sample_per_block_is_idft(self, rng):
        x = random_buffer(rng, 24)
        out = pdft_inverse(x, SymbolSpec.from_n(24, 24))
        assert np.max(np.abs(out - dft_inverse(x))) < 1e-9

    def test_unnormalized_two_blocks(self):
        out = pdft_inverse([1, 2, 3, 4], SymbolSpec.from_n(4, 2), normalize=False)
        assert_allclose(out, [4, 6, -2, -2], atol=1e-12)

    def test_normalized_two_blocks(self):
        out = pdft_inverse([1, 2, 3, 4], SymbolSpec.from_n(4, 2))
        assert_allclose(out, [2, 3, -1, -1], atol=1e-12)

    @pytest.mark.parametrize("n,l_blocks", [(4, 2), (12, 3), (12, 4), (30, 5), (16, 16), (7, 1)])
    def test_counts_l_squared_m(self, rng, n, l_blocks):
        counter = OpCounter()
        pdft_inverse(random_buffer(rng, n), SymbolSpec.from_n(n, l_blocks), counter)
        assert counter.complex_mults == l_blocks * l_blocks * (n // l_blocks)
        assert counter.complex_adds == l_blocks * l_blocks * (n // l_blocks)

    def test_length_must_match_symbol(self):
        with pytest.raises(InvalidSpecError):
            pdft_inverse(np.ones(6), SymbolSpec.from_n(4, 2))


class TestPdftForward:
    def test_round_trip_flexible_numerology(self, rng):
        spec = SymbolSpec.from_n(156, 3)
        x = random_buffer(rng, 156)
        assert np.max(np.abs(pdft_forward(pdft_inverse(x, spec), spec) - x)) < 1e-9

    def test_one_sample_per_block_is_dft(self, rng):
        x = random_buffer(rng, 16)
        out = pdft_forward(x, SymbolSpec.from_n(16, 16))
        assert np.max(np.abs(out - dft_forward(x))) < 1e-9

    def test_single_block_is_identity(self, rng):
        x = random_buffer(rng, 5)
        assert_allclose(pdft_forward(x, SymbolSpec.from_n(5, 1)), x, atol=1e-12)

    def test_linearity(self, rng):
        spec = SymbolSpec.from_n(60, 5)
        for _ in range(1000):
            x, y = random_buffer(rng, 60), random_buffer(rng, 60)
            a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
            lhs = pdft_forward(a * x + b * y, spec)
            rhs = a * pdft_forward(x, spec) + b * pdft_forward(y, spec)
            assert np.max(np.abs(lhs - rhs)) < 1e-9


class TestBlockOrderIndependence:
    def test_any_schedule_gives_identical_output(self, rng):
        for _ in range(1000):
            l_blocks = int(rng.integers(1, 6))
            m = int(rng.integers(1, 8))
            spec = SymbolSpec.from_n(l_blocks * m, l_blocks)
            x = random_buffer(rng, spec.n)
            schedule = rng.permutation(m)
            assert_array_equal(pdft_inverse(x, spec, schedule=schedule), pdft_inverse(x, spec))

    @pytest.mark.parametrize("workers", [2, 3, 8])
    def test_parallel_matches_serial(self, rng, workers):
        spec = SymbolSpec.from_n(96, 3)
        x = random_buffer(rng, 96)
        serial, parallel = OpCounter(), OpCounter()
        expected = pdft_inverse(x, spec, serial)
        out = pdft_inverse(x, spec, parallel, workers=workers)
        assert_array_equal(out, expected)
        assert parallel.snapshot() == serial.snapshot()

    def test_schedule_must_be_permutation(self):
        spec = SymbolSpec.from_n(6, 2)
        with pytest.raises(InvalidArgumentError):
            pdft_inverse(np.ones(6), spec, schedule=[0, 0, 1])

    def test_workers_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            pdft_inverse(np.ones(4), SymbolSpec.from_n(4, 2), workers=0)


class TestMultiplierlessPath:
    def test_two_block_example(self):
        assert_allclose(pdft_l2([1, 2, 3, 4], normalize=False), [4, 6, -2, -2])
        assert_allclose(pdft_l2([1, 2, 3, 4]), [2, 3, -1, -1])

    @pytest.mark.parametrize("n", [2, 4, 10, 1000, 2 ** 18])
    def test_no_multiplications(self, n):
        counter = OpCounter()
        pdft_l2(np.ones(n), counter=counter)
        assert counter.complex_mults == 0
        assert counter.complex_adds == n

    def test_matches_generic_path(self, rng):
        for _ in range(100):
            n = 2 * int(rng.integers(1, 40))
            spec = SymbolSpec.from_n(n, 2)
            x = random_buffer(rng, n)
            assert np.max(np.abs(pdft_l2(x) - pdft_inverse(x, spec))) < 1e-12
            assert np.max(np.abs(pdft_l2(x, Direction.FORWARD) - pdft_forward(x, spec))) < 1e-12

    def test_direction_as_string(self, rng):
        x = random_buffer(rng, 8)
        assert_array_equal(pdft_l2(x, "forward"), pdft_l2(x, Direction.FORWARD))

    def test_odd_length_rejected(self):
        with pytest.raises(InvalidSpecError):
            pdft_l2([1, 2, 3])
