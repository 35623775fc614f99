"""
Unit tests for the reference DFT and the radix-2 FFT.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_almost_equal

from conftest import dft_matrix, random_buffer
from scbench.errors import InvalidArgumentError, UnsupportedSizeError
from scbench.transforms import (
    OpCounter,
    as_buffer,
    dft_forward,
    dft_inverse,
    fft_forward,
    fft_inverse,
    is_power_of_two,
)


class TestOpCounter:
    def test_add_and_total(self):
        c = OpCounter()
        c.add(mults=3, adds=4)
        c.add(adds=1)
        assert c.snapshot() == (3, 5)
        assert c.total == 8

    def test_merge_and_reset(self):
        a, b = OpCounter(2, 2), OpCounter(5, 7)
        a.merge(b)
        assert (a.complex_mults, a.complex_adds) == (7, 9)
        a.reset()
        assert a.total == 0

    def test_negative_increment_rejected(self):
        with pytest.raises(InvalidArgumentError):
            OpCounter().add(mults=-1)


class TestAsBuffer:
    def test_converts_real_list(self):
        buf = as_buffer([1, 2, 3])
        assert buf.dtype == np.complex128
        assert_array_almost_equal(buf, [1, 2, 3])

    @pytest.mark.parametrize("bad", [[], [[1, 2], [3, 4]], [1, np.nan], [np.inf]])
    def test_rejects_invalid_input(self, bad):
        with pytest.raises(InvalidArgumentError):
            as_buffer(bad)

    def test_empty_transform_input(self):
        with pytest.raises(InvalidArgumentError):
            dft_forward([])
        with pytest.raises(InvalidArgumentError):
            dft_inverse([])

    def test_power_of_two(self):
        assert [n for n in range(1, 20) if is_power_of_two(n)] == [1, 2, 4, 8, 16]
        assert not is_power_of_two(0)


class TestDft:
    def test_constant_signal(self):
        assert_allclose(dft_forward([1, 1]), [2, 0], atol=1e-12)

    def test_impulse_gives_flat_spectrum(self):
        assert_allclose(dft_forward([1, 0, 0, 0]), [1, 1, 1, 1], atol=1e-12)

    def test_inverse_of_constant(self):
        assert_allclose(dft_inverse([2, 0]), [1, 1], atol=1e-12)

    def test_matches_direct_summation(self, rng):
        x = random_buffer(rng, 8)
        expected = dft_matrix(8) @ x
        assert np.max(np.abs(dft_forward(x) - expected)) < 1e-10

    def test_inverse_matches_conjugate_trick(self, rng):
        x = random_buffer(rng, 12)
        expected = np.conj(dft_matrix(12) @ np.conj(x)) / 12
        assert np.max(np.abs(dft_inverse(x) - expected)) < 1e-10

    def test_round_trip(self, rng):
        x = random_buffer(rng, 16)
        assert np.max(np.abs(dft_forward(dft_inverse(x)) - x)) < 1e-10
        assert np.max(np.abs(dft_inverse(dft_forward(x)) - x)) < 1e-10

    def test_unnormalized_inverse(self, rng):
        x = random_buffer(rng, 6)
        assert_allclose(dft_inverse(x, normalize=False), 6 * dft_inverse(x), atol=1e-12)

    @pytest.mark.parametrize("n", [1, 3, 8, 12])
    def test_counts_n_squared(self, rng, n):
        counter = OpCounter()
        dft_forward(random_buffer(rng, n), counter)
        assert counter.complex_mults == n * n
        assert counter.complex_adds == n * n

    def test_normalization_not_counted(self, rng):
        a, b = OpCounter(), OpCounter()
        x = random_buffer(rng, 8)
        dft_inverse(x, a)
        dft_inverse(x, b, normalize=False)
        assert a.snapshot() == b.snapshot() == (64, 64)


class TestFft:
    def test_single_point_is_identity(self):
        assert_allclose(fft_forward([5 + 3j]), [5 + 3j])

    def test_small_matches_dft(self, rng):
        x = random_buffer(rng, 4)
        assert np.max(np.abs(fft_forward(x) - dft_forward(x))) < 1e-10

    def test_large_matches_reference(self, rng):
        x = random_buffer(rng, 1024)
        assert np.max(np.abs(fft_forward(x) - dft_matrix(1024) @ x)) < 1e-8

    def test_two_point_inverse(self):
        assert_allclose(fft_inverse([3, 1]), [2, 1], atol=1e-12)

    def test_inverse_matches_dft_inverse(self, rng):
        x = random_buffer(rng, 64)
        assert np.max(np.abs(fft_inverse(x) - dft_inverse(x))) < 1e-10

    def test_round_trip(self, rng):
        x = random_buffer(rng, 256)
        assert np.max(np.abs(fft_inverse(fft_forward(x)) - x)) < 1e-9

    @pytest.mark.parametrize("n", [3, 6, 12, 100])
    def test_rejects_non_power_of_two(self, n):
        with pytest.raises(UnsupportedSizeError, match=r"FFT requires N = 2\^i"):
            fft_forward(np.ones(n))
        with pytest.raises(UnsupportedSizeError):
            fft_inverse(np.ones(n))

    @pytest.mark.parametrize("exponent", [0, 1, 3, 6, 10])
    def test_operation_counts(self, rng, exponent):
        n = 2 ** exponent
        counter = OpCounter()
        fft_forward(random_buffer(rng, n), counter)
        assert counter.complex_mults == (n // 2) * exponent
        assert counter.complex_adds == n * exponent


class TestOracleEquivalence:
    @pytest.mark.parametrize("exponent", range(13))
    def test_fft_matches_oracle(self, rng, exponent):
        n = 2 ** exponent
        for _ in range(50):
            x = random_buffer(rng, n)
            expected = dft_matrix(n) @ x if n <= 1024 else np.fft.fft(x)
            assert np.max(np.abs(fft_forward(x) - expected)) < 1e-9


class TestTransformProperties:
    TRANSFORMS = [
        (dft_forward, dft_inverse),
        (fft_forward, fft_inverse),
    ]

    @pytest.mark.parametrize("forward,inverse", TRANSFORMS)
    def test_parseval(self, rng, forward, inverse):
        for _ in range(1000):
            n = 2 ** int(rng.integers(0, 6))
            x = random_buffer(rng, n)
            energy_time = np.sum(np.abs(x) ** 2)
            energy_freq = np.sum(np.abs(forward(x)) ** 2) / n
            assert abs(energy_time - energy_freq) <= 1e-9 * energy_time

    @pytest.mark.parametrize("forward,inverse", TRANSFORMS)
    def test_linearity(self, rng, forward, inverse):
        for _ in range(1000):
            n = 2 ** int(rng.integers(0, 6))
            x, y = random_buffer(rng, n), random_buffer(rng, n)
            a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
            lhs = forward(a * x + b * y)
            rhs = a * forward(x) + b * forward(y)
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    @pytest.mark.parametrize("forward,inverse", TRANSFORMS)
    def test_round_trip_identity(self, rng, forward, inverse):
        for _ in range(1000):
            n = 2 ** int(rng.integers(0, 6))
            x = random_buffer(rng, n)
            assert np.max(np.abs(forward(inverse(x)) - x)) < 1e-9
