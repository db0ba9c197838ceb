import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensixfft import (
    ComplexBuffer,
    FftDims,
    bit_reverse_indices,
    bit_reverse_permute,
    dft2d_oracle,
    dft_oracle,
    fft_reference,
    ifft_reference,
    random_buffer,
    rel_l2_error,
    twiddle_table,
)
from tensixfft.errors import InvalidDimensionError

sizes = st.sampled_from([2, 4, 8, 16, 64, 256])


def buffers(n):
    return ComplexBuffer(
        np.random.default_rng(n).uniform(-1, 1, n).astype(np.float32),
        np.random.default_rng(n + 1).uniform(-1, 1, n).astype(np.float32),
    )


class TestDftOracle:
    def test_delta_transforms_to_constant(self):
        out = dft_oracle(ComplexBuffer([1, 0, 0, 0], [0, 0, 0, 0]))
        np.testing.assert_array_equal(out.re, [1, 1, 1, 1])
        np.testing.assert_array_equal(out.im, [0, 0, 0, 0])

    def test_constant_transforms_to_scaled_delta(self):
        out = dft_oracle(ComplexBuffer([1, 1, 1, 1], [0, 0, 0, 0]))
        np.testing.assert_allclose(out.re, [4, 0, 0, 0], atol=1e-6)
        np.testing.assert_allclose(out.im, [0, 0, 0, 0], atol=1e-6)

    def test_alternating_signal(self):
        # X[k] = sum of e^(-2*pi*i*k*n/4) over n in {1, 3}: evaluating the
        # series by hand gives [2, 0, -2, 0] on the real axis.
        out = dft_oracle(ComplexBuffer([0, 1, 0, 1], [0, 0, 0, 0]))
        np.testing.assert_allclose(out.re, [2, 0, -2, 0], atol=1e-6)
        np.testing.assert_allclose(out.im, [0, 0, 0, 0], atol=1e-6)

    def test_any_length_accepted(self):
        out = dft_oracle(ComplexBuffer([1.0, 2.0, 3.0], [0.0, 0.0, 0.0]))
        assert out.n == 3

    def test_matches_numpy_fft(self):
        x = buffers(128)
        ours = dft_oracle(x).to_complex()
        theirs = np.fft.fft(x.to_complex())
        np.testing.assert_allclose(ours, theirs, rtol=1e-5, atol=1e-5)


class TestTwiddleTable:
    def test_n8_entries(self):
        t = twiddle_table(8)
        assert t.size == 4
        assert t.re[0] == 1.0 and t.im[0] == 0.0
        half_sqrt2 = np.float32(np.sqrt(2) / 2)
        assert t.re[1] == half_sqrt2 and t.im[1] == -half_sqrt2
        assert abs(t.re[2]) < 1e-7 and t.im[2] == -1.0

    @pytest.mark.parametrize("n", [2, 8, 64, 1024])
    def test_unit_circle(self, n):
        t = twiddle_table(n)
        np.testing.assert_allclose(t.re**2 + t.im**2, 1.0, atol=1e-6)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidDimensionError):
            twiddle_table(12)


class TestBitReversal:
    def test_three_bit_reversal(self):
        idx = bit_reverse_indices(8)
        assert idx[6] == 3  # 110 -> 011
        assert idx[0] == 0

    def test_two_bit_swaps_middle_pair(self):
        buf = ComplexBuffer([0, 1, 2, 3], [0, 0, 0, 0])
        out = bit_reverse_permute(buf)
        np.testing.assert_array_equal(out.re, [0, 2, 1, 3])

    @pytest.mark.parametrize("n", [2, 8, 64, 4096])
    def test_involution_and_bijection(self, n):
        idx = bit_reverse_indices(n)
        np.testing.assert_array_equal(np.sort(idx), np.arange(n))
        np.testing.assert_array_equal(idx[idx], np.arange(n))

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidDimensionError):
            bit_reverse_indices(6)


class TestFftDims:
    def test_second_element_strides_are_1_2_4(self):
        dims = FftDims(8)
        assert [dims.half_span(s) for s in range(3)] == [1, 2, 4]
        assert [dims.span(s) for s in range(3)] == [2, 4, 8]
        assert [dims.spectra_count(s) for s in range(3)] == [1, 2, 4]
        assert dims.num_steps_index == 2
        assert dims.num_steps == 3


def scalar_reference(buf):
    """Literal scalar transcription of the step/spectra/point loops, used
    as an independent check that vectorising the point loop is exact."""
    n = buf.n
    table = twiddle_table(n)
    perm = bit_reverse_permute(buf)
    re, im = perm.re.copy(), perm.im.copy()
    num_steps = n.bit_length() - 2
    for step in range(num_steps + 1):
        matching_second_point = 1 << step
        increment = 2 << step
        for spectra in range(1 << step):
            twiddle_index = spectra << (num_steps - step)
            w_re = table.re[twiddle_index]
            w_im = table.im[twiddle_index]
            for point in range(0, n, increment):
                d0 = spectra + point
                d1 = spectra + point + matching_second_point
                f0 = np.float32(re[d1] * w_re) - np.float32(im[d1] * w_im)
                f1 = np.float32(re[d1] * w_im) + np.float32(im[d1] * w_re)
                re[d1] = re[d0] - f0
                im[d1] = im[d0] - f1
                re[d0] = re[d0] + f0
                im[d0] = im[d0] + f1
    return ComplexBuffer(re, im)


class TestFftReference:
    def test_all_zero(self):
        out = fft_reference(ComplexBuffer.zeros(16))
        assert not out.re.any() and not out.im.any()

    def test_alternating_matches_oracle_values(self):
        out = fft_reference(ComplexBuffer([0, 1, 0, 1], [0, 0, 0, 0]))
        np.testing.assert_allclose(out.re, [2, 0, -2, 0], atol=1e-6)
        np.testing.assert_allclose(out.im, [0, 0, 0, 0], atol=1e-6)

    @pytest.mark.parametrize("n", [2, 8, 32, 128])
    def test_bitwise_equal_to_scalar_transcription(self, n):
        x = buffers(n)
        assert fft_reference(x).bitwise_equal(scalar_reference(x))

    @pytest.mark.parametrize("n,tol", [(8, 1e-5), (64, 1e-5), (1024, 1e-3), (16384, 1e-3)])
    def test_oracle_agreement(self, n, tol):
        x = random_buffer(n, seed=n)
        assert rel_l2_error(fft_reference(x), dft_oracle(x)) <= tol

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidDimensionError):
            fft_reference(ComplexBuffer([1, 2, 3], [0, 0, 0]))


class TestInverse:
    def test_round_trip_small(self):
        x = ComplexBuffer([1, 2, 3, 4], [0, 0, 0, 0])
        back = ifft_reference(fft_reference(x))
        np.testing.assert_allclose(back.re, x.re, rtol=1e-5, atol=1e-6)
        np.testing.assert_allclose(back.im, x.im, atol=1e-5)

    def test_zero(self):
        out = ifft_reference(ComplexBuffer.zeros(8))
        assert not out.re.any() and not out.im.any()

    def test_inverse_of_scaled_delta(self):
        out = ifft_reference(ComplexBuffer([4, 0, 0, 0], [0, 0, 0, 0]))
        np.testing.assert_allclose(out.re, [1, 1, 1, 1], atol=1e-6)


@settings(max_examples=60, deadline=None)
@given(n=sizes, seed=st.integers(0, 2**31))
def test_parseval(n, seed):
    x = random_buffer(n, seed)
    spectrum = fft_reference(x)
    time_energy = float(np.sum(x.to_complex().real**2 + x.to_complex().imag**2))
    freq_energy = float(np.sum(np.abs(spectrum.to_complex()) ** 2)) / n
    assert abs(time_energy - freq_energy) <= 1e-4 * max(time_energy, 1e-30)


@settings(max_examples=60, deadline=None)
@given(n=sizes, seed=st.integers(0, 2**31),
       a=st.floats(-2, 2, allow_nan=False), b=st.floats(-2, 2, allow_nan=False))
def test_linearity(n, seed, a, b):
    x = random_buffer(n, seed)
    y = random_buffer(n, seed + 1)
    mixed = ComplexBuffer(
        np.float32(a) * x.re + np.float32(b) * y.re,
        np.float32(a) * x.im + np.float32(b) * y.im,
    )
    lhs = fft_reference(mixed).to_complex()
    rhs = a * fft_reference(x).to_complex() + b * fft_reference(y).to_complex()
    scale = max(np.linalg.norm(rhs), 1e-6)
    assert np.linalg.norm(lhs - rhs) / scale <= 1e-4


@settings(max_examples=60, deadline=None)
@given(n=sizes, seed=st.integers(0, 2**31))
def test_round_trip(n, seed):
    x = random_buffer(n, seed)
    back = ifft_reference(fft_reference(x))
    assert rel_l2_error(back, x) <= 1e-4


class TestSeededInputs:
    def test_frozen_golden_values(self):
        # PCG64 with a fixed seed must reproduce these FP32 values on every
        # platform; they were recorded once from this generator.
        buf = random_buffer(8, seed=0)
        np.testing.assert_array_equal(
            buf.re[:4],
            np.array([0.2739233672618866, -0.46042656898498535,
                      -0.9180529713630676, -0.9669447541236877], np.float32),
        )
        np.testing.assert_array_equal(
            buf.im[:4],
            np.array([0.08724997937679291, 0.8701448440551758,
                      0.6317071318626404, -0.9945229887962341], np.float32),
        )

    def test_same_seed_same_values(self):
        assert random_buffer(64, 9).bitwise_equal(random_buffer(64, 9))
        assert not random_buffer(64, 9).bitwise_equal(random_buffer(64, 10))

    def test_values_in_unit_interval(self):
        buf = random_buffer(256, seed=1)
        assert buf.re.min() >= -1.0 and buf.re.max() < 1.0
        assert buf.im.min() >= -1.0 and buf.im.max() < 1.0


class TestDft2d:
    def test_constant_image(self):
        out = dft2d_oracle(ComplexBuffer(np.ones((2, 2)), np.zeros((2, 2))), 2, 2)
        np.testing.assert_allclose(out.re, [[4, 0], [0, 0]], atol=1e-6)

    def test_delta_image(self):
        re = np.zeros((2, 2))
        re[0, 0] = 1
        out = dft2d_oracle(ComplexBuffer(re, np.zeros((2, 2))), 2, 2)
        np.testing.assert_allclose(out.re, np.ones((2, 2)), atol=1e-6)
        np.testing.assert_allclose(out.im, np.zeros((2, 2)), atol=1e-6)

    def test_composes_row_then_column_oracles(self):
        x = random_buffer((4, 4), seed=11)
        z = x.to_complex()
        mid = np.vstack([dft_oracle(ComplexBuffer.from_complex(z[r])).to_complex() for r in range(4)])
        manual = np.column_stack(
            [dft_oracle(ComplexBuffer.from_complex(mid[:, c])).to_complex() for c in range(4)]
        )
        out = dft2d_oracle(x, 4, 4)
        np.testing.assert_allclose(out.to_complex(), manual, rtol=1e-4, atol=1e-4)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            dft2d_oracle(random_buffer((4, 4), 0), 2, 4)
