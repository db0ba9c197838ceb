"""Ground-truth numerics: DFT oracles, the iterative radix-2 reference FFT,
twiddle generation and bit reversal.

Everything here is pure and free of simulator state. The direct-summation
oracles are evaluated in double precision and rounded to FP32 at the
boundary, so they measure algorithmic error separately from the FP32
accumulation error of the radix-2 path. The reference FFT itself runs
entirely in FP32, one rounding per arithmetic operation, which is what the
simulated kernels are required to match bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError


def ensure_power_of_two(n: int, minimum: int = 2) -> int:
    if n < minimum or (n & (n - 1)) != 0:
        raise InvalidDimensionError(f"size must be a power of two >= {minimum}, got {n}")
    return n


@dataclass
class ComplexBuffer:
    """Planar FP32 complex data: separate real and imaginary arrays."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        self.re = np.asarray(self.re, dtype=np.float32)
        self.im = np.asarray(self.im, dtype=np.float32)
        if self.re.shape != self.im.shape:
            raise InvalidDimensionError(
                f"re/im shapes differ: {self.re.shape} vs {self.im.shape}"
            )
        if self.re.size < 1:
            raise InvalidDimensionError("empty buffer")

    @property
    def n(self) -> int:
        return self.re.size

    @property
    def shape(self):
        return self.re.shape

    @classmethod
    def zeros(cls, shape) -> "ComplexBuffer":
        return cls(np.zeros(shape, np.float32), np.zeros(shape, np.float32))

    @classmethod
    def from_complex(cls, z) -> "ComplexBuffer":
        z = np.asarray(z)
        return cls(z.real.astype(np.float32), z.imag.astype(np.float32))

    def to_complex(self) -> np.ndarray:
        """Promote to complex128 (for oracle-side arithmetic)."""
        return self.re.astype(np.float64) + 1j * self.im.astype(np.float64)

    def copy(self) -> "ComplexBuffer":
        return ComplexBuffer(self.re.copy(), self.im.copy())

    def bitwise_equal(self, other: "ComplexBuffer") -> bool:
        return np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im)


@dataclass
class TwiddleTable:
    """Unit-circle constants e^(-2*pi*i*k/n) for k in [0, n/2)."""

    re: np.ndarray
    im: np.ndarray

    @property
    def size(self) -> int:
        return self.re.size


@dataclass(frozen=True)
class FftDims:
    """Loop geometry of the iterative radix-2 schedule for size ``n``.

    ``num_steps_index`` is the highest step index; the step loop is
    inclusive, so exactly log2(n) steps run. ``half_span`` is the offset to
    the second element of a pair, ``span`` the stride to the next pair and
    ``spectra_count`` the number of twiddle groups in a step.
    """

    n: int

    def __post_init__(self):
        ensure_power_of_two(self.n)

    @property
    def num_steps_index(self) -> int:
        return self.n.bit_length() - 2

    @property
    def num_steps(self) -> int:
        return self.n.bit_length() - 1

    def half_span(self, step: int) -> int:
        return 1 << step

    def span(self, step: int) -> int:
        return 2 << step

    def spectra_count(self, step: int) -> int:
        return 1 << step

    def twiddle_shift(self, step: int) -> int:
        return self.num_steps_index - step


def random_buffer(n, seed: int = 0) -> ComplexBuffer:
    """Seeded test signal: uniform [-1, 1) on both planes, rounded to FP32.

    Uses numpy's PCG64 generator so identical seeds reproduce identical
    FP32 values on every platform.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = n if not np.isscalar(n) else (n,)
    re = rng.uniform(-1.0, 1.0, shape).astype(np.float32)
    im = rng.uniform(-1.0, 1.0, shape).astype(np.float32)
    return ComplexBuffer(re, im)


def rel_l2_error(out: ComplexBuffer, ref: ComplexBuffer) -> float:
    """Relative L2 error ||out - ref|| / ||ref|| over the complex values."""
    a = out.to_complex().ravel()
    b = ref.to_complex().ravel()
    denom = np.linalg.norm(b)
    if denom == 0.0:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a - b) / denom)


def _dft1d_f64(x: np.ndarray) -> np.ndarray:
    """Direct O(N^2) DFT sum in complex128. No FFT shortcuts anywhere."""
    n = x.size
    out = np.empty(n, np.complex128)
    idx = np.arange(n)
    # Row blocks keep the phase matrix small for large n.
    for k0 in range(0, n, 512):
        k = idx[k0 : k0 + 512, None]
        phase = np.exp((-2j * np.pi / n) * (k * idx[None, :]))
        out[k0 : k0 + 512] = phase @ x
    return out


def dft_oracle(buf: ComplexBuffer) -> ComplexBuffer:
    """Brute-force DFT of a 1-D buffer, any length >= 1."""
    x = buf.to_complex().ravel()
    return ComplexBuffer.from_complex(_dft1d_f64(x))


def dft2d_oracle(buf: ComplexBuffer, rows: int, cols: int) -> ComplexBuffer:
    """Brute-force 2-D DFT: direct sum over every row, then every column."""
    z = buf.to_complex().reshape(rows, cols) if buf.re.ndim == 1 else buf.to_complex()
    if z.shape != (rows, cols):
        raise InvalidDimensionError(f"expected {rows}x{cols}, got {z.shape}")
    mid = np.empty_like(z)
    for r in range(rows):
        mid[r, :] = _dft1d_f64(z[r, :])
    out = np.empty_like(mid)
    for c in range(cols):
        out[:, c] = _dft1d_f64(mid[:, c])
    return ComplexBuffer.from_complex(out)


def bit_reverse_indices(n: int) -> np.ndarray:
    """Index permutation reversing the log2(n) low-order bits."""
    ensure_power_of_two(n)
    bits = n.bit_length() - 1
    rev = np.arange(n, dtype=np.uint32)
    rev = ((rev & 0x55555555) << 1) | ((rev & 0xAAAAAAAA) >> 1)
    rev = ((rev & 0x33333333) << 2) | ((rev & 0xCCCCCCCC) >> 2)
    rev = ((rev & 0x0F0F0F0F) << 4) | ((rev & 0xF0F0F0F0) >> 4)
    rev = ((rev & 0x00FF00FF) << 8) | ((rev & 0xFF00FF00) >> 8)
    rev = ((rev << 16) | (rev >> 16)) & 0xFFFFFFFF
    rev >>= 32 - bits
    return rev.astype(np.intp)


def bit_reverse_permute(buf: ComplexBuffer) -> ComplexBuffer:
    idx = bit_reverse_indices(buf.n)
    return ComplexBuffer(buf.re[idx], buf.im[idx])


def twiddle_table(n: int) -> TwiddleTable:
    """n/2 unit roots at angles -2*pi*k/n, computed in f64 and cast to FP32."""
    ensure_power_of_two(n)
    k = np.arange(n // 2, dtype=np.float64)
    angle = -2.0 * np.pi * k / n
    return TwiddleTable(np.cos(angle).astype(np.float32), np.sin(angle).astype(np.float32))


def fft_reference(buf: ComplexBuffer) -> ComplexBuffer:
    """Iterative radix-2 FFT: bit-reversed input, natural-order output.

    Pure FP32 throughout. For each step the second element of a pair sits
    half_span away, the twiddle index is the spectra index shifted by
    (num_steps_index - step), and the butterfly is

        f0 = d1.r*w.r - d1.i*w.i
        f1 = d1.r*w.i + d1.i*w.r
        d1 <- d0 - f, d0 <- d0 + f

    The point loop is vectorised; per-element rounding is identical to a
    scalar transcription because the pairs within a (step, spectra) group
    are independent.
    """
    dims = FftDims(buf.n)
    table = twiddle_table(buf.n)
    perm = bit_reverse_permute(buf)
    re, im = perm.re.copy(), perm.im.copy()

    for step in range(dims.num_steps):
        half = dims.half_span(step)
        span = dims.span(step)
        for spectra in range(dims.spectra_count(step)):
            t = spectra << dims.twiddle_shift(step)
            w_re, w_im = table.re[t], table.im[t]
            d0 = slice(spectra, buf.n, span)
            d1 = slice(spectra + half, buf.n, span)
            f0 = re[d1] * w_re - im[d1] * w_im
            f1 = re[d1] * w_im + im[d1] * w_re
            re[d1] = re[d0] - f0
            im[d1] = im[d0] - f1
            re[d0] = re[d0] + f0
            im[d0] = im[d0] + f1
    return ComplexBuffer(re, im)


def ifft_reference(buf: ComplexBuffer) -> ComplexBuffer:
    """Inverse transform via conjugate-forward-conjugate, scaled by 1/n."""
    fwd = fft_reference(ComplexBuffer(buf.re, np.negative(buf.im)))
    scale = np.float32(1.0 / buf.n)
    return ComplexBuffer(fwd.re * scale, np.negative(fwd.im) * scale)
