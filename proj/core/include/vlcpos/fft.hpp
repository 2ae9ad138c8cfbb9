#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vlcpos {

using cplx = std::complex<double>;

/// Forward DFT, X[k] = sum_n x[n] exp(-2 pi i k n / N). Thread-safe.
std::vector<cplx> fft(std::span<const cplx> in);

/// Inverse DFT with 1/N scaling, so ifft(fft(x)) == x.
std::vector<cplx> ifft(std::span<const cplx> in);

}  // namespace vlcpos
