#pragma once

#include <complex>
#include <vector>

namespace specest::detail {

enum class FftSign { kForward = -1, kBackward = +1 };

/// Unnormalized in-place 2-D DFT of a row-major n1 x n2 array:
///   out[a, b] = sum_{l1, l2} in[l1, l2] exp(sign * 2 pi i (a l1 / n1 + b l2 / n2)).
/// Each call owns its plan and buffer.
void fft2d(std::vector<std::complex<double>>& data, int n1, int n2, FftSign sign);

}  // namespace specest::detail
