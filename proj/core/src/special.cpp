#include <array>
#include <cmath>

#include "pairlab/numeric.hpp"

namespace pairlab {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const Complex kI(0.0, 1.0);

// A branch of log sin(w) that does not overflow for large |Im w|.
Complex log_sin(Complex w) {
  if (w.imag() >= 0.0) {
    return -kI * w + std::log((std::exp(2.0 * kI * w) - 1.0) / (2.0 * kI));
  }
  return kI * w + std::log((1.0 - std::exp(-2.0 * kI * w)) / (2.0 * kI));
}

Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

Complex log_gamma(Complex z) {
  require_finite(z, "log_gamma");
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real())) {
      throw PoleError("log_gamma: pole at non-positive integer");
    }
    return std::log(kPi) - log_sin(kPi * z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

}  // namespace pairlab
