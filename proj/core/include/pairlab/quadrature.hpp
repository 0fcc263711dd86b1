#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "pairlab/errors.hpp"
#include "pairlab/numeric.hpp"

namespace pairlab {

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t intervals = 0;
};

namespace detail {

// Kronrod 15-point nodes on [0, 1]; every odd index is also a Gauss 7 node.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class F>
auto gauss_kronrod_panel(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T center = f(mid);
  T kronrod = center * kKronrodWeights[7];
  T gauss = center * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T sum = f(mid - dx) + f(mid + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  return Panel<T>{a, b, kronrod * half, magnitude(T((kronrod - gauss) * half))};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) quadrature with global bisection of the
/// worst panel. Stops once the summed error estimate is below
/// max(abs_tol, rel_tol * |value|); throws QuadratureError if the panel
/// budget runs out first. Works for real- and complex-valued integrands.
template <class F>
auto integrate(F&& f, double a, double b, double abs_tol, double rel_tol, std::size_t max_panels = 4000) {
  using T = std::decay_t<decltype(f(a))>;
  QuadratureResult<T> result;
  if (a == b) return result;
  std::priority_queue<detail::Panel<T>> panels;
  panels.push(detail::gauss_kronrod_panel(f, a, b));
  T total = panels.top().value;
  double error = panels.top().error;
  while (error > std::max(abs_tol, rel_tol * detail::magnitude(total))) {
    if (panels.size() >= max_panels) {
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    const auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod_panel(f, worst.a, mid);
    auto right = detail::gauss_kronrod_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum in a fixed order so the result does not carry drift from the
  // incremental updates above.
  std::vector<detail::Panel<T>> done;
  done.reserve(panels.size());
  while (!panels.empty()) {
    done.push_back(panels.top());
    panels.pop();
  }
  std::sort(done.begin(), done.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  CompensatedSum<T> sum;
  double err = 0.0;
  for (const auto& p : done) {
    sum += p.value;
    err += p.error;
  }
  result.value = sum.value();
  result.error = err;
  result.intervals = done.size();
  return result;
}

}  // namespace pairlab
