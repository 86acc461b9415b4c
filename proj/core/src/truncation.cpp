#include "voalab/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voalab {

// Least-squares fit of log|increment| against level over the trailing window.
// Zero increments (exact parity zeros are common) are skipped; the fit uses
// the surviving points with their true level spacing.
TailReport fit_tail(const std::vector<Cplx>& increments, const TruncationPolicy& policy) {
  policy.validate();
  TailReport out;
  for (const Cplx& c : increments) out.value += c;

  const std::size_t n = increments.size();
  const std::size_t window = std::min<std::size_t>(n, static_cast<std::size_t>(policy.tail_window));
  out.last_terms.assign(increments.end() - window, increments.end());

  // two or more trailing exact zeros witness a terminated sum (a single one
  // may be a parity zero)
  std::size_t trailing_zeros = 0;
  for (std::size_t i = n; i-- > 0;) {
    if (std::abs(increments[i]) != 0.0) break;
    ++trailing_zeros;
  }
  if (trailing_zeros >= 2 || trailing_zeros == n) {
    out.fitted_ratio = 0.0;
    out.bound_estimate = 0.0;
    out.finite_sum = true;
    out.accepted = true;
    return out;
  }

  std::vector<std::pair<double, double>> pts;  // (level index, log magnitude)
  double last_mag = 0.0;
  for (std::size_t i = n - window; i < n; ++i) {
    double mag = std::abs(increments[i]);
    if (mag > 0.0) {
      pts.emplace_back(static_cast<double>(i), std::log(mag));
      last_mag = mag;
    }
  }

  if (pts.size() < 2) {
    // Finite or effectively terminated sum inside the window.
    out.fitted_ratio = 0.0;
    out.bound_estimate = pts.empty() ? 0.0 : last_mag;
    out.finite_sum = pts.empty();
    out.accepted = pts.empty() ||
                   out.bound_estimate <= policy.tolerance * std::max(std::abs(out.value), 1e-300);
    if (pts.size() == 1 && std::abs(out.value) == 0.0) out.accepted = false;
    return out;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  out.fitted_ratio = std::exp(slope);

  if (out.fitted_ratio < 1.0) {
    out.bound_estimate = last_mag * out.fitted_ratio / (1.0 - out.fitted_ratio);
  } else {
    out.bound_estimate = std::numeric_limits<double>::infinity();
  }
  out.accepted = out.fitted_ratio <= 0.95 &&
                 out.bound_estimate <= policy.tolerance * std::max(std::abs(out.value), 1e-300);
  return out;
}

}  // namespace voalab
