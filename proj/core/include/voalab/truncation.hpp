#ifndef VOALAB_TRUNCATION_HPP
#define VOALAB_TRUNCATION_HPP

#include <stdexcept>
#include <vector>

#include "voalab/scalar.hpp"

namespace voalab {

// Finite realization of the infinite weight sums: cap on the level above the
// sector base weight, acceptance tolerance, and the trailing window used to
// fit a geometric ratio to partial-sum increments.
struct TruncationPolicy {
  long max_weight = 20;
  double tolerance = 1e-9;
  int tail_window = 6;

  void validate() const {
    if (max_weight < 0) throw std::invalid_argument("policy: maxWeight must be >= 0");
    if (tolerance < 0) throw std::invalid_argument("policy: tolerance must be >= 0");
    if (tail_window < 2) throw std::invalid_argument("policy: tailWindow must be >= 2");
  }
};

// Finite witness of absolute convergence: the summed value, the trailing
// partial-sum increments, the least-squares geometric ratio of their
// magnitudes, and the implied geometric tail bound.
struct TailReport {
  Cplx value{0.0, 0.0};
  std::vector<Cplx> last_terms;
  double fitted_ratio = 0.0;
  double bound_estimate = 0.0;
  bool accepted = false;
  bool finite_sum = false;  // every increment in the window vanished exactly
};

// increments[i] is the partial-sum increment contributed at level (lo + i).
TailReport fit_tail(const std::vector<Cplx>& increments, const TruncationPolicy& policy);

}  // namespace voalab

#endif
