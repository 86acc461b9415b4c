#ifndef VOALAB_SEMINORM_HPP
#define VOALAB_SEMINORM_HPP

#include <string>

#include "voalab/rational_correlator.hpp"

namespace voalab {

// Closed-form compact exhaustion of M^k:
//   K_n = { |z_i| in [1/(n+1), n+1], |z_i - z_j| >= 1/(n+1) },
// and of M^k_{<1}:
//   J_n = K_n intersected with |z_i| <= 1 - 1/(n+2).
struct CompactExhaustion {
  int k = 1;
  long n = 1;

  double radius_min() const { return 1.0 / static_cast<double>(n + 1); }
  double radius_max() const { return static_cast<double>(n + 1); }
  double separation() const { return 1.0 / static_cast<double>(n + 1); }
  double inner_radius_max() const { return 1.0 - 1.0 / static_cast<double>(n + 2); }

  bool contains(const std::vector<Cplx>& z) const;
  bool contains_inner(const std::vector<Cplx>& z) const;  // J_n membership
};

// Sampled maximum of |f| over K_n. A lower estimate of the true norm:
// tensor-product grid of 8 moduli shells x 64 phases per variable (stride
// subsampled above 2^18 points), plus 1024 Halton points, filtered to K_n,
// cumulated over m <= n so the estimate is monotone in n.
struct SeminormEstimate {
  double value = 0.0;
  long n = 0;
  std::size_t samples_in_region = 0;
  std::size_t samples_total = 0;
  std::string scheme;
};

SeminormEstimate seminorm_Rk(const RationalCorrelator& f, long n);

}  // namespace voalab

#endif
