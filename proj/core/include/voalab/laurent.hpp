#ifndef VOALAB_LAURENT_HPP
#define VOALAB_LAURENT_HPP

#include <map>

#include "voalab/graded_vector.hpp"

namespace voalab {

// Truncated vector-valued Laurent series in one variable. Exponents below
// certified_lo() are certified absent (lower truncation from the mode
// vanishing bound); exponents above the kept window were dropped, never
// invented.
template <class S>
class LaurentSeriesTrunc {
 public:
  LaurentSeriesTrunc(Sector sector, long lo, long hi, long certified_lo)
      : sector_(std::move(sector)), lo_(lo), hi_(hi), certified_lo_(certified_lo) {}

  long lo() const { return lo_; }
  long hi() const { return hi_; }
  long certified_lo() const { return certified_lo_; }
  const Sector& sector() const { return sector_; }
  const std::map<long, GradedVector<S>>& terms() const { return coeffs_; }

  void set(long exponent, GradedVector<S> c) {
    if (c.is_zero()) return;
    coeffs_[exponent] = std::move(c);
  }

  // Coefficient of z^exponent. Exponents outside [certified_lo, hi] are not
  // represented; asking for them is a logic error.
  GradedVector<S> coeff(long exponent) const {
    if (exponent > hi_ || exponent < certified_lo_)
      throw std::out_of_range("Laurent coefficient outside truncation window");
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? GradedVector<S>(sector_) : it->second;
  }

  bool known(long exponent) const { return exponent <= hi_; }

 private:
  Sector sector_;
  long lo_, hi_, certified_lo_;
  std::map<long, GradedVector<S>> coeffs_;
};

}  // namespace voalab

#endif
