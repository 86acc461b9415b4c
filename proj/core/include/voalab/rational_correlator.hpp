#ifndef VOALAB_RATIONAL_CORRELATOR_HPP
#define VOALAB_RATIONAL_CORRELATOR_HPP

#include <map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "voalab/polynomial.hpp"

namespace voalab {

// An element of R_k: numerator polynomial over exact rationals divided by
// prod_i z_i^{a_i} * prod_{i<j} (z_i - z_j)^{b_ij}. reduce() strips common
// factors so the representation is canonical; equality compares reduced forms.
class RationalCorrelator {
 public:
  RationalCorrelator() = default;
  explicit RationalCorrelator(int k)
      : arity_(k), numerator_(k), zero_poles_(k, 0) {}

  static RationalCorrelator zero(int k) { return RationalCorrelator(k); }
  static RationalCorrelator from_parts(Polynomial numerator,
                                       std::vector<long> zero_poles,
                                       std::map<std::pair<int, int>, long> diag_poles);

  int arity() const { return arity_; }
  bool is_zero() const { return numerator_.is_zero(); }
  const Polynomial& numerator() const { return numerator_; }
  const std::vector<long>& zero_pole_orders() const { return zero_poles_; }
  const std::map<std::pair<int, int>, long>& diag_pole_orders() const {
    return diag_poles_;
  }
  long diag_pole(int i, int j) const;

  void reduce();
  RationalCorrelator reduced() const {
    RationalCorrelator out = *this;
    out.reduce();
    return out;
  }

  RationalCorrelator operator+(const RationalCorrelator& o) const;
  RationalCorrelator operator-(const RationalCorrelator& o) const;
  RationalCorrelator scaled(const Rational& c) const;
  RationalCorrelator derivative(int i) const;
  // relabel variables: z_i -> z_{perm[i]}
  RationalCorrelator permuted(const std::vector<int>& perm) const;

  // compares reduced forms exactly
  bool operator==(const RationalCorrelator& o) const;

  // total degree of the function: deg(numerator) - deg(denominator)
  long function_degree() const;

  template <class T>
  T eval(const std::vector<T>& z) const {
    if (static_cast<int>(z.size()) != arity_)
      throw std::invalid_argument("evaluation point arity mismatch");
    T num = numerator_.eval(z);
    T den = scalar_ops<T>::from_long(1);
    for (int i = 0; i < arity_; ++i) {
      if (zero_poles_[i] == 0) continue;
      if constexpr (scalar_ops<T>::exact) {
        den *= pow_rational(z[i], zero_poles_[i]);
      } else {
        den *= cpow_int(z[i], zero_poles_[i]);
      }
    }
    for (const auto& [ij, b] : diag_poles_) {
      T d = z[ij.first] - z[ij.second];
      if constexpr (scalar_ops<T>::exact) {
        if (d == 0) throw std::domain_error("evaluation on a diagonal pole");
        den *= pow_rational(d, b);
      } else {
        den *= cpow_int(d, b);
      }
    }
    return num / den;
  }

  nlohmann::json to_json() const;
  static RationalCorrelator from_json(const nlohmann::json& j);

 private:
  void set_diag(int i, int j, long b);

  int arity_ = 0;
  Polynomial numerator_{0};
  std::vector<long> zero_poles_;
  std::map<std::pair<int, int>, long> diag_poles_;  // keys i < j, values > 0
};

}  // namespace voalab

#endif
