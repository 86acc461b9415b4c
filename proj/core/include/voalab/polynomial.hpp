#ifndef VOALAB_POLYNOMIAL_HPP
#define VOALAB_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voalab/scalar.hpp"

namespace voalab {

// Sparse multivariate polynomial over exact rationals. Monomial keys are
// exponent vectors of fixed arity; zero coefficients are never stored.
class Polynomial {
 public:
  using Expo = std::vector<int32_t>;

  Polynomial() = default;
  explicit Polynomial(int arity) : arity_(arity) {}

  static Polynomial constant(int arity, const Rational& c);
  static Polynomial variable(int arity, int i);
  static Polynomial monomial(int arity, Expo e, const Rational& c);
  // (z_i - z_j)^b expanded binomially
  static Polynomial diff_power(int arity, int i, int j, long b);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Expo& e, const Rational& c);
  Rational coeff(const Expo& e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }

  // multiply by the monomial z^e (exponents may be negative if the result
  // stays polynomial; caller guarantees that)
  Polynomial shifted(const Expo& e) const;

  Polynomial derivative(int i) const;
  Polynomial substitute_equal(int i, int j) const;  // z_i := z_j
  bool divisible_by_variable(int i) const;
  Polynomial divide_by_variable(int i) const;
  // exact division by (z_i - z_j); nullopt when the remainder is nonzero
  std::optional<Polynomial> divide_by_difference(int i, int j) const;

  long total_degree() const;  // -1 for the zero polynomial
  long degree_in(int i) const;
  bool is_homogeneous() const;

  template <class T>
  T eval(const std::vector<T>& point) const {
    T out = scalar_ops<T>::from_long(0);
    for (const auto& [e, c] : terms_) {
      T m = scalar_ops<T>::from_rational(c);
      for (int i = 0; i < arity_; ++i) {
        if (e[i] == 0) continue;
        if constexpr (scalar_ops<T>::exact) {
          m *= pow_rational(point[i], e[i]);
        } else {
          m *= cpow_int(point[i], e[i]);
        }
      }
      out += m;
    }
    return out;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int arity_ = 0;
  std::map<Expo, Rational> terms_;
};

}  // namespace voalab

#endif
