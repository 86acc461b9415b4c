#include "voalab/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace voalab {

Polynomial Polynomial::constant(int arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Expo(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(int arity, int i) {
  Expo e(arity, 0);
  e.at(i) = 1;
  return monomial(arity, std::move(e), 1);
}

Polynomial Polynomial::monomial(int arity, Expo e, const Rational& c) {
  if (static_cast<int>(e.size()) != arity)
    throw std::invalid_argument("monomial exponent arity mismatch");
  Polynomial p(arity);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::diff_power(int arity, int i, int j, long b) {
  if (b < 0) throw std::invalid_argument("diff_power: negative exponent");
  Polynomial p(arity);
  for (long t = 0; t <= b; ++t) {
    Expo e(arity, 0);
    e.at(i) += static_cast<int32_t>(b - t);
    e.at(j) += static_cast<int32_t>(t);
    Rational c(binom_big(b, t));
    if (t % 2 == 1) c = -c;
    p.add_term(e, c);
  }
  return p;
}

void Polynomial::add_term(const Expo& e, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(e.size()) != arity_)
    throw std::invalid_argument("exponent arity mismatch");
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial out(arity_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(arity_);
      for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(arity_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(arity_);
  for (const auto& [e, v] : terms_) out.add_term(e, -v);
  return out;
}

Polynomial Polynomial::shifted(const Expo& shift) const {
  if (static_cast<int>(shift.size()) != arity_)
    throw std::invalid_argument("shift arity mismatch");
  Polynomial out(arity_);
  for (const auto& [e, v] : terms_) {
    Expo t(arity_);
    for (int i = 0; i < arity_; ++i) {
      t[i] = e[i] + shift[i];
      if (t[i] < 0) throw std::domain_error("monomial shift left the polynomial ring");
    }
    out.add_term(t, v);
  }
  return out;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial out(arity_);
  for (const auto& [e, v] : terms_) {
    if (e.at(i) == 0) continue;
    Expo t = e;
    t[i] -= 1;
    out.add_term(t, v * e[i]);
  }
  return out;
}

Polynomial Polynomial::substitute_equal(int i, int j) const {
  Polynomial out(arity_);
  for (const auto& [e, v] : terms_) {
    Expo t = e;
    t[j] += t[i];
    t[i] = 0;
    out.add_term(t, v);
  }
  return out;
}

bool Polynomial::divisible_by_variable(int i) const {
  for (const auto& [e, v] : terms_)
    if (e.at(i) == 0) return false;
  return true;
}

Polynomial Polynomial::divide_by_variable(int i) const {
  Polynomial out(arity_);
  for (const auto& [e, v] : terms_) {
    if (e.at(i) == 0) throw std::domain_error("not divisible by variable");
    Expo t = e;
    t[i] -= 1;
    out.add_term(t, v);
  }
  return out;
}

// Synthetic division in the variable z_i: with P = sum_d c_d z_i^d, the
// quotient by (z_i - z_j) is q_{d-1} = c_d + z_j q_d from the top degree down;
// the remainder is P with z_i := z_j.
std::optional<Polynomial> Polynomial::divide_by_difference(int i, int j) const {
  if (!substitute_equal(i, j).is_zero()) return std::nullopt;
  // group by exponent of z_i
  std::map<int32_t, Polynomial> slices;
  for (const auto& [e, v] : terms_) {
    Expo t = e;
    int32_t d = t[i];
    t[i] = 0;
    auto it = slices.find(d);
    if (it == slices.end()) it = slices.emplace(d, Polynomial(arity_)).first;
    it->second.add_term(t, v);
  }
  if (slices.empty()) return Polynomial(arity_);
  const int32_t top = slices.rbegin()->first;
  Polynomial out(arity_);
  Polynomial carry(arity_);  // q_d while descending
  for (int32_t d = top; d >= 1; --d) {
    Polynomial c_d(arity_);
    auto it = slices.find(d);
    if (it != slices.end()) c_d = it->second;
    // q_{d-1} = c_d + z_j * q_d
    Polynomial q = c_d;
    if (!carry.is_zero()) {
      Expo shift(arity_, 0);
      shift[j] = 1;
      q += carry.shifted(shift);
    }
    Expo lift(arity_, 0);
    lift[i] = d - 1;
    out += q.shifted(lift);
    carry = std::move(q);
  }
  return out;
}

long Polynomial::total_degree() const {
  long out = -1;
  for (const auto& [e, v] : terms_) {
    long d = 0;
    for (int32_t x : e) d += x;
    out = std::max(out, d);
  }
  return out;
}

long Polynomial::degree_in(int i) const {
  long out = -1;
  for (const auto& [e, v] : terms_) out = std::max<long>(out, e.at(i));
  return out;
}

bool Polynomial::is_homogeneous() const {
  long d = -1;
  for (const auto& [e, v] : terms_) {
    long t = 0;
    for (int32_t x : e) t += x;
    if (d < 0) d = t;
    if (t != d) return false;
  }
  return true;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, v] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += rational_to_string(v);
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      std::string nm = i < static_cast<int>(names.size()) ? names[i]
                                                          : "z" + std::to_string(i + 1);
      out += "*" + nm;
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

}  // namespace voalab
