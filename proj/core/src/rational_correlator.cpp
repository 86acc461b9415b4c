#include "voalab/rational_correlator.hpp"

#include <algorithm>
#include <stdexcept>

namespace voalab {

RationalCorrelator RationalCorrelator::from_parts(
    Polynomial numerator, std::vector<long> zero_poles,
    std::map<std::pair<int, int>, long> diag_poles) {
  RationalCorrelator out(numerator.arity());
  if (static_cast<int>(zero_poles.size()) != numerator.arity())
    throw std::invalid_argument("zero pole list arity mismatch");
  out.numerator_ = std::move(numerator);
  out.zero_poles_ = std::move(zero_poles);
  for (const auto& [ij, b] : diag_poles) out.set_diag(ij.first, ij.second, b);
  out.reduce();
  return out;
}

long RationalCorrelator::diag_pole(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = diag_poles_.find({i, j});
  return it == diag_poles_.end() ? 0 : it->second;
}

void RationalCorrelator::set_diag(int i, int j, long b) {
  if (i == j) throw std::invalid_argument("diagonal pole needs distinct indices");
  if (b < 0) throw std::invalid_argument("negative pole order");
  if (i > j) std::swap(i, j);
  if (b == 0)
    diag_poles_.erase({i, j});
  else
    diag_poles_[{i, j}] = b;
}

void RationalCorrelator::reduce() {
  if (numerator_.is_zero()) {
    std::fill(zero_poles_.begin(), zero_poles_.end(), 0L);
    diag_poles_.clear();
    return;
  }
  for (int i = 0; i < arity_; ++i) {
    while (zero_poles_[i] > 0 && numerator_.divisible_by_variable(i)) {
      numerator_ = numerator_.divide_by_variable(i);
      --zero_poles_[i];
    }
  }
  for (auto it = diag_poles_.begin(); it != diag_poles_.end();) {
    auto [i, j] = it->first;
    while (it->second > 0) {
      auto q = numerator_.divide_by_difference(i, j);
      if (!q) break;
      numerator_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? diag_poles_.erase(it) : std::next(it);
  }
}

RationalCorrelator RationalCorrelator::operator+(const RationalCorrelator& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("correlator arity mismatch");
  RationalCorrelator out(arity_);
  // common denominator with max pole orders
  for (int i = 0; i < arity_; ++i)
    out.zero_poles_[i] = std::max(zero_poles_[i], o.zero_poles_[i]);
  for (int i = 0; i < arity_; ++i)
    for (int j = i + 1; j < arity_; ++j) {
      long b = std::max(diag_pole(i, j), o.diag_pole(i, j));
      if (b > 0) out.set_diag(i, j, b);
    }
  auto lift = [&](const RationalCorrelator& rc) {
    Polynomial p = rc.numerator_;
    Polynomial::Expo shift(arity_, 0);
    for (int i = 0; i < arity_; ++i)
      shift[i] = static_cast<int32_t>(out.zero_poles_[i] - rc.zero_poles_[i]);
    p = p.shifted(shift);
    for (int i = 0; i < arity_; ++i)
      for (int j = i + 1; j < arity_; ++j) {
        long extra = out.diag_pole(i, j) - rc.diag_pole(i, j);
        if (extra > 0) p = p * Polynomial::diff_power(arity_, i, j, extra);
      }
    return p;
  };
  out.numerator_ = lift(*this) + lift(o);
  out.reduce();
  return out;
}

RationalCorrelator RationalCorrelator::operator-(const RationalCorrelator& o) const {
  return *this + o.scaled(Rational(-1));
}

RationalCorrelator RationalCorrelator::scaled(const Rational& c) const {
  RationalCorrelator out = *this;
  out.numerator_ = out.numerator_ * c;
  if (c == 0) out.reduce();
  return out;
}

RationalCorrelator RationalCorrelator::derivative(int i) const {
  // d/dz_i [ N / (z_i^a prod_j (z_i-z_j)^{b_ij} rest) ]
  //   = [ N' z_i prod_j d_ij - N (a prod_j d_ij + z_i sum_j b_ij s_ij prod_{j'!=j} d_ij') ]
  //     / (z_i^{a+1} prod_j d_ij^{b_ij+1} rest)
  // where d_ij is the canonical factor (z_min - z_max) and s_ij its
  // orientation sign with respect to z_i.
  RationalCorrelator out(arity_);
  out.zero_poles_ = zero_poles_;
  out.diag_poles_ = diag_poles_;
  out.zero_poles_[i] += 1;

  std::vector<int> partners;
  for (int j = 0; j < arity_; ++j)
    if (j != i && diag_pole(i, j) > 0) partners.push_back(j);
  for (int j : partners) out.set_diag(i, j, diag_pole(i, j) + 1);

  auto canon_factor = [&](int j) {
    int a = std::min(i, j), b = std::max(i, j);
    return Polynomial::diff_power(arity_, a, b, 1);
  };
  Polynomial prod_all = Polynomial::constant(arity_, 1);
  for (int j : partners) prod_all = prod_all * canon_factor(j);

  Polynomial zi = Polynomial::variable(arity_, i);
  Polynomial num = numerator_.derivative(i) * prod_all * zi;
  num -= numerator_ * prod_all * Rational(zero_poles_[i]);
  for (int j : partners) {
    Polynomial prod_others = Polynomial::constant(arity_, 1);
    for (int j2 : partners)
      if (j2 != j) prod_others = prod_others * canon_factor(j2);
    Rational orient = (i < j) ? Rational(1) : Rational(-1);
    num -= numerator_ * prod_others * zi * (orient * Rational(diag_pole(i, j)));
  }
  out.numerator_ = std::move(num);
  out.reduce();
  return out;
}

RationalCorrelator RationalCorrelator::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != arity_)
    throw std::invalid_argument("permutation arity mismatch");
  RationalCorrelator out(arity_);
  Rational sign(1);
  for (int i = 0; i < arity_; ++i) out.zero_poles_[perm[i]] = zero_poles_[i];
  for (const auto& [ij, b] : diag_poles_) {
    int pi = perm[ij.first], pj = perm[ij.second];
    if (pi > pj && b % 2 == 1) sign = -sign;
    out.set_diag(pi, pj, b);
  }
  Polynomial num(arity_);
  for (const auto& [e, c] : numerator_.terms()) {
    Polynomial::Expo t(arity_, 0);
    for (int i = 0; i < arity_; ++i) t[perm[i]] = e[i];
    num.add_term(t, c);
  }
  out.numerator_ = num * sign;
  out.reduce();
  return out;
}

bool RationalCorrelator::operator==(const RationalCorrelator& o) const {
  RationalCorrelator a = reduced(), b = o.reduced();
  return a.arity_ == b.arity_ && a.zero_poles_ == b.zero_poles_ &&
         a.diag_poles_ == b.diag_poles_ && a.numerator_ == b.numerator_;
}

long RationalCorrelator::function_degree() const {
  long den = 0;
  for (long a : zero_poles_) den += a;
  for (const auto& [ij, b] : diag_poles_) den += b;
  return numerator_.total_degree() - den;
}

namespace {

nlohmann::json coeff_to_json(const BigInt& v) {
  // stay within the exact range of double-backed JSON numbers
  static const BigInt lim = BigInt(1) << 53;
  if (v < lim && v > -lim) return nlohmann::json(v.convert_to<long long>());
  return nlohmann::json(v.str());
}

BigInt coeff_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<long long>());
}

}  // namespace

nlohmann::json RationalCorrelator::to_json() const {
  nlohmann::json j;
  j["k"] = arity_;
  nlohmann::json num = nlohmann::json::array();
  for (const auto& [e, c] : numerator_.terms()) {
    nlohmann::json entry = nlohmann::json::array();
    entry.push_back(nlohmann::json(e));
    entry.push_back(coeff_to_json(boost::multiprecision::numerator(c)));
    entry.push_back(coeff_to_json(boost::multiprecision::denominator(c)));
    num.push_back(entry);
  }
  j["numerator"] = num;
  j["zeroPoles"] = zero_poles_;
  nlohmann::json diag = nlohmann::json::array();
  for (const auto& [ij, b] : diag_poles_)
    diag.push_back({ij.first, ij.second, b});
  j["diagPoles"] = diag;
  return j;
}

RationalCorrelator RationalCorrelator::from_json(const nlohmann::json& j) {
  int k = j.at("k").get<int>();
  RationalCorrelator out(k);
  for (const auto& entry : j.at("numerator")) {
    Polynomial::Expo e = entry.at(0).get<Polynomial::Expo>();
    Rational c(coeff_from_json(entry.at(1)), coeff_from_json(entry.at(2)));
    out.numerator_.add_term(e, c);
  }
  out.zero_poles_ = j.at("zeroPoles").get<std::vector<long>>();
  if (static_cast<int>(out.zero_poles_.size()) != k)
    throw std::invalid_argument("zeroPoles arity mismatch");
  for (const auto& entry : j.at("diagPoles"))
    out.set_diag(entry.at(0).get<int>(), entry.at(1).get<int>(),
                 entry.at(2).get<long>());
  return out;
}

}  // namespace voalab
