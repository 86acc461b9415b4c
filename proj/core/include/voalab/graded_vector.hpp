#ifndef VOALAB_GRADED_VECTOR_HPP
#define VOALAB_GRADED_VECTOR_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "voalab/partition.hpp"
#include "voalab/scalar.hpp"

namespace voalab {

enum class SectorKind { algebra, module };

// A sector is either the vacuum module of the algebra itself or a Fock module
// with momentum p. Module weights sit at p^2/2 + N; the integer offset above
// the base weight is called the level and indexes all truncations.
class Sector {
 public:
  Sector() = default;
  static Sector algebra() { return Sector(); }
  static Sector module(const Rational& p) {
    Sector s;
    s.kind_ = SectorKind::module;
    s.momentum_ = p;
    return s;
  }

  SectorKind kind() const { return kind_; }
  bool is_algebra() const { return kind_ == SectorKind::algebra; }
  bool is_module() const { return kind_ == SectorKind::module; }
  const Rational& momentum() const { return momentum_; }
  Rational base_weight() const {
    return is_algebra() ? Rational(0) : momentum_ * momentum_ / 2;
  }
  bool integral_weights() const {
    Rational b = base_weight();
    return denominator(b) == 1;
  }

  bool operator==(const Sector& o) const {
    return kind_ == o.kind_ && momentum_ == o.momentum_;
  }
  bool operator!=(const Sector& o) const { return !(*this == o); }

 private:
  SectorKind kind_ = SectorKind::algebra;
  Rational momentum_ = 0;
};

std::string render_state(const Sector& sector, const Partition& p);
std::pair<Sector, Partition> parse_state(const std::string& text);

// Finitely supported weight-graded vector over a single sector. Zero
// coefficients are never stored.
template <class S>
class GradedVector {
 public:
  using terms_type = std::map<Partition, S>;

  GradedVector() = default;
  explicit GradedVector(Sector sector) : sector_(std::move(sector)) {}

  static GradedVector unit(const Sector& sector, const Partition& p,
                           S coeff = scalar_ops<S>::from_long(1)) {
    GradedVector v(sector);
    v.add_term(p, std::move(coeff));
    return v;
  }

  const Sector& sector() const { return sector_; }
  const terms_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Partition& p, const S& c) {
    if (scalar_ops<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (scalar_ops<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  S coeff(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? scalar_ops<S>::from_long(0) : it->second;
  }

  GradedVector& operator+=(const GradedVector& o) {
    require_same_sector(o);
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    require_same_sector(o);
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) {
    a += b;
    return a;
  }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) {
    a -= b;
    return a;
  }
  GradedVector operator*(const S& c) const {
    GradedVector out(sector_);
    if (scalar_ops<S>::is_zero(c)) return out;
    for (const auto& [p, v] : terms_) out.add_term(p, v * c);
    return out;
  }
  bool operator==(const GradedVector& o) const {
    return sector_ == o.sector_ && terms_ == o.terms_;
  }

  long max_level() const {
    long out = -1;
    for (const auto& [p, c] : terms_) out = std::max(out, p.level());
    return out;
  }
  long min_level() const {
    long out = -1;
    for (const auto& [p, c] : terms_) {
      long l = p.level();
      if (out < 0 || l < out) out = l;
    }
    return out;
  }
  std::vector<long> levels() const {
    std::vector<long> out;
    for (const auto& [p, c] : terms_) {
      long l = p.level();
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  GradedVector project_level(long l) const {
    GradedVector out(sector_);
    for (const auto& [p, c] : terms_)
      if (p.level() == l) out.add_term(p, c);
    return out;
  }

  bool is_homogeneous() const {
    return terms_.empty() || max_level() == min_level();
  }

  // Sum of coefficient magnitudes; the l1 size used by tail diagnostics.
  double magnitude() const {
    double out = 0.0;
    for (const auto& [p, c] : terms_) out += scalar_ops<S>::magnitude(c);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += "(";
      if constexpr (scalar_ops<S>::exact) {
        out += rational_to_string(c);
      } else {
        out += std::to_string(c.real()) + (c.imag() < 0 ? "-" : "+") +
               std::to_string(std::abs(c.imag())) + "i";
      }
      out += ")*" + render_state(sector_, p);
    }
    return out;
  }

 private:
  void require_same_sector(const GradedVector& o) const {
    if (!(sector_ == o.sector_))
      throw std::invalid_argument("sector mismatch in graded-vector arithmetic");
  }

  Sector sector_;
  terms_type terms_;
};

// Graded-dual vector: same storage, paired with GradedVector by the Kronecker
// pairing on partition basis states.
template <class S>
class DualVector {
 public:
  DualVector() = default;
  explicit DualVector(Sector sector) : sector_(std::move(sector)) {}

  static DualVector unit(const Sector& sector, const Partition& p,
                         S coeff = scalar_ops<S>::from_long(1)) {
    DualVector v(sector);
    v.add_term(p, std::move(coeff));
    return v;
  }

  const Sector& sector() const { return sector_; }
  const std::map<Partition, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Partition& p, const S& c) {
    if (scalar_ops<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (scalar_ops<S>::is_zero(it->second)) terms_.erase(it);
    }
  }
  S coeff(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? scalar_ops<S>::from_long(0) : it->second;
  }
  DualVector& operator+=(const DualVector& o) {
    if (!(sector_ == o.sector_))
      throw std::invalid_argument("sector mismatch in dual-vector arithmetic");
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  DualVector operator*(const S& c) const {
    DualVector out(sector_);
    if (scalar_ops<S>::is_zero(c)) return out;
    for (const auto& [p, v] : terms_) out.add_term(p, v * c);
    return out;
  }
  bool operator==(const DualVector& o) const {
    return sector_ == o.sector_ && terms_ == o.terms_;
  }
  long max_level() const {
    long out = -1;
    for (const auto& [p, c] : terms_) out = std::max(out, p.level());
    return out;
  }

 private:
  Sector sector_;
  std::map<Partition, S> terms_;
};

template <class S>
S pair(const DualVector<S>& vp, const GradedVector<S>& v) {
  if (!(vp.sector() == v.sector()))
    throw std::invalid_argument("pair: sector mismatch between dual and vector");
  S out = scalar_ops<S>::from_long(0);
  const bool small = vp.terms().size() <= v.terms().size();
  if (small) {
    for (const auto& [p, c] : vp.terms()) out += c * v.coeff(p);
  } else {
    for (const auto& [p, c] : v.terms()) out += vp.coeff(p) * c;
  }
  return out;
}

inline Rational state_weight(const Sector& sector, const Partition& p) {
  return sector.base_weight() + p.level();
}

// P_n: the weight-n homogeneous part. Weights outside the sector grading give
// zero rather than an error.
template <class S>
GradedVector<S> project(const GradedVector<S>& v, const Rational& weight) {
  Rational offset = weight - v.sector().base_weight();
  if (denominator(offset) != 1 || offset < 0) return GradedVector<S>(v.sector());
  return v.project_level(offset.convert_to<long>());
}

// r^{L(0)} in exact arithmetic: weight-n components scale by r^n. Demands
// integer weights unless r == 1.
inline GradedVector<Rational> scale_L0(const Rational& r,
                                       const GradedVector<Rational>& v) {
  if (r <= 0) throw std::domain_error("scale_L0: scaling must be positive");
  if (r != 1 && !v.sector().integral_weights())
    throw std::domain_error(
        "scale_L0: non-integer weights with non-unit scaling requires floating mode");
  GradedVector<Rational> out(v.sector());
  Rational base = v.sector().base_weight();
  for (const auto& [p, c] : v.terms()) {
    long n = (base + p.level()).convert_to<long>();
    out.add_term(p, c * pow_rational(r, n));
  }
  return out;
}

// r^{L(0)} in floating mode: principal real power of r > 0.
inline GradedVector<Cplx> scale_L0(double r, const GradedVector<Cplx>& v) {
  if (!(r > 0)) throw std::domain_error("scale_L0: scaling must be positive");
  GradedVector<Cplx> out(v.sector());
  double base = to_double(v.sector().base_weight());
  for (const auto& [p, c] : v.terms())
    out.add_term(p, c * std::pow(r, base + static_cast<double>(p.level())));
  return out;
}

inline DualVector<Rational> scale_L0_dual(const Rational& r,
                                          const DualVector<Rational>& vp) {
  if (r <= 0) throw std::domain_error("scale_L0: scaling must be positive");
  if (r != 1 && !vp.sector().integral_weights())
    throw std::domain_error(
        "scale_L0: non-integer weights with non-unit scaling requires floating mode");
  DualVector<Rational> out(vp.sector());
  Rational base = vp.sector().base_weight();
  for (const auto& [p, c] : vp.terms()) {
    long n = (base + p.level()).convert_to<long>();
    out.add_term(p, c * pow_rational(r, n));
  }
  return out;
}

inline GradedVector<Cplx> to_complex(const GradedVector<Rational>& v) {
  GradedVector<Cplx> out(v.sector());
  for (const auto& [p, c] : v.terms())
    out.add_term(p, scalar_ops<Rational>::to_complex(c));
  return out;
}

inline DualVector<Cplx> to_complex(const DualVector<Rational>& v) {
  DualVector<Cplx> out(v.sector());
  for (const auto& [p, c] : v.terms())
    out.add_term(p, scalar_ops<Rational>::to_complex(c));
  return out;
}

}  // namespace voalab

#endif
