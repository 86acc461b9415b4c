#ifndef VOALAB_FUNCTIONALS_HPP
#define VOALAB_FUNCTIONALS_HPP

#include <memory>

#include "voalab/algebra.hpp"
#include "voalab/correlators.hpp"

namespace voalab {

// Linear functional on graded vectors, applied level by level in floating
// mode. max_output_level() bounds the levels a functional can see (-1 when
// unbounded); finite bounds make weight sums terminate exactly.
class Functional {
 public:
  virtual ~Functional() = default;
  virtual Cplx apply(const GradedVector<Cplx>& w) const = 0;
  virtual long max_output_level() const = 0;
  virtual const Sector& domain_sector() const = 0;
};

// The implemented sub-family of the convergent-functional space: a graded
// dual vector composed with s^{L(0)}, 0 < s <= 1. Contains the graded dual
// itself at s = 1; s < 1 adds a certified geometric damping s^n at weight n.
class GradedFunctional final : public Functional {
 public:
  GradedFunctional(DualVector<Rational> base, Rational s = 1)
      : base_(std::move(base)), s_(std::move(s)) {
    if (s_ <= 0 || s_ > 1)
      throw std::invalid_argument("functional scaling must satisfy 0 < s <= 1");
  }

  const DualVector<Rational>& base() const { return base_; }
  const Rational& scaling() const { return s_; }
  const Sector& domain_sector() const override { return base_.sector(); }
  long max_output_level() const override { return base_.max_level(); }

  Cplx apply(const GradedVector<Cplx>& w) const override {
    if (!(w.sector() == base_.sector()))
      throw std::invalid_argument("functional applied across sectors");
    const double s = to_double(s_);
    const double bw = to_double(base_.sector().base_weight());
    Cplx out(0.0, 0.0);
    for (const auto& [p, c] : base_.terms()) {
      Cplx wc = w.coeff(p);
      if (wc == Cplx(0.0, 0.0)) continue;
      out += scalar_ops<Rational>::to_complex(c) * wc *
             std::pow(s, bw + static_cast<double>(p.level()));
    }
    return out;
  }

  // Exact application; subject to the same exactness rule as scale_L0.
  Rational apply_exact(const GradedVector<Rational>& w) const {
    return pair(base_, scale_L0(s_, w));
  }

  GradedFunctional operator+(const GradedFunctional& o) const {
    if (!(s_ == o.s_))
      throw std::invalid_argument("functional sum needs matching scalings");
    DualVector<Rational> b = base_;
    b += o.base_;
    return GradedFunctional(std::move(b), s_);
  }

 private:
  DualVector<Rational> base_;
  Rational s_;
};

// Y_{-1}(u0) on the implemented family: (Y_{-1}(u0) lambda)(v) =
// lambda((u0)_{-1} v). Closed within the family: the result is the dual-side
// adjoint of (u0)_{-1} against the Kronecker pairing, with the s^{wt u0}
// factor absorbed into the new base.
GradedFunctional gamma_apply(const Heisenberg<Rational>& alg,
                             const GradedVector<Rational>& u0,
                             const GradedFunctional& lambda);

// Element of the implemented sub-family of F_k^*: either the iterated contour
// coefficient extractor mu_{m_1..m_k} on radii eps_1 > ... > eps_k (all < 1),
// or evaluation at a point of M^k_{<1}.
class FunctionalF {
 public:
  enum class Kind { contour, point };

  static FunctionalF contour(std::vector<long> ms, std::vector<double> radii) {
    FunctionalF f;
    f.kind_ = Kind::contour;
    f.ms_ = std::move(ms);
    f.radii_ = std::move(radii);
    f.validate();
    return f;
  }
  static FunctionalF point(std::vector<Cplx> p) {
    FunctionalF f;
    f.kind_ = Kind::point;
    f.point_ = std::move(p);
    f.validate();
    return f;
  }

  Kind kind() const { return kind_; }
  int arity() const {
    return kind_ == Kind::contour ? static_cast<int>(ms_.size())
                                  : static_cast<int>(point_.size());
  }
  const std::vector<long>& modes() const { return ms_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<Cplx>& eval_point() const { return point_; }

  // gamma adjoint: prepend the identity extraction pattern in a new outermost
  // variable (mode -1 on a contour just outside the current outermost one)
  FunctionalF gamma_adjoint() const {
    if (kind_ != Kind::contour)
      throw std::logic_error("gamma adjoint implemented for contour functionals");
    std::vector<long> ms{-1};
    ms.insert(ms.end(), ms_.begin(), ms_.end());
    std::vector<double> radii{radii_.empty() ? 0.5 : (radii_.front() + 1.0) / 2.0};
    radii.insert(radii.end(), radii_.begin(), radii_.end());
    return contour(std::move(ms), std::move(radii));
  }

  void validate() const {
    if (kind_ == Kind::contour) {
      if (ms_.size() != radii_.size())
        throw std::invalid_argument("contour functional: modes/radii length mismatch");
      for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0) || !(radii_[i] < 1))
          throw std::invalid_argument("contour radii must lie in (0,1)");
        if (i + 1 < radii_.size() && !(radii_[i] > radii_[i + 1]))
          throw std::invalid_argument("contour radii must be strictly decreasing");
      }
    } else {
      if (!in_Mk_lt1(point_))
        throw std::invalid_argument("point functional: point outside M^k_{<1}");
    }
  }

 private:
  Kind kind_ = Kind::contour;
  std::vector<long> ms_;
  std::vector<double> radii_;
  std::vector<Cplx> point_;
};

// (u_1)_{m_1} ... (u_k)_{m_k} v: the explicit vector realizing
// e_k(u_1 x ... x u_k x v x mu_{m_1..m_k}).
template <class S>
GradedVector<S> contour_chain(const Heisenberg<S>& alg,
                              const std::vector<GradedVector<S>>& us,
                              const GradedVector<S>& v, const std::vector<long>& ms) {
  if (us.size() != ms.size())
    throw std::invalid_argument("contour chain: arity mismatch");
  GradedVector<S> cur = v;
  for (std::size_t i = us.size(); i-- > 0;) cur = alg.mode_act(us[i], ms[i], cur);
  return cur;
}

}  // namespace voalab

#endif
