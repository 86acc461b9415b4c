#ifndef VOALAB_COMPLETION_HPP
#define VOALAB_COMPLETION_HPP

#include <map>
#include <memory>

#include "voalab/disk.hpp"
#include "voalab/functionals.hpp"

namespace voalab {

// Evaluation context: one exact and one floating engine over the same algebra
// spec, plus a cache of reconstructed Q families keyed by their inputs.
class Lab {
 public:
  explicit Lab(AlgebraSpec spec = {})
      : spec_(spec), exact_(spec), floating_(spec) {}

  const AlgebraSpec& spec() const { return spec_; }
  const Heisenberg<Rational>& exact() const { return exact_; }
  const Heisenberg<Cplx>& floating() const { return floating_; }

  const QFamily& family(const std::vector<GradedVector<Rational>>& us,
                        const GradedVector<Rational>& v, long max_level) const;

 private:
  AlgebraSpec spec_;
  Heisenberg<Rational> exact_;
  Heisenberg<Cplx> floating_;
  mutable std::map<std::string, QFamily> families_;
};

struct QuadratureOptions {
  int min_nodes = 64;
  int max_nodes = 1024;
  double tolerance = 1e-10;
};

// --------------------------------------------------------------------------
// sewing operator on vectors
// --------------------------------------------------------------------------

struct SewResult {
  GradedVector<Cplx> vec;
  TailReport report;  // per-output-level magnitudes of the truncation
};

// Y(r1^{L(0)} h1, z) r2^{L(0)} h2 truncated at policy.max_weight. h1 must be
// an algebra vector; h2 may live in the algebra or a module sector.
SewResult sew_vectors(const Lab& lab, const GradedVector<Cplx>& h1,
                      const GradedVector<Cplx>& h2, const Disk& d,
                      const TruncationPolicy& policy);

// --------------------------------------------------------------------------
// diamond operator
// --------------------------------------------------------------------------

// u diamond_{[D(z;r1,r2)]} lambda: the pullback of lambda along the sewing
// operator with first input u. Application to v sums
// lambda(P_n(Y(r1^{L(0)}u, z) r2^{L(0)} v)) with tail diagnostics.
class DiamondFunctional final : public Functional {
 public:
  DiamondFunctional(const Lab& lab, std::shared_ptr<const Functional> inner,
                    GradedVector<Cplx> u, Disk d, TruncationPolicy policy);

  TailReport apply_with_report(const GradedVector<Cplx>& w) const;
  Cplx apply(const GradedVector<Cplx>& w) const override {
    return apply_with_report(w).value;
  }
  long max_output_level() const override { return -1; }
  const Sector& domain_sector() const override { return inner_->domain_sector(); }
  const Disk& disk() const { return d_; }

 private:
  const Lab* lab_;
  std::shared_ptr<const Functional> inner_;
  GradedVector<Cplx> u_;
  Disk d_;
  TruncationPolicy policy_;
};

DiamondFunctional diamond(const Lab& lab, const GradedVector<Rational>& u,
                          std::shared_ptr<const Functional> lambda, const Disk& d,
                          const TruncationPolicy& policy);

// --------------------------------------------------------------------------
// the g_k evaluation maps
// --------------------------------------------------------------------------

struct GEvalResult {
  TailReport report;
  std::vector<Cplx> increments;  // indexed by level 0..max_weight
};

// sum_n lambda(P_n(Q(u_1,...,u_k,v; z))) at a point of M^k_{<1}.
GEvalResult g_eval(const Lab& lab, const Functional& lambda,
                   const std::vector<GradedVector<Rational>>& us,
                   const GradedVector<Rational>& v, const std::vector<Cplx>& point,
                   const TruncationPolicy& policy);

// Exact per-level increments at a real rational point; demands an exactly
// applicable functional (s = 1 or integral weights).
std::vector<Rational> g_increments_exact(const Lab& lab, const GradedFunctional& lambda,
                                         const std::vector<GradedVector<Rational>>& us,
                                         const GradedVector<Rational>& v,
                                         const std::vector<Rational>& point,
                                         const TruncationPolicy& policy);

struct IotaReport {
  double max_variation = 0.0;
  std::vector<Cplx> values;
};

// g_{k+1}(lambda x 1 x u_1 ... x v) must not depend on the spectator
// coordinate z0; reports the maximal variation over the sampled z0 values.
IotaReport iota_independence_check(const Lab& lab, const Functional& lambda,
                                   const std::vector<GradedVector<Rational>>& us,
                                   const GradedVector<Rational>& v,
                                   const std::vector<Cplx>& z0_samples,
                                   const std::vector<Cplx>& point,
                                   const TruncationPolicy& policy,
                                   const GradedVector<Rational>* spectator = nullptr);

// contour form of gamma: (2 pi i)^{-1} oint z0^{-1} g_{k+1}(lambda x u0 x ...) dz0
Cplx gamma_contour(const Lab& lab, const Functional& lambda,
                   const GradedVector<Rational>& u0,
                   const std::vector<GradedVector<Rational>>& us,
                   const GradedVector<Rational>& v, const std::vector<Cplx>& point,
                   double eps, const TruncationPolicy& policy,
                   const QuadratureOptions& quad = {});

// --------------------------------------------------------------------------
// functionals on F_k and the sewing composition
// --------------------------------------------------------------------------

enum class FRoute { algebraic, quadrature };

// mu(g_k(lambda x u_1 x ... x u_k x v)). Contour functionals evaluate either
// by exact mode extraction (algebraic) or by iterated trapezoid quadrature;
// the two routes must agree. Point functionals evaluate g_k at their point.
Cplx functional_F_apply(const Lab& lab, const FunctionalF& mu, const Functional& lambda,
                        const std::vector<GradedVector<Rational>>& us,
                        const GradedVector<Rational>& v, const TruncationPolicy& policy,
                        FRoute route = FRoute::algebraic,
                        const QuadratureOptions& quad = {});

// exact value of the algebraic route for contour functionals
Rational functional_F_apply_exact(const Lab& lab, const FunctionalF& mu,
                                  const GradedFunctional& lambda,
                                  const std::vector<GradedVector<Rational>>& us,
                                  const GradedVector<Rational>& v);

// alpha_l(lambda x v_1 ... x v_l x v x nu): the functional
// u |-> <u diamond lambda, e_l(v_1 x ... x v_l x v x nu)>. Its domain is the
// algebra sector even when lambda lives on a module.
class AlphaFunctional final : public Functional {
 public:
  AlphaFunctional(const Lab& lab, std::shared_ptr<const Functional> lambda,
                  std::vector<GradedVector<Rational>> vs, GradedVector<Rational> v,
                  FunctionalF nu, Disk d, TruncationPolicy policy);

  Cplx apply(const GradedVector<Cplx>& w) const override;
  long max_output_level() const override { return -1; }
  const Sector& domain_sector() const override { return algebra_sector_; }

 private:
  const Lab* lab_;
  std::shared_ptr<const Functional> lambda_;
  std::vector<GradedVector<Rational>> vs_;
  GradedVector<Rational> v_;
  FunctionalF nu_;
  Disk d_;
  TruncationPolicy policy_;
  Sector algebra_sector_ = Sector::algebra();
  GradedVector<Cplx> h2_;   // contour nu: e_l realized as a mode chain
  bool h2_ready_ = false;
};

// beta_{k,l}(mu, nu) for the disk d: a functional on arity k+l+1 data.
struct BetaFunctional {
  FunctionalF mu;
  FunctionalF nu;
  Disk d;
};

BetaFunctional beta_compose(const FunctionalF& mu, const FunctionalF& nu, const Disk& d);

// definition route: mu(g_k(alpha_l(lambda x vs x v x nu) x us x u)) with the
// outer contour evaluated by quadrature
Cplx beta_apply_nested(const Lab& lab, const BetaFunctional& beta,
                       std::shared_ptr<const Functional> lambda,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& u,
                       const std::vector<GradedVector<Rational>>& vs,
                       const GradedVector<Rational>& v, const TruncationPolicy& policy,
                       const QuadratureOptions& quad = {});

// collapsed route via exact mode extraction of the outer contour
Cplx beta_apply_direct(const Lab& lab, const BetaFunctional& beta,
                       std::shared_ptr<const Functional> lambda,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& u,
                       const std::vector<GradedVector<Rational>>& vs,
                       const GradedVector<Rational>& v, const TruncationPolicy& policy);

// The sewing-extension route for vectors rebuilt from contour functionals:
// e_{k+l+1}(us x u x vs x v x beta_{k,l}(mu, nu)) assembled level by level
// through the nested definition (inner Q-vector sum to q_depth, outer contours
// by quadrature). The restriction theorem says this equals
// sew_vectors(chain(us,u,mu), chain(vs,v,nu)) on every level.
GradedVector<Cplx> nu_bar_route(const Lab& lab,
                                const std::vector<GradedVector<Rational>>& us,
                                const GradedVector<Rational>& u, const FunctionalF& mu,
                                const std::vector<GradedVector<Rational>>& vs,
                                const GradedVector<Rational>& v, const FunctionalF& nu,
                                const Disk& d, const TruncationPolicy& policy,
                                long q_depth, int nodes);

// --------------------------------------------------------------------------
// convergence checks
// --------------------------------------------------------------------------

struct FubiniReport {
  Cplx inner_weight_first{0.0, 0.0};  // sum_m [ sum_n ... ]
  Cplx outer_weight_first{0.0, 0.0};  // sum_n [ sum_m ... ]
  double difference = 0.0;
  TailReport tail;  // tail of the m-sum
  bool agree = false;
};

// both iteration orders of the double sum
// sum_m sum_n lambda(P_n(Y(r1^{L0}u, z) r2^{L0} P_m(Q(us, v; point))))
FubiniReport fubini_check(const Lab& lab, std::shared_ptr<const Functional> lambda,
                          const GradedVector<Rational>& u,
                          const std::vector<GradedVector<Rational>>& us,
                          const GradedVector<Rational>& v, const Disk& d,
                          const std::vector<Cplx>& point, const TruncationPolicy& policy);

struct SewingIdentityReport {
  Cplx lhs{0.0, 0.0};
  Cplx rhs{0.0, 0.0};
  double rel_error = 0.0;
  TailReport tail;  // diagonal tail of the double sum
};

// the shifted-correlator identity: the double sum over projections of the two
// Q-vectors, sewn at d and paired with lambda, against the (k+l+1)-point
// g-function at the substituted point (z + r1 zeta_i, z, r2 eta_j)
SewingIdentityReport sewing_identity_check(
    const Lab& lab, const GradedFunctional& lambda,
    const std::vector<GradedVector<Rational>>& us, const GradedVector<Rational>& u,
    const std::vector<GradedVector<Rational>>& vs, const GradedVector<Rational>& v,
    const Disk& d, const std::vector<Cplx>& zeta, const std::vector<Cplx>& eta,
    const TruncationPolicy& policy);

}  // namespace voalab

#endif
