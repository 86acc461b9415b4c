#ifndef VOALAB_MODULE_FOCK_HPP
#define VOALAB_MODULE_FOCK_HPP

#include <nlohmann/json.hpp>

#include "voalab/completion.hpp"

namespace voalab {

// Fock module with momentum p; weights sit at p^2/2 + N.
struct ModuleSpec {
  std::string name = "fock";
  Rational momentum = 1;

  Sector sector() const { return Sector::module(momentum); }
  Rational base_weight() const { return momentum * momentum / 2; }

  static ModuleSpec from_json(const nlohmann::json& j) {
    ModuleSpec out;
    if (!j.is_object()) throw std::invalid_argument("module spec must be an object");
    out.name = j.value("module", std::string("fock"));
    if (out.name != "fock")
      throw std::invalid_argument("unknown module: " + out.name);
    if (j.contains("p")) {
      const auto& p = j.at("p");
      out.momentum =
          p.is_string() ? parse_rational(p.get<std::string>()) : Rational(p.get<long>());
    }
    return out;
  }
  nlohmann::json to_json() const {
    return {{"module", name}, {"p", rational_to_string(momentum)}};
  }
};

// Module-sector mirrors of the algebra operations. All of them delegate to
// the sector-aware engine; the wrappers pin the sector contracts.

template <class S>
LaurentSeriesTrunc<S> module_vertex_series(const Heisenberg<S>& alg,
                                           const GradedVector<S>& u,
                                           const GradedVector<S>& w,
                                           const TruncationPolicy& policy) {
  if (!u.sector().is_algebra() || !w.sector().is_module())
    throw std::invalid_argument("module_vertex_series: sector mismatch");
  return alg.vertex_series(u, w, policy);
}

inline SewResult sew_module(const Lab& lab, const GradedVector<Cplx>& h,
                            const GradedVector<Cplx>& hw, const Disk& d,
                            const TruncationPolicy& policy) {
  if (!hw.sector().is_module())
    throw std::invalid_argument("sew_module: second input must be a module vector");
  return sew_vectors(lab, h, hw, d, policy);
}

inline GradedVector<Cplx> module_q_vector(const Heisenberg<Rational>& alg,
                                          const std::vector<GradedVector<Rational>>& us,
                                          const GradedVector<Rational>& w,
                                          const std::vector<Cplx>& point,
                                          const TruncationPolicy& policy) {
  if (!w.sector().is_module())
    throw std::invalid_argument("module_q_vector: module vector required");
  return q_vector(alg, us, w, point, policy);
}

inline GEvalResult g_W_eval(const Lab& lab, const Functional& lambda,
                            const std::vector<GradedVector<Rational>>& us,
                            const GradedVector<Rational>& w,
                            const std::vector<Cplx>& point,
                            const TruncationPolicy& policy) {
  if (!w.sector().is_module() || !lambda.domain_sector().is_module())
    throw std::invalid_argument("g_W_eval: module functional and vector required");
  return g_eval(lab, lambda, us, w, point, policy);
}

inline DiamondFunctional diamond_W(const Lab& lab, const GradedVector<Rational>& u,
                                   std::shared_ptr<const Functional> lambda_W,
                                   const Disk& d, const TruncationPolicy& policy) {
  if (!lambda_W->domain_sector().is_module())
    throw std::invalid_argument("diamond_W: module functional required");
  return diamond(lab, u, std::move(lambda_W), d, policy);
}

// beta^W consumes an algebra-side mu and a module-side nu: the alpha map
// sends module data to a functional on the algebra.
inline Cplx beta_W_apply_nested(const Lab& lab, const BetaFunctional& beta,
                                std::shared_ptr<const Functional> lambda_W,
                                const std::vector<GradedVector<Rational>>& us,
                                const GradedVector<Rational>& u,
                                const std::vector<GradedVector<Rational>>& vs,
                                const GradedVector<Rational>& w,
                                const TruncationPolicy& policy,
                                const QuadratureOptions& quad = {}) {
  if (!lambda_W->domain_sector().is_module() || !w.sector().is_module())
    throw std::invalid_argument("beta_W: module data required");
  return beta_apply_nested(lab, beta, std::move(lambda_W), us, u, vs, w, policy, quad);
}

}  // namespace voalab

#endif
