#include "voalab/completion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace voalab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<Cplx> scaled_points(const std::vector<Cplx>& pts, double factor) {
  std::vector<Cplx> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts[i] * factor;
  return out;
}

long homogeneous_level(const GradedVector<Rational>& v, const char* what) {
  if (v.is_zero() || !v.is_homogeneous())
    throw std::invalid_argument(std::string(what) + ": homogeneous nonzero input required");
  return v.max_level();
}

}  // namespace

const QFamily& Lab::family(const std::vector<GradedVector<Rational>>& us,
                           const GradedVector<Rational>& v, long max_level) const {
  std::ostringstream key;
  for (const auto& u : us) key << u.to_string() << " (x) ";
  key << v.to_string() << " @" << max_level;
  auto it = families_.find(key.str());
  if (it == families_.end())
    it = families_.emplace(key.str(), build_q_family(exact_, us, v, max_level)).first;
  return it->second;
}

// --------------------------------------------------------------------------
// sewing on vectors
// --------------------------------------------------------------------------

SewResult sew_vectors(const Lab& lab, const GradedVector<Cplx>& h1,
                      const GradedVector<Cplx>& h2, const Disk& d,
                      const TruncationPolicy& policy) {
  policy.validate();
  if (!d.valid()) throw std::invalid_argument("sew_vectors: invalid disk");
  if (!h1.sector().is_algebra())
    throw std::invalid_argument("sew_vectors: first input must be an algebra vector");

  SewResult out;
  out.vec = GradedVector<Cplx>(h2.sector());
  GradedVector<Cplx> h1s = scale_L0(d.r1, h1);
  GradedVector<Cplx> h2s = scale_L0(d.r2, h2);

  std::vector<Cplx> increments(policy.max_weight + 1, Cplx(0.0, 0.0));
  for (long lu : h1s.levels()) {
    GradedVector<Cplx> a = h1s.project_level(lu);
    for (long lv : h2s.levels()) {
      GradedVector<Cplx> b = h2s.project_level(lv);
      for (long out_level = 0; out_level <= policy.max_weight; ++out_level) {
        const long n = lu + lv - 1 - out_level;
        GradedVector<Cplx> term = lab.floating().mode_act(a, n, b);
        if (term.is_zero()) continue;
        term = term * cpow_int(d.z, out_level - lu - lv);
        increments[out_level] += Cplx(term.magnitude(), 0.0);
        out.vec += term;
      }
    }
  }
  out.report = fit_tail(increments, policy);
  return out;
}

// --------------------------------------------------------------------------
// diamond
// --------------------------------------------------------------------------

DiamondFunctional::DiamondFunctional(const Lab& lab,
                                     std::shared_ptr<const Functional> inner,
                                     GradedVector<Cplx> u, Disk d,
                                     TruncationPolicy policy)
    : lab_(&lab), inner_(std::move(inner)), u_(std::move(u)), d_(d),
      policy_(policy) {
  if (!d_.valid()) throw std::invalid_argument("diamond: invalid disk");
  if (!u_.sector().is_algebra())
    throw std::invalid_argument("diamond: u must be an algebra vector");
}

TailReport DiamondFunctional::apply_with_report(const GradedVector<Cplx>& w) const {
  const long inner_cap = inner_->max_output_level();
  TruncationPolicy sew_policy = policy_;
  if (inner_cap >= 0) sew_policy.max_weight = std::min(policy_.max_weight, inner_cap);
  SewResult sewn = sew_vectors(*lab_, u_, w, d_, sew_policy);
  std::vector<Cplx> increments(sew_policy.max_weight + 1, Cplx(0.0, 0.0));
  for (long n = 0; n <= sew_policy.max_weight; ++n)
    increments[n] = inner_->apply(sewn.vec.project_level(n));
  if (inner_cap >= 0 && inner_cap < policy_.max_weight) {
    // levels beyond the functional's support contribute exactly zero
    increments.resize(inner_cap + 1 + policy_.tail_window, Cplx(0.0, 0.0));
  }
  return fit_tail(increments, policy_);
}

DiamondFunctional diamond(const Lab& lab, const GradedVector<Rational>& u,
                          std::shared_ptr<const Functional> lambda, const Disk& d,
                          const TruncationPolicy& policy) {
  return DiamondFunctional(lab, std::move(lambda), to_complex(u), d, policy);
}

// --------------------------------------------------------------------------
// g_k evaluation
// --------------------------------------------------------------------------

GEvalResult g_eval(const Lab& lab, const Functional& lambda,
                   const std::vector<GradedVector<Rational>>& us,
                   const GradedVector<Rational>& v, const std::vector<Cplx>& point,
                   const TruncationPolicy& policy) {
  policy.validate();
  if (!(lambda.domain_sector() == v.sector()))
    throw std::invalid_argument("g_eval: functional/vector sector mismatch");
  if (point.size() != us.size())
    throw std::invalid_argument("g_eval: point arity mismatch");

  GEvalResult out;
  out.increments.assign(policy.max_weight + 1, Cplx(0.0, 0.0));

  if (us.empty()) {
    GradedVector<Cplx> w = to_complex(v);
    for (long l = 0; l <= policy.max_weight; ++l)
      out.increments[l] = lambda.apply(w.project_level(l));
    out.report = fit_tail(out.increments, policy);
    return out;
  }

  if (!in_Mk_lt1(point))
    throw std::domain_error("g_eval: point outside M^k_{<1}");

  long cap = policy.max_weight;
  const long lam_cap = lambda.max_output_level();
  if (lam_cap >= 0) cap = std::min(cap, lam_cap);

  const QFamily& fam = lab.family(us, v, cap);
  auto levels = fam.eval_levels(point);
  for (const auto& [l, vec] : levels) {
    if (l > policy.max_weight) continue;
    out.increments[l] = lambda.apply(vec);
  }
  out.report = fit_tail(out.increments, policy);
  return out;
}

std::vector<Rational> g_increments_exact(const Lab& lab, const GradedFunctional& lambda,
                                         const std::vector<GradedVector<Rational>>& us,
                                         const GradedVector<Rational>& v,
                                         const std::vector<Rational>& point,
                                         const TruncationPolicy& policy) {
  policy.validate();
  if (!(lambda.domain_sector() == v.sector()))
    throw std::invalid_argument("g_eval: functional/vector sector mismatch");
  if (point.size() != us.size())
    throw std::invalid_argument("g_eval: point arity mismatch");
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] == 0 || abs(point[i]) >= 1)
      throw std::domain_error("g_eval: exact point outside M^k_{<1}");
    for (std::size_t j = i + 1; j < point.size(); ++j)
      if (point[i] == point[j])
        throw std::domain_error("g_eval: exact point outside M^k_{<1}");
  }

  long cap = std::min(policy.max_weight, std::max(lambda.max_output_level(), 0L));
  std::vector<Rational> increments(cap + 1, Rational(0));
  if (us.empty()) {
    for (long l = 0; l <= cap; ++l)
      increments[l] = lambda.apply_exact(v.project_level(l));
    return increments;
  }
  const QFamily& fam = lab.family(us, v, cap);
  auto levels = fam.eval_levels(point);
  for (const auto& [l, vec] : levels)
    if (l <= cap) increments[l] = lambda.apply_exact(vec);
  return increments;
}

IotaReport iota_independence_check(const Lab& lab, const Functional& lambda,
                                   const std::vector<GradedVector<Rational>>& us,
                                   const GradedVector<Rational>& v,
                                   const std::vector<Cplx>& z0_samples,
                                   const std::vector<Cplx>& point,
                                   const TruncationPolicy& policy,
                                   const GradedVector<Rational>* spectator) {
  GradedVector<Rational> spec =
      spectator ? *spectator : lab.exact().vacuum();
  std::vector<GradedVector<Rational>> aug;
  aug.push_back(spec);
  for (const auto& u : us) aug.push_back(u);

  IotaReport out;
  for (const Cplx& z0 : z0_samples) {
    std::vector<Cplx> pt;
    pt.push_back(z0);
    for (const Cplx& z : point) pt.push_back(z);
    out.values.push_back(g_eval(lab, lambda, aug, v, pt, policy).report.value);
  }
  for (std::size_t i = 0; i < out.values.size(); ++i)
    for (std::size_t j = i + 1; j < out.values.size(); ++j)
      out.max_variation =
          std::max(out.max_variation, std::abs(out.values[i] - out.values[j]));
  return out;
}

Cplx gamma_contour(const Lab& lab, const Functional& lambda,
                   const GradedVector<Rational>& u0,
                   const std::vector<GradedVector<Rational>>& us,
                   const GradedVector<Rational>& v, const std::vector<Cplx>& point,
                   double eps, const TruncationPolicy& policy,
                   const QuadratureOptions& quad) {
  if (!(eps > 0 && eps < 1))
    throw std::invalid_argument("gamma_contour: radius must lie in (0,1)");
  std::vector<GradedVector<Rational>> aug;
  aug.push_back(u0);
  for (const auto& u : us) aug.push_back(u);

  auto value_at = [&](int nodes) {
    Cplx acc(0.0, 0.0);
    for (int t = 0; t < nodes; ++t) {
      double th = kTwoPi * t / nodes;
      std::vector<Cplx> pt;
      pt.push_back(Cplx(eps * std::cos(th), eps * std::sin(th)));
      for (const Cplx& z : point) pt.push_back(z);
      acc += g_eval(lab, lambda, aug, v, pt, policy).report.value;
    }
    return acc / static_cast<double>(nodes);
  };

  int nodes = quad.min_nodes;
  Cplx last = value_at(nodes);
  while (2 * nodes <= quad.max_nodes) {
    nodes *= 2;
    Cplx next = value_at(nodes);
    if (std::abs(next - last) <= quad.tolerance) return next;
    last = next;
  }
  return last;
}

// --------------------------------------------------------------------------
// functionals on F_k
// --------------------------------------------------------------------------

namespace {

Cplx contour_quadrature(const Lab& lab, const FunctionalF& mu, const Functional& lambda,
                        const std::vector<GradedVector<Rational>>& us,
                        const GradedVector<Rational>& v, const TruncationPolicy& policy,
                        int nodes) {
  const int k = mu.arity();
  std::vector<int> idx(k, 0);
  Cplx acc(0.0, 0.0);
  std::vector<Cplx> pt(k);
  while (true) {
    Cplx weight(1.0, 0.0);
    for (int i = 0; i < k; ++i) {
      double th = kTwoPi * idx[i] / nodes;
      double eps = mu.radii()[i];
      pt[i] = Cplx(eps * std::cos(th), eps * std::sin(th));
      long mi = mu.modes()[i];
      weight *= std::pow(eps, static_cast<double>(mi + 1)) *
                Cplx(std::cos((mi + 1) * th), std::sin((mi + 1) * th));
    }
    acc += weight * g_eval(lab, lambda, us, v, pt, policy).report.value;
    int i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < nodes) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
  double norm = std::pow(static_cast<double>(nodes), k);
  return acc / norm;
}

}  // namespace

Cplx functional_F_apply(const Lab& lab, const FunctionalF& mu, const Functional& lambda,
                        const std::vector<GradedVector<Rational>>& us,
                        const GradedVector<Rational>& v, const TruncationPolicy& policy,
                        FRoute route, const QuadratureOptions& quad) {
  if (mu.arity() != static_cast<int>(us.size()))
    throw std::invalid_argument("functional_F_apply: arity mismatch");
  if (mu.kind() == FunctionalF::Kind::point)
    return g_eval(lab, lambda, us, v, mu.eval_point(), policy).report.value;

  if (route == FRoute::algebraic) {
    GradedVector<Rational> chain = contour_chain(lab.exact(), us, v, mu.modes());
    return lambda.apply(to_complex(chain));
  }

  if (mu.arity() == 0) {
    // zero contours: the identity extraction, g_0 evaluation
    return g_eval(lab, lambda, us, v, {}, policy).report.value;
  }

  int nodes = quad.min_nodes;
  Cplx last = contour_quadrature(lab, mu, lambda, us, v, policy, nodes);
  while (2 * nodes <= quad.max_nodes) {
    nodes *= 2;
    Cplx next = contour_quadrature(lab, mu, lambda, us, v, policy, nodes);
    if (std::abs(next - last) <= quad.tolerance) return next;
    last = next;
  }
  return last;
}

Rational functional_F_apply_exact(const Lab& lab, const FunctionalF& mu,
                                  const GradedFunctional& lambda,
                                  const std::vector<GradedVector<Rational>>& us,
                                  const GradedVector<Rational>& v) {
  if (mu.kind() != FunctionalF::Kind::contour)
    throw std::invalid_argument("exact route requires a contour functional");
  if (mu.arity() != static_cast<int>(us.size()))
    throw std::invalid_argument("functional_F_apply: arity mismatch");
  return lambda.apply_exact(contour_chain(lab.exact(), us, v, mu.modes()));
}

// --------------------------------------------------------------------------
// alpha and beta
// --------------------------------------------------------------------------

AlphaFunctional::AlphaFunctional(const Lab& lab,
                                 std::shared_ptr<const Functional> lambda,
                                 std::vector<GradedVector<Rational>> vs,
                                 GradedVector<Rational> v, FunctionalF nu, Disk d,
                                 TruncationPolicy policy)
    : lab_(&lab), lambda_(std::move(lambda)), vs_(std::move(vs)), v_(std::move(v)),
      nu_(std::move(nu)), d_(d), policy_(policy) {
  if (!d_.valid()) throw std::invalid_argument("alpha: invalid disk");
  if (nu_.arity() != static_cast<int>(vs_.size()))
    throw std::invalid_argument("alpha: nu arity mismatch");
  if (nu_.kind() == FunctionalF::Kind::contour) {
    h2_ = to_complex(contour_chain(lab.exact(), vs_, v_, nu_.modes()));
    h2_ready_ = true;
  }
}

Cplx AlphaFunctional::apply(const GradedVector<Cplx>& w) const {
  if (!w.sector().is_algebra())
    throw std::invalid_argument("alpha functional acts on algebra vectors");
  DiamondFunctional dw(*lab_, lambda_, w, d_, policy_);
  if (h2_ready_) return dw.apply(h2_);
  return g_eval(*lab_, dw, vs_, v_, nu_.eval_point(), policy_).report.value;
}

BetaFunctional beta_compose(const FunctionalF& mu, const FunctionalF& nu,
                            const Disk& d) {
  if (!d.valid()) throw std::invalid_argument("beta_compose: invalid disk");
  return BetaFunctional{mu, nu, d};
}

Cplx beta_apply_nested(const Lab& lab, const BetaFunctional& beta,
                       std::shared_ptr<const Functional> lambda,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& u,
                       const std::vector<GradedVector<Rational>>& vs,
                       const GradedVector<Rational>& v, const TruncationPolicy& policy,
                       const QuadratureOptions& quad) {
  AlphaFunctional alpha(lab, std::move(lambda), vs, v, beta.nu, beta.d, policy);
  return functional_F_apply(lab, beta.mu, alpha, us, u, policy, FRoute::quadrature,
                            quad);
}

Cplx beta_apply_direct(const Lab& lab, const BetaFunctional& beta,
                       std::shared_ptr<const Functional> lambda,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& u,
                       const std::vector<GradedVector<Rational>>& vs,
                       const GradedVector<Rational>& v, const TruncationPolicy& policy) {
  AlphaFunctional alpha(lab, std::move(lambda), vs, v, beta.nu, beta.d, policy);
  return functional_F_apply(lab, beta.mu, alpha, us, u, policy, FRoute::algebraic);
}

GradedVector<Cplx> nu_bar_route(const Lab& lab,
                                const std::vector<GradedVector<Rational>>& us,
                                const GradedVector<Rational>& u, const FunctionalF& mu,
                                const std::vector<GradedVector<Rational>>& vs,
                                const GradedVector<Rational>& v, const FunctionalF& nu,
                                const Disk& d, const TruncationPolicy& policy,
                                long q_depth, int nodes) {
  if (mu.kind() != FunctionalF::Kind::contour ||
      nu.kind() != FunctionalF::Kind::contour)
    throw std::invalid_argument("nu_bar_route: contour functionals required");
  if (!d.valid()) throw std::invalid_argument("nu_bar_route: invalid disk");
  const int k = mu.arity();
  if (k != static_cast<int>(us.size()) || nu.arity() != static_cast<int>(vs.size()))
    throw std::invalid_argument("nu_bar_route: arity mismatch");

  GradedVector<Cplx> h2 = to_complex(contour_chain(lab.exact(), vs, v, nu.modes()));

  if (k == 0) {
    // no outer contours: the inner element is exact
    GradedVector<Cplx> w = to_complex(u);
    return sew_vectors(lab, w, h2, d, policy).vec;
  }

  const QFamily& fam = lab.family(us, u, q_depth);
  GradedVector<Cplx> acc(h2.sector());
  std::vector<int> idx(k, 0);
  std::vector<Cplx> pt(k);
  const double norm = std::pow(static_cast<double>(nodes), k);
  while (true) {
    Cplx weight(1.0, 0.0);
    for (int i = 0; i < k; ++i) {
      double th = kTwoPi * idx[i] / nodes;
      double eps = mu.radii()[i];
      pt[i] = Cplx(eps * std::cos(th), eps * std::sin(th));
      long mi = mu.modes()[i];
      weight *= std::pow(eps, static_cast<double>(mi + 1)) *
                Cplx(std::cos((mi + 1) * th), std::sin((mi + 1) * th));
    }
    GradedVector<Cplx> w = fam.eval(pt);
    SewResult sewn = sew_vectors(lab, w, h2, d, policy);
    acc += sewn.vec * (weight / norm);
    int i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < nodes) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
  return acc;
}

// --------------------------------------------------------------------------
// convergence checks
// --------------------------------------------------------------------------

FubiniReport fubini_check(const Lab& lab, std::shared_ptr<const Functional> lambda,
                          const GradedVector<Rational>& u,
                          const std::vector<GradedVector<Rational>>& us,
                          const GradedVector<Rational>& v, const Disk& d,
                          const std::vector<Cplx>& point,
                          const TruncationPolicy& policy) {
  policy.validate();
  if (!d.valid()) throw std::invalid_argument("fubini_check: invalid disk");
  FubiniReport out;

  DiamondFunctional dw(lab, lambda, to_complex(u), d, policy);

  // order one: for each input weight m, sum the output weights first
  std::vector<Cplx> increments(policy.max_weight + 1, Cplx(0.0, 0.0));
  GradedVector<Cplx> total(v.sector());
  if (us.empty()) {
    GradedVector<Cplx> w = to_complex(v);
    for (long m = 0; m <= policy.max_weight; ++m)
      increments[m] = dw.apply(w.project_level(m));
    total = w;
  } else {
    const QFamily& fam = lab.family(us, v, policy.max_weight);
    if (!in_Mk_lt1(point))
      throw std::domain_error("fubini_check: point outside M^k_{<1}");
    auto levels = fam.eval_levels(point);
    for (const auto& [m, vec] : levels) {
      if (m > policy.max_weight) continue;
      increments[m] = dw.apply(vec);
      total += vec;
    }
  }
  for (const Cplx& c : increments) out.inner_weight_first += c;
  out.tail = fit_tail(increments, policy);

  // order two: sum the input weights first, then the output weights
  const long lam_cap = lambda->max_output_level();
  TruncationPolicy outer = policy;
  if (lam_cap >= 0) outer.max_weight = std::min(policy.max_weight, lam_cap);
  SewResult sewn = sew_vectors(lab, to_complex(u), total, d, outer);
  for (long n = 0; n <= outer.max_weight; ++n)
    out.outer_weight_first += lambda->apply(sewn.vec.project_level(n));

  out.difference = std::abs(out.inner_weight_first - out.outer_weight_first);
  out.agree = out.difference <=
              std::max(policy.tolerance, 1e-13) *
                  std::max(1.0, std::abs(out.inner_weight_first));
  return out;
}

SewingIdentityReport sewing_identity_check(
    const Lab& lab, const GradedFunctional& lambda,
    const std::vector<GradedVector<Rational>>& us, const GradedVector<Rational>& u,
    const std::vector<GradedVector<Rational>>& vs, const GradedVector<Rational>& v,
    const Disk& d, const std::vector<Cplx>& zeta, const std::vector<Cplx>& eta,
    const TruncationPolicy& policy) {
  policy.validate();
  if (!d.valid()) throw std::invalid_argument("sewing_identity_check: invalid disk");
  const int k = static_cast<int>(us.size());
  const int l = static_cast<int>(vs.size());
  if (static_cast<int>(zeta.size()) != k || static_cast<int>(eta.size()) != l)
    throw std::invalid_argument("sewing_identity_check: point arity mismatch");
  if (!us.empty() && !in_Mk_lt1(zeta))
    throw std::domain_error("sewing_identity_check: zeta outside M^k_{<1}");
  if (!vs.empty() && !in_Mk_lt1(eta))
    throw std::domain_error("sewing_identity_check: eta outside M^l_{<1}");

  long scaleA_level = homogeneous_level(u, "sewing_identity_check");
  for (const auto& x : us) scaleA_level += homogeneous_level(x, "sewing_identity_check");
  long scaleB_level = 0;
  for (const auto& x : vs) scaleB_level += homogeneous_level(x, "sewing_identity_check");
  const long lv = homogeneous_level(v, "sewing_identity_check");

  const double scaleA = std::pow(d.r1, static_cast<double>(scaleA_level));
  const double base_v = to_double(v.sector().base_weight());
  const double scaleB = std::pow(d.r2, static_cast<double>(scaleB_level)) *
                        std::pow(d.r2, base_v + static_cast<double>(lv));

  SewingIdentityReport out;

  // right side: the (k+l+1)-point g-function at the substituted point
  {
    std::vector<GradedVector<Rational>> insertions = us;
    insertions.push_back(u);
    for (const auto& x : vs) insertions.push_back(x);
    std::vector<Cplx> pts;
    for (const Cplx& zi : zeta) pts.push_back(d.z + d.r1 * zi);
    pts.push_back(d.z);
    for (const Cplx& ej : eta) pts.push_back(d.r2 * ej);
    if (!in_Mk_lt1(pts))
      throw std::domain_error("sewing_identity_check: degenerate sewing geometry");
    const QFamily& famC =
        lab.family(insertions, v, std::max(lambda.max_output_level(), 0L));
    out.rhs = lambda.apply(famC.eval(pts)) * scaleA * scaleB;
  }

  // left side: double sum of sewn projections
  {
    const QFamily& famA = lab.family(us, u, policy.max_weight);
    const QFamily& famB = lab.family(vs, v, policy.max_weight);
    auto levelsA = famA.eval_levels(scaled_points(zeta, d.r1));
    auto levelsB = famB.eval_levels(scaled_points(eta, d.r2));

    std::vector<long> lam_levels;
    for (const auto& [p, c] : lambda.base().terms()) {
      long lp = p.level();
      if (std::find(lam_levels.begin(), lam_levels.end(), lp) == lam_levels.end())
        lam_levels.push_back(lp);
    }

    std::vector<Cplx> diag(2 * policy.max_weight + 1, Cplx(0.0, 0.0));
    for (const auto& [n, rawA] : levelsA) {
      if (n > policy.max_weight) continue;
      GradedVector<Cplx> A = rawA * Cplx(scaleA, 0.0);
      for (const auto& [m, rawB] : levelsB) {
        if (m > policy.max_weight) continue;
        GradedVector<Cplx> B = rawB * Cplx(scaleB, 0.0);
        GradedVector<Cplx> paired(v.sector());
        for (long p : lam_levels) {
          const long mode = n + m - 1 - p;
          GradedVector<Cplx> term = lab.floating().mode_act(A, mode, B);
          if (term.is_zero()) continue;
          paired += term * cpow_int(d.z, p - n - m);
        }
        diag[n + m] += lambda.apply(paired);
      }
    }
    out.tail = fit_tail(diag, policy);
    out.lhs = out.tail.value;
  }

  out.rel_error = std::abs(out.lhs - out.rhs) /
                  std::max(std::abs(out.rhs), 1e-300);
  return out;
}

}  // namespace voalab
