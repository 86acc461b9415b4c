#include "voalab/correlators.hpp"

#include <algorithm>
#include <sstream>

namespace voalab {

bool in_Mk(const std::vector<Cplx>& z, double eps) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) <= eps) return false;
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) <= eps) return false;
  }
  return true;
}

bool in_Mk_lt1(const std::vector<Cplx>& z, double eps) {
  if (!in_Mk(z, eps)) return false;
  for (const Cplx& x : z)
    if (std::abs(x) >= 1.0) return false;
  return true;
}

QFamily build_q_family(const Heisenberg<Rational>& alg,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& v, long max_level) {
  const int k = static_cast<int>(us.size());
  QFamily fam;
  fam.arity = k;
  fam.sector = v.sector();
  fam.max_level = max_level;
  fam.zero_poles.assign(k, 0);
  if (v.is_zero()) return fam;
  for (const auto& u : us)
    if (u.is_zero()) return fam;

  if (k == 0) {
    for (const auto& [p, c] : v.terms())
      if (p.level() <= max_level)
        fam.numerators.emplace(p, Polynomial::constant(0, c));
    return fam;
  }

  // pole-order bounds: a_i = wt u_i + lvl v, b_ij = wt u_i + wt u_j
  const long lv = v.max_level();
  std::vector<long> lu(k);
  for (int i = 0; i < k; ++i) lu[i] = us[i].max_level();
  long deg_den = 0;
  for (int i = 0; i < k; ++i) {
    fam.zero_poles[i] = lu[i] + lv;
    deg_den += fam.zero_poles[i];
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      long b = lu[i] + lu[j];
      if (b > 0) fam.diag_poles[{i, j}] = b;
      deg_den += b;
    }

  long sum_lu_min = 0;
  for (int i = 0; i < k; ++i) sum_lu_min += us[i].min_level();
  const long degree_bound = max_level + deg_den - (sum_lu_min + v.min_level());
  fam.certificate_depth = degree_bound + 2;

  // expanded bounding denominator
  Polynomial den(k);
  {
    Polynomial::Expo e(k, 0);
    for (int i = 0; i < k; ++i) e[i] = static_cast<int32_t>(fam.zero_poles[i]);
    den = Polynomial::monomial(k, e, 1);
    for (const auto& [ij, b] : fam.diag_poles)
      den = den * Polynomial::diff_power(k, ij.first, ij.second, b);
  }

  std::vector<long> lo(k);
  for (int i = 0; i < k; ++i) {
    long deg_i = fam.zero_poles[i];
    for (const auto& [ij, b] : fam.diag_poles)
      if (ij.first == i || ij.second == i) deg_i += b;
    lo[i] = -(fam.certificate_depth + deg_i);
  }

  // F = series * den, accumulated coefficient by coefficient
  std::unordered_map<std::vector<int32_t>, GradedVector<Rational>, ExpoHash> F;
  for_each_chain<Rational>(
      alg, us, v, max_level, lo,
      [&](const std::vector<int32_t>& f, const GradedVector<Rational>& vec) {
        for (const auto& [m, cd] : den.terms()) {
          std::vector<int32_t> e(k);
          for (int i = 0; i < k; ++i) e[i] = f[i] + m[i];
          auto it = F.find(e);
          if (it == F.end()) it = F.emplace(e, GradedVector<Rational>(v.sector())).first;
          for (const auto& [p, c] : vec.terms()) it->second.add_term(p, c * cd);
        }
      });

  // certificate: inside the checked box, every coefficient with a negative
  // exponent must vanish exactly
  for (const auto& [e, vec] : F) {
    bool in_box = true, negative = false;
    for (int i = 0; i < k; ++i) {
      if (e[i] < -fam.certificate_depth) in_box = false;
      if (e[i] < 0) negative = true;
    }
    if (!negative || !in_box) continue;
    if (!vec.is_zero()) {
      std::ostringstream msg;
      msg << "pole bound violated: nonzero expansion coefficient at exponents (";
      for (int i = 0; i < k; ++i) msg << (i ? "," : "") << e[i];
      msg << ")";
      throw std::logic_error(msg.str());
    }
  }

  for (const auto& [e, vec] : F) {
    bool poly = true;
    for (int i = 0; i < k; ++i)
      if (e[i] < 0) poly = false;
    if (!poly) continue;
    for (const auto& [p, c] : vec.terms()) {
      auto it = fam.numerators.find(p);
      if (it == fam.numerators.end())
        it = fam.numerators.emplace(p, Polynomial(k)).first;
      it->second.add_term(e, c);
    }
  }
  return fam;
}

GradedVector<Cplx> q_vector(const Heisenberg<Rational>& alg,
                            const std::vector<GradedVector<Rational>>& us,
                            const GradedVector<Rational>& v,
                            const std::vector<Cplx>& point,
                            const TruncationPolicy& policy) {
  policy.validate();
  if (static_cast<int>(point.size()) != static_cast<int>(us.size()))
    throw std::invalid_argument("q_vector: point arity mismatch");
  if (!in_Mk(point))
    throw std::domain_error("q_vector: point outside M^k (coincident or zero coordinate)");
  QFamily fam = build_q_family(alg, us, v, policy.max_weight);
  return fam.eval(point);
}

RationalCorrelator reconstruct_rational(const Heisenberg<Rational>& alg,
                                        const DualVector<Rational>& vp,
                                        const std::vector<GradedVector<Rational>>& us,
                                        const GradedVector<Rational>& v) {
  if (!(vp.sector() == v.sector()))
    throw std::invalid_argument("reconstruct_rational: dual/vector sector mismatch");
  const int k = static_cast<int>(us.size());
  if (vp.is_zero() || v.is_zero()) return RationalCorrelator::zero(k);
  QFamily fam = build_q_family(alg, us, v, std::max<long>(vp.max_level(), 0));
  return fam.pair_dual(vp);
}

// ---------------------------------------------------------------------------
// iterate-vs-product associativity
// ---------------------------------------------------------------------------

namespace {

// Laurent polynomial in one variable with rational coefficients.
using Laurent1 = std::map<long, Rational>;

void laurent_add(Laurent1& dst, long e, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = dst.emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

}  // namespace

bool iterate_product_check(const Heisenberg<Rational>& alg,
                           const DualVector<Rational>& vp,
                           const GradedVector<Rational>& u1,
                           const GradedVector<Rational>& u2,
                           const GradedVector<Rational>& v, long order_cap,
                           std::string* detail) {
  // product side: R = <vp, Y(u1,z1) Y(u2,z2) v> reconstructed, re-expanded in
  // w = z1 - z2 around the diagonal; coefficients are Laurent polynomials in z2
  RationalCorrelator R = reconstruct_rational(alg, vp, {u1, u2}, v);
  const long b = R.diag_pole(0, 1);
  const long a1 = R.zero_pole_orders()[0];
  const long a2 = R.zero_pole_orders()[1];

  std::map<long, Laurent1> product;  // w-order -> Laurent polynomial in z2
  // N(z2 + w, z2) expanded binomially, then multiplied by the expansion of
  // (z2 + w)^{-a1} up to the needed w order
  const long wmax = order_cap;
  std::map<long, Laurent1> num_sub;  // w-order -> z2-Laurent, N(z2+w, z2)
  for (const auto& [e, c] : R.numerator().terms()) {
    for (long t = 0; t <= e[0]; ++t) {
      // z1^{e0} = (z2 + w)^{e0} -> C(e0, t) w^t z2^{e0 - t}
      Rational coeff = c * Rational(binom_big(e[0], t));
      laurent_add(num_sub[t], e[0] - t + e[1], coeff);
    }
  }
  for (const auto& [s, lp] : num_sub) {
    if (s - b > wmax) continue;
    for (long t = 0; s + t - b <= wmax; ++t) {
      if (a1 == 0 && t > 0) break;
      // (z2 + w)^{-a1} = sum_t C(-a1, t) w^t z2^{-a1 - t}
      Rational coeff = (t == 0) ? Rational(1) : Rational(binom_big(a1 + t - 1, t));
      if (t % 2 == 1) coeff = -coeff;
      for (const auto& [e2, c2] : lp)
        laurent_add(product[s + t - b], e2 - a1 - t - a2, coeff * c2);
    }
  }

  // iterate side: sum_t <vp, Y((u1)_t u2, z2) v> w^{-t-1}
  std::map<long, Laurent1> iterate;
  const long n0 = alg.mode_vanishing_bound(u1, u2);
  for (long t = -wmax - 1; t < n0; ++t) {
    GradedVector<Rational> wt = alg.mode_act(u1, t, u2);
    if (wt.is_zero()) continue;
    RationalCorrelator R1 = reconstruct_rational(alg, vp, {wt}, v);
    if (R1.is_zero()) continue;
    const long wa = R1.zero_pole_orders()[0];
    for (const auto& [e, c] : R1.numerator().terms())
      laurent_add(iterate[-t - 1], e[0] - wa, c);
  }

  // compare all computed w-orders <= order_cap
  for (long s = -n0 - 1; s <= wmax; ++s) {
    Laurent1 lhs, rhs;
    auto itp = product.find(s);
    if (itp != product.end()) lhs = itp->second;
    auto iti = iterate.find(s);
    if (iti != iterate.end()) rhs = iti->second;
    if (lhs != rhs) {
      if (detail) {
        std::ostringstream msg;
        msg << "iterate/product mismatch at w-order " << s;
        *detail = msg.str();
      }
      return false;
    }
  }
  return true;
}

}  // namespace voalab
