#ifndef VOALAB_CORRELATORS_HPP
#define VOALAB_CORRELATORS_HPP

#include <functional>
#include <unordered_map>

#include "voalab/algebra.hpp"
#include "voalab/rational_correlator.hpp"

namespace voalab {

// ---------------------------------------------------------------------------
// chain enumeration
//
// A chain is an exponent vector (f_1, ..., f_k) together with the vector
//   u_1[n_1] ( u_2[n_2] ( ... u_k[n_k] v ... ) ),   n_i = -f_i - 1,
// i.e. the coefficient of z_1^{f_1}...z_k^{f_k} in Y(u_1,z_1)...Y(u_k,z_k)v.
// Enumeration covers every f with f_i >= lo_i and output level <= cap; all
// other coefficients in that box vanish by the certified mode bound.
// ---------------------------------------------------------------------------

template <class S>
void for_each_chain(const Heisenberg<S>& alg,
                    const std::vector<GradedVector<S>>& us,
                    const GradedVector<S>& v, long cap,
                    const std::vector<long>& lo,
                    const std::function<void(const std::vector<int32_t>&,
                                             const GradedVector<S>&)>& emit) {
  const int k = static_cast<int>(us.size());
  if (static_cast<int>(lo.size()) != k)
    throw std::invalid_argument("chain bounds arity mismatch");
  for (const auto& u : us)
    if (!u.sector().is_algebra())
      throw std::invalid_argument("chain insertions must be algebra vectors");
  if (k == 0) {
    if (!v.is_zero() && v.max_level() <= cap) emit({}, v);
    return;
  }

  std::vector<std::pair<Partition, S>> ubasis(k);
  std::vector<long> min_add(k, 0);  // minimal level added by slots 0..i-1
  std::vector<int32_t> f(k, 0);

  std::function<void(int, const GradedVector<S>&)> descend =
      [&](int i, const GradedVector<S>& cur) {
        if (cur.is_zero()) return;
        if (i < 0) {
          emit(f, cur);
          return;
        }
        const long lu = ubasis[i].first.level();
        const long lcur = cur.max_level();  // cur is homogeneous by grading
        const long lo_eff = std::max<long>(lo[i], -(lu + lcur));
        const long hi = cap - lcur - lu - min_add[i];
        GradedVector<S> uvec =
            GradedVector<S>::unit(Sector::algebra(), ubasis[i].first, ubasis[i].second);
        for (long fe = lo_eff; fe <= hi; ++fe) {
          f[i] = static_cast<int32_t>(fe);
          descend(i - 1, alg.mode_act(uvec, -fe - 1, cur));
        }
        f[i] = 0;
      };

  std::function<void(int)> run_combo = [&](int slot) {
    if (slot == k) {
      long run = 0;
      for (int i = 0; i < k; ++i) {
        min_add[i] = run;
        run += ubasis[i].first.level() + lo[i];
      }
      for (const auto& [pv, cv] : v.terms())
        descend(k - 1, GradedVector<S>::unit(v.sector(), pv, cv));
      return;
    }
    for (const auto& [pu, cu] : us[slot].terms()) {
      ubasis[slot] = {pu, cu};
      run_combo(slot + 1);
    }
  };
  run_combo(0);
}

struct ExpoHash {
  std::size_t operator()(const std::vector<int32_t>& e) const {
    std::size_t h = 1469598103934665603ull;
    for (int32_t x : e) {
      h ^= static_cast<std::size_t>(static_cast<uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// ---------------------------------------------------------------------------
// truncated multivariate Laurent expansion of a matrix coefficient
// ---------------------------------------------------------------------------

template <class S>
struct MultiLaurent {
  int arity = 0;
  std::vector<long> lo;  // per-variable certified lower exponent bound
  std::map<std::vector<int32_t>, S> terms;

  S coeff(const std::vector<int32_t>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? scalar_ops<S>::from_long(0) : it->second;
  }
  // every exponent vector inside the box is either stored or exactly zero
  bool complete_at(const std::vector<int32_t>& e) const {
    for (int i = 0; i < arity; ++i)
      if (e[i] < lo[i]) return false;
    return true;
  }
};

// <vp, Y(u_1,z_1)...Y(u_k,z_k) v>, expansion of the region |z_1|>...>|z_k|>0.
// Complete inside the box f_i >= -(policy.max_weight + 1).
template <class S>
MultiLaurent<S> series_correlator(const Heisenberg<S>& alg, const DualVector<S>& vp,
                                  const std::vector<GradedVector<S>>& us,
                                  const GradedVector<S>& v,
                                  const TruncationPolicy& policy) {
  policy.validate();
  if (!(vp.sector() == v.sector()))
    throw std::invalid_argument("series_correlator: dual/vector sector mismatch");
  MultiLaurent<S> out;
  out.arity = static_cast<int>(us.size());
  out.lo.assign(out.arity, -(policy.max_weight + 1));
  if (out.arity == 0) {
    S c = pair(vp, v);
    if (!scalar_ops<S>::is_zero(c)) out.terms[{}] = c;
    return out;
  }
  const long cap = std::max<long>(vp.max_level(), 0);
  for_each_chain<S>(alg, us, v, cap, out.lo,
                    [&](const std::vector<int32_t>& f, const GradedVector<S>& vec) {
                      S c = scalar_ops<S>::from_long(0);
                      for (const auto& [p, x] : vec.terms()) c += vp.coeff(p) * x;
                      if (scalar_ops<S>::is_zero(c)) return;
                      auto [it, ins] = out.terms.emplace(f, c);
                      if (!ins) {
                        it->second += c;
                        if (scalar_ops<S>::is_zero(it->second)) out.terms.erase(it);
                      }
                    });
  return out;
}

// ---------------------------------------------------------------------------
// QFamily: the analytic continuation Q(u_1,...,u_k,v; z) as an exact
// vector-valued rational function, one numerator polynomial per dual basis
// partition over the bounding denominator
//   prod_i z_i^{a_i} prod_{i<j} (z_i - z_j)^{b_ij},
//   a_i = wt u_i + lvl v,  b_ij = wt u_i + wt u_j.
// Built from the truncated series; the expansion is certified by checking
// that every coefficient with an exponent in [-(D+2), -1] vanishes, D being
// the numerator total-degree bound.
// ---------------------------------------------------------------------------

class QFamily {
 public:
  int arity = 0;
  Sector sector;
  long max_level = 0;
  long certificate_depth = 0;
  std::vector<long> zero_poles;
  std::map<std::pair<int, int>, long> diag_poles;
  std::map<Partition, Polynomial> numerators;

  template <class T>
  T denominator_value(const std::vector<T>& z) const {
    T den = scalar_ops<T>::from_long(1);
    for (int i = 0; i < arity; ++i) {
      if (zero_poles[i] == 0) continue;
      if constexpr (scalar_ops<T>::exact)
        den *= pow_rational(z[i], zero_poles[i]);
      else
        den *= cpow_int(z[i], zero_poles[i]);
    }
    for (const auto& [ij, b] : diag_poles) {
      T d = z[ij.first] - z[ij.second];
      if constexpr (scalar_ops<T>::exact) {
        if (d == 0) throw std::domain_error("QFamily evaluated on a diagonal");
        den *= pow_rational(d, b);
      } else {
        den *= cpow_int(d, b);
      }
    }
    return den;
  }

  template <class T>
  GradedVector<T> eval(const std::vector<T>& z) const {
    if (static_cast<int>(z.size()) != arity)
      throw std::invalid_argument("QFamily evaluation arity mismatch");
    T den = denominator_value(z);
    GradedVector<T> out(sector);
    for (const auto& [p, num] : numerators) {
      T val = num.eval(z) / den;
      out.add_term(p, val);
    }
    return out;
  }

  template <class T>
  std::map<long, GradedVector<T>> eval_levels(const std::vector<T>& z) const {
    GradedVector<T> all = eval(z);
    std::map<long, GradedVector<T>> out;
    for (const auto& [p, c] : all.terms()) {
      long l = p.level();
      auto it = out.find(l);
      if (it == out.end()) it = out.emplace(l, GradedVector<T>(sector)).first;
      it->second.add_term(p, c);
    }
    return out;
  }

  // scalar rational correlator for a fixed graded-dual vector
  RationalCorrelator pair_dual(const DualVector<Rational>& vp) const {
    if (!(vp.sector() == sector))
      throw std::invalid_argument("pair_dual: sector mismatch");
    if (vp.max_level() > max_level)
      throw std::invalid_argument("pair_dual: dual weight beyond family truncation");
    Polynomial num(arity);
    for (const auto& [p, c] : vp.terms()) {
      auto it = numerators.find(p);
      if (it != numerators.end()) num += it->second * c;
    }
    return RationalCorrelator::from_parts(std::move(num), zero_poles, diag_poles);
  }
};

// Builds the family with dual levels `<= max_level`.
QFamily build_q_family(const Heisenberg<Rational>& alg,
                       const std::vector<GradedVector<Rational>>& us,
                       const GradedVector<Rational>& v, long max_level);

// Q(u_1,...,u_k,v; z) truncated at policy.max_weight, evaluated in floating
// mode at a point of M^k.
GradedVector<Cplx> q_vector(const Heisenberg<Rational>& alg,
                            const std::vector<GradedVector<Rational>>& us,
                            const GradedVector<Rational>& v,
                            const std::vector<Cplx>& point,
                            const TruncationPolicy& policy);

// R(<vp, Y(u_1,z_1)...Y(u_k,z_k)v>) as an exact rational function.
RationalCorrelator reconstruct_rational(const Heisenberg<Rational>& alg,
                                        const DualVector<Rational>& vp,
                                        const std::vector<GradedVector<Rational>>& us,
                                        const GradedVector<Rational>& v);

// Independent free-boson oracle: sum over partial pair matchings with
// contraction (z_i - z_j)^{-2} and zero-mode factor p/z_i per unpaired
// insertion. Requires all insertions equal to the generator and ground
// in/out states.
RationalCorrelator wick_oracle(const DualVector<Rational>& vp,
                               const std::vector<GradedVector<Rational>>& us,
                               const GradedVector<Rational>& v);

bool in_Mk(const std::vector<Cplx>& z, double eps = 1e-12);
bool in_Mk_lt1(const std::vector<Cplx>& z, double eps = 1e-12);

// Iterate-vs-product associativity: compares the (z_1 - z_2)-expansion of the
// reconstructed 2-point function with the reconstructed 1-point functions of
// the iterate coefficients, order by order through w^order_cap. Exact.
bool iterate_product_check(const Heisenberg<Rational>& alg,
                           const DualVector<Rational>& vp,
                           const GradedVector<Rational>& u1,
                           const GradedVector<Rational>& u2,
                           const GradedVector<Rational>& v, long order_cap,
                           std::string* detail = nullptr);

}  // namespace voalab

#endif
