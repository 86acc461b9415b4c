#ifndef VOALAB_ALGEBRA_HPP
#define VOALAB_ALGEBRA_HPP

#include <limits>
#include <list>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "voalab/laurent.hpp"
#include "voalab/truncation.hpp"

namespace voalab {

// Loadable description of the concrete algebra. The engine is rank-1
// Heisenberg; the conformal vector (1/2)a[-1]^2|0> with c=1 is optional.
// bracket_shift is a fault-injection knob for the axiom checker: it offsets
// the oscillator bracket [a(m), a(-m)] = m by a constant, which breaks
// locality and must be caught by verify_axioms.
struct AlgebraSpec {
  std::string name = "heisenberg";
  bool conformal = false;
  Rational central_charge = 1;
  long bracket_shift = 0;

  static AlgebraSpec from_json(const nlohmann::json& j) {
    AlgebraSpec out;
    if (!j.is_object()) throw std::invalid_argument("algebra spec must be an object");
    out.name = j.value("algebra", std::string("heisenberg"));
    out.conformal = j.value("conformal", false);
    if (j.contains("c")) {
      const auto& c = j.at("c");
      out.central_charge =
          c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
    }
    out.bracket_shift = j.value("bracket_shift", 0L);
    return out;
  }
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["algebra"] = name;
    j["conformal"] = conformal;
    j["c"] = rational_to_string(central_charge);
    if (bracket_shift != 0) j["bracket_shift"] = bracket_shift;
    return j;
  }
};

struct AxiomCheck {
  std::string name;
  std::string subject;
  bool passed = false;
  std::string detail;
};

struct AxiomReport {
  long max_weight = 0;
  std::vector<AxiomCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (!c.passed) ++n;
    return n;
  }
};

// Rank-1 Heisenberg vertex algebra and its Fock modules. Mode actions are
// computed by normal-ordering rewriting of the iterate formula
//
//   (a(-m)b)_n = sum_{j>=0} C(m+j-1, j) [ a(-m-j) b_{n+j}
//                                         + (-1)^{m+1} b_{n-m-j} a(j) ]
//
// with memoized results per (u-basis, n, v-basis) triple. Results are
// independent of cache state; the cache is guarded for concurrent use.
template <class S>
class Heisenberg {
 public:
  explicit Heisenberg(AlgebraSpec spec = {}) : spec_(std::move(spec)) {
    if (spec_.name != "heisenberg")
      throw std::invalid_argument("unknown algebra: " + spec_.name);
    if (spec_.conformal && spec_.central_charge != 1)
      throw std::invalid_argument("heisenberg conformal vector requires c = 1");
  }

  const AlgebraSpec& spec() const { return spec_; }

  GradedVector<S> vacuum() const {
    return GradedVector<S>::unit(Sector::algebra(), Partition());
  }
  GradedVector<S> generator() const {
    return GradedVector<S>::unit(Sector::algebra(), Partition::single(1));
  }
  GradedVector<S> conformal_vector() const {
    if (!spec_.conformal)
      throw std::logic_error("conformal vector disabled in algebra spec");
    return GradedVector<S>::unit(Sector::algebra(), Partition({1, 1}),
                                 scalar_ops<S>::from_rational(Rational(1, 2)));
  }
  std::vector<GradedVector<S>> generating_set() const {
    return {vacuum(), generator()};
  }
  GradedVector<S> module_ground(const Rational& p) const {
    return GradedVector<S>::unit(Sector::module(p), Partition());
  }

  // u_n v. u must be in the algebra sector; v may be algebra or module.
  GradedVector<S> mode_act(const GradedVector<S>& u, long n,
                           const GradedVector<S>& v) const {
    if (!u.sector().is_algebra())
      throw std::invalid_argument("mode_act: left input must be an algebra vector");
    GradedVector<S> out(v.sector());
    Cache& cache = sector_cache(v.sector());
    for (const auto& [pu, cu] : u.terms()) {
      for (const auto& [pv, cv] : v.terms()) {
        S c = cu * cv;
        if (scalar_ops<S>::is_zero(c)) continue;
        apply_mode(pu, n, pv, v.sector(), cache, c, out);
      }
    }
    return out;
  }

  // Certified bound: u_n v = 0 whenever n >= this value.
  long mode_vanishing_bound(const GradedVector<S>& u, const GradedVector<S>& v) const {
    if (u.is_zero() || v.is_zero()) return 0;
    return u.max_level() + v.max_level();
  }

  // Truncated Y(u, z)v: coefficient of z^e is u_{-e-1} v; the window covers
  // all output levels <= policy.max_weight and the lower edge is certified.
  LaurentSeriesTrunc<S> vertex_series(const GradedVector<S>& u,
                                      const GradedVector<S>& v,
                                      const TruncationPolicy& policy) const {
    policy.validate();
    if (u.is_zero() || v.is_zero()) {
      return LaurentSeriesTrunc<S>(v.sector(), 0, policy.max_weight,
                                   std::numeric_limits<long>::min() / 2);
    }
    const long lu = u.max_level(), lv = v.max_level();
    const long lo = -(lu + lv);
    const long hi = policy.max_weight - (u.min_level() + v.min_level());
    LaurentSeriesTrunc<S> out(v.sector(), lo, hi, lo);
    for (long e = lo; e <= hi; ++e) {
      GradedVector<S> c = mode_act(u, -e - 1, v);
      // drop parts of the coefficient beyond the weight cap (mixed-weight inputs)
      GradedVector<S> kept(v.sector());
      for (const auto& [p, x] : c.terms())
        if (p.level() <= policy.max_weight) kept.add_term(p, x);
      out.set(e, std::move(kept));
    }
    return out;
  }

  // L(-1). Algebra sector only; the module side of the derivative property is
  // not part of the engine.
  GradedVector<S> translate(const GradedVector<S>& v) const {
    if (!v.sector().is_algebra())
      throw std::invalid_argument("translate: defined on the algebra sector only");
    GradedVector<S> out(v.sector());
    for (const auto& [p, c] : v.terms()) {
      std::vector<int32_t> seen;
      for (int32_t m : p.parts()) {
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
        seen.push_back(m);
        S coeff = c * scalar_ops<S>::from_long(static_cast<long>(m) * p.multiplicity(m));
        out.add_term(p.without_one(m).with_part(m + 1), coeff);
      }
    }
    return out;
  }

  AxiomReport verify_axioms(long max_weight) const;

 private:
  struct ModeKey {
    Partition u;
    long n;
    Partition v;
    bool operator==(const ModeKey& o) const {
      return n == o.n && u == o.u && v == o.v;
    }
  };
  struct ModeKeyHash {
    std::size_t operator()(const ModeKey& k) const {
      PartitionHash ph;
      std::size_t h = ph(k.u);
      h ^= static_cast<std::size_t>(k.n) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= ph(k.v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };
  using Cache = std::unordered_map<ModeKey, GradedVector<S>, ModeKeyHash>;

  S oscillator_bracket(long m) const {
    return scalar_ops<S>::from_long(m + spec_.bracket_shift);
  }

  // a(j) on a basis state for j >= 0.
  GradedVector<S> oscillator_annihilate(long j, const Partition& v,
                                        const Sector& sector) const {
    GradedVector<S> out(sector);
    if (j == 0) {
      if (sector.is_module() && sector.momentum() != 0)
        out.add_term(v, scalar_ops<S>::from_rational(sector.momentum()));
      return out;
    }
    int mult = v.multiplicity(static_cast<int32_t>(j));
    if (mult == 0) return out;
    out.add_term(v.without_one(static_cast<int32_t>(j)),
                 oscillator_bracket(j) * scalar_ops<S>::from_long(mult));
    return out;
  }

  // Adds scale * (u_n v) to out. Composite-mode results are memoized per
  // (u, n, v); cache hits accumulate without copying.
  void apply_mode(const Partition& u, long n, const Partition& v,
                  const Sector& sector, Cache& cache, const S& scale,
                  GradedVector<S>& out) const {
    if (u.empty()) {
      if (n == -1) out.add_term(v, scale);
      return;
    }
    // certified lower truncation: output level would be negative
    if (n >= u.level() + v.level()) return;
    const GradedVector<S>& res = mode_on_basis(u, n, v, sector, cache);
    for (const auto& [p, c] : res.terms()) out.add_term(p, c * scale);
  }

  const GradedVector<S>& mode_on_basis(const Partition& u, long n, const Partition& v,
                                       const Sector& sector, Cache& cache) const {
    ModeKey key{u, n, v};
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }

    const long m = u.head();
    const Partition b = u.tail();
    GradedVector<S> acc(sector);
    const S one = scalar_ops<S>::from_long(1);

    // creation half: a(-m-j) (b_{n+j} v)
    if (b.empty()) {
      const long j = -1 - n;
      if (j >= 0)
        acc.add_term(v.with_part(static_cast<int32_t>(m + j)), cached_binom(m + j - 1, j));
    } else {
      const long jmax = b.level() + v.level() - 1 - n;
      for (long j = 0; j <= jmax; ++j) {
        GradedVector<S> bv(sector);
        apply_mode(b, n + j, v, sector, cache, one, bv);
        if (bv.is_zero()) continue;
        S w = cached_binom(m + j - 1, j);
        for (const auto& [p, c] : bv.terms())
          acc.add_term(p.with_part(static_cast<int32_t>(m + j)), c * w);
      }
    }

    // annihilation half: (-1)^{m+1} b_{n-m-j} (a(j) v)
    const bool negate = (m % 2 == 0);
    std::vector<long> js;
    js.push_back(0);
    for (int32_t part : v.parts())
      if (std::find(js.begin(), js.end(), static_cast<long>(part)) == js.end())
        js.push_back(part);
    for (long j : js) {
      GradedVector<S> av = oscillator_annihilate(j, v, sector);
      if (av.is_zero()) continue;
      S w = cached_binom(m + j - 1, j);
      if (negate) w = -w;
      for (const auto& [pv, cv] : av.terms())
        apply_mode(b, n - m - j, pv, sector, cache, cv * w, acc);
    }

    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, inserted] = cache.emplace(std::move(key), std::move(acc));
    return it->second;
  }

  S cached_binom(long n, long k) const {
    if (k < 0 || k > n) return scalar_ops<S>::from_long(0);
    if (k == 0 || k == n) return scalar_ops<S>::from_long(1);
    std::lock_guard<std::mutex> lock(binom_mutex_);
    auto key = std::make_pair(n, k);
    auto it = binom_cache_.find(key);
    if (it == binom_cache_.end())
      it = binom_cache_.emplace(key, scalar_ops<S>::from_bigint(binom_big(n, k))).first;
    return it->second;
  }

  // std::list keeps cache references stable while new sectors are appended.
  Cache& sector_cache(const Sector& sector) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (auto& [s, c] : caches_)
      if (s == sector) return c;
    caches_.emplace_back(sector, Cache{});
    return caches_.back().second;
  }

  AlgebraSpec spec_;
  mutable std::list<std::pair<Sector, Cache>> caches_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<long, long>, S> binom_cache_;
  mutable std::mutex binom_mutex_;
};

}  // namespace voalab

#include "voalab/algebra_axioms.hpp"

#endif
