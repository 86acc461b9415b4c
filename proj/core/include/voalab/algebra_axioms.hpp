#ifndef VOALAB_ALGEBRA_AXIOMS_HPP
#define VOALAB_ALGEBRA_AXIOMS_HPP

// verify_axioms for Heisenberg<S>; split out of algebra.hpp for readability.

namespace voalab {

namespace detail {

// Basis states of the vacuum sector with 1 <= level <= max_level.
inline std::vector<Partition> positive_basis(long max_level) {
  std::vector<Partition> out;
  for (long l = 1; l <= max_level; ++l)
    for (auto& p : partitions_of(l)) out.push_back(p);
  return out;
}

}  // namespace detail

// Checks, at all basis states of weight <= max_weight, the vacuum property
// Y(1,z) = 1, the creation axiom, the L(-1)-derivative property
// (L(-1)u)_m = -m u_{m-1}, and weak commutativity
// (z1 - z2)^K [Y(u,z1), Y(u,z2)] v = 0 with K = 2 wt u, as identities of
// truncated series. Failures are reported as data, never thrown.
template <class S>
AxiomReport Heisenberg<S>::verify_axioms(long max_weight) const {
  AxiomReport report;
  report.max_weight = max_weight;
  if (max_weight <= 0) return report;

  const Sector sector = Sector::algebra();
  std::vector<Partition> basis;
  basis.push_back(Partition());
  for (auto& p : detail::positive_basis(max_weight)) basis.push_back(p);

  const GradedVector<S> one = vacuum();

  // vacuum property: 1_n v = delta_{n,-1} v
  for (const auto& pv : basis) {
    GradedVector<S> v = GradedVector<S>::unit(sector, pv);
    bool ok = true;
    std::string detail_msg;
    for (long n = -max_weight - 2; n <= 2 && ok; ++n) {
      GradedVector<S> got = mode_act(one, n, v);
      GradedVector<S> want = (n == -1) ? v : GradedVector<S>(sector);
      if (!(got == want)) {
        ok = false;
        detail_msg = "1_" + std::to_string(n) + " mismatch";
      }
    }
    report.checks.push_back({"vacuum", render_state(sector, pv), ok, detail_msg});
  }

  // creation axiom: u_n 1 = 0 for n >= 0 and u_{-1} 1 = u
  for (const auto& pu : basis) {
    if (pu.empty()) continue;
    GradedVector<S> u = GradedVector<S>::unit(sector, pu);
    bool ok = true;
    std::string detail_msg;
    for (long n = 0; n <= pu.level() + 1 && ok; ++n) {
      if (!mode_act(u, n, one).is_zero()) {
        ok = false;
        detail_msg = "nonzero u_" + std::to_string(n) + " on vacuum";
      }
    }
    if (ok && !(mode_act(u, -1, one) == u)) {
      ok = false;
      detail_msg = "u_{-1} vacuum != u";
    }
    report.checks.push_back({"creation", render_state(sector, pu), ok, detail_msg});
  }

  // L(-1)-derivative: (L(-1)u)_m v = -m u_{m-1} v
  for (const auto& pu : basis) {
    if (pu.empty()) continue;
    GradedVector<S> u = GradedVector<S>::unit(sector, pu);
    GradedVector<S> tu = translate(u);
    bool ok = true;
    std::string detail_msg;
    for (const auto& pv : basis) {
      GradedVector<S> v = GradedVector<S>::unit(sector, pv);
      const long n0 = pu.level() + 1 + pv.level();
      for (long m = -max_weight - 2; m <= n0 + 1 && ok; ++m) {
        GradedVector<S> lhs = mode_act(tu, m, v);
        GradedVector<S> rhs = mode_act(u, m - 1, v) * scalar_ops<S>::from_long(-m);
        if (!(lhs == rhs)) {
          ok = false;
          detail_msg = "mismatch at m=" + std::to_string(m) + " on " +
                       render_state(sector, pv);
        }
      }
      if (!ok) break;
    }
    report.checks.push_back({"l_minus_one_derivative", render_state(sector, pu), ok,
                             detail_msg});
  }

  // weak commutativity; the operator identity is probed on low-weight states,
  // u still runs over every basis state up to max_weight
  std::vector<Partition> probes;
  probes.push_back(Partition());
  for (auto& p : detail::positive_basis(std::min<long>(max_weight, 3)))
    probes.push_back(p);
  for (const auto& pu : basis) {
    if (pu.empty()) continue;
    GradedVector<S> u = GradedVector<S>::unit(sector, pu);
    const long lu = pu.level();
    const long K = 2 * lu;
    bool ok = true;
    std::size_t checked = 0;
    std::string detail_msg;
    for (const auto& pv : probes) {
      GradedVector<S> v = GradedVector<S>::unit(sector, pv);
      const long lv = pv.level();
      // window width trades off against intermediate state depth ~ 2*lu+lv-m-n
      const long mlo = -(2 + std::max<long>(0, max_weight - lu));
      const long mhi = 2 * lu + lv - mlo;

      // products u_m u_n v on the region where they can be nonzero
      std::map<std::pair<long, long>, GradedVector<S>> table;
      for (long n = mlo; n <= std::min(mhi, lu + lv - 1); ++n) {
        GradedVector<S> unv = mode_act(u, n, v);
        if (unv.is_zero()) continue;
        for (long m = mlo; m <= std::min(mhi, 2 * lu + lv - n - 2); ++m) {
          GradedVector<S> t = mode_act(u, m, unv);
          if (!t.is_zero()) table.emplace(std::make_pair(m, n), std::move(t));
        }
      }
      // commutator coefficients S(m, n) = u_m u_n v - u_n u_m v
      std::map<std::pair<long, long>, GradedVector<S>> comm;
      for (auto& [mn, val] : table) {
        comm[mn] += val;
        comm[std::make_pair(mn.second, mn.first)] -= val;
      }

      auto certified_zero = [&](long m, long n) {
        bool first = (n >= lu + lv) || (m >= 2 * lu + lv - n - 1);
        bool second = (m >= lu + lv) || (n >= 2 * lu + lv - m - 1);
        return first && second;
      };
      auto entry = [&](long m, long n, GradedVector<S>& dst, bool& complete) {
        if (m >= mlo && m <= mhi && n >= mlo && n <= mhi) {
          auto it = comm.find(std::make_pair(m, n));
          if (it != comm.end()) dst += it->second;
          return;
        }
        if (!certified_zero(m, n)) complete = false;
      };

      for (long P = -1 - mhi; P <= K - 1 - mlo && ok; ++P) {
        for (long Q = -1 - mhi; Q <= K - 1 - mlo && ok; ++Q) {
          GradedVector<S> sum(sector);
          bool complete = true;
          for (long j = 0; j <= K && complete; ++j) {
            long a = P - (K - j), b = Q - j;
            GradedVector<S> part(sector);
            entry(-a - 1, -b - 1, part, complete);
            if (!complete) break;
            S w = scalar_ops<S>::from_bigint(binom_big(K, j));
            if (j % 2 == 1) w = -w;
            sum += part * w;
          }
          if (!complete) continue;
          ++checked;
          if (!sum.is_zero()) {
            ok = false;
            detail_msg = "nonzero coefficient at z1^" + std::to_string(P) + " z2^" +
                         std::to_string(Q) + " on " + render_state(sector, pv);
          }
        }
      }
      if (!ok) break;
    }
    if (ok && checked == 0) {
      ok = false;
      detail_msg = "no locality coefficients were checkable";
    }
    report.checks.push_back({"weak_locality", render_state(sector, pu), ok, detail_msg});
  }

  return report;
}

}  // namespace voalab

#endif
