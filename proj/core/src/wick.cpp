#include "voalab/correlators.hpp"

namespace voalab {

namespace {

void matchings(int next, std::vector<int>& state,  // -1 unmatched, else partner
               const std::function<void(const std::vector<int>&)>& emit) {
  const int k = static_cast<int>(state.size());
  if (next == k) {
    emit(state);
    return;
  }
  if (state[next] >= 0) {
    matchings(next + 1, state, emit);
    return;
  }
  // leave `next` unpaired
  matchings(next + 1, state, emit);
  // or pair it with a later unmatched index
  for (int j = next + 1; j < k; ++j) {
    if (state[j] >= 0) continue;
    state[next] = j;
    state[j] = next;
    matchings(next + 1, state, emit);
    state[next] = -1;
    state[j] = -1;
  }
}

}  // namespace

RationalCorrelator wick_oracle(const DualVector<Rational>& vp,
                               const std::vector<GradedVector<Rational>>& us,
                               const GradedVector<Rational>& v) {
  const int k = static_cast<int>(us.size());
  if (!(vp.sector() == v.sector()))
    throw std::invalid_argument("wick_oracle: dual/vector sector mismatch");
  const GradedVector<Rational> alpha =
      GradedVector<Rational>::unit(Sector::algebra(), Partition::single(1));
  for (const auto& u : us)
    if (!(u == alpha))
      throw std::invalid_argument("wick_oracle: unsupported insertion vector");
  if (v.max_level() > 0 || vp.max_level() > 0)
    throw std::invalid_argument("wick_oracle: in/out states must be ground states");

  const Rational scale = vp.coeff(Partition()) * v.coeff(Partition());
  const Rational p = v.sector().momentum();

  RationalCorrelator total = RationalCorrelator::zero(k);
  if (scale == 0) return total;

  std::vector<int> state(k, -1);
  matchings(0, state, [&](const std::vector<int>& m) {
    Rational coeff = scale;
    std::vector<long> zero_poles(k, 0);
    std::map<std::pair<int, int>, long> diag_poles;
    for (int i = 0; i < k; ++i) {
      if (m[i] < 0) {
        coeff *= p;
        zero_poles[i] = 1;
      } else if (m[i] > i) {
        diag_poles[{i, m[i]}] = 2;
      }
    }
    if (coeff == 0) return;
    total = total + RationalCorrelator::from_parts(
                        Polynomial::constant(k, coeff), zero_poles, diag_poles);
  });
  return total;
}

}  // namespace voalab
