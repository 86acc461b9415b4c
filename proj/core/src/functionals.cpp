#include "voalab/functionals.hpp"

namespace voalab {

GradedFunctional gamma_apply(const Heisenberg<Rational>& alg,
                             const GradedVector<Rational>& u0,
                             const GradedFunctional& lambda) {
  if (!u0.sector().is_algebra())
    throw std::invalid_argument("gamma_apply: u0 must be an algebra vector");
  const Sector sector = lambda.base().sector();
  DualVector<Rational> out(sector);
  for (long lh : u0.levels()) {
    GradedVector<Rational> h = u0.project_level(lh);
    const Rational damp = pow_rational(lambda.scaling(), lh);
    for (const auto& [target, c] : lambda.base().terms()) {
      const long lx = target.level() - lh;  // (u0)_{-1} raises level by lh
      if (lx < 0) continue;
      for (const auto& x : partitions_of(lx)) {
        GradedVector<Rational> hx =
            alg.mode_act(h, -1, GradedVector<Rational>::unit(sector, x));
        Rational overlap = hx.coeff(target);
        if (overlap == 0) continue;
        out.add_term(x, c * damp * overlap);
      }
    }
  }
  return GradedFunctional(std::move(out), lambda.scaling());
}

}  // namespace voalab
