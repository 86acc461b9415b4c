#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voalab/json_io.hpp"
#include "voalab/module_fock.hpp"

using namespace voalab;

namespace {

struct Fix {
  Lab lab;
  const Heisenberg<Rational>& h = lab.exact();
  GradedVector<Rational> a = h.generator();
  GradedVector<Rational> vac = h.vacuum();
  Rational p = 1;
  Sector mod = Sector::module(p);
  GradedVector<Rational> ground = h.module_ground(p);
  DualVector<Rational> groundd = DualVector<Rational>::unit(mod, Partition());
  Disk d{Cplx(0.5, 0.0), 0.15, 0.05};
};

}  // namespace

TEST_CASE("module spec json") {
  auto spec = ModuleSpec::from_json(nlohmann::json::parse(R"({"module":"fock","p":"1"})"));
  CHECK(spec.momentum == 1);
  CHECK(spec.base_weight() == Rational(1, 2));
  CHECK(ModuleSpec::from_json(nlohmann::json::parse(R"({"module":"fock","p":2})"))
            .base_weight() == 2);
  CHECK_THROWS_AS(ModuleSpec::from_json(nlohmann::json::parse(R"({"module":"ising"})")),
                  std::invalid_argument);
}

TEST_CASE("module vertex operator basics") {
  Fix f;
  TruncationPolicy pol{8, 1e-9, 4};

  // Y_W(1, z) w = w
  auto w = GradedVector<Rational>::unit(f.mod, Partition({2, 1}));
  auto sv = module_vertex_series(f.h, f.vac, w, pol);
  for (long e = sv.lo(); e <= sv.hi(); ++e) {
    if (e == 0)
      CHECK(sv.coeff(e) == w);
    else
      CHECK(sv.coeff(e).is_zero());
  }

  // zero mode: a(0)|p> = p |p>
  CHECK(f.h.mode_act(f.a, 0, f.ground) == f.ground * f.p);

  // level additivity on every coefficient
  auto su = module_vertex_series(f.h, GradedVector<Rational>::unit(Sector::algebra(),
                                                                   Partition({1, 1})),
                                 w, pol);
  for (long e = su.lo(); e <= su.hi(); ++e) {
    auto c = su.coeff(e);
    if (c.is_zero()) continue;
    CHECK(c.is_homogeneous());
    CHECK(c.max_level() == 2 + 3 + e);
  }

  CHECK_THROWS_AS(module_vertex_series(f.h, w, w, pol), std::invalid_argument);
}

TEST_CASE("charged correlators") {
  Fix f;
  // <p', Y_W(a, z)|p> = p / z
  auto r1 = reconstruct_rational(f.h, f.groundd, {f.a}, f.ground);
  CHECK(r1 == RationalCorrelator::from_parts(Polynomial::constant(1, f.p), {1}, {}));

  // <p', Y_W(a,z1) Y_W(a,z2) |p> = 1/(z1-z2)^2 + p^2/(z1 z2)
  auto r2 = reconstruct_rational(f.h, f.groundd, {f.a, f.a}, f.ground);
  auto expect = wick_oracle(f.groundd, {f.a, f.a}, f.ground);
  CHECK(r2 == expect);
  std::vector<Cplx> pt = {Cplx(0.5, 0.2), Cplx(-0.3, 0.1)};
  Cplx direct = Cplx(1, 0) / ((pt[0] - pt[1]) * (pt[0] - pt[1])) +
                Cplx(to_double(f.p * f.p), 0) / (pt[0] * pt[1]);
  CHECK(std::abs(r2.eval(pt) - direct) < 1e-14);
}

TEST_CASE("module q vector and g_W evaluation") {
  Fix f;
  TruncationPolicy pol{12, 1e-9, 6};
  auto qw = module_q_vector(f.h, {f.a}, f.ground, {Cplx(0.4, 0.1)}, pol);
  // level-0 component pairs to p/z
  Cplx expect = Cplx(to_double(f.p), 0) / Cplx(0.4, 0.1);
  CHECK(std::abs(qw.project_level(0).coeff(Partition()) - expect) < 1e-14);

  auto lamW = std::make_shared<GradedFunctional>(
      DualVector<Rational>::unit(f.mod, Partition::single(1)), Rational(1, 2));
  auto res = g_W_eval(f.lab, *lamW, {f.a}, f.ground, {Cplx(0.4, 0.1)}, pol);
  CHECK(res.report.finite_sum);

  // algebra-sector functional is rejected
  GradedFunctional lamV(DualVector<Rational>::unit(Sector::algebra(), Partition()), 1);
  CHECK_THROWS_AS(g_W_eval(f.lab, lamV, {f.a}, f.ground, {Cplx(0.4, 0.1)}, pol),
                  std::invalid_argument);
}

TEST_CASE("base-weight covariance of module scalings") {
  Fix f;
  auto w = GradedVector<Cplx>::unit(f.mod, Partition::single(2), Cplx(1, 0));
  auto scaled = scale_L0(0.25, w);
  // weight = 1/2 + 2
  CHECK(scaled.coeff(Partition::single(2)).real() ==
        doctest::Approx(std::pow(0.25, 2.5)));
  // exact mode requires integral weights
  auto wx = GradedVector<Rational>::unit(f.mod, Partition::single(2));
  CHECK_THROWS_AS(scale_L0(Rational(1, 4), wx), std::domain_error);
  CHECK(scale_L0(Rational(1), wx) == wx);
}

TEST_CASE("sew_module vacuum insertion") {
  Fix f;
  auto wc = GradedVector<Cplx>::unit(f.mod, Partition::single(1), Cplx(1, 0));
  TruncationPolicy pol{10, 1e-9, 6};
  auto one_c = GradedVector<Cplx>::unit(Sector::algebra(), Partition(), Cplx(1, 0));
  auto s = sew_module(f.lab, one_c, wc, f.d, pol);
  CHECK((s.vec - scale_L0(f.d.r2, wc)).magnitude() < 1e-15);
  CHECK_THROWS_AS(sew_module(f.lab, one_c, one_c, f.d, pol), std::invalid_argument);
}

TEST_CASE("module gamma iota identity, exact at s = 1") {
  Fix f;
  TruncationPolicy pol{8, 1e-9, 4};
  GradedFunctional lamW(DualVector<Rational>::unit(f.mod, Partition::single(2)), 1);
  std::vector<Rational> pt = {Rational(2, 5)};
  auto plain = g_increments_exact(f.lab, lamW, {f.a}, f.ground, pt, pol);
  std::vector<Rational> pt0 = {Rational(1, 2), Rational(2, 5)};
  auto spect = g_increments_exact(f.lab, lamW, {f.vac, f.a}, f.ground, pt0, pol);
  CHECK(plain == spect);
  bool nonzero = false;
  for (const auto& c : plain) nonzero |= (c != 0);
  CHECK(nonzero);
}

TEST_CASE("module sewing identity") {
  Fix f;
  GradedFunctional lamW(DualVector<Rational>::unit(f.mod, Partition::single(2)), 1);
  std::vector<double> errs;
  for (long N : {20L, 40L}) {
    TruncationPolicy p{N, 1e-6, 6};
    auto rep = sewing_identity_check(f.lab, lamW, {f.a}, f.a, {f.a}, f.ground, f.d,
                                     {Cplx(0.99, 0)}, {Cplx(0.99, 0)}, p);
    errs.push_back(rep.rel_error);
  }
  CHECK(errs[1] <= 1e-6);
  CHECK(errs[1] < errs[0]);
}

TEST_CASE("module sewing restriction through contour functionals") {
  Fix f;
  auto mu = FunctionalF::contour({-1}, {0.6});
  auto nu = FunctionalF::contour({-2}, {0.5});
  TruncationPolicy pol{10, 1e-9, 6};
  auto route = nu_bar_route(f.lab, {f.a}, f.a, mu, {f.a}, f.ground, nu, f.d, pol, 50, 128);
  auto h1 = to_complex(contour_chain(f.h, {f.a}, f.a, mu.modes()));
  auto h2 = to_complex(contour_chain(f.h, {f.a}, f.ground, nu.modes()));
  auto direct = sew_module(f.lab, h1, h2, f.d, pol);
  for (long l = 0; l <= pol.max_weight; ++l) {
    auto da = route.project_level(l), db = direct.vec.project_level(l);
    double scale = std::max({da.magnitude(), db.magnitude(), 1e-12});
    CHECK((da - db).magnitude() / scale < 1e-9);
  }
}

TEST_CASE("alpha^W lands on the algebra side") {
  Fix f;
  auto lamW = std::make_shared<GradedFunctional>(
      DualVector<Rational>::unit(f.mod, Partition::single(1)), Rational(1));
  TruncationPolicy pol{12, 1e-9, 6};
  auto nu = FunctionalF::contour({-1}, {0.5});
  AlphaFunctional alphaW(f.lab, lamW, {f.a}, f.ground, nu, f.d, pol);
  CHECK(alphaW.domain_sector().is_algebra());
  // applying to a module vector is a sector error
  auto wc = GradedVector<Cplx>::unit(f.mod, Partition(), Cplx(1, 0));
  CHECK_THROWS_AS(alphaW.apply(wc), std::invalid_argument);
  // beta^W pairing: nested equals direct
  auto muA = FunctionalF::contour({-1}, {0.6});
  auto beta = beta_compose(muA, nu, f.d);
  Cplx nested = beta_W_apply_nested(f.lab, beta, lamW, {f.a}, f.a, {f.a}, f.ground, pol);
  AlphaFunctional alpha2(f.lab, lamW, {f.a}, f.ground, nu, f.d, pol);
  Cplx direct = functional_F_apply(f.lab, muA, alpha2, {f.a}, f.a, pol);
  CHECK(std::abs(nested - direct) < 1e-8);
}
