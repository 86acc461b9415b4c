#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "voalab/correlators.hpp"
#include "voalab/seminorm.hpp"

using namespace voalab;

namespace {

const Sector kAlg = Sector::algebra();

struct Fix {
  Heisenberg<Rational> h;
  GradedVector<Rational> a = h.generator();
  GradedVector<Rational> vac = h.vacuum();
  DualVector<Rational> vacd = DualVector<Rational>::unit(kAlg, Partition());
};

GradedVector<Rational> unit(const Partition& p) {
  return GradedVector<Rational>::unit(kAlg, p);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("polynomial ring basics") {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto p = x * x - y * y;
  CHECK(p.total_degree() == 2);
  CHECK(p.is_homogeneous());
  auto q = p.divide_by_difference(0, 1);
  REQUIRE(q.has_value());
  CHECK(*q == x + y);
  CHECK_FALSE((x * x + y).divide_by_difference(0, 1).has_value());
  CHECK((x * y).divisible_by_variable(0));
  CHECK((x * y).divide_by_variable(0) == y);
  CHECK(p.derivative(0) == x * Rational(2));
  CHECK(p.eval<Rational>({Rational(3), Rational(2)}) == 5);
  Cplx val = p.eval<Cplx>({Cplx(1, 1), Cplx(0, 1)});
  CHECK(std::abs(val - Cplx(1, 2)) < 1e-15);
}

TEST_CASE("series correlator matches mode expansion") {
  Fix f;
  TruncationPolicy pol;
  pol.max_weight = 8;

  // <1', Y(a,z1) 1> vanishes
  auto s1 = series_correlator(f.h, f.vacd, {f.a}, f.vac, pol);
  CHECK(s1.terms.empty());

  // <1', Y(a,z1)Y(a,z2) 1> = sum_{m>=1} m z1^{-m-1} z2^{m-1}
  auto s2 = series_correlator(f.h, f.vacd, {f.a, f.a}, f.vac, pol);
  for (long m = 1; m <= 6; ++m)
    CHECK(s2.coeff({static_cast<int32_t>(-m - 1), static_cast<int32_t>(m - 1)}) ==
          Rational(m));
  CHECK(s2.coeff({-2, 1}) == 0);
  CHECK(s2.complete_at({-3, 1}));
  CHECK_FALSE(s2.complete_at({-100, 98}));

  // k = 0 returns the pairing
  auto s0 = series_correlator(f.h, f.vacd, {}, f.vac, pol);
  CHECK(s0.coeff({}) == 1);

  // <(a(-1)1)', Y(a,z) 1> has constant term 1
  auto ad = DualVector<Rational>::unit(kAlg, Partition::single(1));
  auto s3 = series_correlator(f.h, ad, {f.a}, f.vac, pol);
  CHECK(s3.coeff({0}) == 1);
  CHECK(s3.terms.size() == 1);
}

TEST_CASE("reconstruction equals the wick oracle") {
  Fix f;
  for (int k = 1; k <= 4; ++k) {
    std::vector<GradedVector<Rational>> us(k, f.a);
    auto rec = reconstruct_rational(f.h, f.vacd, us, f.vac);
    auto oracle = wick_oracle(f.vacd, us, f.vac);
    CHECK(rec == oracle);
    if (k % 2 == 1) CHECK(rec.is_zero());
  }
  // charged sector, p in {1, 2}
  for (long p : {1L, 2L}) {
    auto gp = f.h.module_ground(Rational(p));
    auto gpd = DualVector<Rational>::unit(Sector::module(Rational(p)), Partition());
    CHECK(reconstruct_rational(f.h, gpd, {f.a, f.a}, gp) == wick_oracle(gpd, {f.a, f.a}, gp));
    CHECK(reconstruct_rational(f.h, gpd, {f.a}, gp) == wick_oracle(gpd, {f.a}, gp));
  }
}

TEST_CASE("golden files for the all-alpha correlators") {
  Fix f;
  const std::string base = std::string(VOALAB_TEST_DATA) + "/correlators/";
  for (int k = 1; k <= 4; ++k) {
    std::vector<GradedVector<Rational>> us(k, f.a);
    auto rec = reconstruct_rational(f.h, f.vacd, us, f.vac);
    auto want = RationalCorrelator::from_json(
        load_json(base + "vacuum_alpha_" + std::to_string(k) + "pt.json"));
    CHECK(rec == want);
  }
  for (long p : {1L, 2L}) {
    auto gp = f.h.module_ground(Rational(p));
    auto gpd = DualVector<Rational>::unit(Sector::module(Rational(p)), Partition());
    auto want = RationalCorrelator::from_json(
        load_json(base + "charged_p" + std::to_string(p) + "_alpha_2pt.json"));
    CHECK(reconstruct_rational(f.h, gpd, {f.a, f.a}, gp) == want);
  }
}

TEST_CASE("correlator json serialization round trip") {
  Fix f;
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) {
    std::vector<GradedVector<Rational>> us = {f.a, unit(Partition({1, 1}))};
    auto rc = reconstruct_rational(f.h, DualVector<Rational>::unit(kAlg, Partition({2, 1})),
                                   us, f.a);
    auto round = RationalCorrelator::from_json(rc.to_json());
    CHECK(round == rc);
  }
}

TEST_CASE("locality as permutation invariance") {
  Fix f;
  std::vector<GradedVector<Rational>> us = {f.a, f.a, f.a, f.a};
  auto rc = reconstruct_rational(f.h, f.vacd, us, f.vac);
  CHECK(rc.permuted({1, 0, 2, 3}) == rc);
  CHECK(rc.permuted({3, 2, 1, 0}) == rc);

  // mixed insertions: swapping (u_i, z_i) pairs relabels the variables
  std::vector<GradedVector<Rational>> mixed = {f.a, unit(Partition({1, 1}))};
  std::vector<GradedVector<Rational>> swapped = {unit(Partition({1, 1})), f.a};
  auto d = DualVector<Rational>::unit(kAlg, Partition({2, 1}));
  auto r1 = reconstruct_rational(f.h, d, mixed, f.a);
  auto r2 = reconstruct_rational(f.h, d, swapped, f.a);
  CHECK_FALSE(r1.is_zero());
  CHECK(r1.permuted({1, 0}) == r2);
}

TEST_CASE("derivative identity against L(-1)") {
  Fix f;
  auto d = DualVector<Rational>::unit(kAlg, Partition({1, 1}));
  std::vector<GradedVector<Rational>> us = {f.a, f.a};
  auto rc = reconstruct_rational(f.h, d, us, f.vac);
  CHECK_FALSE(rc.is_zero());
  auto shifted = reconstruct_rational(f.h, d, {f.h.translate(f.a), f.a}, f.vac);
  CHECK(shifted == rc.derivative(0));
  auto shifted2 = reconstruct_rational(f.h, d, {f.a, f.h.translate(f.a)}, f.vac);
  CHECK(shifted2 == rc.derivative(1));
}

TEST_CASE("iterate vs product associativity") {
  Fix f;
  std::string why;
  CHECK(iterate_product_check(f.h, f.vacd, f.a, f.a, f.vac, 6, &why));
  CHECK(iterate_product_check(f.h, DualVector<Rational>::unit(kAlg, Partition({2, 1})),
                              f.a, unit(Partition({1, 1})), f.a, 6, &why));
  CHECK(iterate_product_check(f.h, DualVector<Rational>::unit(kAlg, Partition({3, 2, 1})),
                              unit(Partition({2, 1})), f.a, unit(Partition({2, 1})), 5, &why));
}

TEST_CASE("q_vector realizes the rational continuation") {
  Fix f;
  TruncationPolicy pol;
  pol.max_weight = 6;

  // k = 0 returns the vector
  auto q0 = q_vector(f.h, {}, f.a, {}, pol);
  CHECK(std::abs(q0.coeff(Partition::single(1)) - Cplx(1, 0)) < 1e-15);

  // weight-1 part of Q(a, 1; z): the z^0 creation coefficient
  auto q1 = q_vector(f.h, {f.a}, f.vac, {Cplx(0.3, 0.2)}, pol);
  CHECK(std::abs(q1.project_level(1).coeff(Partition::single(1)) - Cplx(1, 0)) < 1e-14);

  // permutation invariance of the insertion slots
  std::vector<Cplx> pt = {Cplx(0.5, 0.1), Cplx(-0.3, 0.2)};
  std::vector<Cplx> pt_swapped = {pt[1], pt[0]};
  auto qa = q_vector(f.h, {f.a, f.a}, f.a * Rational(1, 2), pt, pol);
  auto qb = q_vector(f.h, {f.a, f.a}, f.a * Rational(1, 2), pt_swapped, pol);
  CHECK((qa - qb).magnitude() < 1e-10);

  // points outside M^k are rejected
  CHECK_THROWS_AS(q_vector(f.h, {f.a}, f.vac, {Cplx(0, 0)}, pol), std::domain_error);
  CHECK_THROWS_AS(q_vector(f.h, {f.a, f.a}, f.vac, {pt[0], pt[0]}, pol), std::domain_error);
}

TEST_CASE("truncated series approaches the rational value in the ordered region") {
  Fix f;
  auto d = DualVector<Rational>::unit(kAlg, Partition({2, 1, 1, 1}));
  std::vector<GradedVector<Rational>> us = {f.a, unit(Partition({1, 1}))};
  auto rc = reconstruct_rational(f.h, d, us, f.a);
  REQUIRE_FALSE(rc.is_zero());
  std::vector<Rational> zpt = {Rational(1, 2), Rational(1, 7)};
  Rational rc_val = rc.eval<Rational>(zpt);
  double prev = 1e300;
  for (long cap : {6L, 10L, 14L}) {
    TruncationPolicy pol;
    pol.max_weight = cap;
    auto series = series_correlator(f.h, d, us, f.a, pol);
    Rational series_val = 0;
    for (const auto& [e, c] : series.terms)
      series_val += c * pow_rational(zpt[0], e[0]) * pow_rational(zpt[1], e[1]);
    double diff = std::abs(to_double(series_val - rc_val));
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("wick oracle input contract") {
  Fix f;
  CHECK_THROWS_AS(wick_oracle(f.vacd, {unit(Partition({1, 1}))}, f.vac),
                  std::invalid_argument);
  CHECK_THROWS_AS(wick_oracle(f.vacd, {f.a}, f.a), std::invalid_argument);
  // 0 insertions: the plain pairing
  CHECK(wick_oracle(f.vacd, {}, f.vac * Rational(3)) ==
        RationalCorrelator::from_parts(Polynomial::constant(0, 3), {}, {}));
}

TEST_CASE("compact exhaustion nests and exhausts") {
  CompactExhaustion k1{2, 1}, k2{2, 2};
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<Cplx> z = {Cplx(coord(rng), coord(rng)), Cplx(coord(rng), coord(rng))};
    if (k1.contains(z)) CHECK(k2.contains(z));
    if (k1.contains_inner(z)) CHECK(k1.contains(z));
  }
  // any point of M^k is eventually contained
  std::vector<Cplx> far = {Cplx(3.7, 0), Cplx(0.001, 0)};
  CHECK_FALSE(k1.contains(far));
  CHECK(CompactExhaustion{2, 1000}.contains(far));
}

TEST_CASE("seminorm estimates") {
  Fix f;
  auto constant = RationalCorrelator::from_parts(Polynomial::constant(2, 1), {0, 0}, {});
  for (long n : {1L, 2L, 4L}) CHECK(seminorm_Rk(constant, n).value == doctest::Approx(1.0));

  auto rc = reconstruct_rational(f.h, f.vacd, {f.a, f.a}, f.vac);
  double prev = 0;
  for (long n = 1; n <= 4; ++n) {
    double est = seminorm_Rk(rc, n).value;
    CHECK(est >= prev);
    prev = est;
  }
  CHECK(prev > seminorm_Rk(rc, 1).value);

  // triangle inequality on the shared sample grid
  auto two = constant.scaled(Rational(2));
  auto sum = rc + two;
  for (long n : {1L, 2L}) {
    CHECK(seminorm_Rk(sum, n).value <=
          seminorm_Rk(rc, n).value + seminorm_Rk(two, n).value + 1e-12);
  }
}

TEST_CASE("pole bounds stay within declared orders") {
  Fix f;
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> lvl(1, 3);
  for (int i = 0; i < 10; ++i) {
    auto ps = partitions_of(lvl(rng));
    std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
    std::vector<GradedVector<Rational>> us = {unit(ps[pick(rng)]), f.a};
    auto dps = partitions_of(lvl(rng) + 1);
    auto d = DualVector<Rational>::unit(kAlg, dps[i % dps.size()]);
    auto rc = reconstruct_rational(f.h, d, us, f.a);
    if (rc.is_zero()) continue;
    CHECK(rc.zero_pole_orders()[0] <= us[0].max_level() + 1);
    CHECK(rc.zero_pole_orders()[1] <= 1 + 1);
    CHECK(rc.diag_pole(0, 1) <= us[0].max_level() + 1);
    // no other singularities: finite at random points of M^k
    std::vector<Cplx> pt = {Cplx(1.3, 0.4), Cplx(-0.2, 0.9)};
    CHECK(std::isfinite(std::abs(rc.eval(pt))));
  }
}
