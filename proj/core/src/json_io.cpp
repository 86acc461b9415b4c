#include "voalab/json_io.hpp"

#include <cstdio>

namespace voalab {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

GradedVector<Rational> vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector: expected a term array");
  GradedVector<Rational> out;
  bool first = true;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2)
      throw std::invalid_argument("vector term: expected [coeff, state]");
    Rational c = term.at(0).is_string() ? parse_rational(term.at(0).get<std::string>())
                                        : Rational(term.at(0).get<long>());
    auto [sector, p] = parse_state(term.at(1).get<std::string>());
    if (first) {
      out = GradedVector<Rational>(sector);
      first = false;
    } else if (!(sector == out.sector())) {
      throw std::invalid_argument("vector terms mix sectors");
    }
    out.add_term(p, c);
  }
  return out;
}

nlohmann::json vector_to_json(const GradedVector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [p, c] : v.terms())
    out.push_back({rational_to_string(c), render_state(v.sector(), p)});
  return out;
}

DualVector<Rational> dual_from_json(const nlohmann::json& j) {
  GradedVector<Rational> v = vector_from_json(j);
  DualVector<Rational> out(v.sector());
  for (const auto& [p, c] : v.terms()) out.add_term(p, c);
  return out;
}

TruncationPolicy policy_from_json(const nlohmann::json& j) {
  TruncationPolicy out;
  if (!j.is_object()) throw std::invalid_argument("policy: expected an object");
  out.max_weight = j.value("maxWeight", out.max_weight);
  out.tolerance = j.value("tol", out.tolerance);
  out.tail_window = j.value("tailWindow", out.tail_window);
  out.validate();
  return out;
}

nlohmann::json policy_to_json(const TruncationPolicy& p) {
  return {{"maxWeight", p.max_weight}, {"tol", p.tolerance}, {"tailWindow", p.tail_window}};
}

GradedFunctional functional_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("base"))
    throw std::invalid_argument("functional: expected {base, s}");
  DualVector<Rational> base = dual_from_json(j.at("base"));
  Rational s = 1;
  if (j.contains("s")) {
    const auto& js = j.at("s");
    s = js.is_string() ? parse_rational(js.get<std::string>()) : Rational(js.get<long>());
  }
  return GradedFunctional(std::move(base), s);
}

Disk disk_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("disk: expected an object");
  Disk d;
  if (j.contains("z")) {
    d.z = cplx_from_json(j.at("z"));
  }
  d.r1 = j.value("r1", d.r1);
  d.r2 = j.value("r2", d.r2);
  return d;
}

nlohmann::json tail_report_to_json(const TailReport& r, const TruncationPolicy& p) {
  return {{"value", cplx_to_json(r.value)},
          {"ratio", r.fitted_ratio},
          {"bound", r.bound_estimate},
          {"accepted", r.accepted},
          {"policy", {{"N", p.max_weight}, {"tol", p.tolerance}}}};
}

Cplx cplx_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Cplx(j.at(0).get<double>(), j.at(1).get<double>());
  throw std::invalid_argument("complex value: expected number or [re, im]");
}

nlohmann::json cplx_to_json(const Cplx& z) { return {z.real(), z.imag()}; }

}  // namespace voalab
