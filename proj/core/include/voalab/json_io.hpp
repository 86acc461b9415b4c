#ifndef VOALAB_JSON_IO_HPP
#define VOALAB_JSON_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "voalab/completion.hpp"
#include "voalab/module_fock.hpp"

namespace voalab {

// JSON forms used by config files and CLI reports. Vectors are term lists
// [["3/4", "a[-1]|0>"], ...]; policies are {"maxWeight":N, "tol":x,
// "tailWindow":w}; results are {value:[re,im], ratio, bound, accepted,
// policy:{N,tol}}.

std::string format_double(double x);  // 17 significant digits, locale-free

GradedVector<Rational> vector_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const GradedVector<Rational>& v);
DualVector<Rational> dual_from_json(const nlohmann::json& j);

TruncationPolicy policy_from_json(const nlohmann::json& j);
nlohmann::json policy_to_json(const TruncationPolicy& p);

GradedFunctional functional_from_json(const nlohmann::json& j);

Disk disk_from_json(const nlohmann::json& j);

nlohmann::json tail_report_to_json(const TailReport& r, const TruncationPolicy& p);

Cplx cplx_from_json(const nlohmann::json& j);
nlohmann::json cplx_to_json(const Cplx& z);

}  // namespace voalab

#endif
