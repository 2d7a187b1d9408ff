#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pjrp/costmodel.hpp"
#include "pjrp/harness.hpp"
#include "pjrp/primes.hpp"
#include "pjrp/reduction.hpp"
#include "pjrp/report.hpp"

namespace pjrp::io {

using Json = nlohmann::ordered_json;

// Rationals are written in "num/den" form. Integers are written as JSON numbers
// when they fit in 64 bits and as decimal strings otherwise; both forms are read.
// Every reader throws ValidationError on malformed input.

Json to_json(const cost::Instance& inst);
cost::Instance instance_from_json(const Json& j);

Json to_json(const cost::Policy& pol);
cost::Policy policy_from_json(const Json& j);

Json to_json(const primes::VpSet& vp);
primes::VpSet vpset_from_json(const Json& j);

/// Instance fields plus "cnf", "vp", "alphas" and "roles".
Json to_json(const reduction::Gamma& gamma);
/// Rebuilds the instance from "cnf" and "vp" and rejects files whose stored
/// commodities or alphas disagree with the rebuild.
reduction::Gamma gamma_from_json(const Json& j);

/// { "windows": { id: [t, ...] | {"lo": t, "hi": t} } }
harness::SearchWindow window_from_json(const Json& j);
Json to_json(const harness::SearchWindow& win);

Json to_json(const harness::SolveResult& res);
Json to_json(const harness::ExperimentReport& rep);
Json to_json(const reduction::TruthAssignment& a);

void write_report_csv(std::ostream& os, const VerificationReport& rep);
void write_conditions_csv(std::ostream& os, const std::vector<primes::ConditionRow>& rows);
void write_curve_csv(std::ostream& os, const std::vector<harness::CurveRow>& rows);

std::string read_file(const std::string& path);
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pjrp::io
