#pragma once

#include <string>

#include <json.hpp>

#include "adlab/estimator.hpp"
#include "adlab/gevp.hpp"
#include "adlab/residual.hpp"
#include "adlab/studies.hpp"
#include "adlab/types.hpp"

namespace adlab::report {

using json = nlohmann::ordered_json;

// Bumped whenever any report layout changes; schemas/ carries the same value.
inline constexpr const char* kFormat = "adlab-report";
inline constexpr int kVersion = 1;

// {"format", "version", "kind", "config", "result"}
json envelope(const std::string& kind, json config, json result);

json complex_vector(const CVector& v);  // [[re, im], ...]
json real_vector(const RVector& v);

json residual_row(const ResidualRow& row);
json residual_table(const ResidualReport& table);
json match_result(const MatchResult& m);
json estimate(const AveragedEstimate& est);
json convergence(const ConvergenceResult& r);
json uncertainty(const UncertaintyResult& r);
json commutator(const CommutatorCheck& c);
json replacement(const ReplacementSweep& s);
json cross_term(const CrossTermDecay& c);
json noise_floor(const NoiseFloorReport& r);

// Two-space-indented text with a trailing newline.
std::string dump(const json& j);

}  // namespace adlab::report
