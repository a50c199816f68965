#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qseries/bailey.hpp"
#include "qseries/identities.hpp"
#include "qseries_cli/expr.hpp"

namespace qseries::cli {

using Json = nlohmann::ordered_json;

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitInternal = 4;

// The more severe of two exit codes: internal > config > mismatch > pass.
int worse(int a, int b);
int exit_code(const VerificationReport& r);
int exit_code(const PairCheckReport& r);

Json spec_json(const Assignment& a);

// elapsed_ms is null unless timing is on, so that structured output is
// reproducible byte for byte.
Json to_json(const VerificationReport& r, bool timing);
std::string to_text(const VerificationReport& r, bool timing);

Json to_json(const PairCheckReport& r, std::int64_t n_max, double elapsed_ms, bool timing);
std::string to_text(const PairCheckReport& r, std::int64_t n_max);

Json to_json(const Expr& e, const Expansion& x, const SeriesContext& ctx);
std::string to_text(const Expansion& x);

}  // namespace qseries::cli
