#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qseries/bailey.hpp"
#include "qseries/hypergeom.hpp"
#include "qseries/laurent.hpp"

namespace qseries {

inline constexpr const char* kEngineVersion = "0.1.0";

struct IdentityEntry {
  using SidesFn = std::function<SidePair(const Assignment&, const SeriesContext&)>;
  using MapFn = std::function<LaurentSeries(const LaurentSeries&, const SeriesContext&)>;

  std::string id;
  std::vector<std::string> tags;  // general, rr-type, false-theta, hybrid, transformation
  std::string description;
  std::vector<std::string> params;
  std::string constraints;
  std::vector<Assignment> defaults;
  // Smallest grid and cyclotomic field the entry lives in.
  int grid_denominator = 1;
  int cyclotomic_order = 1;
  // Entries written in q^k are compared to order * k in q.
  std::int64_t order_scale = 1;
  SidesFn sides;
  // Random valid specialization of the free parameters; empty if there are none.
  std::function<Assignment(std::mt19937_64&)> sample;
  // Second derivation through a catalog pair and a Bailey transform. The
  // transform sides are mapped onto the printed sides by dual_map.
  SidesFn dual;
  MapFn dual_map;
  std::string dual_description;
  // Set when the statement as printed does not hold. The printed sides stay
  // authoritative for verify(); the corrected sides are checked separately
  // and are what the dual assembly is compared against.
  std::string erratum;
  SidesFn corrected;

  bool has_tag(const std::string& t) const;
};

const std::vector<IdentityEntry>& registry();
// Throws UnknownIdError.
const IdentityEntry& find_identity(const std::string& id);

enum class Status { Pass, Mismatch, Error };
const char* status_name(Status s);

struct VerificationReport {
  std::string id;
  std::string check = "printed";  // or corrected, dual:transform, dual:lhs, dual:rhs
  QRational order{0};
  Assignment spec;
  Status status = Status::Error;
  std::optional<QRational> mismatch_exponent;
  std::optional<CycloCoeff> lhs_coeff;
  std::optional<CycloCoeff> rhs_coeff;
  double elapsed_ms = 0;
  std::string error_kind;  // set when status == Error
  std::string error_message;
};

// The context actually used for an entry: order scaled, grid and field
// widened to what the entry needs.
SeriesContext entry_context(const IdentityEntry& e, const SeriesContext& ctx);

// Never throws for evaluation failures; they come back as Status::Error with
// error_kind naming the failure (grid, not-a-unit, invalid-spec, ...).
VerificationReport verify(const IdentityEntry& e, const Assignment& spec, const SeriesContext& ctx);
VerificationReport verify(const std::string& id, const Assignment& spec, const SeriesContext& ctx);
std::vector<VerificationReport> verify_defaults(const IdentityEntry& e, const SeriesContext& ctx);
// The corrected statement of an entry with an erratum (check = "corrected").
VerificationReport verify_corrected(const IdentityEntry& e, const SeriesContext& ctx);
// The transform assembly: transform sides agree, and map onto both printed sides.
std::vector<VerificationReport> verify_dual(const IdentityEntry& e, const SeriesContext& ctx);

// One entry at its defaults, its corrected form if any, and `random_specs`
// random specializations drawn from a generator seeded by seed and the id.
std::vector<VerificationReport> verify_sweep(const IdentityEntry& e, const SeriesContext& ctx, std::uint64_t seed,
                                             int random_specs = 5);

// Every entry at its defaults plus `random_specs` seeded random
// specializations of its free parameters, plus the corrected form of entries
// with an erratum; sorted by id, deterministic.
std::vector<VerificationReport> verify_all(const QRational& order, std::uint64_t seed, int random_specs = 5);

// Line-oriented registry listing, schema_version first.
std::string export_registry(const std::vector<std::string>& tag_filter = {});

// Error kind for an exception, as used in reports.
std::string error_kind(const std::exception& e);

}  // namespace qseries
