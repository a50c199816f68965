#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qseries/bailey.hpp"
#include "qseries/identities.hpp"
#include "qseries_cli/expr.hpp"
#include "qseries_cli/report.hpp"

using namespace qseries;
using namespace qseries::cli;

namespace {

struct RunConfig {
  std::string order = "50";
  int grid_denominator = 2;
  int cyclotomic = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::vector<std::string> specs;
  bool timing = false;

  SeriesContext context() const { return SeriesContext(QRational::parse(order), grid_denominator, cyclotomic); }
  bool json() const { return format == "json"; }

  Assignment assignment() const {
    Assignment a;
    for (const auto& s : specs) {
      auto [name, value] = parse_assignment(s);
      if (!a.emplace(name, value).second) throw InvalidSpecializationError("parameter " + name + " given twice");
    }
    return a;
  }
};

void add_common(CLI::App* sub, RunConfig& cfg, bool with_spec) {
  sub->add_option("--order", cfg.order, "Truncation order, a rational on the grid")->capture_default_str();
  sub->add_option("--grid-denominator", cfg.grid_denominator, "Exponent grid 1/D")->capture_default_str();
  sub->add_option("--cyclotomic", cfg.cyclotomic, "Cyclotomic order m of the coefficient field")
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  if (with_spec) {
    sub->add_option("--spec", cfg.specs, "Parameter value name=coeff*q^exp (repeatable)");
    sub->add_option("--seed", cfg.seed, "Seed for random specializations")->capture_default_str();
    sub->add_flag("--timing", cfg.timing, "Report elapsed times");
  }
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.json()) {
    std::cout << j.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  } else {
    std::cout << text << '\n';
  }
}

int cmd_list(const RunConfig& cfg, const std::vector<std::string>& tags) {
  if (!cfg.json()) {
    std::cout << export_registry(tags);
    return kExitPass;
  }
  for (const auto& e : registry()) {
    bool keep = tags.empty();
    for (const auto& t : tags) keep = keep || e.has_tag(t);
    if (!keep) continue;
    Json j;
    j["id"] = e.id;
    j["tags"] = e.tags;
    j["params"] = e.params;
    j["description"] = e.description;
    Json defaults = Json::array();
    for (const auto& d : e.defaults) defaults.push_back(spec_json(d));
    j["default_specs"] = defaults;
    j["dual"] = static_cast<bool>(e.dual);
    if (!e.erratum.empty()) j["erratum"] = e.erratum;
    std::cout << j.dump() << '\n';
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, const std::string& id, bool all, bool dual, int random_specs) {
  const SeriesContext ctx = cfg.context();
  const Assignment spec = cfg.assignment();
  std::vector<const IdentityEntry*> entries;
  if (all) {
    if (!spec.empty()) throw InvalidSpecializationError("--spec cannot be combined with --all");
    for (const auto& e : registry()) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->id < b->id; });
  } else {
    entries.push_back(&find_identity(id));
  }
  int code = kExitPass;
  for (const IdentityEntry* e : entries) {
    std::vector<VerificationReport> reports;
    if (!spec.empty()) {
      reports.push_back(verify(*e, spec, ctx));
    } else {
      reports = verify_sweep(*e, ctx, cfg.seed, random_specs);
      if (dual && e->dual) {
        for (auto& r : verify_dual(*e, ctx)) reports.push_back(std::move(r));
      }
    }
    for (const auto& r : reports) {
      emit(cfg, to_json(r, cfg.timing), to_text(r, cfg.timing));
      code = worse(code, exit_code(r));
    }
  }
  return code;
}

int cmd_pair_check(const RunConfig& cfg, const std::string& id, bool all, std::int64_t n_max, int samples) {
  const SeriesContext ctx = cfg.context();
  const Assignment spec = cfg.assignment();
  std::vector<const PairDef*> defs;
  if (all) {
    if (!spec.empty()) throw InvalidSpecializationError("--spec cannot be combined with --all");
    for (const auto& d : pair_catalog()) defs.push_back(&d);
    std::sort(defs.begin(), defs.end(), [](auto* a, auto* b) { return a->id < b->id; });
  } else {
    defs.push_back(&find_pair(id));
  }
  int code = kExitPass;
  std::mt19937_64 rng(cfg.seed);
  for (const PairDef* d : defs) {
    std::vector<Assignment> specs;
    if (!spec.empty() || d->params.empty() || !d->sample) {
      specs.push_back(spec);
    } else {
      for (int i = 0; i < samples; ++i) specs.push_back(d->sample(rng));
    }
    for (const auto& s : specs) {
      auto t0 = std::chrono::steady_clock::now();
      PairCheckReport r;
      try {
        r = check_pair(*d->make(s), n_max, ctx);
      } catch (const Error& e) {
        r.id = d->id;
        r.spec = s;
        r.order = ctx.truncation_order;
        r.error = e.what();
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit(cfg, to_json(r, n_max, ms, cfg.timing), to_text(r, n_max));
      code = worse(code, exit_code(r));
    }
  }
  return code;
}

int cmd_expand(const RunConfig& cfg, const std::string& text) {
  ExprPtr e = parse(text);
  SeriesContext ctx = cfg.context();
  ctx.cyclotomic_order = common_cyclotomic_order(ctx.cyclotomic_order, needed_cyclotomic_order(*e));
  Expansion x = expand(*e, ctx);
  emit(cfg, to_json(*e, x, ctx), to_text(x));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series engine: identities, Bailey pairs and expansions"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::vector<std::string> tags;
  auto* list = app.add_subcommand("list", "List registered identities");
  list->add_option("--tags", tags, "Only entries carrying one of these tags")->delimiter(',');
  add_common(list, cfg, false);

  std::string id;
  bool all = false, dual = false;
  int random_specs = -1;
  auto* verify_cmd = app.add_subcommand("verify", "Verify an identity by exact truncated comparison");
  verify_cmd->add_option("id", id, "Identity id");
  verify_cmd->add_flag("--all", all, "Every registered identity, sorted by id");
  verify_cmd->add_flag("--dual", dual, "Also check the Bailey-transform derivation where there is one");
  verify_cmd->add_option("--random", random_specs,
                         "Random specializations per entry (default 5 with --all, 0 otherwise)");
  add_common(verify_cmd, cfg, true);

  std::string pair_id;
  bool all_pairs = false;
  std::int64_t n_max = 10;
  int samples = 1;
  auto* pair_cmd = app.add_subcommand("pair-check", "Check a Bailey pair against its defining relation");
  pair_cmd->add_option("pair", pair_id, "Pair id");
  pair_cmd->add_flag("--all", all_pairs, "Every catalog pair, sorted by id");
  pair_cmd->add_option("--n-max", n_max, "Largest n checked")->capture_default_str()->check(CLI::NonNegativeNumber);
  pair_cmd->add_option("--samples", samples, "Random specializations per pair when no --spec is given")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_common(pair_cmd, cfg, true);

  std::string expr_text;
  auto* expand_cmd = app.add_subcommand("expand", "Expand an expression as a truncated series");
  expand_cmd->add_option("expr", expr_text, "Expression, e.g. \"1/qp(q;q;inf)\"")->required();
  add_common(expand_cmd, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*list) return cmd_list(cfg, tags);
    if (*verify_cmd) {
      if (all == !id.empty()) throw InvalidSpecializationError("give exactly one of an identity id or --all");
      if (random_specs < 0) random_specs = all ? 5 : 0;
      return cmd_verify(cfg, id, all, dual, random_specs);
    }
    if (*pair_cmd) {
      if (all_pairs == !pair_id.empty()) throw InvalidSpecializationError("give exactly one of a pair id or --all");
      return cmd_pair_check(cfg, pair_id, all_pairs, n_max, samples);
    }
    if (*expand_cmd) return cmd_expand(cfg, expr_text);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
