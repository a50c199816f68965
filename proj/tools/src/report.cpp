#include "qseries_cli/report.hpp"

#include <sstream>

namespace qseries::cli {

namespace {

int rank(int code) {
  switch (code) {
    case kExitPass:
      return 0;
    case kExitMismatch:
      return 1;
    case kExitConfig:
      return 2;
    default:
      return 3;
  }
}

const PairCheckRow* first_failure(const PairCheckReport& r) {
  for (const auto& row : r.rows) {
    if (!row.pass) return &row;
  }
  return nullptr;
}

std::string spec_text(const Assignment& a) { return a.empty() ? "-" : format_assignment(a); }

}  // namespace

int worse(int a, int b) { return rank(a) >= rank(b) ? a : b; }

int exit_code(const VerificationReport& r) {
  switch (r.status) {
    case Status::Pass:
      return kExitPass;
    case Status::Mismatch:
      return kExitMismatch;
    case Status::Error:
      break;
  }
  return r.error_kind == "internal" ? kExitInternal : kExitConfig;
}

int exit_code(const PairCheckReport& r) {
  if (!r.error.empty()) return kExitConfig;
  if (r.pass) return kExitPass;
  const PairCheckRow* f = first_failure(r);
  return f && !f->error.empty() && f->cmp.equal ? kExitConfig : kExitMismatch;
}

Json spec_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [k, v] : a) j[k] = v.to_string();
  return j;
}

Json to_json(const VerificationReport& r, bool timing) {
  Json j;
  j["id"] = r.id;
  j["order"] = r.order.to_string();
  j["spec"] = spec_json(r.spec);
  j["status"] = status_name(r.status);
  if (r.mismatch_exponent) j["mismatch_exponent"] = r.mismatch_exponent->to_string();
  if (r.lhs_coeff) j["lhs_coeff"] = r.lhs_coeff->to_string();
  if (r.rhs_coeff) j["rhs_coeff"] = r.rhs_coeff->to_string();
  j["elapsed_ms"] = timing ? Json(r.elapsed_ms) : Json(nullptr);
  j["engine_version"] = kEngineVersion;
  j["check"] = r.check;
  if (r.status == Status::Error) j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
  return j;
}

std::string to_text(const VerificationReport& r, bool timing) {
  std::ostringstream os;
  os << r.id;
  if (r.check != "printed") os << " [" << r.check << "]";
  os << "  " << spec_text(r.spec) << "  order " << r.order.to_string() << ": " << status_name(r.status);
  if (r.status == Status::Mismatch && r.mismatch_exponent) {
    os << " at q^" << r.mismatch_exponent->to_string() << " (lhs " << r.lhs_coeff->to_string() << ", rhs "
       << r.rhs_coeff->to_string() << ")";
  }
  if (r.status == Status::Error) os << " (" << r.error_kind << ": " << r.error_message << ")";
  if (timing) os << "  " << r.elapsed_ms << " ms";
  return os.str();
}

Json to_json(const PairCheckReport& r, std::int64_t n_max, double elapsed_ms, bool timing) {
  Json j;
  j["id"] = r.id;
  j["order"] = r.order.to_string();
  j["spec"] = spec_json(r.spec);
  const int code = exit_code(r);
  j["status"] = code == kExitPass ? "pass" : code == kExitMismatch ? "mismatch" : "error";
  j["n_max"] = n_max;
  if (const PairCheckRow* f = first_failure(r)) {
    j["n"] = f->n;
    if (!f->cmp.equal) {
      j["mismatch_exponent"] = f->cmp.exponent.to_string();
      j["lhs_coeff"] = f->cmp.lhs.to_string();
      j["rhs_coeff"] = f->cmp.rhs.to_string();
    }
  }
  j["elapsed_ms"] = timing ? Json(elapsed_ms) : Json(nullptr);
  j["engine_version"] = kEngineVersion;
  const PairCheckRow* f = first_failure(r);
  std::string err = !r.error.empty() ? r.error : f ? f->error : "";
  if (!err.empty()) j["error"] = err;
  return j;
}

std::string to_text(const PairCheckReport& r, std::int64_t n_max) {
  std::ostringstream os;
  os << r.id << "  " << spec_text(r.spec) << "  n<=" << n_max << " order " << r.order.to_string() << ": ";
  if (!r.error.empty()) {
    os << "error (" << r.error << ")";
  } else if (r.pass) {
    os << "pass";
  } else if (const PairCheckRow* f = first_failure(r)) {
    if (!f->cmp.equal) {
      os << "mismatch at n=" << f->n << ", q^" << f->cmp.exponent.to_string() << " (beta " << f->cmp.lhs.to_string()
         << ", sum " << f->cmp.rhs.to_string() << ")";
    } else {
      os << "error at n=" << f->n << " (" << f->error << ")";
    }
  }
  return os.str();
}

Json to_json(const Expr& e, const Expansion& x, const SeriesContext& ctx) {
  Json j;
  j["expr"] = print(e);
  j["order"] = ctx.truncation_order.to_string();
  j["exact"] = x.exact;
  Json terms = Json::array();
  const int d = x.series.ring().grid_denominator;
  for (const auto& t : x.series.terms()) {
    terms.push_back({{"exponent", QRational(t.tick, d).to_string()}, {"coeff", t.coeff.to_string()}});
  }
  j["terms"] = terms;
  j["series"] = to_text(x);
  j["engine_version"] = kEngineVersion;
  return j;
}

std::string to_text(const Expansion& x) { return x.series.to_string(!x.exact); }

}  // namespace qseries::cli
