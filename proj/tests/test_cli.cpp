#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "qseries_cli/expr.hpp"
#include "qseries_cli/report.hpp"

using namespace qseries;
using namespace qseries::cli;
using R = QRational;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(QSERIES_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::size_t parse_error_position(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST(Expr, PrintThenParseGivesTheSameTree) {
  for (const char* text :
       {"1/qp(q;q;inf)", "qp(q;q;0)", "-3*q^(1/2) + 2/5", "(1 - q)^-2", "qp(-1*q^2; q^3; 4) / qp(q^(1/2); q; -2)",
        "theta(3/2, 1/2, -) + ftheta(8, 4, +)", "zeta(4)*q - zeta(3, 2)", "-(1/2)^3", "q^-2 - -4", "((q))",
        "1/2/3", "2 - (3 - q)", "-q^2^3"}) {
    ExprPtr a = parse(text);
    std::string printed = print(*a);
    ExprPtr b = parse(printed);
    EXPECT_TRUE(*a == *b) << text << " -> " << printed;
    EXPECT_EQ(print(*b), printed) << text;
  }
}

TEST(Expr, ParseErrorsCarryPositions) {
  EXPECT_EQ(parse_error_position("qp(q;q"), 6u);
  EXPECT_EQ(parse_error_position("1 + * q"), 4u);
  EXPECT_EQ(parse_error_position("q^x"), 2u);
  EXPECT_EQ(parse_error_position("qp(q;q;inf) )"), 12u);
  EXPECT_NE(parse_error_position("zeta(5)"), std::string::npos);
  EXPECT_EQ(parse_error_position("1 - q"), std::string::npos);
}

TEST(Expr, PartitionGeneratingFunction) {
  const int n = 40;
  SeriesContext ctx(R(n), 1);
  Expansion x = expand(*parse("1/qp(q;q;inf)"), ctx);
  EXPECT_FALSE(x.exact);
  auto p = oracle::restricted_partitions(n, [](int) { return true; });
  for (int k = 0; k < n; ++k) EXPECT_EQ(x.series.coeff(R(k)).rational_part(), p[k]) << k;
  EXPECT_EQ(to_text(expand(*parse("1/qp(q;q;inf)"), SeriesContext(R(8), 1))),
            "1 + q + 2*q^2 + 3*q^3 + 5*q^4 + 7*q^5 + 11*q^6 + 15*q^7 + O(q^8)");
}

TEST(Expr, PolynomialsAreExact) {
  SeriesContext ctx(R(20), 2);
  EXPECT_EQ(to_text(expand(*parse("qp(q;q;0)"), ctx)), "1");
  Expansion x = expand(*parse("(1 - q^(1/2))^2"), ctx);
  EXPECT_TRUE(x.exact);
  EXPECT_EQ(to_text(x), "1 - 2*q^(1/2) + q");
}

TEST(Expr, Assignments) {
  auto [name, m] = parse_assignment("z=-1*q^1");
  EXPECT_EQ(name, "z");
  EXPECT_EQ(m, -ParamMonomial::q(R(1)));
  EXPECT_THROW(parse_assignment("z=1-q"), Error);
  EXPECT_EQ(needed_cyclotomic_order(*parse("zeta(4) + zeta(6, 1)")), 12);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run("verify geneqr1 --spec z=-1*q^1").code, 0);
  EXPECT_EQ(run("verify eqaq2").code, 2);
  EXPECT_EQ(run("verify nope").code, 3);
  EXPECT_EQ(run("verify geneqr1 --spec 'z=q^(1/3)'").code, 3);
  EXPECT_EQ(run("expand \"qp(q;q\"").code, 3);
  EXPECT_EQ(run("--bogus").code, 3);
  EXPECT_EQ(run("pair-check chubp1 --n-max 4 --order 20").code, 0);
  Outcome e = run("expand \"qp(q;q;0)\"");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "1\n");
}

TEST(Binary, StructuredRecordsKeepTheirFieldOrder) {
  Outcome r = run("verify eqaq2 --format json");
  ASSERT_EQ(r.code, 2);
  auto j = nlohmann::ordered_json::parse(r.out.substr(0, r.out.find('\n')));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::vector<std::string> expect{"id",       "order",      "spec",           "status", "mismatch_exponent",
                                  "lhs_coeff", "rhs_coeff", "elapsed_ms", "engine_version", "check"};
  EXPECT_EQ(keys, expect);
  EXPECT_EQ(j["status"], "mismatch");
  EXPECT_TRUE(j["elapsed_ms"].is_null());
}

TEST(Binary, StructuredOutputIsStable) {
  Outcome a = run("verify geneq1 --format json --seed 3");
  Outcome b = run("verify geneq1 --format json --seed 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}
