#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>

#include <json.hpp>

#include "fuzzylp/model_io.hpp"
#include "test_util.hpp"

using namespace fuzzylp;
using testutil::flp_equal;
using testutil::load_model;

namespace {

parse_result parse_text(const std::string& text) {
  return parse_model({text, "inline"});
}

int error_count(const parse_result& r) {
  int n = 0;
  for (const parse_diagnostic& d : r.diagnostics) {
    if (d.sev == severity::error) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("bundled textile model parses clean and exact") {
  const auto src = load_model_file(testutil::model_path("textile.flp"));
  REQUIRE(src.has_value());
  const parse_result r = parse_model(*src);
  REQUIRE(r.ok());
  CHECK(r.diagnostics.empty());

  const fuzzy_linear_program& flp = *r.model;
  REQUIRE(flp.num_vars() == 3);
  REQUIRE(flp.rows.size() == 7);
  CHECK(flp.var_names == std::vector<std::string>{"x1", "x2", "x3"});

  // process-time table, bit exact
  const double expected[4][3] = {{0.0033, 0.001, 0.0033},
                                 {0.056, 0.025, 0.1},
                                 {0.0067, 0.004, 0.017},
                                 {0.01, 0.01, 0.01}};
  const double hours[4] = {208.0, 4368.0, 520.0, 780.0};
  const char* labels[4] = {"cutting", "sewing", "pleating", "packaging"};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(flp.rows[i].label == labels[i]);
    CHECK(flp.rows[i].rel == relation::less_equal);
    CHECK(flp.rows[i].rhs == hours[i]);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::get<double>(flp.rows[i].coeffs[j]) == expected[i][j]);
    }
  }
  const double demands[3] = {25000.0, 40000.0, 10000.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(flp.rows[4 + i].rel == relation::greater_equal);
    CHECK(flp.rows[4 + i].rhs == demands[i]);
  }

  // fuzzy profit intervals with the canonical curve parameters
  const double lo[3] = {1.02, 0.2, 1.7};
  const double hi[3] = {1.08, 0.4, 2.0};
  for (int j = 0; j < 3; ++j) {
    REQUIRE(is_fuzzy(flp.objective[j]));
    const s_curve& s = std::get<fuzzy_coeff>(flp.objective[j]).curve;
    CHECK(s.v_a == lo[j]);
    CHECK(s.v_b == hi[j]);
    CHECK(s.B == 1.0);
    CHECK(s.C == 0.001);
    CHECK(s.d == 13.8);
  }
}

TEST_CASE("minimal and odd but valid models") {
  SUBCASE("empty subject-to block") {
    const parse_result r = parse_text("maximize: 1.0 x\nsubject to:\n");
    REQUIRE(r.ok());
    CHECK(r.model->num_vars() == 1);
    CHECK(r.model->rows.empty());
  }
  SUBCASE("no subject-to at all") {
    const parse_result r = parse_text("minimize: 2 y\n");
    REQUIRE(r.ok());
    CHECK(r.model->direction == sense::minimize);
  }
  SUBCASE("bare variables and signs") {
    const parse_result r =
        parse_text("maximize: x - 2 y + .5 z\nsubject to:\nr1: x + y <= 4\n");
    REQUIRE(r.ok());
    CHECK(std::get<double>(r.model->objective[0]) == 1.0);
    CHECK(std::get<double>(r.model->objective[1]) == -2.0);
    CHECK(std::get<double>(r.model->objective[2]) == 0.5);
  }
  SUBCASE("unlabeled bound row and semicolons") {
    const parse_result r =
        parse_text("maximize: 1 x\nsubject to:\nx >= 25000;\n");
    REQUIRE(r.ok());
    CHECK(r.model->rows[0].label.empty());
    CHECK(r.model->rows[0].rel == relation::greater_equal);
    CHECK(r.model->rows[0].rhs == 25000.0);
  }
  SUBCASE("scurve overrides apply to every interval") {
    const parse_result r = parse_text(
        "scurve: B=1 C=0.01 d=7\nmaximize: ~(1,2) x\nsubject to:\n");
    REQUIRE(r.ok());
    const s_curve& s = std::get<fuzzy_coeff>(r.model->objective[0]).curve;
    CHECK(s.C == 0.01);
    CHECK(s.d == 7.0);
  }
  SUBCASE("vars first seen in rows get zero objective entries") {
    const parse_result r =
        parse_text("maximize: 1 x\nsubject to:\nr: x + y <= 2\n");
    REQUIRE(r.ok());
    REQUIRE(r.model->num_vars() == 2);
    CHECK(std::get<double>(r.model->objective[1]) == 0.0);
  }
  SUBCASE("exponent literals are accepted") {
    const parse_result r =
        parse_text("maximize: 1e-2 x\nsubject to:\nr: x <= 2.5e3\n");
    REQUIRE(r.ok());
    CHECK(std::get<double>(r.model->objective[0]) == 0.01);
    CHECK(r.model->rows[0].rhs == 2500.0);
  }
  SUBCASE("crisp models print without an scurve line") {
    const parse_result r = parse_text("maximize: 1 x\nsubject to:\n");
    REQUIRE(r.ok());
    CHECK(print_model(*r.model).rfind("maximize:", 0) == 0);
  }
}

TEST_CASE("diagnostics") {
  SUBCASE("reversed fuzzy interval, exact message and position") {
    const parse_result r = parse_text("maximize: ~(2, 1) x\n");
    CHECK_FALSE(r.ok());
    REQUIRE(error_count(r) == 1);
    const parse_diagnostic& d = r.diagnostics[0];
    CHECK(d.message == "fuzzy interval lower bound must be < upper bound");
    CHECK(d.line == 1);
    CHECK(d.column == 11);  // the '~'
  }
  SUBCASE("unknown directive") {
    const parse_result r = parse_text("foo: 1 x <= 2\nmaximize: 1 x\n");
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics[0].message == "unknown directive 'foo'");
  }
  SUBCASE("missing objective") {
    const parse_result r = parse_text("subject to:\nr: 1 x <= 2\n");
    CHECK_FALSE(r.ok());
  }
  SUBCASE("fuzzy coefficient in a >= row") {
    const parse_result r = parse_text(
        "maximize: 1 x\nsubject to:\nr: ~(1,2) x >= 2\n");
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics[0].message ==
          "fuzzy coefficients are only allowed in <= rows");
    CHECK(r.diagnostics[0].line == 3);
  }
  SUBCASE("duplicate labels warn but still parse") {
    const parse_result r = parse_text(
        "maximize: 1 x\nsubject to:\na: x <= 1\na: x <= 2\n");
    REQUIRE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].sev == severity::warning);
    CHECK(r.diagnostics[0].line == 4);
  }
  SUBCASE("parser recovers and reports several errors") {
    const parse_result r = parse_text(
        "maximize: 1 x +\nsubject to:\nr1: x <=\nr2: x <= 1 junk\n");
    CHECK_FALSE(r.ok());
    CHECK(error_count(r) == 3);
  }
  SUBCASE("positions always land inside the source") {
    const char* sources[] = {
        "maximize: ~(2, 1) x\n",
        "foo: 1 x\n",
        "maximize: 1 x\nsubject to:\nr: x ! 2\n",
        "maximize: 1 x\nsubject to:\nr: <= 2\n",
        "scurve: B=0\nmaximize: 1 x\n",
        "maximize: 1 x\nsubject to:\nr: x + x <= 2\n",
        "",
    };
    for (const char* text : sources) {
      CAPTURE(text);
      const parse_result r = parse_text(text);
      std::vector<std::string> lines;
      std::string cur;
      for (const char* p = text; *p; ++p) {
        if (*p == '\n') {
          lines.push_back(cur);
          cur.clear();
        } else {
          cur += *p;
        }
      }
      lines.push_back(cur);
      for (const parse_diagnostic& d : r.diagnostics) {
        REQUIRE(d.line >= 1);
        REQUIRE(d.line <= static_cast<int>(lines.size()));
        CHECK(d.column >= 1);
        CHECK(d.column <=
              static_cast<int>(lines[static_cast<std::size_t>(d.line - 1)]
                                   .size()) +
                  1);
      }
    }
  }
  SUBCASE("format_diagnostics layout") {
    const parse_result r = parse_text("maximize: ~(2, 1) x\n");
    const std::string text = format_diagnostics(r, "m.flp");
    CHECK(text ==
          "m.flp:1:11: error: fuzzy interval lower bound must be < upper "
          "bound\n");
  }
}

TEST_CASE("parse/print round trip") {
  SUBCASE("bundled files") {
    for (const char* name : {"textile.flp", "textile_as_published.flp"}) {
      CAPTURE(name);
      const fuzzy_linear_program a = load_model(name);
      const parse_result again = parse_text(print_model(a));
      REQUIRE(again.ok());
      CHECK(flp_equal(a, *again.model));
      CHECK(again.model->var_names == a.var_names);
    }
  }
  SUBCASE("synthetic model with the awkward cases") {
    const parse_result r = parse_text(
        "scurve: B=1 C=0.002 d=9.5\n"
        "minimize: -1.5 a + ~(0.125,0.375) b + 0 c\n"
        "subject to:\n"
        "cap: 0.1 a - 2 b + c <= 7.25\n"
        "even: a = 3\n"
        "floor: b >= 0.5\n");
    REQUIRE(r.ok());
    const parse_result again = parse_text(print_model(*r.model));
    REQUIRE(again.ok());
    CHECK(flp_equal(*r.model, *again.model));
  }
  SUBCASE("API-built model without names") {
    fuzzy_linear_program flp;
    flp.direction = sense::maximize;
    flp.objective = {coefficient{2.0},
                     coefficient{fuzzy_coeff{{1.0, 0.001, 13.8, 3.0, 4.0}}}};
    fuzzy_row row;
    row.coeffs = {coefficient{1.0}, coefficient{1.0}};
    row.rel = relation::less_equal;
    row.rhs = 9.0;
    flp.rows.push_back(row);
    const parse_result again = parse_text(print_model(flp));
    REQUIRE(again.ok());
    CHECK(flp_equal(flp, *again.model));
  }
  SUBCASE("nonzero lower bounds cannot be printed") {
    fuzzy_linear_program flp;
    flp.objective = {coefficient{1.0}};
    flp.var_lower = {2.0};
    CHECK_THROWS_AS((void)print_model(flp), std::invalid_argument);
  }
  SUBCASE("randomized models round trip") {
    std::mt19937 gen(31415);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    for (int trial = 0; trial < 300; ++trial) {
      CAPTURE(trial);
      const int nv = std::uniform_int_distribution<int>(1, 4)(gen);
      const s_curve shape{1.0, u01(gen) < 0.5 ? 0.001 : 0.01,
                          5.0 + 15.0 * u01(gen), 0.0, 1.0};
      auto random_coeff = [&](bool allow_fuzzy) -> coefficient {
        if (allow_fuzzy && u01(gen) < 0.3) {
          const double lo = val(gen);
          const double hi = lo + 0.1 + 10.0 * u01(gen);
          s_curve s = shape;
          s.v_a = lo;
          s.v_b = hi;
          return fuzzy_coeff{s};
        }
        if (u01(gen) < 0.15) return 0.0;
        return val(gen);
      };
      fuzzy_linear_program flp;
      flp.direction = u01(gen) < 0.5 ? sense::maximize : sense::minimize;
      for (int j = 0; j < nv; ++j) {
        flp.objective.push_back(random_coeff(true));
      }
      const int nrows = std::uniform_int_distribution<int>(0, 4)(gen);
      for (int i = 0; i < nrows; ++i) {
        fuzzy_row row;
        const double p = u01(gen);
        row.rel = p < 0.6 ? relation::less_equal
                  : p < 0.85 ? relation::greater_equal
                             : relation::equal;
        for (int j = 0; j < nv; ++j) {
          row.coeffs.push_back(
              random_coeff(row.rel == relation::less_equal));
        }
        row.rhs = val(gen);
        if (u01(gen) < 0.7) row.label = "r" + std::to_string(i + 1);
        flp.rows.push_back(std::move(row));
      }
      const parse_result again = parse_text(print_model(flp));
      REQUIRE(again.ok());
      CHECK(flp_equal(flp, *again.model));
    }
  }
}

TEST_CASE("sweep CSV") {
  const fuzzy_linear_program flp = load_model("textile.flp");
  const sweep_result r = sweep_serial(flp, {1.0, 0.5}, 748);
  const std::string csv = emit_sweep_csv(r);

  SUBCASE("shape and order") {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : csv) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    REQUIRE(lines.size() == 6);  // header + 4 records + summary
    CHECK(lines[0] == "M,alpha1,alpha2,G,x1,x2,x3");
    CHECK(lines[1].rfind("748,1,1,", 0) == 0);
    CHECK(lines[2].rfind("748,1,0.5,", 0) == 0);
    CHECK(lines[3].rfind("748,0.5,1,", 0) == 0);
    CHECK(lines[5].rfind("# g_max=", 0) == 0);
  }
  SUBCASE("round trip is bit exact") {
    const auto back = parse_sweep_csv(csv);
    REQUIRE(back.has_value());
    CHECK(back->m == 748);
    REQUIRE(back->records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      CHECK(std::memcmp(&back->records[i].objective, &r.records[i].objective,
                        sizeof(double)) == 0);
      CHECK(back->records[i].alpha1 == r.records[i].alpha1);
      CHECK(back->records[i].x == r.records[i].x);
    }
    CHECK(std::memcmp(&back->g_max, &r.g_max, sizeof(double)) == 0);
    CHECK(std::memcmp(&back->g_min, &r.g_min, sizeof(double)) == 0);
  }
  SUBCASE("non-optimal records carry nan") {
    const fuzzy_linear_program bad =
        load_model("textile_as_published.flp");
    const sweep_result rb = sweep_serial(bad, {1.0}, 7);
    const std::string text = emit_sweep_csv(rb);
    CHECK(text.find("7,1,1,nan") != std::string::npos);
    const auto back = parse_sweep_csv(text);
    REQUIRE(back.has_value());
    CHECK(back->records[0].status != solve_status::optimal);
  }
}

TEST_CASE("solution reports") {
  solution s;
  s.status = solve_status::optimal;
  s.x = {27766.990291262136, 40000.0, 10233.009708737864};
  s.objective = 66454.36893203884;
  s.iterations = 5;
  const std::vector<std::string> names = {"x1", "x2", "x3"};

  SUBCASE("json schema") {
    const std::string text = emit_solution_report(s, names, report_format::json);
    CHECK(text.find("\"status\": \"optimal\"") != std::string::npos);
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["objective"].get<double>() == s.objective);
    CHECK(j["x"]["x2"].get<double>() == 40000.0);
    CHECK(j["iterations"].get<int>() == 5);
  }
  SUBCASE("csv and json encode the same numbers") {
    const std::string csv = emit_solution_report(s, names, report_format::csv);
    const nlohmann::json j = nlohmann::json::parse(
        emit_solution_report(s, names, report_format::json));
    // csv row: status,objective,iterations,x1,x2,x3
    const std::size_t row_start = csv.find('\n') + 1;
    std::vector<std::string> fields;
    std::string cur;
    for (std::size_t i = row_start; i < csv.size() && csv[i] != '\n'; ++i) {
      if (csv[i] == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += csv[i];
      }
    }
    fields.push_back(cur);
    REQUIRE(fields.size() == 6);
    CHECK(std::strtod(fields[1].c_str(), nullptr) ==
          j["objective"].get<double>());
    for (int k = 0; k < 3; ++k) {
      CHECK(std::strtod(fields[static_cast<std::size_t>(3 + k)].c_str(),
                        nullptr) ==
            j["x"][names[static_cast<std::size_t>(k)]].get<double>());
    }
  }
  SUBCASE("satisfaction report has the full schema") {
    satisfaction_result sat;
    sat.lambda = 0.5019379571054401;
    sat.x = s.x;
    sat.achieved_objective = 60086.41091566303;
    sat.goal_lo = 53718.446601941745;
    sat.goal_hi = 66454.36893203884;
    sat.iterations = 20;
    const nlohmann::json j = nlohmann::json::parse(
        emit_solution_report(sat, names, report_format::json));
    for (const char* key : {"lambda", "achieved_objective", "goal_lo",
                            "goal_hi", "iterations", "x"}) {
      CAPTURE(key);
      CHECK(j.contains(key));
    }
    CHECK(j["lambda"].get<double>() == sat.lambda);
    const std::string csv =
        emit_solution_report(sat, names, report_format::csv);
    CHECK(csv.rfind("lambda,achieved_objective,goal_lo,goal_hi,iterations",
                    0) == 0);
  }
}

TEST_CASE("format_number round trips") {
  std::mt19937 gen(2718);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(mant(gen), expo(gen));
    const std::string text = format_number(v);
    const double back = std::strtod(text.c_str(), nullptr);
    CHECK(std::memcmp(&back, &v, sizeof(double)) == 0);
  }
  CHECK(format_number(0.0033) == "0.0033");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}
