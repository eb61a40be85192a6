#include "fuzzylp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzylp/flp.hpp"
#include "fuzzylp/model_io.hpp"

namespace fuzzylp::cli {
namespace {

enum class out_format { human, csv, json };

struct common_args {
  std::string model_path;
  std::string output_path;  // empty = standard stream
  out_format format = out_format::human;
};

void add_common(CLI::App* cmd, common_args& c) {
  cmd->add_option("model", c.model_path, "model file")->required();
  cmd->add_option("-o,--output", c.output_path, "write output to this path");
  cmd->add_option("--format", c.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, out_format>{{"human", out_format::human},
                                            {"csv", out_format::csv},
                                            {"json", out_format::json}}));
}

std::optional<std::vector<double>> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) return std::nullopt;
      values.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (values.empty()) return std::nullopt;
  return values;
}

bool valid_degrees(const std::vector<double>& alphas) {
  return std::all_of(alphas.begin(), alphas.end(), [](double a) {
    return !std::isnan(a) && a > 0.0 && a <= 1.0;
  });
}

// Parses and validates the model; on failure reports and sets the exit
// code (2 unreadable, 3 parse errors).  Warnings go to err either way.
std::optional<fuzzy_linear_program> load(const std::string& path,
                                         std::ostream& err, int& code) {
  const std::optional<model_source> src = load_model_file(path);
  if (!src) {
    err << "error: cannot read model file '" << path << "'\n";
    code = exit_usage;
    return std::nullopt;
  }
  parse_result parsed = parse_model(*src);
  const std::string diag = format_diagnostics(parsed, path);
  if (!diag.empty()) err << diag;
  if (!parsed.ok()) {
    code = exit_parse;
    return std::nullopt;
  }
  return std::move(parsed.model);
}

// Sink for report output: a file when -o was given, else the stream.
class output_sink {
 public:
  output_sink(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      ok_ = file_.is_open();
    }
  }
  bool ok() const { return ok_; }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
  bool ok_ = true;
};

std::string human_solution(const solution& s, const linear_program& lp) {
  std::ostringstream out;
  out << "status: " << to_string(s.status) << '\n';
  if (s.status != solve_status::optimal) return out.str();
  out << "objective: " << format_number(s.objective) << '\n';
  out << "iterations: " << s.iterations << '\n';
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    const std::string name = j < lp.var_names.size() && !lp.var_names[j].empty()
                                 ? lp.var_names[j]
                                 : "x" + std::to_string(j + 1);
    out << name << " = " << format_number(s.x[j]) << '\n';
  }
  if (!lp.rows.empty()) {
    const feasibility_report rep = check_feasible(lp, s.x, 1e-7);
    out << "rows:\n";
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const std::string label = lp.rows[i].label.empty()
                                    ? "row" + std::to_string(i + 1)
                                    : lp.rows[i].label;
      out << "  " << label << ": slack=" << format_number(rep.rows[i].slack)
          << (rep.rows[i].satisfied ? "" : " VIOLATED") << '\n';
    }
  }
  return out.str();
}

int run_solve(const common_args& c, double alpha_obj, double alpha_con,
              std::ostream& out, std::ostream& err) {
  int code = exit_ok;
  const auto flp = load(c.model_path, err, code);
  if (!flp) return code;

  // Negative sentinel = aspiration solve: clamp below every invertible
  // range, i.e. every fuzzy coefficient at its optimistic endpoint.
  const double a_obj = alpha_obj < 0.0 ? 0.0 : alpha_obj;
  const double a_con = alpha_con < 0.0 ? 0.0 : alpha_con;
  const linear_program lp =
      defuzzify_at(*flp, a_obj, a_con, range_policy::clamp);
  const solution s = solve(lp);

  output_sink sink(c.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot write '" << c.output_path << "'\n";
    return exit_usage;
  }
  switch (c.format) {
    case out_format::human: sink.stream() << human_solution(s, lp); break;
    case out_format::csv:
      sink.stream() << emit_solution_report(s, lp.var_names,
                                            report_format::csv);
      break;
    case out_format::json:
      sink.stream() << emit_solution_report(s, lp.var_names,
                                            report_format::json);
      break;
  }
  return s.status == solve_status::optimal ? exit_ok : exit_not_optimal;
}

int run_fsolve(const common_args& c, double tol, std::ostream& out,
               std::ostream& err) {
  int code = exit_ok;
  const auto flp = load(c.model_path, err, code);
  if (!flp) return code;

  satisfaction_options opts;
  opts.tol = tol;
  satisfaction_result r;
  try {
    r = max_satisfaction_solve(*flp, opts);
  } catch (const satisfaction_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_not_optimal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  output_sink sink(c.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot write '" << c.output_path << "'\n";
    return exit_usage;
  }
  if (c.format == out_format::human) {
    std::ostream& o = sink.stream();
    o << "lambda: " << format_number(r.lambda) << '\n';
    o << "achieved_objective: " << format_number(r.achieved_objective) << '\n';
    o << "goal interval: [" << format_number(r.goal_lo) << ", "
      << format_number(r.goal_hi) << "]\n";
    o << "bisection iterations: " << r.iterations << '\n';
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const std::string name =
          j < flp->var_names.size() && !flp->var_names[j].empty()
              ? flp->var_names[j]
              : "x" + std::to_string(j + 1);
      o << name << " = " << format_number(r.x[j]) << '\n';
    }
  } else {
    sink.stream() << emit_solution_report(r, flp->var_names,
                                          c.format == out_format::csv
                                              ? report_format::csv
                                              : report_format::json);
  }
  return exit_ok;
}

int run_sweep(const common_args& c, const std::string& alphas_text,
              const std::string& m_text, const std::string& alpha3_text,
              std::ostream& out, std::ostream& err) {
  int code = exit_ok;
  const auto flp = load(c.model_path, err, code);
  if (!flp) return code;

  std::vector<double> alphas = default_alpha_grid();
  if (!alphas_text.empty()) {
    const auto parsed = parse_double_list(alphas_text);
    if (!parsed || !valid_degrees(*parsed)) {
      err << "error: --alphas must be a comma list of degrees in (0, 1]\n";
      return exit_usage;
    }
    alphas = *parsed;
  }
  // alpha3 is accepted for interface parity with the published tables;
  // the objective value does not depend on it.
  if (!alpha3_text.empty()) {
    const auto parsed = parse_double_list(alpha3_text);
    if (!parsed || !valid_degrees(*parsed)) {
      err << "error: --alpha3 must be a comma list of degrees in (0, 1]\n";
      return exit_usage;
    }
  }
  std::vector<int> m_tags;
  if (!m_text.empty()) {
    const auto parsed = parse_double_list(m_text);
    if (!parsed) {
      err << "error: --m must be a comma list of integers\n";
      return exit_usage;
    }
    for (double v : *parsed) {
      if (v != std::floor(v) || v < 0) {
        err << "error: --m must be a comma list of nonnegative integers\n";
        return exit_usage;
      }
      m_tags.push_back(static_cast<int>(v));
    }
  } else {
    m_tags.push_back(static_cast<int>(alphas.size()));
  }

  std::vector<sweep_result> results;
  results.reserve(m_tags.size());
  for (int m : m_tags) results.push_back(sweep(*flp, alphas, m));

  for (std::size_t k = 0; k < results.size(); ++k) {
    const std::string csv = emit_sweep_csv(results[k]);
    if (c.output_path.empty()) {
      out << csv;
    } else {
      const std::string path =
          m_tags.size() == 1
              ? c.output_path
              : c.output_path + "m" + std::to_string(m_tags[k]) + ".csv";
      std::ofstream file(path);
      if (!file) {
        err << "error: cannot write '" << path << "'\n";
        return exit_usage;
      }
      file << csv;
    }
  }

  // Per-tag summary in the style of the published iteration table: the
  // decision variables at the best grid point plus the G extrema.
  bool all_optimal = true;
  std::ostringstream summary;
  if (c.format == out_format::json) {
    summary << "[\n";
  } else if (c.format == out_format::csv) {
    const std::size_t nx =
        results.empty() || results[0].records.empty()
            ? 0
            : results[0].records[0].x.size();
    summary << "M";
    for (std::size_t j = 0; j < nx; ++j) summary << ",x" << j + 1;
    summary << ",g_max,g_min\n";
  }
  for (std::size_t k = 0; k < results.size(); ++k) {
    const sweep_result& r = results[k];
    all_optimal = all_optimal && r.n_infeasible == 0 && r.n_unbounded == 0;
    const sweep_record* best = nullptr;
    for (const sweep_record& rec : r.records) {
      if (rec.status == solve_status::optimal && rec.objective == r.g_max) {
        best = &rec;
        break;
      }
    }
    switch (c.format) {
      case out_format::human: {
        summary << "M=" << r.m << ": g_max=" << format_number(r.g_max)
                << " g_min=" << format_number(r.g_min)
                << " optimal=" << r.n_optimal
                << " infeasible=" << r.n_infeasible
                << " unbounded=" << r.n_unbounded;
        if (best) {
          summary << " x_at_max=(";
          for (std::size_t j = 0; j < best->x.size(); ++j) {
            summary << (j ? "," : "") << format_number(best->x[j]);
          }
          summary << ")";
        }
        summary << '\n';
        break;
      }
      case out_format::csv: {
        summary << r.m;
        if (best) {
          for (double xj : best->x) summary << ',' << format_number(xj);
        }
        summary << ',' << format_number(r.g_max) << ','
                << format_number(r.g_min) << '\n';
        break;
      }
      case out_format::json: {
        summary << "  {\"m\":" << r.m << ",\"g_max\":" << format_number(r.g_max)
                << ",\"g_min\":" << format_number(r.g_min) << ",\"x_at_max\":[";
        if (best) {
          for (std::size_t j = 0; j < best->x.size(); ++j) {
            summary << (j ? "," : "") << format_number(best->x[j]);
          }
        }
        summary << "]}" << (k + 1 < results.size() ? ",\n" : "\n");
        break;
      }
    }
  }
  if (c.format == out_format::json) summary << "]\n";
  out << summary.str();

  return all_optimal ? exit_ok : exit_not_optimal;
}

int run_compare(const common_args& c,
                const std::vector<std::string>& x_specs,
                const std::vector<std::string>& conv_specs, double tol,
                std::ostream& out, std::ostream& err) {
  int code = exit_ok;
  const auto flp = load(c.model_path, err, code);
  if (!flp) return code;

  std::vector<std::pair<std::string, std::vector<double>>> xs;
  for (const std::string& spec : x_specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
      err << "error: --x expects label=v1,v2,...\n";
      return exit_usage;
    }
    const auto values = parse_double_list(spec.substr(eq + 1));
    if (!values || values->size() != flp->num_vars()) {
      err << "error: --x '" << spec.substr(0, eq) << "' needs "
          << flp->num_vars() << " values\n";
      return exit_usage;
    }
    xs.emplace_back(spec.substr(0, eq), *values);
  }
  if (xs.empty()) {
    err << "error: at least one --x is required\n";
    return exit_usage;
  }

  std::vector<convention> convs;
  std::vector<std::string> specs = conv_specs;
  if (specs.empty()) specs = {"lower", "mid", "upper"};
  for (const std::string& spec : specs) {
    convention conv;
    conv.label = spec;
    if (spec == "lower") {
      conv.which = convention::kind::lower;
    } else if (spec == "mid") {
      conv.which = convention::kind::mid;
    } else if (spec == "upper") {
      conv.which = convention::kind::upper;
    } else if (spec.rfind("alpha:", 0) == 0) {
      conv.which = convention::kind::at_degree;
      const auto v = parse_double_list(spec.substr(6));
      if (!v || v->size() != 1 || !valid_degrees(*v)) {
        err << "error: --convention alpha:<degree in (0,1]>\n";
        return exit_usage;
      }
      conv.degree = (*v)[0];
    } else if (spec.rfind("coeffs:", 0) == 0) {
      conv.which = convention::kind::explicit_c;
      const auto v = parse_double_list(spec.substr(7));
      if (!v || v->size() != flp->num_vars()) {
        err << "error: --convention coeffs: needs " << flp->num_vars()
            << " values\n";
        return exit_usage;
      }
      conv.objective = *v;
      // keep the label a single CSV field
      std::replace(conv.label.begin(), conv.label.end(), ',', ';');
    } else {
      err << "error: unknown convention '" << spec << "'\n";
      return exit_usage;
    }
    convs.push_back(conv);
  }

  const std::vector<comparison_entry> table =
      compare_methods(*flp, xs, convs, tol);

  output_sink sink(c.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot write '" << c.output_path << "'\n";
    return exit_usage;
  }
  std::ostream& o = sink.stream();
  switch (c.format) {
    case out_format::human:
      for (const comparison_entry& e : table) {
        o << e.x_label << " [" << e.convention_label
          << "]: objective=" << format_number(e.objective)
          << (e.feasible ? "" : " INFEASIBLE") << '\n';
      }
      break;
    case out_format::csv:
      o << "x,convention,objective,feasible\n";
      for (const comparison_entry& e : table) {
        o << e.x_label << ',' << e.convention_label << ','
          << format_number(e.objective) << ',' << (e.feasible ? 1 : 0) << '\n';
      }
      break;
    case out_format::json: {
      std::ostringstream j;
      j << "[\n";
      for (std::size_t i = 0; i < table.size(); ++i) {
        const comparison_entry& e = table[i];
        j << "  {\"x\":\"" << e.x_label << "\",\"convention\":\""
          << e.convention_label
          << "\",\"objective\":" << format_number(e.objective)
          << ",\"feasible\":" << (e.feasible ? "true" : "false") << "}"
          << (i + 1 < table.size() ? ",\n" : "\n");
      }
      j << "]\n";
      o << j.str();
      break;
    }
  }
  return exit_ok;
}

int run_check(const common_args& c, std::ostream& out, std::ostream& err) {
  int code = exit_ok;
  const auto flp = load(c.model_path, err, code);
  if (!flp) return code;
  out << "ok: " << flp->num_vars() << " variables, " << flp->rows.size()
      << " rows\n";
  return exit_ok;
}

}  // namespace

std::vector<double> default_alpha_grid() {
  return {1.0, 0.5, 0.3333, 0.25, 0.2, 0.1667, 0.1429, 0.125, 0.1111};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"fuzzy linear programming toolkit"};
  app.require_subcommand(1);

  common_args solve_args;
  double alpha_obj = -1.0, alpha_con = -1.0;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "defuzzify at fixed degrees and solve (default: aspiration "
               "solve at the optimistic endpoints)");
  add_common(solve_cmd, solve_args);
  solve_cmd->add_option("--alpha-obj", alpha_obj,
                        "objective membership degree in (0,1]")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
  solve_cmd->add_option("--alpha-con", alpha_con,
                        "constraint membership degree in (0,1]")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));

  common_args fsolve_args;
  double tol = 1e-6;
  CLI::App* fsolve_cmd =
      app.add_subcommand("fsolve", "maximum-satisfaction solve");
  add_common(fsolve_cmd, fsolve_args);
  fsolve_cmd->add_option("--tol", tol, "bisection tolerance in (0, 0.1)")
      ->check(CLI::Range(1e-12, 0.0999999));

  common_args sweep_args;
  std::string alphas_text, m_text, alpha3_text;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "solve over the (alpha1, alpha2) grid; one CSV per --m tag");
  add_common(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--alphas", alphas_text,
                        "comma list of degrees (default: the 9-value grid)");
  sweep_cmd->add_option("--m", m_text,
                        "comma list of resolution tags (default: grid size)");
  sweep_cmd->add_option("--alpha3", alpha3_text,
                        "accepted for interface parity; no effect on G");

  common_args compare_args;
  std::vector<std::string> x_specs, conv_specs;
  double compare_tol = 1e-4;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "evaluate solution vectors under coefficient conventions");
  add_common(compare_cmd, compare_args);
  compare_cmd->add_option("--x", x_specs, "solution vector label=v1,v2,...");
  compare_cmd->add_option("--convention", conv_specs,
                          "lower|mid|upper|alpha:<degree>|coeffs:<c1,...>");
  compare_cmd->add_option("--tol", compare_tol,
                          "feasibility tolerance for the flag column");

  common_args check_args;
  CLI::App* check_cmd =
      app.add_subcommand("check", "parse and validate a model file");
  check_cmd->add_option("model", check_args.model_path, "model file")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_args, alpha_obj, alpha_con, out, err);
    }
    if (fsolve_cmd->parsed()) return run_fsolve(fsolve_args, tol, out, err);
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_args, alphas_text, m_text, alpha3_text, out, err);
    }
    if (compare_cmd->parsed()) {
      return run_compare(compare_args, x_specs, conv_specs, compare_tol, out,
                         err);
    }
    if (check_cmd->parsed()) return run_check(check_args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  err << "error: no subcommand\n";
  return exit_usage;
}

}  // namespace fuzzylp::cli
