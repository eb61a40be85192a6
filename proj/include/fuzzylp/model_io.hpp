#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzylp/flp.hpp"

namespace fuzzylp {

struct model_source {
  std::string text;
  std::string origin;  // file path or inline tag, used in messages
};

enum class severity { error, warning };

struct parse_diagnostic {
  severity sev = severity::error;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::string message;
};

struct parse_result {
  std::optional<fuzzy_linear_program> model;  // set iff no errors
  std::vector<parse_diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Parses the line-oriented model format (see README.md).  Collects as
/// many diagnostics as possible; the model is produced only when no
/// error-severity diagnostic was raised.
parse_result parse_model(const model_source& src);

/// Reads a file into a model_source.  Returns nullopt when the file
/// cannot be opened.
std::optional<model_source> load_model_file(const std::string& path);

/// Emits the model back in the input format.  Re-parsing the output
/// reproduces the model exactly (bit-equal coefficients, same row
/// order).  Assumes all fuzzy coefficients share one B/C/d triple, as
/// parsed files always do.  Throws std::invalid_argument for models
/// with nonzero variable lower bounds, which the format cannot express.
std::string print_model(const fuzzy_linear_program& flp);

/// One line per diagnostic: origin:line:col: severity: message.
std::string format_diagnostics(const parse_result& r,
                               const std::string& origin);

/// Sweep surface as CSV: header M,alpha1,alpha2,G,x1,...,xn, one row per
/// record in grid order, then a trailing `# g_max=..., g_min=...`
/// comment.  Non-optimal records carry nan in the numeric columns.
std::string emit_sweep_csv(const sweep_result& r);

/// Re-reads emit_sweep_csv output (round-trip audits, plot pipelines).
std::optional<sweep_result> parse_sweep_csv(const std::string& text);

enum class report_format { csv, json };

std::string emit_solution_report(const solution& s,
                                 const std::vector<std::string>& var_names,
                                 report_format f);

std::string emit_solution_report(const satisfaction_result& s,
                                 const std::vector<std::string>& var_names,
                                 report_format f);

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double v);

}  // namespace fuzzylp
