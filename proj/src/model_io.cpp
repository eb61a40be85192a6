#include "fuzzylp/model_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string_view>

#include <json.hpp>

// Model file format (see README.md for the full grammar):
//
//   # comment to end of line
//   scurve: B=1 C=0.001 d=13.8
//   maximize: ~(1.02,1.08) x1 + 0.4 x2
//   subject to:
//   capacity: 0.01 x1 + 0.01 x2 <= 780
//   x1 >= 25000
//
// Coefficients are decimal literals or fuzzy intervals ~(lo,hi); bare
// variables mean coefficient 1.  Rows may carry a `label:` prefix.
// Variables are implicitly >= 0.  The scurve directive sets the shared
// membership parameters for every fuzzy interval in the file.

namespace fuzzylp {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Single-line scanner with 1-based column tracking.
struct scanner {
  std::string_view text;
  std::size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }

  void skip_ws() {
    while (!eof() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool consume_word(std::string_view w) {
    if (text.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }

  std::string ident() {
    if (!ident_start(peek())) return {};
    const std::size_t start = pos;
    while (!eof() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  bool number(double& out) {
    if (eof()) return false;
    const std::string chunk(text.substr(pos));
    const char* begin = chunk.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v)) return false;
    pos += static_cast<std::size_t>(end - begin);
    out = v;
    return true;
  }
};

struct raw_term {
  bool fuzzy = false;
  double value = 0.0;  // crisp coefficient
  double lo = 0.0, hi = 0.0;
  int var = -1;
  int line = 1, col = 1;
};

struct raw_row {
  std::string label;
  std::vector<raw_term> terms;
  relation rel = relation::less_equal;
  double rhs = 0.0;
  int line = 1, col = 1;
};

struct parser {
  std::vector<std::string> lines;
  std::vector<parse_diagnostic> diags;

  std::vector<std::string> var_names;
  std::map<std::string, int, std::less<>> var_index;

  bool seen_objective = false;
  bool seen_subject_to = false;
  bool seen_scurve = false;
  int objective_line = 1;
  sense direction = sense::maximize;
  std::vector<raw_term> objective_terms;
  std::vector<raw_row> rows;
  double B = 1.0, C = 0.001, d = 13.8;

  void error(int line, int col, std::string msg) {
    diags.push_back({severity::error, line, col, std::move(msg)});
  }
  void warning(int line, int col, std::string msg) {
    diags.push_back({severity::warning, line, col, std::move(msg)});
  }

  int var_of(const std::string& name) {
    const auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    const int idx = static_cast<int>(var_names.size());
    var_names.push_back(name);
    var_index.emplace(name, idx);
    return idx;
  }

  static bool term_start(char c) {
    return c == '+' || c == '-' || c == '~' || c == '.' || ident_start(c) ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  // term := [sign] (number | '~(' number ',' number ')')? ident
  bool parse_term(scanner& s, int line_no, std::vector<raw_term>& out) {
    s.skip_ws();
    double sign = 1.0;
    if (s.consume('+')) {
      // explicit plus
    } else if (s.consume('-')) {
      sign = -1.0;
    }
    s.skip_ws();

    raw_term term;
    term.line = line_no;
    term.col = s.col();
    const char c = s.peek();
    if (c == '~') {
      ++s.pos;
      s.skip_ws();
      if (!s.consume('(')) {
        error(line_no, s.col(), "expected '(' after '~'");
        return false;
      }
      s.skip_ws();
      if (!s.number(term.lo)) {
        error(line_no, s.col(), "expected fuzzy interval lower bound");
        return false;
      }
      s.skip_ws();
      if (!s.consume(',')) {
        error(line_no, s.col(), "expected ',' in fuzzy interval");
        return false;
      }
      s.skip_ws();
      if (!s.number(term.hi)) {
        error(line_no, s.col(), "expected fuzzy interval upper bound");
        return false;
      }
      s.skip_ws();
      if (!s.consume(')')) {
        error(line_no, s.col(), "expected ')' after fuzzy interval");
        return false;
      }
      term.fuzzy = true;
      if (!(term.lo < term.hi)) {
        error(line_no, term.col,
              "fuzzy interval lower bound must be < upper bound");
        return false;
      }
      if (sign < 0) {
        error(line_no, term.col, "fuzzy coefficients cannot be negated");
        return false;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      if (!s.number(value)) {
        error(line_no, s.col(), "malformed number");
        return false;
      }
      term.value = sign * value;
    } else {
      term.value = sign;  // bare variable
    }

    s.skip_ws();
    const int var_col = s.col();
    const std::string name = s.ident();
    if (name.empty()) {
      error(line_no, var_col, "expected variable name");
      return false;
    }
    term.var = var_of(name);
    for (const raw_term& prev : out) {
      if (prev.var == term.var) {
        error(line_no, var_col,
              "variable '" + name + "' appears twice in one expression");
        return false;
      }
    }
    out.push_back(term);
    return true;
  }

  // terms := term { ('+'|'-') term }; the list may be empty.
  bool parse_terms(scanner& s, int line_no, std::vector<raw_term>& out) {
    s.skip_ws();
    if (s.eof() || !term_start(s.peek())) return true;
    if (!parse_term(s, line_no, out)) return false;
    for (;;) {
      s.skip_ws();
      if (s.peek() == '+') {
        ++s.pos;
      } else if (s.peek() != '-') {
        return true;  // '-' is left in place as the next term's sign
      }
      s.skip_ws();
      if (s.eof() || !term_start(s.peek())) {
        error(line_no, s.col(), "expected a term");
        return false;
      }
      if (!parse_term(s, line_no, out)) return false;
    }
  }

  void parse_scurve(scanner& s, int line_no) {
    if (seen_scurve) {
      warning(line_no, 1, "duplicate scurve directive; the last one wins");
    }
    seen_scurve = true;
    for (;;) {
      s.skip_ws();
      if (s.eof()) break;
      const int key_col = s.col();
      const std::string key = s.ident();
      if (key.empty()) {
        error(line_no, key_col, "expected scurve parameter name");
        return;
      }
      s.skip_ws();
      if (!s.consume('=')) {
        error(line_no, s.col(), "expected '=' after scurve parameter");
        return;
      }
      s.skip_ws();
      double value = 0.0;
      if (!s.number(value)) {
        error(line_no, s.col(), "malformed scurve parameter value");
        return;
      }
      if (key == "B") {
        B = value;
      } else if (key == "C") {
        C = value;
      } else if (key == "d") {
        d = value;
      } else {
        error(line_no, key_col, "unknown scurve parameter '" + key + "'");
        return;
      }
      if (!(value > 0.0)) {
        error(line_no, key_col,
              "scurve parameter " + key + " must be positive");
        return;
      }
    }
  }

  void parse_objective(scanner& s, int line_no, sense dir) {
    if (seen_objective) {
      error(line_no, 1, "duplicate objective line");
      return;
    }
    seen_objective = true;
    objective_line = line_no;
    direction = dir;
    std::vector<raw_term> terms;
    if (!parse_terms(s, line_no, terms)) return;
    s.skip_ws();
    if (!s.eof()) {
      error(line_no, s.col(), "unexpected text after the objective");
      return;
    }
    objective_terms = std::move(terms);
  }

  void parse_row(scanner& s, int line_no) {
    raw_row row;
    row.line = line_no;
    s.skip_ws();
    row.col = s.col();

    // optional `label:` prefix
    scanner probe = s;
    probe.skip_ws();
    const std::string maybe_label = probe.ident();
    if (!maybe_label.empty()) {
      probe.skip_ws();
      if (probe.consume(':')) {
        row.label = maybe_label;
        s = probe;
        for (const raw_row& prev : rows) {
          if (prev.label == row.label && !row.label.empty()) {
            warning(line_no, row.col, "duplicate row label '" + row.label + "'");
            break;
          }
        }
      }
    }

    if (!parse_terms(s, line_no, row.terms)) return;
    if (row.terms.empty()) {
      error(line_no, s.col(), "constraint row has no terms");
      return;
    }
    s.skip_ws();
    if (s.consume_word("<=")) {
      row.rel = relation::less_equal;
    } else if (s.consume_word(">=")) {
      row.rel = relation::greater_equal;
    } else if (s.consume('=')) {
      row.rel = relation::equal;
    } else {
      error(line_no, s.col(), "expected '<=', '>=' or '='");
      return;
    }
    s.skip_ws();
    if (!s.number(row.rhs)) {
      error(line_no, s.col(), "expected right-hand side value");
      return;
    }
    s.skip_ws();
    s.consume(';');
    s.skip_ws();
    if (!s.eof()) {
      error(line_no, s.col(), "unexpected trailing text");
      return;
    }
    for (const raw_term& t : row.terms) {
      if (t.fuzzy && row.rel != relation::less_equal) {
        error(t.line, t.col, "fuzzy coefficients are only allowed in <= rows");
        return;
      }
    }
    rows.push_back(std::move(row));
  }

  void parse_line(const std::string& full_line, int line_no) {
    std::string_view work(full_line);
    if (const std::size_t hash = work.find('#'); hash != std::string_view::npos) {
      work = work.substr(0, hash);
    }
    scanner s{work};
    s.skip_ws();
    if (s.eof()) return;

    if (s.consume_word("subject to:")) {
      if (seen_subject_to) {
        error(line_no, 1, "duplicate 'subject to:' directive");
        return;
      }
      seen_subject_to = true;
      s.skip_ws();
      if (!s.eof()) {
        error(line_no, s.col(), "unexpected text after 'subject to:'");
      }
      return;
    }
    if (s.consume_word("maximize:")) {
      parse_objective(s, line_no, sense::maximize);
      return;
    }
    if (s.consume_word("minimize:")) {
      parse_objective(s, line_no, sense::minimize);
      return;
    }
    if (s.consume_word("scurve:")) {
      parse_scurve(s, line_no);
      return;
    }

    if (seen_subject_to) {
      parse_row(s, line_no);
      return;
    }

    // Not in the rows block and not a known directive.
    scanner probe = s;
    const int start_col = probe.col();
    const std::string word = probe.ident();
    probe.skip_ws();
    if (!word.empty() && probe.peek() == ':') {
      error(line_no, start_col, "unknown directive '" + word + "'");
    } else {
      error(line_no, start_col,
            "expected 'maximize:', 'minimize:', 'scurve:' or 'subject to:'");
    }
  }

  coefficient to_coefficient(const raw_term& t) const {
    if (!t.fuzzy) return t.value;
    return fuzzy_coeff{s_curve{B, C, d, t.lo, t.hi}};
  }

  parse_result finish() {
    if (!seen_objective) {
      error(1, 1, "model has no objective ('maximize:' or 'minimize:')");
    }
    parse_result result;
    result.diagnostics = std::move(diags);
    for (const parse_diagnostic& diag : result.diagnostics) {
      if (diag.sev == severity::error) return result;
    }

    fuzzy_linear_program flp;
    flp.direction = direction;
    flp.var_names = var_names;
    const std::size_t n = var_names.size();
    flp.objective.assign(n, coefficient{0.0});
    for (const raw_term& t : objective_terms) {
      flp.objective[static_cast<std::size_t>(t.var)] = to_coefficient(t);
    }
    for (const raw_row& r : rows) {
      fuzzy_row row;
      row.label = r.label;
      row.rel = r.rel;
      row.rhs = r.rhs;
      row.coeffs.assign(n, coefficient{0.0});
      for (const raw_term& t : r.terms) {
        row.coeffs[static_cast<std::size_t>(t.var)] = to_coefficient(t);
      }
      flp.rows.push_back(std::move(row));
    }
    result.model = std::move(flp);
    return result;
  }
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty() && current.back() == '\r') current.pop_back();
  lines.push_back(std::move(current));
  return lines;
}

}  // namespace

parse_result parse_model(const model_source& src) {
  parser p;
  p.lines = split_lines(src.text);
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    p.parse_line(p.lines[i], static_cast<int>(i) + 1);
  }
  return p.finish();
}

std::optional<model_source> load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_source{buf.str(), path};
}

std::string format_diagnostics(const parse_result& r,
                               const std::string& origin) {
  std::ostringstream out;
  for (const parse_diagnostic& d : r.diagnostics) {
    out << origin << ':' << d.line << ':' << d.column << ": "
        << (d.sev == severity::error ? "error" : "warning") << ": "
        << d.message << '\n';
  }
  return out.str();
}

namespace {

std::string var_name_or_default(const std::vector<std::string>& names,
                                std::size_t j) {
  if (j < names.size() && !names[j].empty()) return names[j];
  return "x" + std::to_string(j + 1);
}

std::string print_terms(const std::vector<coefficient>& coeffs,
                        const std::vector<std::string>& names,
                        bool skip_zero) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const coefficient& c = coeffs[j];
    const double* crisp = std::get_if<double>(&c);
    if (skip_zero && crisp && *crisp == 0.0) continue;
    const bool negative = crisp && std::signbit(*crisp);
    if (!first) {
      out << (negative ? " - " : " + ");
    } else if (negative) {
      out << '-';
    }
    first = false;
    if (crisp) {
      out << format_number(std::abs(*crisp)) << ' ';
    } else {
      const s_curve& s = std::get<fuzzy_coeff>(c).curve;
      out << "~(" << format_number(s.v_a) << ',' << format_number(s.v_b)
          << ") ";
    }
    out << var_name_or_default(names, j);
  }
  if (first && !coeffs.empty()) {
    // All-zero expression: keep the line parseable.
    out << "0 " << var_name_or_default(names, 0);
  }
  return out.str();
}

}  // namespace

std::string print_model(const fuzzy_linear_program& flp) {
  validate(flp);
  for (double lb : flp.var_lower) {
    if (lb != 0.0) {
      throw std::invalid_argument(
          "print_model: the file format has no variable lower bounds; "
          "express them as rows");
    }
  }
  std::ostringstream out;

  const s_curve* shape = nullptr;
  auto find_shape = [&](const std::vector<coefficient>& coeffs) {
    for (const coefficient& c : coeffs) {
      if (const fuzzy_coeff* f = std::get_if<fuzzy_coeff>(&c)) {
        if (!shape) shape = &f->curve;
      }
    }
  };
  find_shape(flp.objective);
  for (const fuzzy_row& row : flp.rows) find_shape(row.coeffs);
  if (shape) {
    out << "scurve: B=" << format_number(shape->B)
        << " C=" << format_number(shape->C)
        << " d=" << format_number(shape->d) << '\n';
  }

  out << (flp.direction == sense::maximize ? "maximize:" : "minimize:");
  // The objective lists every variable (zeros included) so that parsing
  // the output assigns identical variable indices.
  const std::string obj = print_terms(flp.objective, flp.var_names,
                                      /*skip_zero=*/false);
  if (!obj.empty()) out << ' ' << obj;
  out << '\n';

  out << "subject to:\n";
  for (const fuzzy_row& row : flp.rows) {
    if (!row.label.empty()) out << row.label << ": ";
    out << print_terms(row.coeffs, flp.var_names, /*skip_zero=*/true) << ' '
        << to_string(row.rel) << ' ' << format_number(row.rhs) << '\n';
  }
  return out.str();
}

std::string emit_sweep_csv(const sweep_result& r) {
  std::size_t n = 0;
  for (const sweep_record& rec : r.records) n = std::max(n, rec.x.size());

  std::ostringstream out;
  out << "M,alpha1,alpha2,G";
  for (std::size_t j = 0; j < n; ++j) out << ",x" << j + 1;
  out << '\n';
  for (const sweep_record& rec : r.records) {
    out << r.m << ',' << format_number(rec.alpha1) << ','
        << format_number(rec.alpha2) << ',' << format_number(rec.objective);
    for (std::size_t j = 0; j < n; ++j) {
      out << ','
          << format_number(j < rec.x.size()
                               ? rec.x[j]
                               : std::numeric_limits<double>::quiet_NaN());
    }
    out << '\n';
  }
  out << "# g_max=" << format_number(r.g_max)
      << ", g_min=" << format_number(r.g_min) << '\n';
  return out.str();
}

std::optional<sweep_result> parse_sweep_csv(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) return std::nullopt;

  auto split_fields = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(std::move(field));
    return fields;
  };
  auto to_double = [](const std::string& s, double& out) {
    if (s == "nan") {
      out = std::numeric_limits<double>::quiet_NaN();
      return true;
    }
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && !s.empty();
  };

  const std::vector<std::string> header = split_fields(lines[0]);
  if (header.size() < 4 || header[0] != "M" || header[1] != "alpha1" ||
      header[2] != "alpha2" || header[3] != "G") {
    return std::nullopt;
  }
  const std::size_t n = header.size() - 4;

  sweep_result r;
  bool have_summary = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t gmax_pos = line.find("g_max=");
      std::size_t gmin_pos = line.find("g_min=");
      if (gmax_pos == std::string::npos || gmin_pos == std::string::npos) {
        return std::nullopt;
      }
      std::string gmax_str = line.substr(gmax_pos + 6);
      gmax_str = gmax_str.substr(0, gmax_str.find(','));
      const std::string gmin_str = line.substr(gmin_pos + 6);
      if (!to_double(gmax_str, r.g_max) || !to_double(gmin_str, r.g_min)) {
        return std::nullopt;
      }
      have_summary = true;
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4 + n) return std::nullopt;
    sweep_record rec;
    double m_val = 0.0;
    if (!to_double(fields[0], m_val) || !to_double(fields[1], rec.alpha1) ||
        !to_double(fields[2], rec.alpha2) ||
        !to_double(fields[3], rec.objective)) {
      return std::nullopt;
    }
    r.m = static_cast<int>(m_val);
    if (std::isnan(rec.objective)) {
      rec.status = solve_status::infeasible;  // distinction not stored
    } else {
      rec.status = solve_status::optimal;
      rec.x.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (!to_double(fields[4 + j], rec.x[j])) return std::nullopt;
      }
      ++r.n_optimal;
    }
    if (rec.status != solve_status::optimal) ++r.n_infeasible;
    r.records.push_back(std::move(rec));
  }
  if (!have_summary) return std::nullopt;
  return r;
}

namespace {

nlohmann::ordered_json x_object(const std::vector<double>& x,
                                const std::vector<std::string>& names) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t j = 0; j < x.size(); ++j) {
    obj[var_name_or_default(names, j)] = x[j];
  }
  return obj;
}

std::string csv_report(const std::vector<std::string>& head,
                       const std::vector<std::string>& row) {
  std::ostringstream out;
  for (std::size_t i = 0; i < head.size(); ++i) {
    out << head[i] << (i + 1 < head.size() ? "," : "\n");
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  return out.str();
}

}  // namespace

std::string emit_solution_report(const solution& s,
                                 const std::vector<std::string>& var_names,
                                 report_format f) {
  if (f == report_format::json) {
    nlohmann::ordered_json j;
    j["status"] = to_string(s.status);
    j["objective"] = s.objective;
    j["iterations"] = s.iterations;
    j["x"] = x_object(s.x, var_names);
    return j.dump(2) + "\n";
  }
  std::vector<std::string> head = {"status", "objective", "iterations"};
  std::vector<std::string> row = {to_string(s.status),
                                  format_number(s.objective),
                                  std::to_string(s.iterations)};
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    head.push_back(var_name_or_default(var_names, j));
    row.push_back(format_number(s.x[j]));
  }
  return csv_report(head, row);
}

std::string emit_solution_report(const satisfaction_result& s,
                                 const std::vector<std::string>& var_names,
                                 report_format f) {
  if (f == report_format::json) {
    nlohmann::ordered_json j;
    j["lambda"] = s.lambda;
    j["achieved_objective"] = s.achieved_objective;
    j["goal_lo"] = s.goal_lo;
    j["goal_hi"] = s.goal_hi;
    j["iterations"] = s.iterations;
    j["x"] = x_object(s.x, var_names);
    return j.dump(2) + "\n";
  }
  std::vector<std::string> head = {"lambda", "achieved_objective", "goal_lo",
                                   "goal_hi", "iterations"};
  std::vector<std::string> row = {
      format_number(s.lambda), format_number(s.achieved_objective),
      format_number(s.goal_lo), format_number(s.goal_hi),
      std::to_string(s.iterations)};
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    head.push_back(var_name_or_default(var_names, j));
    row.push_back(format_number(s.x[j]));
  }
  return csv_report(head, row);
}

}  // namespace fuzzylp
