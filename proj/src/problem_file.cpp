#include "idect/problem_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "idect/errors.hpp"

namespace idect {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

struct Entry {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // 1-based column where the value starts
};

Expr parse_at(const Entry& e) {
  try {
    return parse(e.value);
  } catch (const SyntaxError& err) {
    throw ProblemFileError(e.line, "column " + std::to_string(e.column + err.offset()) + ": " +
                                       err.what());
  } catch (const Error& err) {
    throw ProblemFileError(e.line, err.what());
  }
}

double constant_at(const Entry& e) {
  const Expr expr = parse_at(e);
  if (!expr.is_constant()) throw ProblemFileError(e.line, "'" + e.value + "' must be a constant");
  try {
    return expr(0.0);
  } catch (const Error& err) {
    throw ProblemFileError(e.line, err.what());
  }
}

std::size_t count_at(const Entry& e, std::size_t min_value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size() || v < min_value) {
    throw ProblemFileError(e.line, "expected an integer >= " + std::to_string(min_value) +
                                       ", got '" + e.value + "'");
  }
  return v;
}

ScalarFunction as_function(const Expr& e) {
  return [e](double t) { return e(t); };
}

using Section = std::map<std::string, Entry, std::less<>>;

const Entry* find(const Section& s, std::string_view key) {
  const auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

struct RawConstraint {
  std::string kind;
  Entry point;
  Entry target;
};

}  // namespace

ProblemFile parse_problem_file(std::string_view text, const std::filesystem::path& base_dir) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kKeys = {
      {"domain", {"T"}},
      {"equation", {"order", "kind", "kernel", "g", "h", "sign", "rhs"}},
      {"solver", {"tol", "n_min", "n_max"}},
      {"reference", {"exact"}},
      {"constraints", {}},
  };
  std::map<std::string, Section, std::less<>> sections;
  std::map<std::string, std::size_t, std::less<>> section_lines;
  std::vector<RawConstraint> constraints;
  std::string current;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ProblemFileError(line_no, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!kKeys.count(name)) throw ProblemFileError(line_no, "unknown section [" + name + "]");
      if (section_lines.count(name)) throw ProblemFileError(line_no, "duplicate section [" + name + "]");
      section_lines[name] = line_no;
      current = name;
      continue;
    }
    if (current.empty()) throw ProblemFileError(line_no, "entry outside of any section");

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ProblemFileError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value_raw = line.substr(eq + 1);
    const std::string value(trim(value_raw));
    const std::size_t column =
        static_cast<std::size_t>(raw.find(line.front())) + eq + 1 +
        (value.empty() ? 0 : value_raw.find(value.front())) + 1;
    if (value.empty()) throw ProblemFileError(line_no, "missing value for '" + key + "'");
    const Entry entry{value, line_no, column};

    if (current == "constraints") {
      const auto space = key.find_first_of(" \t");
      const std::string kind = key.substr(0, space);
      const std::string point = space == std::string::npos ? "" : std::string(trim(key.substr(space)));
      if (kind == "mean") {
        if (!point.empty()) throw ProblemFileError(line_no, "'mean' takes no point");
      } else if (kind == "eval" || kind == "deriv") {
        if (point.empty()) throw ProblemFileError(line_no, "'" + kind + "' needs a point t0");
      } else {
        throw ProblemFileError(line_no, "unknown constraint '" + kind + "'");
      }
      constraints.push_back({kind, Entry{point, line_no, 1}, entry});
      continue;
    }

    const auto& allowed = kKeys.at(current);
    const bool is_coeff = current == "equation" && key.rfind("coeff_", 0) == 0 && key.size() > 6 &&
                          key.find_first_not_of("0123456789", 6) == std::string::npos;
    if (!is_coeff && std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ProblemFileError(line_no, "unknown key '" + key + "' in [" + current + "]");
    }
    if (!sections[current].emplace(key, entry).second) {
      throw ProblemFileError(line_no, "duplicate key '" + key + "'");
    }
  }

  ProblemFile out;
  IdeProblem& p = out.problem;
  const Section& domain = sections["domain"];
  const Section& equation = sections["equation"];
  const Section& solver = sections["solver"];
  const Section& reference = sections["reference"];

  if (const Entry* e = find(domain, "T")) {
    const double t = constant_at(*e);
    if (!(t > 0.0) || !std::isfinite(t)) throw ProblemFileError(e->line, "T must be positive");
    p.domain = Domain(t);
  }

  const Entry* order = find(equation, "order");
  if (!order) throw ProblemFileError(section_lines.count("equation") ? section_lines["equation"] : 0,
                                     "[equation] needs 'order'");
  p.order = static_cast<int>(count_at(*order, 0));
  const auto r = static_cast<std::size_t>(p.order);

  p.coeffs.assign(r + 1, [](double) { return 0.0; });
  bool has_leading = false;
  for (const auto& [key, entry] : equation) {
    if (key.rfind("coeff_", 0) != 0) continue;
    const std::size_t j = count_at(Entry{key.substr(6), entry.line, 1}, 0);
    if (j > r) throw ProblemFileError(entry.line, key + " exceeds order " + std::to_string(r));
    p.coeffs[j] = as_function(parse_at(entry));
    has_leading = has_leading || j == r;
  }
  if (!has_leading) throw ProblemFileError(order->line, "missing coeff_" + std::to_string(r));

  if (const Entry* e = find(equation, "kind")) {
    if (e->value == "volterra") p.kind = IntegralKind::Volterra;
    else if (e->value == "fredholm") p.kind = IntegralKind::Fredholm;
    else if (e->value == "fredholm_abs") p.kind = IntegralKind::FredholmAbs;
    else if (e->value == "none") p.kind = IntegralKind::None;
    else throw ProblemFileError(e->line, "unknown kind '" + e->value + "'");
  }
  const Entry* kernel = find(equation, "kernel");
  if (p.kind != IntegralKind::None && !kernel) {
    throw ProblemFileError(order->line, "integral kind needs a 'kernel'");
  }
  if (p.kind == IntegralKind::None && kernel) {
    throw ProblemFileError(kernel->line, "'kernel' given but kind is none");
  }
  if (kernel) p.kernel = as_function(parse_at(*kernel));
  if (const Entry* e = find(equation, "g")) p.g = as_function(parse_at(*e));
  if (const Entry* e = find(equation, "h")) p.h = as_function(parse_at(*e));
  if (const Entry* e = find(equation, "sign")) p.integral_sign = constant_at(*e);
  if (const Entry* e = find(equation, "rhs")) {
    if (e->value.rfind("file:", 0) == 0) {
      std::filesystem::path path = std::string(trim(std::string_view(e->value).substr(5)));
      if (path.is_relative()) path = base_dir / path;
      try {
        p.rhs = read_coefficients(path);
      } catch (const ProblemFileError& err) {
        throw ProblemFileError(e->line, path.string() + ": " + err.what());
      }
    } else {
      p.rhs = as_function(parse_at(*e));
    }
  }

  for (const auto& c : constraints) {
    ConstraintRow row;
    row.target = constant_at(c.target);
    if (c.kind == "mean") {
      row.functional = Functional::integral();
    } else {
      const double t0 = constant_at(c.point);
      if (!p.domain.contains(t0)) {
        throw ProblemFileError(c.point.line, "constraint point " + c.point.value + " outside [0, T]");
      }
      row.functional = c.kind == "eval" ? Functional::eval(t0) : Functional::deriv(t0);
    }
    p.constraints.push_back(row);
  }
  if (p.constraints.size() != r) {
    throw ProblemFileError(section_lines.count("constraints") ? section_lines["constraints"] : order->line,
                           "order " + std::to_string(r) + " needs " + std::to_string(r) +
                               " constraints, got " + std::to_string(p.constraints.size()));
  }

  if (const Entry* e = find(solver, "tol")) {
    out.tol = constant_at(*e);
    if (!(*out.tol > 0.0)) throw ProblemFileError(e->line, "tol must be positive");
  }
  if (const Entry* e = find(solver, "n_min")) out.n_min = count_at(*e, 1);
  if (const Entry* e = find(solver, "n_max")) out.n_max = count_at(*e, 1);
  if (out.n_min && out.n_max && *out.n_min > *out.n_max) {
    throw ProblemFileError(find(solver, "n_max")->line, "n_max is below n_min");
  }
  if (const Entry* e = find(reference, "exact")) out.exact = parse_at(*e);
  return out;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFileError(0, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str(), path.parent_path());
}

std::vector<double> read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFileError(0, "cannot open " + path.string());
  std::vector<double> out;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.rfind(',');
    const std::string_view field = comma == std::string_view::npos ? line : line.substr(comma + 1);
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (first && comma != std::string_view::npos) {
        first = false;
        continue;  // header row
      }
      throw ProblemFileError(line_no, "expected a number, got '" + std::string(field) + "'");
    }
    first = false;
    out.push_back(v);
  }
  if (out.empty()) throw ProblemFileError(line_no, "no coefficients in " + path.string());
  return out;
}

}  // namespace idect
