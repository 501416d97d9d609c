#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/germ.hpp"
#include "icisres/polynomial.hpp"

namespace icisres {

// Position of a piece of text inside the source file (1-based).
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

namespace parse_detail {

// Recursive-descent parser for
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer ('/' integer)? | name | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& vars, SourcePos origin)
      : text_(text), vars_(vars), origin_(origin) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) throw SyntaxError("empty expression", origin_.line, column());
    Polynomial p = expr();
    skip_space();
    if (!at_end()) unexpected();
    return p;
  }

 private:
  std::string_view text_;
  const std::vector<std::string>& vars_;
  SourcePos origin_;
  std::size_t pos_ = 0;

  std::size_t n() const { return vars_.size(); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t column() const { return origin_.column + pos_; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void unexpected() {
    char c = peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')
      throw SyntaxError("implicit multiplication is not allowed; write '*'", origin_.line, column());
    if (c == '/') throw SyntaxError("division is only allowed inside rational literals p/q", origin_.line, column());
    throw SyntaxError(std::string("unexpected character '") + c + "'", origin_.line, column());
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      Polynomial rhs = term();
      if (c == '+') acc += rhs;
      else acc -= rhs;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      skip_space();
      if (peek() != '*') return acc;
      ++pos_;
      acc = acc * unary();
    }
  }

  Polynomial unary() {
    skip_space();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError("exponent must be a non-negative integer", origin_.line, column());
    std::size_t start = column();
    Integer e = integer();
    if (peek() == '.') throw SyntaxError("exponent must be a non-negative integer", origin_.line, start);
    if (e > 1000) throw SyntaxError("exponent too large", origin_.line, start);
    return icisres::pow(base, static_cast<unsigned>(e.get_ui()));
  }

  Integer integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Integer literal_part() {
    std::size_t start = column();
    Integer v = integer();
    if (peek() == '.' || peek() == 'e' || peek() == 'E') {
      if (peek() == '.' || std::isdigit(static_cast<unsigned char>(text_.size() > pos_ + 1 ? text_[pos_ + 1] : ' ')))
        throw NonRationalCoefficient("decimal literals are not allowed; write p/q", origin_.line, start);
    }
    return v;
  }

  Polynomial atom() {
    skip_space();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = column();
      Integer num = literal_part();
      Integer den = 1;
      std::size_t save = pos_;
      skip_space();
      if (peek() == '/') {
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          throw SyntaxError("division is only allowed inside rational literals p/q", origin_.line, column());
        den = literal_part();
        if (den == 0) throw SyntaxError("zero denominator", origin_.line, start);
      } else {
        pos_ = save;
      }
      Rational r(num, den);
      r.canonicalize();
      return Polynomial::constant(n(), r);
    }
    if (c == '.') throw NonRationalCoefficient("decimal literals are not allowed; write p/q", origin_.line, column());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Polynomial::variable(n(), i);
      throw SyntaxError("unknown variable '" + name + "'", origin_.line, origin_.column + start);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (peek() != ')') throw SyntaxError("expected ')'", origin_.line, column());
      ++pos_;
      return inner;
    }
    if (at_end()) throw SyntaxError("unexpected end of expression", origin_.line, column());
    unexpected();
  }
};

struct Field {
  std::string value;
  SourcePos pos;  // of the first value character
  SourcePos key_pos;
};

inline std::vector<std::pair<std::string, SourcePos>> split_list(const Field& f) {
  std::vector<std::pair<std::string, SourcePos>> items;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= f.value.size(); ++i) {
    if (i == f.value.size() || f.value[i] == ',') {
      items.push_back({f.value.substr(start, i - start), {f.pos.line, f.pos.column + start}});
      start = i + 1;
    }
  }
  // `key =` with nothing after it is the empty list
  if (items.size() == 1 && items[0].first.find_first_not_of(" \t\r") == std::string::npos) items.clear();
  return items;
}

inline std::uint64_t parse_count(const Field& f, const std::string& key) {
  std::string v = f.value;
  auto b = v.find_first_not_of(" \t\r");
  auto e = v.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw SyntaxError("missing value for '" + key + "'", f.pos.line, f.pos.column);
  v = v.substr(b, e - b + 1);
  for (char c : v)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw SyntaxError("'" + key + "' must be a non-negative integer", f.pos.line, f.pos.column + b);
  if (v.size() > 19) throw SyntaxError("'" + key + "' is too large", f.pos.line, f.pos.column + b);
  return std::stoull(v);
}

}  // namespace parse_detail

// Parses one polynomial in the given variables.
inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                                   SourcePos origin = {}) {
  return parse_detail::ExpressionParser(text, vars, origin).parse();
}

struct GermFile {
  std::vector<std::string> vars;
  std::vector<Polynomial> f;
  std::vector<Polynomial> omega;
  std::vector<Polynomial> g;  // optional denominators for the multiplicity command
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> cap;
  std::optional<unsigned> max_cap;
  std::optional<std::size_t> attempts;
  SourcePos f_pos;

  // The problem with q = n - codimension equations; ArityError otherwise.
  GermProblem problem(std::size_t codimension) const {
    const std::size_t n = vars.size();
    if (codimension > n || f.size() != n - codimension)
      throw ArityError("expected " + std::to_string(n >= codimension ? n - codimension : 0) +
                           " equations in f for " + std::to_string(n) + " variables, got " + std::to_string(f.size()),
                       f_pos.line, f_pos.column);
    return {n, f, omega, seed.value_or(1)};
  }

  EngineSettings settings(EngineSettings base = {}) const {
    if (cap) base.initial_cap = *cap;
    if (max_cap) base.max_cap = *max_cap;
    if (attempts) base.attempts = *attempts;
    return base;
  }
};

// `key = value` lines (';' also separates entries), '#' starts a comment.
// Keys: vars, f, omega, g, seed, cap, max_cap, attempts.
inline GermFile parse_germ_file(std::string_view text) {
  using parse_detail::Field;
  static const std::set<std::string> known{"vars", "f", "omega", "g", "seed", "cap", "max_cap", "attempts"};
  std::map<std::string, Field> fields;
  std::size_t line_no = 0, line_start = 0;
  while (line_start <= text.size()) {
    ++line_no;
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t entry_start = 0;
    while (entry_start <= line.size()) {
      std::size_t entry_end = line.find(';', entry_start);
      if (entry_end == std::string_view::npos) entry_end = line.size();
      std::string_view entry = line.substr(entry_start, entry_end - entry_start);
      std::size_t first = entry.find_first_not_of(" \t\r");
      if (first != std::string_view::npos) {
        std::size_t eq = entry.find('=');
        std::size_t key_col = entry_start + first + 1;
        if (eq == std::string_view::npos) throw SyntaxError("expected 'key = value'", line_no, key_col);
        std::string_view key = entry.substr(first, eq - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
        std::string k(key);
        if (!known.count(k)) throw SyntaxError("unknown key '" + k + "'", line_no, key_col);
        if (fields.count(k)) throw SyntaxError("duplicate key '" + k + "'", line_no, key_col);
        fields[k] = {std::string(entry.substr(eq + 1)), {line_no, entry_start + eq + 2}, {line_no, key_col}};
      }
      if (entry_end == line.size()) break;
      entry_start = entry_end + 1;
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }

  GermFile out;
  if (!fields.count("vars")) throw SyntaxError("missing 'vars'", line_no, 1);
  if (!fields.count("omega")) throw SyntaxError("missing 'omega'", line_no, 1);
  for (const auto& [name, pos] : parse_detail::split_list(fields["vars"])) {
    auto b = name.find_first_not_of(" \t\r");
    auto e = name.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw SyntaxError("empty variable name", pos.line, pos.column);
    std::string v = name.substr(b, e - b + 1);
    bool ok = std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_';
    for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw SyntaxError("invalid variable name '" + v + "'", pos.line, pos.column + b);
    for (const auto& w : out.vars)
      if (w == v) throw SyntaxError("duplicate variable '" + v + "'", pos.line, pos.column + b);
    out.vars.push_back(v);
  }
  if (out.vars.empty()) throw SyntaxError("'vars' is empty", fields["vars"].pos.line, fields["vars"].pos.column);
  if (out.vars.size() > kMaxVars)
    throw SyntaxError("at most " + std::to_string(kMaxVars) + " variables are supported", fields["vars"].pos.line,
                      fields["vars"].pos.column);

  auto parse_list = [&](const Field& f) {
    std::vector<Polynomial> ps;
    for (const auto& [expr, pos] : parse_detail::split_list(f)) ps.push_back(parse_polynomial(expr, out.vars, pos));
    return ps;
  };
  const Field& omega = fields["omega"];
  out.omega = parse_list(omega);
  if (out.omega.size() != out.vars.size())
    throw ArityError("omega has " + std::to_string(out.omega.size()) + " components for " +
                         std::to_string(out.vars.size()) + " variables",
                     omega.key_pos.line, omega.key_pos.column);
  if (fields.count("f")) {
    out.f = parse_list(fields["f"]);
    out.f_pos = fields["f"].key_pos;
  } else {
    out.f_pos = omega.key_pos;
  }
  if (out.f.size() >= out.vars.size())
    throw ArityError("f has " + std::to_string(out.f.size()) + " equations for " + std::to_string(out.vars.size()) +
                         " variables",
                     out.f_pos.line, out.f_pos.column);
  if (fields.count("g")) out.g = parse_list(fields["g"]);
  if (fields.count("seed")) out.seed = parse_detail::parse_count(fields["seed"], "seed");
  if (fields.count("cap")) out.cap = static_cast<unsigned>(parse_detail::parse_count(fields["cap"], "cap"));
  if (fields.count("max_cap"))
    out.max_cap = static_cast<unsigned>(parse_detail::parse_count(fields["max_cap"], "max_cap"));
  if (fields.count("attempts"))
    out.attempts = static_cast<std::size_t>(parse_detail::parse_count(fields["attempts"], "attempts"));
  return out;
}

}  // namespace icisres
