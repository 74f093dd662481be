#include "srgeo/symexpr.hpp"

#include <sstream>
#include <stdexcept>

namespace srgeo {

int RingSpec::find_var(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (var_names[i] == name) return i;
  return -1;
}

int RingSpec::find_angle(const std::string& name) const {
  for (std::size_t i = 0; i < angle_names.size(); ++i)
    if (angle_names[i] == name) return static_cast<int>(i);
  return -1;
}

int RingSpec::pair_of_s(int v) const {
  for (std::size_t i = 0; i < circle_pairs.size(); ++i)
    if (circle_pairs[i].second == v) return static_cast<int>(i);
  return -1;
}

SymExpr SymExpr::constant(const RingSpec* spec, const Rational& c) {
  SymExpr e(spec);
  e.add_term(Mono(spec->nvars(), 0), c);
  return e;
}

SymExpr SymExpr::variable(const RingSpec* spec, int var) {
  if (var < 0 || var >= spec->nvars()) throw std::out_of_range("ring variable index");
  SymExpr e(spec);
  Mono m(spec->nvars(), 0);
  m[var] = 1;
  e.add_term(std::move(m), Rational(1));
  return e;
}

bool SymExpr::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Mono& m = terms_.begin()->first;
  for (int e : m)
    if (e != 0) return false;
  return true;
}

Rational SymExpr::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("expression is not constant");
  return terms_.begin()->second;
}

const RingSpec* SymExpr::merged_spec(const SymExpr& rhs) const {
  if (spec_ && rhs.spec_ && spec_ != rhs.spec_)
    throw std::logic_error("mixing expressions from different rings");
  return spec_ ? spec_ : rhs.spec_;
}

void SymExpr::add_term(Mono mono, const Rational& coeff) {
  if (srgeo::is_zero(coeff)) return;
  if (spec_) {
    for (const auto& [ci, si] : spec_->circle_pairs) {
      if (mono[si] >= 2) {
        Mono rest = mono;
        rest[si] -= 2;
        Mono csq = rest;
        csq[ci] += 2;
        add_term(std::move(rest), coeff);
        add_term(std::move(csq), -coeff);
        return;
      }
    }
  }
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(std::move(mono), coeff);
  } else {
    it->second += coeff;
    if (srgeo::is_zero(it->second)) terms_.erase(it);
  }
}

SymExpr SymExpr::operator+(const SymExpr& rhs) const {
  SymExpr out(merged_spec(rhs));
  out.terms_ = terms_;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

SymExpr SymExpr::operator-(const SymExpr& rhs) const {
  SymExpr out(merged_spec(rhs));
  out.terms_ = terms_;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
  return out;
}

SymExpr& SymExpr::operator+=(const SymExpr& rhs) {
  *this = *this + rhs;
  return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& rhs) {
  *this = *this - rhs;
  return *this;
}

SymExpr SymExpr::operator*(const SymExpr& rhs) const {
  SymExpr out(merged_spec(rhs));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : rhs.terms_) {
      Mono m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.add_term(std::move(m), ca * cb);
    }
  return out;
}

SymExpr SymExpr::operator-() const {
  SymExpr out(spec_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

SymExpr SymExpr::operator*(const Rational& s) const {
  SymExpr out(spec_);
  if (srgeo::is_zero(s)) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
  return out;
}

bool SymExpr::operator==(const SymExpr& rhs) const {
  if (spec_ && rhs.spec_ && spec_ != rhs.spec_) return false;
  return terms_ == rhs.terms_;
}

SymExpr SymExpr::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  SymExpr out = SymExpr::constant(spec_, Rational(1));
  for (int i = 0; i < e; ++i) out = out * (*this);
  return out;
}

SymExpr SymExpr::derivative_var(int var) const {
  SymExpr out(spec_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    out.add_term(std::move(d), c * m[var]);
  }
  return out;
}

SymExpr SymExpr::derivative_circle(int c_idx, int s_idx) const {
  SymExpr out(spec_);
  for (const auto& [m, c] : terms_) {
    if (m[c_idx] > 0) {  // d(c^e) = -e c^{e-1} s
      Mono d = m;
      d[c_idx] -= 1;
      d[s_idx] += 1;
      out.add_term(std::move(d), c * Rational(-m[c_idx]));
    }
    if (m[s_idx] > 0) {  // d(s^e) = e s^{e-1} c
      Mono d = m;
      d[s_idx] -= 1;
      d[c_idx] += 1;
      out.add_term(std::move(d), c * Rational(m[s_idx]));
    }
  }
  return out;
}

Rational SymExpr::evaluate(const std::vector<Rational>& values) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < m.size(); ++v)
      for (int e = 0; e < m[v]; ++e) t *= values[v];
    acc += t;
  }
  return acc;
}

int SymExpr::degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int d = 0;
    for (int e : m) d += e;
    if (d > deg) deg = d;
  }
  return deg;
}

std::string SymExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (any_var) vars << "*";
      vars << (spec_ ? spec_->var_names[v] : "v" + std::to_string(v));
      if (m[v] > 1) vars << "^" << m[v];
      any_var = true;
    }
    if (!any_var) {
      os << to_string(a);
    } else if (a == 1) {
      os << vars.str();
    } else {
      os << to_string(a) << "*" << vars.str();
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const RingSpec* spec;
  const std::map<std::string, int>& poly_vars;
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos) + ": " +
                                msg + " in \"" + std::string(text) + "\"");
  }

  SymExpr parse() {
    SymExpr e = expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return e;
  }

  SymExpr expr() {
    SymExpr acc = term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  SymExpr term() {
    SymExpr acc = factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  SymExpr factor() {
    skip_ws();
    if (eat('-')) return -factor();
    SymExpr base = primary();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (start == pos) fail("expected exponent");
      int e = std::stoi(std::string(text.substr(start, pos - start)));
      return base.pow(e);
    }
    return base;
  }

  SymExpr primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    char c0 = text[pos];
    if (c0 == '(') {
      ++pos;
      SymExpr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c0 >= '0' && c0 <= '9') {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos < text.size() && text[pos] == '.') fail("decimal literals are not exact; use p/q");
      std::string num(text.substr(start, pos - start));
      skip_ws();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        skip_ws();
        std::size_t dstart = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (dstart == pos) fail("expected denominator");
        std::string den(text.substr(dstart, pos - dstart));
        return SymExpr::constant(spec, parse_rational(num + "/" + den));
      }
      return SymExpr::constant(spec, parse_rational(num));
    }
    if ((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             ((text[pos] >= 'a' && text[pos] <= 'z') || (text[pos] >= 'A' && text[pos] <= 'Z') ||
              (text[pos] >= '0' && text[pos] <= '9') || text[pos] == '_'))
        ++pos;
      std::string name(text.substr(start, pos - start));
      if (name == "cos" || name == "sin") {
        if (!eat('(')) fail("expected '(' after " + name);
        skip_ws();
        std::size_t astart = pos;
        while (pos < text.size() && text[pos] != ')') ++pos;
        std::string angle(text.substr(astart, pos - astart));
        while (!angle.empty() && angle.back() == ' ') angle.pop_back();
        if (!eat(')')) fail("expected ')'");
        int ai = spec->find_angle(angle);
        if (ai < 0) fail("unknown angle '" + angle + "'");
        const auto& pr = spec->circle_pairs[ai];
        return SymExpr::variable(spec, name == "cos" ? pr.first : pr.second);
      }
      auto it = poly_vars.find(name);
      if (it != poly_vars.end()) return SymExpr::variable(spec, it->second);
      int v = spec->find_var(name);
      if (v >= 0) return SymExpr::variable(spec, v);
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }
};

void enumerate_monos(const RingSpec* spec, int var, int remaining, Mono& cur, std::vector<Mono>& out) {
  if (var == spec->nvars()) {
    out.push_back(cur);
    return;
  }
  int cap = remaining;
  if (spec->pair_of_s(var) >= 0 && cap > 1) cap = 1;  // canonical: s-exponent <= 1
  for (int e = 0; e <= cap; ++e) {
    cur[var] = e;
    enumerate_monos(spec, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

SymExpr parse_expression(const RingSpec* spec,
                         const std::map<std::string, int>& poly_vars,
                         std::string_view text) {
  Parser p{spec, poly_vars, text};
  return p.parse();
}

std::vector<Mono> monomials_up_to_degree(const RingSpec* spec, int d) {
  std::vector<Mono> out;
  Mono cur(spec->nvars(), 0);
  enumerate_monos(spec, 0, d, cur, out);
  return out;
}

}  // namespace srgeo
