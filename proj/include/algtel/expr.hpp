#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algtel/algfun.hpp"

namespace algtel {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct Expr {
  enum class Kind { Number, VarX, VarY, VarT, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Number;
  Q number;
  long exponent = 0;
  std::shared_ptr<const Expr> lhs, rhs;
  int line = 1, column = 1;

  bool contains_y() const {
    if (kind == Kind::VarY) return true;
    return (lhs && lhs->contains_y()) || (rhs && rhs->contains_y());
  }
};
using ExprPtr = std::shared_ptr<const Expr>;

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := digits | 'x' | 'y' | 't' | '(' expr ')'
// Rational literals a/b are ordinary divisions of integers.
class ExprParser {
 public:
  static ExprPtr parse(const std::string& text) {
    ExprParser p(text);
    p.skip_ws();
    if (p.at_end()) p.fail("empty expression");
    ExprPtr e = p.expr();
    p.skip_ws();
    if (!p.at_end()) p.fail(std::string("unexpected character '") + p.peek() + "'");
    return e;
  }

 private:
  explicit ExprParser(const std::string& s) : s_(s) {}

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  ExprPtr make(Expr::Kind k, ExprPtr a, ExprPtr b, int line, int col) const {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->line = line;
    e->column = col;
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return e;
      int l = line_, co = col_;
      advance();
      e = make(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, e, term(), l, co);
    }
  }
  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') return e;
      int l = line_, co = col_;
      advance();
      e = make(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, e, unary(), l, co);
    }
  }
  ExprPtr unary() {
    skip_ws();
    char c = peek();
    if (c == '+' || c == '-') {
      int l = line_, co = col_;
      advance();
      ExprPtr u = unary();
      return c == '+' ? u : make(Expr::Kind::Neg, u, nullptr, l, co);
    }
    return power();
  }
  ExprPtr power() {
    ExprPtr base = atom();
    skip_ws();
    if (peek() != '^') return base;
    int l = line_, co = col_;
    advance();
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      advance();
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer exponent");
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.size() > 6) fail("exponent too large");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->lhs = base;
    e->exponent = std::stol(digits) * (neg ? -1 : 1);
    e->line = l;
    e->column = co;
    skip_ws();
    if (peek() == '^') fail("chained exponents are ambiguous; use parentheses");
    return e;
  }
  ExprPtr atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    int l = line_, co = col_;
    char c = peek();
    if (c == '(') {
      advance();
      ExprPtr e = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      advance();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = Q(mpz_class(digits));
      e->line = l;
      e->column = co;
      return e;
    }
    if (c == 'x' || c == 'y' || c == 't') {
      advance();
      if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        fail("unknown identifier; only x, y and t are allowed");
      auto e = std::make_shared<Expr>();
      e->kind = c == 'x' ? Expr::Kind::VarX : c == 'y' ? Expr::Kind::VarY : Expr::Kind::VarT;
      e->line = l;
      e->column = co;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown identifier; only x, y and t are allowed");
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

inline ExprPtr parse_expression(const std::string& text) { return ExprParser::parse(text); }

// Evaluates into K(x)[y]; division is only allowed by y-free subexpressions.
inline YPoly eval_ypoly(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number: return YPoly(KX(QT(e.number)));
    case K::VarX: return YPoly(x_var());
    case K::VarT: return YPoly(KX(t_var()));
    case K::VarY: return YPoly::x();
    case K::Add: return eval_ypoly(*e.lhs) + eval_ypoly(*e.rhs);
    case K::Sub: return eval_ypoly(*e.lhs) - eval_ypoly(*e.rhs);
    case K::Mul: return eval_ypoly(*e.lhs) * eval_ypoly(*e.rhs);
    case K::Neg: return -eval_ypoly(*e.lhs);
    case K::Div: {
      if (e.rhs->contains_y())
        throw ParseError("division by an expression containing y is not allowed here", e.line, e.column);
      YPoly d = eval_ypoly(*e.rhs);
      if (d.is_zero()) throw ParseError("division by zero", e.line, e.column);
      return eval_ypoly(*e.lhs) * d.lc().inverse();
    }
    case K::Pow: {
      YPoly b = eval_ypoly(*e.lhs);
      if (e.exponent >= 0) return pow(b, static_cast<int>(e.exponent));
      if (e.lhs->contains_y())
        throw ParseError("negative power of an expression containing y is not allowed here", e.line, e.column);
      if (b.is_zero()) throw ParseError("division by zero", e.line, e.column);
      return YPoly(pow(YPoly(b.lc().inverse()), static_cast<int>(-e.exponent)));
    }
  }
  throw ParseError("internal: unknown node", e.line, e.column);
}

// Evaluates into the function field, inverting y-dependent divisors in A.
inline AlgElem eval_alg(const Expr& e, const FunctionField& ff) {
  using K = Expr::Kind;
  if (!e.contains_y()) return ff.constant(eval_ypoly(e).coeff(0));
  switch (e.kind) {
    case K::VarY: return ff.y();
    case K::Add: return eval_alg(*e.lhs, ff) + eval_alg(*e.rhs, ff);
    case K::Sub: return eval_alg(*e.lhs, ff) - eval_alg(*e.rhs, ff);
    case K::Mul: return ff.mul(eval_alg(*e.lhs, ff), eval_alg(*e.rhs, ff));
    case K::Neg: return -eval_alg(*e.lhs, ff);
    case K::Div: {
      AlgElem d = eval_alg(*e.rhs, ff);
      if (d.is_zero()) throw ParseError("division by zero in the function field", e.line, e.column);
      return ff.mul(eval_alg(*e.lhs, ff), ff.inverse(d));
    }
    case K::Pow: {
      AlgElem b = eval_alg(*e.lhs, ff);
      if (e.exponent >= 0) return ff.pow(b, static_cast<int>(e.exponent));
      if (b.is_zero()) throw ParseError("division by zero in the function field", e.line, e.column);
      return ff.pow(ff.inverse(b), static_cast<int>(-e.exponent));
    }
    default: break;
  }
  throw ParseError("internal: unknown node", e.line, e.column);
}

inline MinPoly parse_minpoly(const std::string& text) {
  ExprPtr e = parse_expression(text);
  if (!e->contains_y()) throw ParseError("the minimal polynomial must contain y", 1, 1);
  YPoly p = eval_ypoly(*e);
  if (p.degree() < 1) throw ParseError("the minimal polynomial has y-degree 0 after simplification", 1, 1);
  return MinPoly::from_ypoly(p);
}

inline AlgElem parse_element(const std::string& text, const FunctionField& ff) {
  return eval_alg(*parse_expression(text), ff);
}

// ---------------------------------------------------------------- printing

namespace detail {

// Bivariate polynomial over Q in (x, t): key (deg_x, deg_t).
using XTPoly = std::map<std::pair<int, int>, Q>;
using VarPowers = std::vector<std::pair<std::string, int>>;

// A signed monomial such as "-3/2*x^2*t"; the sign is always explicit when negative.
inline std::string monomial_string(const Q& c, const VarPowers& vars) {
  std::ostringstream os;
  bool has_var = false;
  for (const auto& [v, k] : vars)
    if (k > 0) has_var = true;
  Q a = c;
  if (a.sign() < 0) {
    os << "-";
    a = -a;
  }
  bool wrote = false;
  if (!a.is_one() || !has_var) {
    os << a.to_string();
    wrote = true;
  }
  for (const auto& [v, k] : vars) {
    if (k == 0) continue;
    if (wrote) os << "*";
    os << v;
    if (k > 1) os << "^" << k;
    wrote = true;
  }
  return os.str();
}

inline std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string s = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-')
      s += " - " + terms[i].substr(1);
    else
      s += " + " + terms[i];
  }
  return s;
}

inline std::string xt_string(const XTPoly& p, const VarPowers& extra = {}) {
  std::vector<std::string> terms;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    VarPowers vars = {{"x", it->first.first}, {"t", it->first.second}};
    vars.insert(vars.end(), extra.begin(), extra.end());
    terms.push_back(monomial_string(it->second, vars));
  }
  return join_terms(terms);
}

inline bool is_bare_monomial(const XTPoly& p) {
  return p.size() == 1 && p.begin()->second.is_one() && p.begin()->first != std::pair<int, int>{0, 0};
}

inline XTPoly to_xt(const KPoly& p, const QT& scale) {
  XTPoly out;
  for (int i = 0; i <= p.degree(); ++i) {
    QT c = p.coeff(i) * scale;
    if (c.is_zero()) continue;
    if (!c.is_polynomial()) throw DomainError("to_xt: coefficient not polynomial in t after scaling");
    const QPoly& n = c.num();
    for (int j = 0; j <= n.degree(); ++j)
      if (!n.coeff(j).is_zero()) out[{i, j}] = n.coeff(j);
  }
  return out;
}

inline std::string paren(const std::string& s, bool needed) { return needed ? "(" + s + ")" : s; }

// r * y^k as one signed term in the input grammar.
inline std::string kx_term(const KX& r, int k) {
  std::vector<QT> all = r.num().coeffs();
  all.insert(all.end(), r.den().coeffs().begin(), r.den().coeffs().end());
  QT s = primitive_scale(all, r.den().lc());
  XTPoly n = to_xt(r.num(), s), d = to_xt(r.den(), s);
  const bool plain = d.size() == 1 && d.begin()->first == std::pair<int, int>{0, 0} && d.begin()->second.is_one();
  VarPowers yv;
  if (k > 0) yv.push_back({"y", k});
  std::string y = k == 0 ? "" : (k == 1 ? "y" : "y^" + std::to_string(k));
  std::string num;
  if (n.size() == 1) {
    num = xt_string(n, yv);
  } else {
    num = "(" + xt_string(n) + ")";
    if (plain) return k == 0 ? xt_string(n) : num + "*" + y;
  }
  if (plain) return num;
  std::string den = "/" + paren(xt_string(d), !is_bare_monomial(d));
  if (n.size() == 1) return num + den;
  return num + den + (k == 0 ? "" : "*" + y);
}

}  // namespace detail

inline std::string to_string(const QPoly& p, const std::string& var = "t") {
  std::vector<std::string> terms;
  for (int i = p.degree(); i >= 0; --i)
    if (!p.coeff(i).is_zero()) terms.push_back(detail::monomial_string(p.coeff(i), {{var, i}}));
  return detail::join_terms(terms);
}

// Element of Q(t) in the input grammar.
inline std::string to_string(const QT& c) {
  if (c.is_zero()) return "0";
  return detail::kx_term(KX(c), 0);
}

// Element of K(x) written as a single fraction of polynomials in x and t.
inline std::string to_string(const KX& r) {
  if (r.is_zero()) return "0";
  return detail::kx_term(r, 0);
}

// Element of A over {1, y, ..., y^(n-1)}.
inline std::string to_string(const AlgElem& a) {
  std::vector<std::string> terms;
  for (std::size_t k = a.c.size(); k-- > 0;)
    if (!a.c[k].is_zero()) terms.push_back(detail::kx_term(a.c[k], static_cast<int>(k)));
  return detail::join_terms(terms);
}

inline std::string to_string(const MinPoly& m) {
  std::vector<KX> c;
  for (const auto& p : m.coeffs()) c.emplace_back(p);
  return to_string(AlgElem(std::move(c)));
}

}  // namespace algtel
