#pragma once

// Prefix s-expression reader for the term/formula grammar:
//
//   term    := SYMBOL | (+ t t) | (- t) | (scl RAT t) | (fn t ...)
//   formula := (< t t) | (= t t) | (rel t ...)
//            | (and f ...) | (or f ...) | (not f) | (exists VAR f)
//
// Symbols whose name matches [s-z][0-9]* are variables, `#name` is a
// parameter reference, everything else is a constant.  parse/print are
// mutually inverse on canonical output.

#include <cctype>
#include <string>
#include <string_view>

#include "cohult/ast.hpp"
#include "cohult/errors.hpp"

namespace cohult {

inline bool is_variable_name(std::string_view s) {
  if (s.empty() || s[0] < 's' || s[0] > 'z') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(std::string_view src) : src_(src) {}

  TermPtr read_term() {
    skip_ws();
    if (eof()) throw ParseError("expected term", pos_);
    if (peek() != '(') {
      size_t at = pos_;
      std::string sym = read_atom();
      if (sym[0] == '#') {
        if (sym.size() == 1) throw ParseError("empty parameter name", at);
        return t_param(sym.substr(1));
      }
      return is_variable_name(sym) ? t_var(sym) : t_const(sym);
    }
    size_t open = pos_;
    ++pos_;
    skip_ws();
    std::string head = read_atom();
    if (head == "scl") {
      skip_ws();
      size_t at = pos_;
      std::string tok = read_atom();
      Rat q = rat_parse(tok, at);
      TermPtr arg = read_term();
      expect_close(open);
      return t_scl(q, arg);
    }
    std::vector<TermPtr> args;
    while (true) {
      skip_ws();
      if (eof()) throw ParseError("unterminated term", open);
      if (peek() == ')') break;
      args.push_back(read_term());
    }
    ++pos_;
    if (head == "+" && args.size() != 2)
      throw ParseError("+ takes two arguments", open);
    if (head == "-" && args.size() != 1)
      throw ParseError("- takes one argument", open);
    return t_app(head, std::move(args));
  }

  FormulaPtr read_formula() {
    skip_ws();
    if (eof() || peek() != '(')
      throw ParseError("expected formula", pos_);
    size_t open = pos_;
    ++pos_;
    skip_ws();
    std::string head = read_atom();
    if (head == "not") {
      FormulaPtr f = read_formula();
      expect_close(open);
      return f_not(f);
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaPtr> fs;
      while (true) {
        skip_ws();
        if (eof()) throw ParseError("unterminated formula", open);
        if (peek() == ')') break;
        fs.push_back(read_formula());
      }
      ++pos_;
      if (fs.empty())
        throw ParseError(head + " needs at least one operand", open);
      return head == "and" ? f_and(std::move(fs)) : f_or(std::move(fs));
    }
    if (head == "exists") {
      skip_ws();
      size_t at = pos_;
      std::string var = read_atom();
      if (!is_variable_name(var))
        throw ParseError("exists binds a variable, got '" + var + "'", at);
      FormulaPtr f = read_formula();
      expect_close(open);
      return f_exists(var, f);
    }
    std::vector<TermPtr> ts;
    while (true) {
      skip_ws();
      if (eof()) throw ParseError("unterminated formula", open);
      if (peek() == ')') break;
      ts.push_back(read_term());
    }
    ++pos_;
    return f_atom(head, std::move(ts));
  }

  void expect_done() {
    skip_ws();
    if (!eof()) throw ParseError("trailing input", pos_);
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string read_atom() {
    size_t start = pos_;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) &&
           peek() != '(' && peek() != ')')
      ++pos_;
    if (pos_ == start) throw ParseError("expected symbol", pos_);
    return std::string(src_.substr(start, pos_ - start));
  }

  void expect_close(size_t open) {
    skip_ws();
    if (eof() || peek() != ')') throw ParseError("expected ')'", eof() ? open : pos_);
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
};

}  // namespace detail

inline TermPtr parse_term(std::string_view src) {
  detail::SexprReader r(src);
  TermPtr t = r.read_term();
  r.expect_done();
  return t;
}

inline FormulaPtr parse_formula(std::string_view src) {
  detail::SexprReader r(src);
  FormulaPtr f = r.read_formula();
  r.expect_done();
  return f;
}

}  // namespace cohult
