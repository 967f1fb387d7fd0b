#ifndef SIGSYS_SYNTAX_HPP
#define SIGSYS_SYNTAX_HPP

// Text syntax for formulas, QBFs and theory files.
//
//   iff     := imp ( "<->" iff )?            right associative
//   imp     := or ( "->" imp )?              right associative
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | quant | primary
//   quant   := ("forall" | "exists") atom+ "." iff
//   primary := "true" | "false" | atom | "(" iff ")"
//   atom    := ident ( ("+" | "-") ( "_" digits )? )?

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sigsys/formula.hpp"

namespace sigsys {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

inline int precedence(Op op) {
  switch (op) {
    case Op::iff:
      return 1;
    case Op::implies:
      return 2;
    case Op::disj:
      return 3;
    case Op::conj:
      return 4;
    case Op::negation:
      return 5;
    case Op::forall:
    case Op::exists:
      return 0;
    default:
      return 6;
  }
}

inline const char* symbol(Op op) {
  switch (op) {
    case Op::conj:
      return " & ";
    case Op::disj:
      return " | ";
    case Op::implies:
      return " -> ";
    case Op::iff:
      return " <-> ";
    default:
      return "?";
  }
}

inline void render(const Formula& f, std::string& out);

inline void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render(child, out);
  if (parens) out += ')';
}

inline void render(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::top:
      out += "true";
      return;
    case Op::bottom:
      out += "false";
      return;
    case Op::atom:
      out += to_string(f.atom());
      return;
    case Op::negation: {
      out += '~';
      const Op c = f.lhs().op();
      render_child(f.lhs(), precedence(c) < precedence(Op::negation), out);
      return;
    }
    case Op::forall:
    case Op::exists: {
      out += f.op() == Op::forall ? "forall " : "exists ";
      out += to_string(f.atom());
      out += ". ";
      render(f.body(), out);
      return;
    }
    default: {
      const int p = precedence(f.op());
      const int pl = precedence(f.lhs().op());
      const int pr = precedence(f.rhs().op());
      const bool right_assoc = f.op() == Op::implies || f.op() == Op::iff;
      // Quantifiers swallow everything to their right, so they are bracketed
      // whenever they are an operand.
      bool lparen = pl < p || (pl == p && right_assoc) || is_quantifier(f.lhs().op());
      bool rparen = pr < p || (pr == p && !right_assoc) || is_quantifier(f.rhs().op());
      render_child(f.lhs(), lparen, out);
      out += symbol(f.op());
      render_child(f.rhs(), rparen, out);
    }
  }
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_quantifiers, int line)
      : text_(text), allow_quantifiers_(allow_quantifiers), line_(line) {}

  Formula parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty formula");
    Formula f = parse_iff();
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') fail("unbalanced parenthesis: unexpected ')'");
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return f;
  }

  Atom parse_atom_only() {
    skip_ws();
    Atom a = parse_atom();
    skip_ws();
    if (pos_ < text_.size()) fail("trailing characters after atom");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string peek_ident() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !ident_start(text_[p])) return {};
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  Formula parse_iff() {
    Formula l = parse_imp();
    if (accept("<->")) return iff(std::move(l), parse_iff());
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (accept("->")) return implies(std::move(l), parse_imp());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (accept("|")) l = disj(std::move(l), parse_and());
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (accept("&")) l = conj(std::move(l), parse_unary());
    return l;
  }

  Formula parse_unary() {
    if (accept("~")) return neg(parse_unary());
    const std::string id = peek_ident();
    if (id == "forall" || id == "exists") {
      if (!allow_quantifiers_) fail("quantifier not allowed in a propositional formula");
      pos_ += id.size();
      const Op q = id == "forall" ? Op::forall : Op::exists;
      std::vector<Atom> vars;
      while (true) {
        skip_ws();
        if (accept(".")) break;
        if (pos_ >= text_.size()) fail("expected '.' after quantified variables");
        vars.push_back(parse_atom());
      }
      if (vars.empty()) fail("quantifier without variables");
      return quantify(q, vars, parse_iff());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      const std::size_t open = pos_;
      ++pos_;
      Formula f = parse_iff();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        pos_ = open;
        fail("unbalanced parenthesis: '(' is never closed");
      }
      ++pos_;
      return f;
    }
    const std::string id = peek_ident();
    if (id == "true") {
      pos_ += 4;
      return top();
    }
    if (id == "false") {
      pos_ += 5;
      return bottom();
    }
    return atom(parse_atom());
  }

  Atom parse_atom() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
      if (pos_ >= text_.size()) fail("unexpected end of input");
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string base(text_.substr(start, pos_ - start));
    if (base == "forall" || base == "exists" || base == "true" || base == "false") {
      pos_ = start;
      fail("reserved word '" + base + "' used as atom");
    }
    Sign sign = Sign::plain;
    if (pos_ < text_.size() && text_[pos_] == '+') {
      sign = Sign::pos;
      ++pos_;
    } else if (pos_ < text_.size() && text_[pos_] == '-' &&
               (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '>')) {
      sign = Sign::neg;
      ++pos_;
    }
    std::optional<unsigned> index;
    if (sign != Sign::plain && pos_ + 1 < text_.size() && text_[pos_] == '_' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      unsigned long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (v > 1000000000UL) fail("index too large");
        ++pos_;
      }
      index = static_cast<unsigned>(v);
    }
    return Atom(std::move(base), sign, index);
  }

  std::string_view text_;
  bool allow_quantifiers_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::render(f, out);
  return out;
}

inline Formula parse_formula(std::string_view text, int line = 1) {
  return detail::Parser(text, false, line).parse_all();
}

inline Formula parse_qbf(std::string_view text, int line = 1) {
  return detail::Parser(text, true, line).parse_all();
}

inline Atom parse_atom(std::string_view text) { return detail::Parser(text, false, 1).parse_atom_only(); }

// One formula per line; '#' starts a comment; blank lines are skipped.
inline Theory parse_theory(std::string_view text) {
  Theory t;
  std::size_t start = 0;
  int line = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view row = text.substr(start, end - start);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    bool blank = true;
    for (char c : row)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) t.add(parse_formula(row, line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return t;
}

inline std::string to_string(const Theory& t) {
  std::string out;
  for (const auto& f : t) {
    out += to_string(f);
    out += '\n';
  }
  return out;
}

}  // namespace sigsys

#endif  // SIGSYS_SYNTAX_HPP
