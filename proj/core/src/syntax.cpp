#include <cctype>
#include <string>
#include <utility>

#include "lea/formula.hpp"

namespace lea {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected " +
                         join_expected(expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0])) || s[0] == 'o') return false;
  for (char c : s.substr(1)) {
    if (!std::islower(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c)))
      return false;
  }
  return true;
}

namespace {

enum class Tok {
  End,
  Invalid,
  Not,
  Ess,
  Acc,
  Box,
  Dia,
  Top,
  Bot,
  Ident,
  LParen,
  RParen,
  And,
  Or,
  Implies,
  Iff
};

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::size_t length = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= text_.size()) return t;
    auto starts = [&](std::string_view p) { return text_.substr(pos_, p.size()) == p; };
    auto emit = [&](Tok k, std::size_t len) {
      t.kind = k;
      t.length = len;
      pos_ += len;
      return t;
    };
    char c = text_[pos_];
    if (starts("<->")) return emit(Tok::Iff, 3);
    if (starts("->")) return emit(Tok::Implies, 2);
    if (starts("[]")) return emit(Tok::Box, 2);
    if (starts("<>")) return emit(Tok::Dia, 2);
    switch (c) {
      case '~': return emit(Tok::Not, 1);
      case 'o': return emit(Tok::Ess, 1);
      case 'A': return emit(Tok::Acc, 1);
      case 'T': return emit(Tok::Top, 1);
      case 'F': return emit(Tok::Bot, 1);
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case '&': return emit(Tok::And, 1);
      case '|': return emit(Tok::Or, 1);
      default: break;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && (std::islower(static_cast<unsigned char>(text_[end])) ||
                                    std::isdigit(static_cast<unsigned char>(text_[end]))))
        ++end;
      return emit(Tok::Ident, end - pos_);
    }
    t.kind = Tok::Invalid;
    t.length = 1;
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

const std::vector<std::string> kUnaryStart = {"~", "o", "A", "[]", "<>", "T", "F", "identifier", "("};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), lexer_(text) { advance(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::End) fail({"&", "|", "->", "<->", "end of input"});
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(cur_.offset, std::move(expected));
  }

  Formula parse_iff() {
    Formula lhs = parse_impl();
    if (cur_.kind != Tok::Iff) return lhs;
    advance();
    return Formula::iff(lhs, parse_iff());
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (cur_.kind != Tok::Implies) return lhs;
    advance();
    return Formula::implies(lhs, parse_impl());
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (cur_.kind == Tok::Or) {
      advance();
      f = Formula::disj(f, parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (cur_.kind == Tok::And) {
      advance();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (cur_.kind) {
      case Tok::Not:
        advance();
        return Formula::neg(parse_unary());
      case Tok::Ess:
        advance();
        return Formula::ess(parse_unary());
      case Tok::Acc:
        advance();
        return Formula::acc(parse_unary());
      case Tok::Box:
        advance();
        return Formula::box(parse_unary());
      case Tok::Dia:
        advance();
        return Formula::dia(parse_unary());
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    switch (cur_.kind) {
      case Tok::Top:
        advance();
        return Formula::top();
      case Tok::Bot:
        advance();
        return Formula::bot();
      case Tok::Ident: {
        std::string name(text_.substr(cur_.offset, cur_.length));
        advance();
        return Formula::var(std::move(name));
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        if (cur_.kind != Tok::RParen) fail({")", "&", "|", "->", "<->"});
        advance();
        return f;
      }
      default:
        fail(kUnaryStart);
    }
  }

  std::string_view text_;
  Lexer lexer_;
  Token cur_;
};

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    default: return 5;
  }
}

void render_into(const Formula& f, int min_prec, std::string& out);

void render_binary(const Formula& f, const char* sym, int lmin, int rmin, std::string& out) {
  render_into(f.lhs(), lmin, out);
  out += ' ';
  out += sym;
  out += ' ';
  render_into(f.rhs(), rmin, out);
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  const bool wrap = precedence(f) < min_prec;
  if (wrap) out += '(';
  switch (f.op()) {
    case Op::Var: out += f.name(); break;
    case Op::Top: out += 'T'; break;
    case Op::Bot: out += 'F'; break;
    case Op::Not:
      if (f.sugar() == Sugar::Acc && f.arg().op() == Op::Ess) {
        out += "A ";
        render_into(f.arg().arg(), 5, out);
      } else if (f.sugar() == Sugar::Dia && f.arg().op() == Op::Box &&
                 f.arg().arg().op() == Op::Not) {
        out += "<>";
        render_into(f.arg().arg().arg(), 5, out);
      } else {
        out += '~';
        render_into(f.arg(), 5, out);
      }
      break;
    case Op::Ess:
      out += "o ";
      render_into(f.arg(), 5, out);
      break;
    case Op::Box:
      out += "[]";
      render_into(f.arg(), 5, out);
      break;
    case Op::And: render_binary(f, "&", 4, 5, out); break;
    case Op::Or: render_binary(f, "|", 3, 4, out); break;
    case Op::Implies: render_binary(f, "->", 5, 5, out); break;
    case Op::Iff: render_binary(f, "<->", 5, 5, out); break;
  }
  if (wrap) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

}  // namespace lea
