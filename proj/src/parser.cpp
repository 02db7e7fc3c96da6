#include "depconj/parser.hpp"

#include <array>
#include <cctype>

namespace depconj {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 5> kLongPunct = {"/\\", "\\/", "=>", "|-", "<="};
constexpr std::string_view kShortPunct = "[](){}|:.,=@;+!";

}  // namespace

bool is_reserved_word(std::string_view w) {
  return w == "top" || w == "forall" || w == "exists" || w == "exists!" || w == "in" ||
         w == "desc" || w == "sub";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = {line, col};
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      while (j < src.size() && src[j] == '\'') ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "exists" && j < src.size() && src[j] == '!') {
        t.text = "exists!";
        ++j;
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (auto p : kLongPunct) {
      if (src.substr(i, p.size()) == p) {
        t.kind = Token::Kind::Punct;
        t.text = std::string(p);
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched && kShortPunct.find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
      matched = true;
    }
    if (!matched)
      fail(DiagKind::Syntax, std::string("unexpected character '") + c + "'", {}, t.span);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

Parser::Parser(std::string_view src, const Signature* sig) : toks_(tokenize(src)), sig_(sig) {}

const Token& Parser::peek(std::size_t k) const {
  return toks_[std::min(pos_ + k, toks_.size() - 1)];
}

Token Parser::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool Parser::at(std::string_view text, std::size_t k) const {
  const Token& t = peek(k);
  return t.kind != Token::Kind::End && t.text == text;
}

bool Parser::accept(std::string_view text) {
  if (!at(text)) return false;
  next();
  return true;
}

void Parser::error(const std::string& message) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "`" + t.text + "`";
  fail(DiagKind::Syntax, message + ", found " + found, {}, t.span);
}

void Parser::expect(std::string_view text) {
  if (!accept(text)) error("expected `" + std::string(text) + "`");
}

std::string Parser::ident() {
  if (peek().kind != Token::Kind::Ident) error("expected an identifier");
  return next().text;
}

void Parser::expect_end() {
  if (!at_end()) error("unexpected trailing input");
}

std::string Parser::binder_name() {
  if (peek().kind != Token::Kind::Ident || is_reserved_word(peek().text))
    error("expected a name");
  return next().text;
}

// ---------------------------------------------------------------------------
// Types, contexts
// ---------------------------------------------------------------------------

TypeP Parser::type() {
  Span span = peek().span;
  std::string name = ident();
  if (name == "Set" && at("(")) {
    next();
    TypeP elem = type();
    expect(")");
    return Type::set(elem);
  }
  if (is_reserved_word(name)) fail(DiagKind::Syntax, "expected a type", name, span);
  return Type::base(name);
}

ContextEntry Parser::entry() {
  Span span = peek().span;
  std::string name = binder_name();
  if (accept(":")) return ContextEntry::type_decl(name, type(), span);
  if (accept("in")) return ContextEntry::set_decl(name, term(), span);
  if (accept("|-")) return ContextEntry::assume(name, statement(), span);
  error("expected `:`, `in` or `|-` after `" + name + "`");
}

Context Parser::context() {
  expect("[");
  std::vector<ContextEntry> entries;
  while (!at("]")) {
    entries.push_back(entry());
    if (!accept(";")) break;
  }
  expect("]");
  return Context(std::move(entries));
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

StmtP Parser::statement() { return imp_level(); }

StmtP Parser::imp_level() {
  Span span = peek().span;
  StmtP lhs = or_level();
  if (accept("=>")) return st::imp(lhs, imp_level(), span);
  return lhs;
}

StmtP Parser::or_level() {
  Span span = peek().span;
  StmtP lhs = and_level();
  if (accept("\\/")) return st::disj(lhs, or_level(), span);
  return lhs;
}

StmtP Parser::and_level() {
  Span span = peek().span;
  StmtP lhs = unary();
  if (is_dependent(lhs->kind) && lhs->span.line == span.line && lhs->span.column == span.column)
    return lhs;
  if (accept("/\\")) return st::conj(lhs, and_level(), span);
  return lhs;
}

StmtP Parser::unary() {
  if (at("forall") || at("exists") || at("exists!")) return binder();
  if (at("[")) {
    Span span = next().span;
    std::string name;
    if (peek().kind == Token::Kind::Ident && at("|-", 1)) {
      name = binder_name();
      next();
    }
    StmtP assumed = imp_level();
    expect("]");
    if (accept("/\\")) return st::dep_and(name, assumed, and_level(), span);
    if (accept("=>")) return st::dep_imp(name, assumed, imp_level(), span);
    error("expected `/\\` or `=>` after a bracketed assumption");
  }
  return atom();
}

StmtP Parser::binder() {
  Span span = peek().span;
  std::string q = next().text;
  std::string x = binder_name();
  if (accept(":")) {
    TypeP t = type();
    expect(".");
    StmtP body = imp_level();
    if (q == "forall") return st::forall_t(x, t, body, span);
    if (q == "exists") return st::exists_t(x, t, body, span);
    return st::exists_unique(x, t, body, span);
  }
  if (accept("in")) {
    if (q == "exists!") error("unique existence ranges over a type, not a set");
    TermP set = term();
    expect(".");
    StmtP body = imp_level();
    if (q == "forall") return st::forall_s(x, set, body, span);
    return st::exists_s(x, set, body, span);
  }
  error("expected `:` or `in` after a bound variable");
}

StmtP Parser::atom() {
  Span span = peek().span;
  if (accept("top")) return st::top(span);
  if (accept("(")) {
    StmtP s = imp_level();
    expect(")");
    return s;
  }
  TermP t = term();
  if (accept("=")) return st::eq(t, term(), span);
  if (accept("in")) return st::mem(t, term(), span);
  // A bare application or name in statement position is a predicate.
  if (t->kind == Term::Kind::Var) return st::pred(t->name, {}, span);
  if (t->kind == Term::Kind::App) {
    std::vector<TermP> args;
    for (const auto& a : t->args) {
      if (!a.term) fail(DiagKind::Syntax, "predicates take no warrant arguments", t->name, span);
      args.push_back(a.term);
    }
    return st::pred(t->name, std::move(args), span);
  }
  fail(DiagKind::Syntax, "expected `=` or `in` after a term", to_string(*t), span);
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

TermP Parser::term() {
  Span span = peek().span;
  if (accept("{")) {
    std::string x = binder_name();
    if (accept(":")) {
      TypeP t = type();
      expect("|");
      StmtP body = statement();
      expect("}");
      return tm::compr(x, t, body, span);
    }
    expect("in");
    TermP set = term();
    expect("|");
    StmtP body = statement();
    expect("}");
    return tm::compr_set(x, set, body, span);
  }
  if (at("desc") && at("(", 1)) {
    next();
    next();
    std::string w = binder_name();
    expect(")");
    return tm::desc(w, span);
  }
  if (peek().kind != Token::Kind::Ident || is_reserved_word(peek().text)) error("expected a term");
  std::string name = next().text;
  if (accept("(")) {
    std::vector<Arg> args;
    while (!at(")")) {
      if (accept("@")) {
        if (accept("_"))
          args.push_back(Arg::hole());
        else
          args.push_back(Arg::warrant_ref(binder_name()));
      } else {
        args.push_back(Arg::of(term()));
      }
      if (!accept(",")) break;
    }
    expect(")");
    return tm::app(name, std::move(args), span);
  }
  if (sig_ && sig_->function(name)) return tm::app(name, {}, span);
  return tm::var(name, span);
}

// ---------------------------------------------------------------------------

StmtP parse_statement(std::string_view src, const Signature* sig) {
  Parser p(src, sig);
  StmtP s = p.statement();
  p.expect_end();
  return s;
}

TermP parse_term(std::string_view src, const Signature* sig) {
  Parser p(src, sig);
  TermP t = p.term();
  p.expect_end();
  return t;
}

TypeP parse_type(std::string_view src) {
  Parser p(src);
  TypeP t = p.type();
  p.expect_end();
  return t;
}

Context parse_context(std::string_view src, const Signature* sig) {
  Parser p(src, sig);
  Context c = p.context();
  p.expect_end();
  return c;
}

}  // namespace depconj
