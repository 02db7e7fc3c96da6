#pragma once

// Text surface syntax for statements, terms, types and contexts.
//
//   top   E /\ F   E \/ F   E => F   [z |- E] /\ F   [z |- E] => F
//   forall x : T . E   exists x : T . E   exists! x : T . E
//   forall x in X . E   exists x in X . E
//   { x : T | E }   { x in X | E }   t = u   t in A   desc(z)   f(a, b, @z)
//
// `=>` binds weakest and associates to the right, then `\/`, then `/\`.
// Binders extend as far right as possible. `[E] /\ F` (no name) is an
// anonymous dependent conjunction whose warrantor is named on resolution;
// `@_` is an explicit warrant hole.

#include <string_view>

#include "depconj/syntax.hpp"

namespace depconj {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Span span;
};

std::vector<Token> tokenize(std::string_view src);

class Parser {
 public:
  explicit Parser(std::string_view src, const Signature* sig = nullptr);

  StmtP statement();
  TermP term();
  TypeP type();
  Context context();
  ContextEntry entry();

  // Token-level access for the document and derivation readers.
  const Token& peek(std::size_t k = 0) const;
  Token next();
  bool at(std::string_view text, std::size_t k = 0) const;
  bool accept(std::string_view text);
  void expect(std::string_view text);
  std::string ident();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  void expect_end();
  std::size_t mark() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void error(const std::string& message) const;

  void set_signature(const Signature* sig) { sig_ = sig; }
  const Signature* signature() const { return sig_; }

 private:
  StmtP imp_level();
  StmtP or_level();
  StmtP and_level();
  StmtP unary();
  StmtP binder();
  StmtP atom();
  std::string binder_name();

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_;
};

bool is_reserved_word(std::string_view word);

StmtP parse_statement(std::string_view src, const Signature* sig = nullptr);
TermP parse_term(std::string_view src, const Signature* sig = nullptr);
TypeP parse_type(std::string_view src);
Context parse_context(std::string_view src, const Signature* sig = nullptr);

}  // namespace depconj
