#pragma once

// Abstract syntax of the calculus: types, terms, statements, contexts and
// signatures, together with the syntactic operations everything else is
// built on (meaningfulness, type synthesis, substitution, structural
// equality up to proof-irrelevance, erasure).
//
// All nodes are immutable once built and are shared through
// std::shared_ptr<const T>, so values may be passed freely between threads.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace depconj {

struct Span {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Base, Set };
  Kind kind = Kind::Base;
  std::string name;  // Base
  TypeP elem;        // Set

  static TypeP base(std::string name);
  static TypeP set(TypeP elem);
};

bool type_eq(const Type& a, const Type& b);
std::string to_string(const Type& t);

// ---------------------------------------------------------------------------
// Terms and statements
// ---------------------------------------------------------------------------

struct Term;
struct Stmt;
using TermP = std::shared_ptr<const Term>;
using StmtP = std::shared_ptr<const Stmt>;

/// An argument of a function application: an ordinary term, or a reference
/// to a warrantor (assumption name) filling a warrant parameter. A warrant
/// reference with an empty name is a hole left by vernacular input.
struct Arg {
  TermP term;
  std::string warrant;

  bool is_warrant() const { return term == nullptr; }
  bool is_hole() const { return term == nullptr && warrant.empty(); }

  static Arg of(TermP t) { return Arg{std::move(t), {}}; }
  static Arg warrant_ref(std::string name) { return Arg{nullptr, std::move(name)}; }
  static Arg hole() { return Arg{nullptr, {}}; }
};

struct Term {
  enum class Kind { Var, App, Compr, ComprSet, Desc };
  Kind kind = Kind::Var;
  std::string name;       // variable, function symbol, binder, or Desc warrantor
  std::vector<Arg> args;  // App
  TypeP type;             // Compr binder type
  TermP set;              // ComprSet binder range
  StmtP body;             // Compr / ComprSet
  Span span;
};

struct Stmt {
  enum class Kind {
    Top,
    And,
    Or,
    Imp,
    DepAnd,
    DepImp,
    ForallT,
    ExistsT,
    ExistsUniqueT,
    ForallS,
    ExistsS,
    Eq,
    Mem,
    Pred
  };
  Kind kind = Kind::Top;
  std::string name;  // binder (variable or warrantor) or predicate symbol
  TypeP type;        // ForallT / ExistsT / ExistsUniqueT
  TermP set;         // ForallS / ExistsS range; Mem right operand
  StmtP lhs, rhs;    // binary connectives; DepAnd/DepImp: assumed statement, body
  StmtP body;        // quantifiers
  TermP left, right; // Eq operands; Mem element in `left`
  std::vector<TermP> args;  // Pred
  Span span;
};

namespace tm {
TermP var(std::string x, Span span = {});
TermP app(std::string f, std::vector<Arg> args, Span span = {});
TermP compr(std::string x, TypeP type, StmtP body, Span span = {});
TermP compr_set(std::string x, TermP set, StmtP body, Span span = {});
TermP desc(std::string warrantor, Span span = {});
}  // namespace tm

namespace st {
StmtP top(Span span = {});
StmtP conj(StmtP e, StmtP f, Span span = {});
StmtP disj(StmtP e, StmtP f, Span span = {});
StmtP imp(StmtP e, StmtP f, Span span = {});
StmtP dep_and(std::string z, StmtP e, StmtP f, Span span = {});
StmtP dep_imp(std::string z, StmtP e, StmtP f, Span span = {});
StmtP forall_t(std::string x, TypeP t, StmtP e, Span span = {});
StmtP exists_t(std::string x, TypeP t, StmtP e, Span span = {});
StmtP exists_unique(std::string x, TypeP t, StmtP e, Span span = {});
StmtP forall_s(std::string x, TermP set, StmtP e, Span span = {});
StmtP exists_s(std::string x, TermP set, StmtP e, Span span = {});
StmtP eq(TermP t, TermP u, Span span = {});
StmtP mem(TermP t, TermP set, Span span = {});
StmtP pred(std::string p, std::vector<TermP> args = {}, Span span = {});
}  // namespace st

bool is_binary(Stmt::Kind k);
bool is_dependent(Stmt::Kind k);
bool is_type_quantifier(Stmt::Kind k);
bool is_set_quantifier(Stmt::Kind k);

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

enum class DiagKind {
  Syntax,
  UnboundVar,
  UnboundWarrantor,
  SchemaMismatch,
  TypeMismatch,
  ArityMismatch,
  UnknownSymbol,
  DuplicateName,
  IllFormedEntry,
  HighLevel,
  ContainsDescription,
  NoWarrantorInScope,
  HostUnresolvable,
};

const char* to_string(DiagKind k);

struct Diagnostic {
  DiagKind kind = DiagKind::Syntax;
  std::string message;
  std::string subject;  // printed offending subterm, if any
  Span span;

  std::string str() const;
};

class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

[[noreturn]] void fail(DiagKind kind, std::string message, std::string subject = {},
                       Span span = {});

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

/// A parameter of a function symbol. A warrant parameter carries a schema,
/// a statement over the earlier parameters that the supplied warrantor must
/// prove.
struct Param {
  std::string name;
  TypeP type;    // term parameters
  StmtP schema;  // warrant parameters

  bool is_warrant() const { return schema != nullptr; }
};

struct FunctionSymbol {
  std::string name;
  std::vector<Param> params;
  TypeP result;
  Span span;

  std::size_t term_arity() const;
};

struct PredicateSymbol {
  std::string name;
  std::vector<TypeP> params;
  Span span;
};

class Signature {
 public:
  void add_base_type(const std::string& name, Span span = {});
  void add_predicate(PredicateSymbol p);
  void add_function(FunctionSymbol f);

  bool has_base_type(const std::string& name) const;
  const FunctionSymbol* function(const std::string& name) const;
  const PredicateSymbol* predicate(const std::string& name) const;

  const std::vector<std::string>& base_types() const { return base_types_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }

  /// Throws DiagnosticError when `t` mentions an undeclared base type.
  void require_type(const Type& t, Span span = {}) const;

  /// Canonical text of the declarations; equal signatures print equally.
  std::string fingerprint() const;

 private:
  bool name_taken(const std::string& name) const;

  std::vector<std::string> base_types_;
  std::vector<PredicateSymbol> predicates_;
  std::vector<FunctionSymbol> functions_;
  std::unordered_map<std::string, std::size_t> pred_index_;
  std::unordered_map<std::string, std::size_t> fun_index_;
};

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

struct ContextEntry {
  enum class Kind { TypeDecl, SetDecl, Assume };
  Kind kind = Kind::TypeDecl;
  std::string name;
  TypeP type;  // TypeDecl
  TermP set;   // SetDecl
  StmtP stmt;  // Assume
  Span span;

  static ContextEntry type_decl(std::string x, TypeP t, Span span = {});
  static ContextEntry set_decl(std::string x, TermP set, Span span = {});
  static ContextEntry assume(std::string z, StmtP e, Span span = {});
};

class Context {
 public:
  Context() = default;
  explicit Context(std::vector<ContextEntry> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ContextEntry& operator[](std::size_t i) const { return entries_[i]; }
  const ContextEntry& back() const { return entries_.back(); }
  const std::vector<ContextEntry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Last entry with this name, or null.
  const ContextEntry* find(const std::string& name) const;
  bool declares(const std::string& name) const { return find(name) != nullptr; }
  std::set<std::string> names() const;

  /// Appends without validation; see extend_context for the checked form.
  Context with(ContextEntry e) const;
  Context prefix(std::size_t n) const;
  Context concat(const Context& more) const;

  bool is_low_level() const;

 private:
  std::vector<ContextEntry> entries_;
};

struct MeaningOptions {
  bool allow_high_level = false;  // SetDecl, ForallS, ExistsS, ComprSet
  bool allow_holes = false;       // unfilled warrant slots
};

/// Checked enrichment of a context: the name must be fresh and the payload
/// meaningful in `ctx`.
Context extend_context(const Signature& sig, const Context& ctx, ContextEntry e,
                       MeaningOptions opts = {});

/// Validates every entry of `ctx` against its prefix.
void validate_context(const Signature& sig, const Context& ctx, MeaningOptions opts = {});

std::optional<Diagnostic> meaningful(const Signature& sig, const Context& ctx, const Stmt& e,
                                     MeaningOptions opts = {});
void require_meaningful(const Signature& sig, const Context& ctx, const Stmt& e,
                        MeaningOptions opts = {});

TypeP synth_type(const Signature& sig, const Context& ctx, const Term& t,
                 MeaningOptions opts = {});

// ---------------------------------------------------------------------------
// Names, substitution, structural equality
// ---------------------------------------------------------------------------

/// Free names of a statement or term: variables and warrantor references
/// share one namespace, as they do in contexts.
std::set<std::string> free_names(const Stmt& e);
std::set<std::string> free_names(const Term& t);
bool occurs_free(const std::string& name, const Stmt& e);

/// Deterministic fresh name: `base`, then `base'`, `base''`, ... skipping
/// anything in `avoid`. When `allow_base` is false the bare base is skipped.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid,
                       bool allow_base = true);

/// What a free name is replaced by: a term (for variable occurrences) or
/// another warrantor name (for warrant references and description operands).
struct Replacement {
  TermP term;
  std::string warrant;

  static Replacement of(TermP t) { return {std::move(t), {}}; }
  static Replacement warrantor(std::string w) { return {nullptr, std::move(w)}; }
};
using SubstMap = std::map<std::string, Replacement>;

/// Simultaneous, capture-avoiding substitution.
StmtP substitute(const StmtP& e, const SubstMap& m);
TermP substitute(const TermP& t, const SubstMap& m);

/// E[a/x].
StmtP substitute(const StmtP& e, const TermP& a, const std::string& x);
/// Renames free references to warrantor `from` into `to`.
StmtP rename_warrantor(const StmtP& e, const std::string& from, const std::string& to);

// Renames every variable or warrantor occurrence of `from`, bound or free,
// to `to`. Only an alpha-renaming when `to` is fresh for the whole input.
StmtP rename_everywhere(const StmtP& e, const std::string& from, const std::string& to);
TermP rename_everywhere(const TermP& t, const std::string& from, const std::string& to);

/// Canonical key of a statement: identifies alpha-equivalent statements, and
/// identifies warrantor references (and description terms) whose warranted
/// statements are themselves equal. Warrantors are looked up in `ctx`.
std::string canonical_key(const Stmt& e, const Context& ctx = {});
std::string canonical_key(const Term& t, const Context& ctx = {});

bool struct_eq(const Stmt& a, const Stmt& b, const Context& ctx = {});
bool struct_eq(const Term& a, const Term& b, const Context& ctx = {});
bool struct_eq(const StmtP& a, const StmtP& b, const Context& ctx = {});
bool entry_eq(const ContextEntry& a, const ContextEntry& b, const Context& prefix);
/// Same names and kinds entry by entry, payloads equal structurally.
bool context_eq(const Context& a, const Context& b);

bool is_low_level(const Stmt& e);
bool is_low_level(const Term& t);
/// True when no description term and no warrant reference occurs.
bool is_delta_free(const Stmt& e);
bool is_delta_free(const Term& t);

/// Replaces dependent connectives by their ordinary counterparts. Throws
/// DiagnosticError(ContainsDescription) on description terms or warrant
/// references.
StmtP erase(const StmtP& e);

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

struct PrintOptions {
  /// Hide warrant arguments and the names of dependent binders.
  bool vernacular = false;
};

std::string to_string(const Stmt& e, PrintOptions opts = {});
std::string to_string(const Term& t, PrintOptions opts = {});
std::string to_string(const StmtP& e, PrintOptions opts = {});
std::string to_string(const TermP& t, PrintOptions opts = {});
std::string to_string(const ContextEntry& e, PrintOptions opts = {});
std::string to_string(const Context& c, PrintOptions opts = {});

}  // namespace depconj
