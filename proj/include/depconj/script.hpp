#pragma once

// Documents: proof scripts (.prf) and statement files (.hi / .lo).
//
//   type Nat;
//   pred P;  pred S(Nat);
//   fun 0 : Nat;
//   fun inf(A : Set(Nat), w : warrant(nonempty(A))) : Nat;
//   context [A : Set(Nat)];
//   stmt nonempty(A) /\ inf(A) = 0;
//   claim mp : [z |- P] |- top <= P
//   proof
//     SpecialBwd
//       ...
//   qed
//   claim mp2 : +[z |- P] |- top <= P by derived(AssumptionTruth, name=z, E=P);
//   claim ex : [x : Nat] |- S(x) <= exists x : Nat . S(x)
//     by derived(UnitOf, ctx=[], adj=exists, decl=x : Nat, E=S(x));
//
// A claim context written `+[...]` extends the document context. Inside a
// proof, a `ctx=+[...]` parameter extends the claim's context.

#include "depconj/derived.hpp"
#include "depconj/elaborator.hpp"

namespace depconj {

struct ScriptClaim {
  std::string name;
  Span span;
  bool relative = false;  // context written `+[...]`
  Context written;        // the context as written
  Judgment stated;        // full context, possibly high level

  enum class By { Tree, Derived };
  By by = By::Tree;
  DerivP tree;
  DerivedRule rule = DerivedRule::AssumptionTruth;
  DeriveArgs args;
  // `ctx=[...]` among the arguments: the context handed to the rule, for
  // rules that extend it themselves. Defaults to the claim's context.
  std::optional<Context> derive_ctx;
  bool derive_ctx_relative = false;
};

struct ScriptStatement {
  StmtP stmt;
  Span span;
};

struct Script {
  Signature sig;
  Context context;
  bool has_context = false;
  // Statements and claims in source order.
  std::vector<std::variant<ScriptStatement, ScriptClaim>> items;

  std::vector<const ScriptClaim*> claims() const;
};

Script parse_script(std::string_view text);

struct ScriptFormat {
  bool explicit_form = false;  // false: vernacular statements
};
std::string format_script(const Script& s, ScriptFormat f = {});

// The context with set declarations lowered and every assumption's warrant
// holes filled from its prefix.
ElabResult lower_context(const Signature& sig, const Context& ctx);

// lower(), except that a warrant slot nothing in scope can fill is reported
// as UnboundWarrantor on the application.
ElabResult lower_statement(const Signature& sig, const Context& ctx, const StmtP& e);

// Lowers a judgment the same way, sides resolved against the lowered context.
Judgment lower_judgment(const Signature& sig, const Judgment& j);

struct ItemResult {
  std::string label;  // `claim name` or `stmt N`
  bool ok = false;
  std::string error;                  // empty when ok
  std::optional<Diagnostic> diagnostic;  // when the error is a diagnostic
  std::optional<Judgment> judgment;  // lowered, for claims and statements
  StmtP statement;                   // lowered, for statements
  DerivP derivation;                 // for claims
};

// Kernel-checks every claim against its lowered judgment and requires every
// statement to lower to a meaningful one. A checked claim must also survive
// the text and JSON round trips.
std::vector<ItemResult> check_script(const Script& s);

}  // namespace depconj
