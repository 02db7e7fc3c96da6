#pragma once

// Constructors for the named derived inequalities. Every tree returned by
// derive() has already been accepted by the kernel.

#include <functional>

#include "depconj/kernel.hpp"

namespace depconj {

enum class DerivedRule {
  UnitOf,
  CounitOf,
  AssumptionTruth,
  DepModusPonens,
  DepModusPonensSimplified,
  DepAndEquivFwd,
  DepAndEquivBwd,
  DepImpEquivFwd,
  DepImpEquivBwd,
  ElabForallAdj,
  ElabExistsAdj,
  ElabComprAdj,
};

const std::vector<DerivedRule>& all_derived_rules();
const char* to_string(DerivedRule r);
std::optional<DerivedRule> derived_rule_from_string(std::string_view name);

class DeriveError : public std::runtime_error {
 public:
  enum class Kind { BadArgs, DomainMismatch };
  DeriveError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Arguments by key. Keys and their kinds:
//   E F G H body : statements      A set : terms
//   name adj component var warrant : names
//   decl (x : T)  assume (z |- E) : context entries
using DeriveArgs = std::map<std::string, ParamValue>;

std::optional<ParamKind> derive_arg_kind(const std::string& key);
DeriveArgs parse_derive_args(const std::map<std::string, std::string>& raw, const Signature* sig);
// One-line usage per rule, for the command line.
std::string derive_usage(DerivedRule r);

DerivP derive(const Signature& sig, DerivedRule r, const Context& ctx, const DeriveArgs& args);

// Leaf-first rule labels along the main line of a chain. A transitivity
// step whose other premise only commutes a conjunction is skipped together
// with that premise.
std::vector<Rule> main_line(const Derivation& d);

// ---------------------------------------------------------------------------
// Adjunctions between preorders of statements (or of sets of one element
// type) in a context.

struct Side {
  Context ctx;
  TypeP elem;  // set side when non-null

  bool is_sets() const { return elem != nullptr; }
  static Side statements(Context c) { return {std::move(c), nullptr}; }
  static Side sets(Context c, TypeP elem) { return {std::move(c), std::move(elem)}; }
};

bool side_eq(const Side& a, const Side& b);
std::string to_string(const Side& s);

using Object = std::variant<StmtP, TermP>;
std::string to_string(const Object& o);

// left : source -> target is left adjoint to right : target -> source.
// transpose turns target |- left(x) <= y into source |- x <= right(y);
// untranspose goes back.
struct AdjunctionInstance {
  std::string name;
  Side source, target;
  std::function<Object(const Object&)> left, right;
  std::function<DerivP(DerivP)> transpose, untranspose;

  // source |- x <= right(left(x))
  DerivP unit(const Object& x) const;
  // target |- left(right(y)) <= y
  DerivP counit(const Object& y) const;
};

AdjunctionInstance identity_adjunction(const Side& side);
// (- /\ F) -| (F => -)
AdjunctionInstance imp_adjunction(const Context& ctx, StmtP f);
// J -| forall x : T
AdjunctionInstance forall_adjunction(const Context& ctx, const std::string& x, TypeP t);
// exists x : T -| J
AdjunctionInstance exists_adjunction(const Context& ctx, const std::string& x, TypeP t);
// ([z |- E] /\ -) -| J
AdjunctionInstance dep_and_adjunction(const Context& ctx, const std::string& z, StmtP e);
// J -| ([z |- E] => -)
AdjunctionInstance dep_imp_adjunction(const Context& ctx, const std::string& z, StmtP e);
// { x : T | - } -| (x in -)
AdjunctionInstance compr_adjunction(const Context& ctx, const std::string& x, TypeP t);

// outer . inner -| inner.right . outer.right
AdjunctionInstance compose_adjoints(const AdjunctionInstance& outer, const AdjunctionInstance& inner);

}  // namespace depconj
