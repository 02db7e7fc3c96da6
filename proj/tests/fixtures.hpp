#pragma once

#include "depconj/parser.hpp"
#include "depconj/syntax.hpp"

namespace fixtures {

using namespace depconj;

// Nat with 0, the nonempty / lower_bound predicates and the partial inf.
inline Signature inf_signature() {
  Signature sig;
  sig.add_base_type("Nat");
  auto nat = Type::base("Nat");
  auto set_nat = Type::set(nat);
  sig.add_predicate({"P", {}, {}});
  sig.add_predicate({"Q", {}, {}});
  sig.add_predicate({"R", {}, {}});
  sig.add_predicate({"S", {nat}, {}});
  sig.add_predicate({"nonempty", {set_nat}, {}});
  sig.add_predicate({"lower_bound", {nat, set_nat}, {}});
  sig.add_function({"0", {}, nat, {}});
  FunctionSymbol inf{"inf", {}, nat, {}};
  inf.params.push_back({"A", set_nat, nullptr});
  inf.params.push_back({"w", nullptr, st::pred("nonempty", {tm::var("A")})});
  sig.add_function(inf);
  return sig;
}

inline StmtP S(const std::string& src, const Signature& sig) { return parse_statement(src, &sig); }
inline Context C(const std::string& src, const Signature& sig) { return parse_context(src, &sig); }

}  // namespace fixtures
