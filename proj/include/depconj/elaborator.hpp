#pragma once

// High level to low level. Set declarations and set-bounded quantifiers
// become type declarations guarded by named membership assumptions, and
// warrant slots left empty by vernacular input are filled from scope.

#include "depconj/syntax.hpp"

namespace depconj {

struct WarrantorInfo {
  StmtP membership;  // x in X
  Span origin;       // where the set declaration or bounded binder was written
};

struct ElabResult {
  Context context;    // lowered context
  StmtP statement;    // lowered statement; null from elaborate_context
  std::map<std::string, WarrantorInfo> warrantors;  // every name introduced
};

// x in X  becomes  x : T, w_x |- x in X.
ElabResult elaborate_context(const Signature& sig, const Context& high);

// forall x in X . E    becomes  forall x : T . [w_x |- x in X] => E'
// exists x in X . E    becomes  exists x : T . [w_x |- x in X] /\ E'
// { x in X | E }       becomes  { x : T | [w_x |- x in X] /\ E' }
// The context is lowered first. Holes are allowed and left in place.
ElabResult elaborate_statement(const Signature& sig, const Context& ctx, const StmtP& e);

// Gives an application that omits its warrant arguments a hole in each
// warrant position.
StmtP align_warrant_slots(const Signature& sig, const StmtP& e);
TermP align_warrant_slots(const Signature& sig, const TermP& t);

// Fills every hole with the nearest assumption in scope whose statement is
// the parameter's schema instance. The left side of a conjunction or an
// implication counts as in scope for its right side; a connective whose
// left side ends up used this way becomes dependent.
StmtP resolve_warrantors(const Signature& sig, const Context& ctx, const StmtP& e);

// elaborate_statement, then resolve_warrantors, then a strict meaningfulness
// check.
ElabResult lower(const Signature& sig, const Context& ctx, const StmtP& e);

std::string render_vernacular(const StmtP& e);
std::string render_vernacular(const Context& ctx);

// Comment block listing introduced warrantors, one `# name : stmt` per line.
std::string warrantor_table_text(const ElabResult& r);

}  // namespace depconj
