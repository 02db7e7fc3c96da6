#pragma once

// The trusted checker. A Derivation is a rule-labelled tree; check() either
// returns the judgment it proves or a KernelError naming the failing node.

#include <memory>
#include <mutex>
#include <optional>
#include <variant>

#include "depconj/syntax.hpp"

namespace depconj {

enum class Rule {
  Refl,
  Trans,
  TopIntro,
  AndIntro,
  AndElimL,
  AndElimR,
  OrIntroL,
  OrIntroR,
  OrElim,
  ImpIntro,
  ImpUncurry,
  ForallIntro,
  ForallTranspose,
  ExistsIntro,
  ExistsTranspose,
  Subst,
  Weaken,
  SpecialFwd,
  SpecialBwd,
  DepAndTranspose,
  DepAndUntranspose,
  DepImpTranspose,
  DepImpUntranspose,
  Description,
  InclRefl,
  InclTrans,
  ComprTranspose,
  ComprUntranspose,
};

const std::vector<Rule>& all_rules();
const char* to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view name);

struct Judgment {
  enum class Kind { Leq, Incl };
  Kind kind = Kind::Leq;
  Context ctx;
  StmtP lhs, rhs;  // Leq
  TermP lset, rset;  // Incl

  static Judgment leq(Context ctx, StmtP e, StmtP f);
  static Judgment incl(Context ctx, TermP a, TermP b);
};

// Same context, sides struct_eq in it.
bool judgment_eq(const Judgment& a, const Judgment& b);
std::string to_string(const Judgment& j, PrintOptions opts = {});

// Parameter values. Which keys a rule takes, and of which kind, is fixed by
// param_schema().
using ParamValue = std::variant<Context, StmtP, TermP, ContextEntry, std::string>;

enum class ParamKind { Ctx, Stmt, Term, Entry, Name };

struct ParamSpec {
  std::string key;
  ParamKind kind;
  bool optional = false;
};

const std::vector<ParamSpec>& param_schema(Rule r);
std::size_t premise_count(Rule r);

struct Derivation;
using DerivP = std::shared_ptr<const Derivation>;
using Params = std::map<std::string, ParamValue>;

struct Derivation {
  Rule rule = Rule::Refl;
  Params params;
  std::vector<DerivP> premises;

  Derivation() = default;
  Derivation(Rule r, Params p, std::vector<DerivP> prem)
      : rule(r), params(std::move(p)), premises(std::move(prem)) {}
  Derivation(const Derivation& o) : rule(o.rule), params(o.params), premises(o.premises) {}
  Derivation& operator=(const Derivation&) = delete;

  const Context* ctx_param(const std::string& key) const;
  const StmtP* stmt_param(const std::string& key) const;
  const TermP* term_param(const std::string& key) const;
  const ContextEntry* entry_param(const std::string& key) const;
  const std::string* name_param(const std::string& key) const;

  std::size_t size() const;  // node count

 private:
  friend class Checker;
  // Conclusion cached by signature fingerprint; only successful checks are
  // stored.
  mutable std::mutex cache_mutex_;
  mutable std::string cache_key_;
  mutable std::optional<Judgment> cache_;
};

DerivP make(Rule r, Params params = {}, std::vector<DerivP> premises = {});

enum class KernelErrorKind { RuleMismatch, SideConditionFailed, NotMeaningful, HighLevelLeak };
const char* to_string(KernelErrorKind k);

class KernelError : public std::runtime_error {
 public:
  KernelError(KernelErrorKind kind, Rule rule, std::vector<std::size_t> path, std::string message);
  KernelErrorKind kind() const { return kind_; }
  Rule rule() const { return rule_; }
  // Premise indices from the root to the failing node.
  const std::vector<std::size_t>& path() const { return path_; }
  const std::string& detail() const { return detail_; }

 private:
  KernelErrorKind kind_;
  Rule rule_;
  std::vector<std::size_t> path_;
  std::string detail_;
};

// Full verification of every node; ignores caches but fills them.
Judgment check(const Signature& sig, const Derivation& d);
// Uses cached conclusions where present.
Judgment judgment_of(const Signature& sig, const Derivation& d);

// Rule constructors.
namespace rules {
DerivP refl(const Context& ctx, StmtP e);
DerivP trans(DerivP a, DerivP b);
DerivP top_intro(const Context& ctx, StmtP e);
DerivP and_intro(DerivP a, DerivP b);
DerivP and_elim_l(const Context& ctx, StmtP e, StmtP f);
DerivP and_elim_r(const Context& ctx, StmtP e, StmtP f);
DerivP or_intro_l(const Context& ctx, StmtP e, StmtP f);
DerivP or_intro_r(const Context& ctx, StmtP e, StmtP f);
DerivP or_elim(DerivP a, DerivP b);
DerivP imp_intro(DerivP a);
DerivP imp_uncurry(DerivP a);
DerivP forall_intro(DerivP a);
DerivP forall_transpose(DerivP a, std::string name = {});
DerivP exists_intro(DerivP a);
DerivP exists_transpose(DerivP a, std::string name = {});
DerivP subst(DerivP a, TermP term);
DerivP weaken(DerivP a, ContextEntry entry);
DerivP special_fwd(DerivP a, std::string name);
DerivP special_bwd(DerivP a);
DerivP dep_and_transpose(DerivP a, std::string name = {});
DerivP dep_and_untranspose(DerivP a);
DerivP dep_imp_transpose(DerivP a);
DerivP dep_imp_untranspose(DerivP a, std::string name = {});
DerivP description(const Context& ctx, std::string name);
DerivP incl_refl(const Context& ctx, TermP set);
DerivP incl_trans(DerivP a, DerivP b);
DerivP compr_transpose(DerivP a, std::string name = {});
DerivP compr_untranspose(DerivP a);
}  // namespace rules

// Renames the variable or assumption `from` to `to` in every parameter of
// the tree, bound occurrences included. `to` must be fresh for the tree.
DerivP rename_in_derivation(const Derivation& d, const std::string& from, const std::string& to);
// Points warrant references and descriptions naming `from` at `to`. Context
// entries are rewritten only after the point where `to` is declared.
DerivP redirect_warrant(const Derivation& d, const std::string& from, const std::string& to);
// Every name occurring anywhere in the tree, for choosing fresh ones.
std::set<std::string> names_in(const Derivation& d);

// Rule labels of the tree in pre-order.
std::vector<Rule> rule_sequence(const Derivation& d);
// Rule labels along the leftmost spine, leaf first (a chain reads top-down).
std::vector<Rule> spine(const Derivation& d);

// Text and JSON forms. The text form is one node per line,
// `Rule(key=value, ...)`, premises indented below their conclusion.
std::string to_text(const Derivation& d);
DerivP parse_derivation(std::string_view text, const Signature* sig);
class Parser;
// Reads one tree from the parser's position. With `base`, a context
// parameter written `+[...]` extends `base`.
DerivP read_derivation(Parser& p, const Context* base = nullptr);
std::string to_json(const Derivation& d, int indent = 2);
DerivP derivation_from_json(std::string_view json, const Signature* sig);

// `[ctx] |- E <= F` or `[ctx] |- A sub B`.
Judgment parse_judgment(std::string_view text, const Signature* sig);

}  // namespace depconj
