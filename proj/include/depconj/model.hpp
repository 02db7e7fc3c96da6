#pragma once

// Finite Heyting-algebra semantics, used as an oracle for the kernel.
//
// Truth values live in a finite Heyting algebra H. A base type denotes a
// finite carrier, Set(T) denotes all functions carrier(T) -> H, equality is
// crisp, and predicate and function symbols are interpreted by tables. Every
// value of a type is coded as an index into its carrier.

#include <cstdint>
#include <optional>

#include "depconj/kernel.hpp"

namespace depconj {

class ModelError : public std::runtime_error {
 public:
  enum class Kind { BadModel, UnsupportedJudgment, ContainsDescription, UnboundVar, NoAdjoint };
  ModelError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FinitePoset {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> le;

  int size() const { return static_cast<int>(names.size()); }
  bool leq(int a, int b) const { return le[a][b]; }

  // Reflexive-transitive closure of the given strict pairs; throws BadModel
  // on a cycle.
  static FinitePoset from_order(std::vector<std::string> names, const std::vector<std::pair<int, int>>& less);
  static FinitePoset chain(int n);
  static FinitePoset product(const FinitePoset& a, const FinitePoset& b);

  // Greatest lower bound / least upper bound of a subset, when it exists.
  std::optional<int> meet_of(const std::vector<int>& xs) const;
  std::optional<int> join_of(const std::vector<int>& xs) const;
};

struct MonotoneMap {
  FinitePoset from, to;
  std::vector<int> table;

  int operator()(int x) const { return table[x]; }
  bool is_monotone() const;
};

enum class AdjointSide { Left, Right };
enum class SearchOrder { Ascending, Descending };

// The left or right adjoint of f, found by brute force and checked against
// f(x) <= y iff x <= g(y) on every pair. Throws NoAdjoint.
MonotoneMap compute_adjoint(AdjointSide side, const MonotoneMap& f, SearchOrder order = SearchOrder::Ascending);

class HeytingModel {
 public:
  // Throws BadModel unless the order is a Heyting algebra.
  HeytingModel(std::string name, FinitePoset order);

  const std::string& name() const { return name_; }
  const FinitePoset& order() const { return order_; }
  int size() const { return order_.size(); }
  bool leq(int a, int b) const { return order_.leq(a, b); }
  int meet(int a, int b) const { return meet_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  int imp(int a, int b) const { return imp_[a][b]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }
  const std::string& element_name(int a) const { return order_.names[a]; }
  std::optional<int> element(const std::string& name) const;

  // Base carriers default to two elements.
  std::uint64_t base_carrier(const std::string& type) const;
  void set_base_carrier(const std::string& type, std::uint64_t n);

  // Fixed interpretations, one entry per argument tuple (predicates: truth
  // values, functions: result indices). Symbols without one are ranged over.
  const std::map<std::string, std::vector<std::uint64_t>>& tables() const { return tables_; }
  void set_table(const std::string& symbol, std::vector<std::uint64_t> values);

  std::string to_text() const;

 private:
  std::string name_;
  FinitePoset order_;
  std::vector<std::vector<int>> meet_, join_, imp_;
  int top_ = 0, bottom_ = 0;
  std::map<std::string, std::uint64_t> carriers_;
  std::map<std::string, std::vector<std::uint64_t>> tables_;
};

// chain2, chain3, diamond (Boolean, four elements) and raised-diamond
// (0 < l < h, m < 1, not Boolean).
const std::vector<HeytingModel>& catalogue();
const HeytingModel* catalogue_model(const std::string& name);

// Line-based model files:
//   model NAME
//   elements a b c ...
//   order a < b, b < c
//   carrier Nat 3
//   pred S = a b c          (one value per argument tuple)
//   fun f = 0 1 1           (result indices)
HeytingModel parse_model(std::string_view text);

// Values of variables and symbol tables, all as carrier indices. A symbol
// table is coded in mixed radix: digit i is the value at argument tuple i.
struct Valuation {
  std::vector<std::pair<std::string, std::uint64_t>> vars;  // later entries shadow earlier ones
  std::map<std::string, std::uint64_t> symbols;
};

std::uint64_t carrier_size(const HeytingModel& m, const Type& t);

int eval(const Signature& sig, const HeytingModel& m, const Valuation& env, const Stmt& e);
std::uint64_t eval(const Signature& sig, const HeytingModel& m, const Valuation& env, const Term& t);

struct Counterexample {
  std::string model;
  std::vector<std::pair<std::string, std::string>> env;  // printed values
  std::string hypothesis, lhs, rhs;

  std::string str() const;
};

// Upper bound on the number of valuations check_soundness will visit.
inline constexpr std::uint64_t kMaxValuations = 2'000'000;

// Every valuation of the context variables and of the symbols not fixed by
// the model: meet(assumptions, lhs) <= rhs, or for inclusions the same
// pointwise on membership. Throws UnsupportedJudgment when a description or
// warrant reference occurs, the judgment is high level, or the space of
// valuations is too large.
std::optional<Counterexample> check_soundness(const Signature& sig, const HeytingModel& m, const Judgment& j);
std::optional<Counterexample> check_soundness(const Signature& sig, const HeytingModel& m, const Derivation& d);

}  // namespace depconj
