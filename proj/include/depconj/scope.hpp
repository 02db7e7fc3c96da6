#pragma once

// A lexical scope over a context: the context's declarations and
// assumptions, plus a stack of binders entered while walking a statement.
// Used for meaningfulness checking, type synthesis, canonical keys and
// warrantor resolution.

#include "depconj/syntax.hpp"

namespace depconj {

class Scope {
 public:
  struct Binding {
    std::string name;
    bool warrant = false;
    TypeP type;       // variables
    StmtP stmt;       // warrantors: the statement they prove
    std::string key;  // warrantors: canonical key of `stmt`
    bool local = false;
  };

  /// `sig` may be null when only canonical keys are needed.
  Scope(const Signature* sig, const Context& ctx, MeaningOptions opts = {});

  const Binding* lookup(const std::string& name) const;

  void push_var(const std::string& name, TypeP type);
  void push_warrant(const std::string& name, StmtP stmt);
  void pop();
  std::size_t depth() const { return locals_.size(); }

  /// Warrantors visible here, nearest first: local binders innermost-out,
  /// then context assumptions from last to first. Shadowed names skipped.
  std::vector<const Binding*> visible_warrantors() const;

  std::string key(const Stmt& e);
  std::string key(const Term& t);
  std::string warrant_token(const std::string& name) const;

  TypeP synth(const Term& t);
  void check(const Stmt& e);

  /// The schema of warrant parameter `index` of `f`, instantiated at the
  /// term arguments and earlier warrant arguments of an application.
  StmtP schema_instance(const FunctionSymbol& f, const std::vector<Arg>& args,
                        std::size_t index) const;

  const Signature& signature() const { return *sig_; }
  const MeaningOptions& options() const { return opts_; }

 private:
  void key_into(const Stmt& e, std::string& out);
  void key_into(const Term& t, std::string& out);
  void check_app(const Term& t, const FunctionSymbol& f);
  TypeP host_of(const Term& set);

  const Signature* sig_;
  MeaningOptions opts_;
  std::vector<Binding> globals_;
  std::unordered_map<std::string, std::size_t> global_index_;
  std::vector<Binding> locals_;
};

}  // namespace depconj
