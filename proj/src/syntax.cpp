#include "depconj/syntax.hpp"

#include <sstream>

#include "depconj/scope.hpp"

namespace depconj {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

TypeP Type::base(std::string name) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Base;
  t->name = std::move(name);
  return t;
}

TypeP Type::set(TypeP elem) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Set;
  t->elem = std::move(elem);
  return t;
}

bool type_eq(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Type::Kind::Base) return a.name == b.name;
  return type_eq(*a.elem, *b.elem);
}

std::string to_string(const Type& t) {
  if (t.kind == Type::Kind::Base) return t.name;
  return "Set(" + to_string(*t.elem) + ")";
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace tm {

TermP var(std::string x, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->name = std::move(x);
  t->span = span;
  return t;
}

TermP app(std::string f, std::vector<Arg> args, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->name = std::move(f);
  t->args = std::move(args);
  t->span = span;
  return t;
}

TermP compr(std::string x, TypeP type, StmtP body, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Compr;
  t->name = std::move(x);
  t->type = std::move(type);
  t->body = std::move(body);
  t->span = span;
  return t;
}

TermP compr_set(std::string x, TermP set, StmtP body, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::ComprSet;
  t->name = std::move(x);
  t->set = std::move(set);
  t->body = std::move(body);
  t->span = span;
  return t;
}

TermP desc(std::string warrantor, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Desc;
  t->name = std::move(warrantor);
  t->span = span;
  return t;
}

}  // namespace tm

namespace st {
namespace {

std::shared_ptr<Stmt> make(Stmt::Kind k, Span span) {
  auto s = std::make_shared<Stmt>();
  s->kind = k;
  s->span = span;
  return s;
}

StmtP binary(Stmt::Kind k, StmtP e, StmtP f, Span span) {
  auto s = make(k, span);
  s->lhs = std::move(e);
  s->rhs = std::move(f);
  return s;
}

StmtP dependent(Stmt::Kind k, std::string z, StmtP e, StmtP f, Span span) {
  auto s = make(k, span);
  s->name = std::move(z);
  s->lhs = std::move(e);
  s->rhs = std::move(f);
  return s;
}

StmtP typed(Stmt::Kind k, std::string x, TypeP t, StmtP e, Span span) {
  auto s = make(k, span);
  s->name = std::move(x);
  s->type = std::move(t);
  s->body = std::move(e);
  return s;
}

StmtP ranged(Stmt::Kind k, std::string x, TermP set, StmtP e, Span span) {
  auto s = make(k, span);
  s->name = std::move(x);
  s->set = std::move(set);
  s->body = std::move(e);
  return s;
}

}  // namespace

StmtP top(Span span) { return make(Stmt::Kind::Top, span); }
StmtP conj(StmtP e, StmtP f, Span span) { return binary(Stmt::Kind::And, e, f, span); }
StmtP disj(StmtP e, StmtP f, Span span) { return binary(Stmt::Kind::Or, e, f, span); }
StmtP imp(StmtP e, StmtP f, Span span) { return binary(Stmt::Kind::Imp, e, f, span); }
StmtP dep_and(std::string z, StmtP e, StmtP f, Span span) {
  return dependent(Stmt::Kind::DepAnd, std::move(z), e, f, span);
}
StmtP dep_imp(std::string z, StmtP e, StmtP f, Span span) {
  return dependent(Stmt::Kind::DepImp, std::move(z), e, f, span);
}
StmtP forall_t(std::string x, TypeP t, StmtP e, Span span) {
  return typed(Stmt::Kind::ForallT, std::move(x), t, e, span);
}
StmtP exists_t(std::string x, TypeP t, StmtP e, Span span) {
  return typed(Stmt::Kind::ExistsT, std::move(x), t, e, span);
}
StmtP exists_unique(std::string x, TypeP t, StmtP e, Span span) {
  return typed(Stmt::Kind::ExistsUniqueT, std::move(x), t, e, span);
}
StmtP forall_s(std::string x, TermP set, StmtP e, Span span) {
  return ranged(Stmt::Kind::ForallS, std::move(x), set, e, span);
}
StmtP exists_s(std::string x, TermP set, StmtP e, Span span) {
  return ranged(Stmt::Kind::ExistsS, std::move(x), set, e, span);
}
StmtP eq(TermP t, TermP u, Span span) {
  auto s = make(Stmt::Kind::Eq, span);
  s->left = std::move(t);
  s->right = std::move(u);
  return s;
}
StmtP mem(TermP t, TermP set, Span span) {
  auto s = make(Stmt::Kind::Mem, span);
  s->left = std::move(t);
  s->set = std::move(set);
  return s;
}
StmtP pred(std::string p, std::vector<TermP> args, Span span) {
  auto s = make(Stmt::Kind::Pred, span);
  s->name = std::move(p);
  s->args = std::move(args);
  return s;
}

}  // namespace st

bool is_binary(Stmt::Kind k) {
  return k == Stmt::Kind::And || k == Stmt::Kind::Or || k == Stmt::Kind::Imp;
}
bool is_dependent(Stmt::Kind k) { return k == Stmt::Kind::DepAnd || k == Stmt::Kind::DepImp; }
bool is_type_quantifier(Stmt::Kind k) {
  return k == Stmt::Kind::ForallT || k == Stmt::Kind::ExistsT || k == Stmt::Kind::ExistsUniqueT;
}
bool is_set_quantifier(Stmt::Kind k) {
  return k == Stmt::Kind::ForallS || k == Stmt::Kind::ExistsS;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

const char* to_string(DiagKind k) {
  switch (k) {
    case DiagKind::Syntax: return "SyntaxError";
    case DiagKind::UnboundVar: return "UnboundVar";
    case DiagKind::UnboundWarrantor: return "UnboundWarrantor";
    case DiagKind::SchemaMismatch: return "SchemaMismatch";
    case DiagKind::TypeMismatch: return "TypeMismatch";
    case DiagKind::ArityMismatch: return "ArityMismatch";
    case DiagKind::UnknownSymbol: return "UnknownSymbol";
    case DiagKind::DuplicateName: return "DuplicateName";
    case DiagKind::IllFormedEntry: return "IllFormedEntry";
    case DiagKind::HighLevel: return "HighLevel";
    case DiagKind::ContainsDescription: return "ContainsDescription";
    case DiagKind::NoWarrantorInScope: return "NoWarrantorInScope";
    case DiagKind::HostUnresolvable: return "HostUnresolvable";
  }
  return "?";
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  if (span.line > 0) os << span.line << ":" << span.column << ": ";
  os << to_string(kind) << ": " << message;
  if (!subject.empty()) os << " in `" << subject << "`";
  return os.str();
}

DiagnosticError::DiagnosticError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}

void fail(DiagKind kind, std::string message, std::string subject, Span span) {
  throw DiagnosticError(Diagnostic{kind, std::move(message), std::move(subject), span});
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

std::size_t FunctionSymbol::term_arity() const {
  std::size_t n = 0;
  for (const auto& p : params)
    if (!p.is_warrant()) ++n;
  return n;
}

bool Signature::name_taken(const std::string& name) const {
  return has_base_type(name) || pred_index_.count(name) || fun_index_.count(name);
}

void Signature::add_base_type(const std::string& name, Span span) {
  if (name_taken(name)) fail(DiagKind::DuplicateName, "symbol declared twice", name, span);
  base_types_.push_back(name);
}

void Signature::require_type(const Type& t, Span span) const {
  if (t.kind == Type::Kind::Set) return require_type(*t.elem, span);
  if (!has_base_type(t.name)) fail(DiagKind::UnknownSymbol, "undeclared base type", t.name, span);
}

void Signature::add_predicate(PredicateSymbol p) {
  if (name_taken(p.name)) fail(DiagKind::DuplicateName, "symbol declared twice", p.name, p.span);
  for (const auto& t : p.params) require_type(*t, p.span);
  pred_index_[p.name] = predicates_.size();
  predicates_.push_back(std::move(p));
}

void Signature::add_function(FunctionSymbol f) {
  if (name_taken(f.name)) fail(DiagKind::DuplicateName, "symbol declared twice", f.name, f.span);
  require_type(*f.result, f.span);
  // Warrant schemas are statements over the preceding parameters.
  Context params;
  for (const auto& p : f.params) {
    if (p.is_warrant()) {
      params = extend_context(*this, params, ContextEntry::assume(p.name, p.schema, f.span));
    } else {
      require_type(*p.type, f.span);
      params = extend_context(*this, params, ContextEntry::type_decl(p.name, p.type, f.span));
    }
  }
  fun_index_[f.name] = functions_.size();
  functions_.push_back(std::move(f));
}

bool Signature::has_base_type(const std::string& name) const {
  for (const auto& b : base_types_)
    if (b == name) return true;
  return false;
}

const FunctionSymbol* Signature::function(const std::string& name) const {
  auto it = fun_index_.find(name);
  return it == fun_index_.end() ? nullptr : &functions_[it->second];
}

const PredicateSymbol* Signature::predicate(const std::string& name) const {
  auto it = pred_index_.find(name);
  return it == pred_index_.end() ? nullptr : &predicates_[it->second];
}

std::string Signature::fingerprint() const {
  std::ostringstream os;
  for (const auto& b : base_types_) os << "type " << b << ";";
  for (const auto& p : predicates_) {
    os << "pred " << p.name << "(";
    for (const auto& t : p.params) os << to_string(*t) << ",";
    os << ");";
  }
  for (const auto& f : functions_) {
    os << "fun " << f.name << "(";
    for (const auto& p : f.params) {
      os << p.name << ":";
      if (p.is_warrant())
        os << "warrant(" << to_string(*p.schema) << ")";
      else
        os << to_string(*p.type);
      os << ",";
    }
    os << "):" << to_string(*f.result) << ";";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

ContextEntry ContextEntry::type_decl(std::string x, TypeP t, Span span) {
  ContextEntry e;
  e.kind = Kind::TypeDecl;
  e.name = std::move(x);
  e.type = std::move(t);
  e.span = span;
  return e;
}

ContextEntry ContextEntry::set_decl(std::string x, TermP set, Span span) {
  ContextEntry e;
  e.kind = Kind::SetDecl;
  e.name = std::move(x);
  e.set = std::move(set);
  e.span = span;
  return e;
}

ContextEntry ContextEntry::assume(std::string z, StmtP s, Span span) {
  ContextEntry e;
  e.kind = Kind::Assume;
  e.name = std::move(z);
  e.stmt = std::move(s);
  e.span = span;
  return e;
}

const ContextEntry* Context::find(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

std::set<std::string> Context::names() const {
  std::set<std::string> out;
  for (const auto& e : entries_) out.insert(e.name);
  return out;
}

Context Context::with(ContextEntry e) const {
  Context c = *this;
  c.entries_.push_back(std::move(e));
  return c;
}

Context Context::prefix(std::size_t n) const {
  return Context(std::vector<ContextEntry>(entries_.begin(), entries_.begin() + std::min(n, size())));
}

Context Context::concat(const Context& more) const {
  Context c = *this;
  for (const auto& e : more) c.entries_.push_back(e);
  return c;
}

bool Context::is_low_level() const {
  for (const auto& e : entries_) {
    if (e.kind == ContextEntry::Kind::SetDecl) return false;
    if (e.kind == ContextEntry::Kind::Assume && !depconj::is_low_level(*e.stmt)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free names
// ---------------------------------------------------------------------------

namespace {

void collect(const Term& t, std::set<std::string>& out);

void collect(const Stmt& e, std::set<std::string>& out) {
  using K = Stmt::Kind;
  auto under = [&](const std::string& binder, const Stmt& body) {
    std::set<std::string> inner;
    collect(body, inner);
    inner.erase(binder);
    out.insert(inner.begin(), inner.end());
  };
  switch (e.kind) {
    case K::Top: return;
    case K::And:
    case K::Or:
    case K::Imp:
      collect(*e.lhs, out);
      collect(*e.rhs, out);
      return;
    case K::DepAnd:
    case K::DepImp:
      collect(*e.lhs, out);
      under(e.name, *e.rhs);
      return;
    case K::ForallT:
    case K::ExistsT:
    case K::ExistsUniqueT:
      under(e.name, *e.body);
      return;
    case K::ForallS:
    case K::ExistsS:
      collect(*e.set, out);
      under(e.name, *e.body);
      return;
    case K::Eq:
      collect(*e.left, out);
      collect(*e.right, out);
      return;
    case K::Mem:
      collect(*e.left, out);
      collect(*e.set, out);
      return;
    case K::Pred:
      for (const auto& a : e.args) collect(*a, out);
      return;
  }
}

void collect(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var: out.insert(t.name); return;
    case Term::Kind::App:
      for (const auto& a : t.args) {
        if (a.term)
          collect(*a.term, out);
        else if (!a.warrant.empty())
          out.insert(a.warrant);
      }
      return;
    case Term::Kind::Compr: {
      std::set<std::string> inner;
      collect(*t.body, inner);
      inner.erase(t.name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Term::Kind::ComprSet: {
      collect(*t.set, out);
      std::set<std::string> inner;
      collect(*t.body, inner);
      inner.erase(t.name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Term::Kind::Desc: out.insert(t.name); return;
  }
}

}  // namespace

std::set<std::string> free_names(const Stmt& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

std::set<std::string> free_names(const Term& t) {
  std::set<std::string> out;
  collect(t, out);
  return out;
}

bool occurs_free(const std::string& name, const Stmt& e) { return free_names(e).count(name) > 0; }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid,
                       bool allow_base) {
  std::string candidate = base;
  if (allow_base && !avoid.count(candidate)) return candidate;
  do {
    candidate += '\'';
  } while (avoid.count(candidate));
  return candidate;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

class Substituter {
 public:
  explicit Substituter(const SubstMap& m) : map_(m) {}

  StmtP stmt(const StmtP& e) {
    if (map_.empty()) return e;
    using K = Stmt::Kind;
    auto copy = [&] { return std::make_shared<Stmt>(*e); };
    switch (e->kind) {
      case K::Top: return e;
      case K::And:
      case K::Or:
      case K::Imp: {
        auto s = copy();
        s->lhs = stmt(e->lhs);
        s->rhs = stmt(e->rhs);
        return s;
      }
      case K::DepAnd:
      case K::DepImp: {
        auto s = copy();
        s->lhs = stmt(e->lhs);
        auto [name, body] = under(e->name, e->rhs, /*warrant=*/true);
        s->name = name;
        s->rhs = body;
        return s;
      }
      case K::ForallT:
      case K::ExistsT:
      case K::ExistsUniqueT: {
        auto s = copy();
        auto [name, body] = under(e->name, e->body, false);
        s->name = name;
        s->body = body;
        return s;
      }
      case K::ForallS:
      case K::ExistsS: {
        auto s = copy();
        s->set = term(e->set);
        auto [name, body] = under(e->name, e->body, false);
        s->name = name;
        s->body = body;
        return s;
      }
      case K::Eq: {
        auto s = copy();
        s->left = term(e->left);
        s->right = term(e->right);
        return s;
      }
      case K::Mem: {
        auto s = copy();
        s->left = term(e->left);
        s->set = term(e->set);
        return s;
      }
      case K::Pred: {
        auto s = copy();
        for (auto& a : s->args) a = term(a);
        return s;
      }
    }
    return e;
  }

  TermP term(const TermP& t) {
    if (map_.empty()) return t;
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = map_.find(t->name);
        if (it != map_.end() && it->second.term) return it->second.term;
        return t;
      }
      case Term::Kind::App: {
        auto s = std::make_shared<Term>(*t);
        for (auto& a : s->args) {
          if (a.term) {
            a.term = term(a.term);
          } else if (!a.warrant.empty()) {
            auto it = map_.find(a.warrant);
            if (it != map_.end() && !it->second.term) a.warrant = it->second.warrant;
          }
        }
        return s;
      }
      case Term::Kind::Compr: {
        auto s = std::make_shared<Term>(*t);
        auto [name, body] = under(t->name, t->body, false);
        s->name = name;
        s->body = body;
        return s;
      }
      case Term::Kind::ComprSet: {
        auto s = std::make_shared<Term>(*t);
        s->set = term(t->set);
        auto [name, body] = under(t->name, t->body, false);
        s->name = name;
        s->body = body;
        return s;
      }
      case Term::Kind::Desc: {
        auto it = map_.find(t->name);
        if (it != map_.end() && !it->second.term) return tm::desc(it->second.warrant, t->span);
        return t;
      }
    }
    return t;
  }

 private:
  // Substitutes under a binder, renaming it when it would capture a name
  // occurring in the replacements.
  std::pair<std::string, StmtP> under(const std::string& binder, const StmtP& body, bool warrant) {
    SubstMap inner = map_;
    inner.erase(binder);
    auto fv = free_names(*body);
    bool relevant = false;
    for (const auto& [name, r] : inner)
      if (fv.count(name)) relevant = true;
    if (!relevant) return {binder, body};

    std::set<std::string> range;
    for (const auto& [name, r] : inner) {
      if (!fv.count(name)) continue;
      if (r.term) {
        auto rf = free_names(*r.term);
        range.insert(rf.begin(), rf.end());
      } else {
        range.insert(r.warrant);
      }
    }
    std::string name = binder;
    if (range.count(binder)) {
      std::set<std::string> avoid = range;
      avoid.insert(fv.begin(), fv.end());
      for (const auto& [k, r] : inner) avoid.insert(k);
      name = fresh_name(binder, avoid, /*allow_base=*/false);
      inner[binder] = warrant ? Replacement::warrantor(name) : Replacement::of(tm::var(name));
    }
    Substituter sub(inner);
    return {name, sub.stmt(body)};
  }

  const SubstMap& map_;
};

}  // namespace

StmtP substitute(const StmtP& e, const SubstMap& m) {
  Substituter s(m);
  return s.stmt(e);
}

TermP substitute(const TermP& t, const SubstMap& m) {
  Substituter s(m);
  return s.term(t);
}

StmtP substitute(const StmtP& e, const TermP& a, const std::string& x) {
  return substitute(e, SubstMap{{x, Replacement::of(a)}});
}

StmtP rename_warrantor(const StmtP& e, const std::string& from, const std::string& to) {
  if (from == to) return e;
  return substitute(e, SubstMap{{from, Replacement::warrantor(to)}});
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

std::string canonical_key(const Stmt& e, const Context& ctx) {
  Scope scope(nullptr, ctx);
  return scope.key(e);
}

std::string canonical_key(const Term& t, const Context& ctx) {
  Scope scope(nullptr, ctx);
  return scope.key(t);
}

bool struct_eq(const Stmt& a, const Stmt& b, const Context& ctx) {
  Scope scope(nullptr, ctx);
  return scope.key(a) == scope.key(b);
}

bool struct_eq(const Term& a, const Term& b, const Context& ctx) {
  Scope scope(nullptr, ctx);
  return scope.key(a) == scope.key(b);
}

bool struct_eq(const StmtP& a, const StmtP& b, const Context& ctx) {
  if (!a || !b) return a == b;
  return struct_eq(*a, *b, ctx);
}

bool entry_eq(const ContextEntry& a, const ContextEntry& b, const Context& prefix) {
  if (a.kind != b.kind || a.name != b.name) return false;
  switch (a.kind) {
    case ContextEntry::Kind::TypeDecl: return type_eq(*a.type, *b.type);
    case ContextEntry::Kind::SetDecl: return struct_eq(*a.set, *b.set, prefix);
    case ContextEntry::Kind::Assume: return struct_eq(*a.stmt, *b.stmt, prefix);
  }
  return false;
}

bool context_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!entry_eq(a[i], b[i], a.prefix(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Level and erasure
// ---------------------------------------------------------------------------

namespace {

template <typename TermPred, typename StmtPred>
bool all_of(const Stmt& e, TermPred tp, StmtPred sp);

template <typename TermPred, typename StmtPred>
bool all_of(const Term& t, TermPred tp, StmtPred sp) {
  if (!tp(t)) return false;
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Desc: return true;
    case Term::Kind::App:
      for (const auto& a : t.args)
        if (a.term && !all_of(*a.term, tp, sp)) return false;
      return true;
    case Term::Kind::Compr: return all_of(*t.body, tp, sp);
    case Term::Kind::ComprSet: return all_of(*t.set, tp, sp) && all_of(*t.body, tp, sp);
  }
  return true;
}

template <typename TermPred, typename StmtPred>
bool all_of(const Stmt& e, TermPred tp, StmtPred sp) {
  if (!sp(e)) return false;
  using K = Stmt::Kind;
  switch (e.kind) {
    case K::Top: return true;
    case K::And:
    case K::Or:
    case K::Imp:
    case K::DepAnd:
    case K::DepImp: return all_of(*e.lhs, tp, sp) && all_of(*e.rhs, tp, sp);
    case K::ForallT:
    case K::ExistsT:
    case K::ExistsUniqueT: return all_of(*e.body, tp, sp);
    case K::ForallS:
    case K::ExistsS: return all_of(*e.set, tp, sp) && all_of(*e.body, tp, sp);
    case K::Eq: return all_of(*e.left, tp, sp) && all_of(*e.right, tp, sp);
    case K::Mem: return all_of(*e.left, tp, sp) && all_of(*e.set, tp, sp);
    case K::Pred:
      for (const auto& a : e.args)
        if (!all_of(*a, tp, sp)) return false;
      return true;
  }
  return true;
}

auto low_term = [](const Term& t) { return t.kind != Term::Kind::ComprSet; };
auto low_stmt = [](const Stmt& e) { return !is_set_quantifier(e.kind); };
auto delta_term = [](const Term& t) {
  if (t.kind == Term::Kind::Desc) return false;
  if (t.kind == Term::Kind::App)
    for (const auto& a : t.args)
      if (a.is_warrant()) return false;
  return true;
};
auto any_stmt = [](const Stmt&) { return true; };

}  // namespace

bool is_low_level(const Stmt& e) { return all_of(e, low_term, low_stmt); }
bool is_low_level(const Term& t) { return all_of(t, low_term, low_stmt); }
bool is_delta_free(const Stmt& e) { return all_of(e, delta_term, any_stmt); }
bool is_delta_free(const Term& t) { return all_of(t, delta_term, any_stmt); }

namespace {

TermP erase_term(const TermP& t);

StmtP erase_stmt(const StmtP& e) {
  using K = Stmt::Kind;
  auto s = std::make_shared<Stmt>(*e);
  switch (e->kind) {
    case K::Top: return e;
    case K::DepAnd:
      s->kind = K::And;
      s->name.clear();
      [[fallthrough]];
    case K::And:
    case K::Or:
      s->lhs = erase_stmt(e->lhs);
      s->rhs = erase_stmt(e->rhs);
      return s;
    case K::DepImp:
      s->kind = K::Imp;
      s->name.clear();
      [[fallthrough]];
    case K::Imp:
      s->lhs = erase_stmt(e->lhs);
      s->rhs = erase_stmt(e->rhs);
      return s;
    case K::ForallT:
    case K::ExistsT:
    case K::ExistsUniqueT: s->body = erase_stmt(e->body); return s;
    case K::ForallS:
    case K::ExistsS:
      s->set = erase_term(e->set);
      s->body = erase_stmt(e->body);
      return s;
    case K::Eq:
      s->left = erase_term(e->left);
      s->right = erase_term(e->right);
      return s;
    case K::Mem:
      s->left = erase_term(e->left);
      s->set = erase_term(e->set);
      return s;
    case K::Pred:
      for (auto& a : s->args) a = erase_term(a);
      return s;
  }
  return s;
}

TermP erase_term(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Desc:
      fail(DiagKind::ContainsDescription, "description term cannot be erased", to_string(*t),
           t->span);
    case Term::Kind::App: {
      auto s = std::make_shared<Term>(*t);
      for (auto& a : s->args) {
        if (a.is_warrant())
          fail(DiagKind::ContainsDescription, "warrant argument depends on a description",
               to_string(*t), t->span);
        a.term = erase_term(a.term);
      }
      return s;
    }
    case Term::Kind::Compr:
    case Term::Kind::ComprSet: {
      auto s = std::make_shared<Term>(*t);
      if (t->set) s->set = erase_term(t->set);
      s->body = erase_stmt(t->body);
      return s;
    }
  }
  return t;
}

}  // namespace

StmtP erase(const StmtP& e) { return erase_stmt(e); }

// ---------------------------------------------------------------------------

TermP rename_everywhere(const TermP& t, const std::string& from, const std::string& to) {
  if (!t) return t;
  auto n = [&](const std::string& s) { return s == from ? to : s; };
  auto copy = std::make_shared<Term>(*t);
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Desc: copy->name = n(t->name); break;
    case Term::Kind::App:
      for (auto& a : copy->args) {
        if (a.term)
          a.term = rename_everywhere(a.term, from, to);
        else if (!a.warrant.empty())
          a.warrant = n(a.warrant);
      }
      break;
    case Term::Kind::Compr:
    case Term::Kind::ComprSet:
      copy->name = n(t->name);
      copy->set = rename_everywhere(t->set, from, to);
      copy->body = rename_everywhere(t->body, from, to);
      break;
  }
  return copy;
}

StmtP rename_everywhere(const StmtP& e, const std::string& from, const std::string& to) {
  if (!e) return e;
  auto copy = std::make_shared<Stmt>(*e);
  if (e->kind != Stmt::Kind::Pred && e->name == from) copy->name = to;
  copy->set = rename_everywhere(e->set, from, to);
  copy->lhs = rename_everywhere(e->lhs, from, to);
  copy->rhs = rename_everywhere(e->rhs, from, to);
  copy->body = rename_everywhere(e->body, from, to);
  copy->left = rename_everywhere(e->left, from, to);
  copy->right = rename_everywhere(e->right, from, to);
  for (auto& a : copy->args) a = rename_everywhere(a, from, to);
  return copy;
}

}  // namespace depconj
