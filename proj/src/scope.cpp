#include "depconj/scope.hpp"

namespace depconj {

Scope::Scope(const Signature* sig, const Context& ctx, MeaningOptions opts)
    : sig_(sig), opts_(opts) {
  for (const auto& e : ctx) {
    Binding b;
    b.name = e.name;
    switch (e.kind) {
      case ContextEntry::Kind::TypeDecl: b.type = e.type; break;
      case ContextEntry::Kind::SetDecl:
        if (sig_) b.type = host_of(*e.set);
        break;
      case ContextEntry::Kind::Assume:
        b.warrant = true;
        b.stmt = e.stmt;
        b.key = key(*e.stmt);
        break;
    }
    global_index_[b.name] = globals_.size();
    globals_.push_back(std::move(b));
  }
}

const Scope::Binding* Scope::lookup(const std::string& name) const {
  for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
    if (it->name == name) return &*it;
  auto it = global_index_.find(name);
  return it == global_index_.end() ? nullptr : &globals_[it->second];
}

void Scope::push_var(const std::string& name, TypeP type) {
  Binding b;
  b.name = name;
  b.type = std::move(type);
  b.local = true;
  locals_.push_back(std::move(b));
}

void Scope::push_warrant(const std::string& name, StmtP stmt) {
  Binding b;
  b.name = name;
  b.warrant = true;
  b.key = key(*stmt);
  b.stmt = std::move(stmt);
  b.local = true;
  locals_.push_back(std::move(b));
}

void Scope::pop() { locals_.pop_back(); }

std::vector<const Scope::Binding*> Scope::visible_warrantors() const {
  std::vector<const Binding*> out;
  std::set<std::string> seen;
  for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
    if (!seen.insert(it->name).second) continue;
    if (it->warrant) out.push_back(&*it);
  }
  for (auto it = globals_.rbegin(); it != globals_.rend(); ++it) {
    if (!seen.insert(it->name).second) continue;
    if (it->warrant) out.push_back(&*it);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical keys
// ---------------------------------------------------------------------------

std::string Scope::key(const Stmt& e) {
  std::string out;
  key_into(e, out);
  return out;
}

std::string Scope::key(const Term& t) {
  std::string out;
  key_into(t, out);
  return out;
}

std::string Scope::warrant_token(const std::string& name) const {
  if (name.empty()) return "_";
  const Binding* b = lookup(name);
  if (!b) return "?" + name;
  if (!b->warrant) return "!" + name;
  return "W{" + b->key + "}";
}

void Scope::key_into(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::Var: {
      for (std::size_t i = locals_.size(); i-- > 0;) {
        if (locals_[i].name != t.name) continue;
        out += locals_[i].warrant ? "!" + t.name : "#" + std::to_string(i);
        return;
      }
      const Binding* b = lookup(t.name);
      out += (b && b->warrant) ? "!" : "$";
      out += t.name;
      return;
    }
    case Term::Kind::App:
      out += "F" + t.name + "(";
      for (const auto& a : t.args) {
        if (a.term)
          key_into(*a.term, out);
        else
          out += warrant_token(a.warrant);
        out += ",";
      }
      out += ")";
      return;
    case Term::Kind::Compr:
      out += "C:" + to_string(*t.type) + "(";
      push_var(t.name, t.type);
      key_into(*t.body, out);
      pop();
      out += ")";
      return;
    case Term::Kind::ComprSet:
      out += "CS(";
      key_into(*t.set, out);
      out += ",";
      push_var(t.name, nullptr);
      key_into(*t.body, out);
      pop();
      out += ")";
      return;
    case Term::Kind::Desc: out += "d" + warrant_token(t.name); return;
  }
}

void Scope::key_into(const Stmt& e, std::string& out) {
  using K = Stmt::Kind;
  auto binary = [&](const char* tag) {
    out += tag;
    out += "(";
    key_into(*e.lhs, out);
    out += ",";
    key_into(*e.rhs, out);
    out += ")";
  };
  auto dependent = [&](const char* tag) {
    out += tag;
    out += "(";
    push_warrant(e.name, e.lhs);
    out += locals_.back().key;
    out += ",";
    key_into(*e.rhs, out);
    pop();
    out += ")";
  };
  auto typed = [&](const char* tag) {
    out += tag;
    out += to_string(*e.type) + "(";
    push_var(e.name, e.type);
    key_into(*e.body, out);
    pop();
    out += ")";
  };
  auto ranged = [&](const char* tag) {
    out += tag;
    out += "(";
    key_into(*e.set, out);
    out += ",";
    push_var(e.name, nullptr);
    key_into(*e.body, out);
    pop();
    out += ")";
  };
  switch (e.kind) {
    case K::Top: out += "T"; return;
    case K::And: return binary("&");
    case K::Or: return binary("|");
    case K::Imp: return binary(">");
    case K::DepAnd: return dependent("D&");
    case K::DepImp: return dependent("D>");
    case K::ForallT: return typed("A:");
    case K::ExistsT: return typed("E:");
    case K::ExistsUniqueT: return typed("U:");
    case K::ForallS: return ranged("AS");
    case K::ExistsS: return ranged("ES");
    case K::Eq:
      out += "=(";
      key_into(*e.left, out);
      out += ",";
      key_into(*e.right, out);
      out += ")";
      return;
    case K::Mem:
      out += "in(";
      key_into(*e.left, out);
      out += ",";
      key_into(*e.set, out);
      out += ")";
      return;
    case K::Pred:
      out += "P" + e.name + "(";
      for (const auto& a : e.args) {
        key_into(*a, out);
        out += ",";
      }
      out += ")";
      return;
  }
}

// ---------------------------------------------------------------------------
// Meaningfulness and type synthesis
// ---------------------------------------------------------------------------

TypeP Scope::host_of(const Term& set) {
  TypeP t = synth(set);
  if (t->kind != Type::Kind::Set)
    fail(DiagKind::HostUnresolvable, "expected a set, found a term of type " + to_string(*t),
         to_string(set), set.span);
  return t->elem;
}

TypeP Scope::synth(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: {
      const Binding* b = lookup(t.name);
      if (!b) fail(DiagKind::UnboundVar, "variable `" + t.name + "` is not declared", t.name, t.span);
      if (b->warrant)
        fail(DiagKind::TypeMismatch, "warrantor `" + t.name + "` used as a term", t.name, t.span);
      return b->type;
    }
    case Term::Kind::App: {
      const FunctionSymbol* f = sig_->function(t.name);
      if (!f) fail(DiagKind::UnknownSymbol, "unknown function symbol", to_string(t), t.span);
      check_app(t, *f);
      return f->result;
    }
    case Term::Kind::Compr: {
      sig_->require_type(*t.type, t.span);
      push_var(t.name, t.type);
      check(*t.body);
      pop();
      return Type::set(t.type);
    }
    case Term::Kind::ComprSet: {
      if (!opts_.allow_high_level)
        fail(DiagKind::HighLevel, "set comprehension over a set is high-level", to_string(t), t.span);
      TypeP host = host_of(*t.set);
      push_var(t.name, host);
      check(*t.body);
      pop();
      return Type::set(host);
    }
    case Term::Kind::Desc: {
      const Binding* b = lookup(t.name);
      if (!b || !b->warrant)
        fail(DiagKind::UnboundWarrantor, "warrantor `" + t.name + "` is not in scope", to_string(t),
             t.span);
      if (b->stmt->kind != Stmt::Kind::ExistsUniqueT)
        fail(DiagKind::SchemaMismatch, "description needs a warrantor of a unique existence",
             to_string(t), t.span);
      return b->stmt->type;
    }
  }
  return nullptr;
}

StmtP Scope::schema_instance(const FunctionSymbol& f, const std::vector<Arg>& args,
                             std::size_t index) const {
  SubstMap m;
  for (std::size_t j = 0; j < index && j < args.size(); ++j) {
    const Param& p = f.params[j];
    if (p.is_warrant()) {
      if (!args[j].warrant.empty()) m[p.name] = Replacement::warrantor(args[j].warrant);
    } else if (args[j].term) {
      m[p.name] = Replacement::of(args[j].term);
    }
  }
  return substitute(f.params[index].schema, m);
}

void Scope::check_app(const Term& t, const FunctionSymbol& f) {
  if (t.args.size() != f.params.size())
    fail(DiagKind::ArityMismatch,
         "`" + f.name + "` expects " + std::to_string(f.params.size()) + " arguments, got " +
             std::to_string(t.args.size()),
         to_string(t), t.span);
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    const Param& p = f.params[i];
    const Arg& a = t.args[i];
    if (!p.is_warrant()) {
      if (!a.term)
        fail(DiagKind::TypeMismatch, "parameter `" + p.name + "` expects a term", to_string(t), t.span);
      TypeP at = synth(*a.term);
      if (!type_eq(*at, *p.type))
        fail(DiagKind::TypeMismatch,
             "parameter `" + p.name + "` expects " + to_string(*p.type) + ", got " + to_string(*at),
             to_string(t), t.span);
      continue;
    }
    if (a.term)
      fail(DiagKind::TypeMismatch, "parameter `" + p.name + "` expects a warrantor", to_string(t),
           t.span);
    if (a.is_hole()) {
      if (opts_.allow_holes) continue;
      fail(DiagKind::UnboundWarrantor, "no warrantor supplied for `" + p.name + "`", to_string(t),
           t.span);
    }
    const Binding* b = lookup(a.warrant);
    if (!b || !b->warrant)
      fail(DiagKind::UnboundWarrantor, "warrantor `" + a.warrant + "` is not in scope", to_string(t),
           t.span);
    const std::string bound_key = b->key;
    const StmtP bound_stmt = b->stmt;
    StmtP inst = schema_instance(f, t.args, i);
    if (key(*inst) != bound_key)
      fail(DiagKind::SchemaMismatch,
           "warrantor `" + a.warrant + "` proves `" + to_string(*bound_stmt) + "`, expected `" +
               to_string(*inst) + "`",
           to_string(t), t.span);
  }
}

void Scope::check(const Stmt& e) {
  using K = Stmt::Kind;
  switch (e.kind) {
    case K::Top: return;
    case K::And:
    case K::Or:
    case K::Imp:
      check(*e.lhs);
      check(*e.rhs);
      return;
    case K::DepAnd:
    case K::DepImp:
      check(*e.lhs);
      push_warrant(e.name, e.lhs);
      check(*e.rhs);
      pop();
      return;
    case K::ForallT:
    case K::ExistsT:
    case K::ExistsUniqueT:
      sig_->require_type(*e.type, e.span);
      push_var(e.name, e.type);
      check(*e.body);
      pop();
      return;
    case K::ForallS:
    case K::ExistsS: {
      if (!opts_.allow_high_level)
        fail(DiagKind::HighLevel, "quantifier over a set is high-level", to_string(e), e.span);
      TypeP host = host_of(*e.set);
      push_var(e.name, host);
      check(*e.body);
      pop();
      return;
    }
    case K::Eq: {
      TypeP a = synth(*e.left);
      TypeP b = synth(*e.right);
      if (!type_eq(*a, *b))
        fail(DiagKind::TypeMismatch,
             "equality between " + to_string(*a) + " and " + to_string(*b), to_string(e), e.span);
      return;
    }
    case K::Mem: {
      TypeP host = host_of(*e.set);
      TypeP a = synth(*e.left);
      if (!type_eq(*a, *host))
        fail(DiagKind::TypeMismatch,
             "membership of " + to_string(*a) + " in a set hosted by " + to_string(*host),
             to_string(e), e.span);
      return;
    }
    case K::Pred: {
      const PredicateSymbol* p = sig_->predicate(e.name);
      if (!p) fail(DiagKind::UnknownSymbol, "unknown predicate symbol", to_string(e), e.span);
      if (p->params.size() != e.args.size())
        fail(DiagKind::ArityMismatch,
             "`" + e.name + "` expects " + std::to_string(p->params.size()) + " arguments",
             to_string(e), e.span);
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        TypeP a = synth(*e.args[i]);
        if (!type_eq(*a, *p->params[i]))
          fail(DiagKind::TypeMismatch,
               "argument " + std::to_string(i + 1) + " of `" + e.name + "` expects " +
                   to_string(*p->params[i]),
               to_string(e), e.span);
      }
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

std::optional<Diagnostic> meaningful(const Signature& sig, const Context& ctx, const Stmt& e,
                                     MeaningOptions opts) {
  try {
    Scope scope(&sig, ctx, opts);
    scope.check(e);
  } catch (const DiagnosticError& err) {
    return err.diagnostic();
  }
  return std::nullopt;
}

void require_meaningful(const Signature& sig, const Context& ctx, const Stmt& e,
                        MeaningOptions opts) {
  Scope scope(&sig, ctx, opts);
  scope.check(e);
}

TypeP synth_type(const Signature& sig, const Context& ctx, const Term& t, MeaningOptions opts) {
  Scope scope(&sig, ctx, opts);
  return scope.synth(t);
}

Context extend_context(const Signature& sig, const Context& ctx, ContextEntry e,
                       MeaningOptions opts) {
  if (ctx.declares(e.name))
    fail(DiagKind::DuplicateName, "`" + e.name + "` is already declared in the context", e.name,
         e.span);
  try {
    Scope scope(&sig, ctx, opts);
    switch (e.kind) {
      case ContextEntry::Kind::TypeDecl: sig.require_type(*e.type, e.span); break;
      case ContextEntry::Kind::SetDecl: {
        if (!opts.allow_high_level)
          fail(DiagKind::HighLevel, "set declarations are high-level", e.name, e.span);
        TypeP t = scope.synth(*e.set);
        if (t->kind != Type::Kind::Set)
          fail(DiagKind::HostUnresolvable, "declared range is not a set", to_string(*e.set), e.span);
        break;
      }
      case ContextEntry::Kind::Assume: scope.check(*e.stmt); break;
    }
  } catch (const DiagnosticError& err) {
    const Diagnostic& d = err.diagnostic();
    if (d.kind == DiagKind::HighLevel) throw;
    fail(DiagKind::IllFormedEntry, "entry `" + e.name + "` is not meaningful: " + d.message,
         d.subject, d.span.line ? d.span : e.span);
  }
  return ctx.with(std::move(e));
}

void validate_context(const Signature& sig, const Context& ctx, MeaningOptions opts) {
  Context acc;
  for (const auto& e : ctx) acc = extend_context(sig, acc, e, opts);
}

}  // namespace depconj
