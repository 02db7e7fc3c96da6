#include "depconj/elaborator.hpp"

namespace depconj {

namespace {

using K = Stmt::Kind;

StmtP with_children(const Stmt& e, StmtP lhs, StmtP rhs) {
  auto n = std::make_shared<Stmt>(e);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

std::set<std::string> all_free(const Stmt& e, const Context& ctx) {
  auto out = free_names(e);
  out.merge(ctx.names());
  return out;
}

// ---------------------------------------------------------------------------

class Aligner {
 public:
  explicit Aligner(const Signature& sig) : sig_(sig) {}

  TermP term(const TermP& t) {
    auto n = std::make_shared<Term>(*t);
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Desc: return t;
      case Term::Kind::App: {
        for (auto& a : n->args)
          if (a.term) a.term = term(a.term);
        const FunctionSymbol* f = sig_.function(t->name);
        if (f && n->args.size() != f->params.size() && n->args.size() == f->term_arity()) {
          std::vector<Arg> full;
          std::size_t k = 0;
          for (const auto& p : f->params) full.push_back(p.is_warrant() ? Arg::hole() : n->args[k++]);
          n->args = std::move(full);
        }
        return n;
      }
      case Term::Kind::Compr: n->body = stmt(t->body); return n;
      case Term::Kind::ComprSet:
        n->set = term(t->set);
        n->body = stmt(t->body);
        return n;
    }
    return t;
  }

  StmtP stmt(const StmtP& e) {
    auto n = std::make_shared<Stmt>(*e);
    if (e->lhs) n->lhs = stmt(e->lhs);
    if (e->rhs) n->rhs = stmt(e->rhs);
    if (e->body) n->body = stmt(e->body);
    if (e->set) n->set = term(e->set);
    if (e->left) n->left = term(e->left);
    if (e->right) n->right = term(e->right);
    for (auto& a : n->args) a = term(a);
    return n;
  }

 private:
  const Signature& sig_;
};

// ---------------------------------------------------------------------------

class Elaborator {
 public:
  Elaborator(const Signature& sig, std::map<std::string, WarrantorInfo>& table)
      : sig_(sig), table_(table) {}

  Context context(const Context& high) {
    Context cur;
    for (const auto& e : high) {
      switch (e.kind) {
        case ContextEntry::Kind::TypeDecl:
          cur = extend_context(sig_, cur, e, {false, true});
          break;
        case ContextEntry::Kind::Assume:
          cur = extend_context(sig_, cur, ContextEntry::assume(e.name, stmt(cur, e.stmt), e.span),
                               {false, true});
          break;
        case ContextEntry::Kind::SetDecl: {
          TermP set = term(cur, e.set);
          TypeP host = host_of(cur, *set, e.span);
          cur = extend_context(sig_, cur, ContextEntry::type_decl(e.name, host, e.span), {false, true});
          std::string w = warrantor_for(e.name, cur.names());
          StmtP m = st::mem(tm::var(e.name), set);
          cur = extend_context(sig_, cur, ContextEntry::assume(w, m, e.span), {false, true});
          table_[w] = {m, e.span};
          break;
        }
      }
    }
    return cur;
  }

  StmtP stmt(const Context& ctx, const StmtP& e) {
    switch (e->kind) {
      case K::Top:
        return e;
      case K::And:
      case K::Or:
      case K::Imp:
      {
        StmtP l = stmt(ctx, e->lhs);
        return with_children(*e, l, stmt(ctx, e->rhs));
      }
      case K::DepAnd:
      case K::DepImp: {
        StmtP l = stmt(ctx, e->lhs);
        Context inner = e->name.empty() ? ctx : ctx.with(ContextEntry::assume(e->name, l));
        return with_children(*e, l, stmt(inner, e->rhs));
      }
      case K::ForallT:
      case K::ExistsT:
      case K::ExistsUniqueT: {
        auto n = std::make_shared<Stmt>(*e);
        n->body = stmt(ctx.with(ContextEntry::type_decl(e->name, e->type)), e->body);
        return n;
      }
      case K::ForallS:
      case K::ExistsS: {
        auto [x, t, guard, body] = bounded(ctx, e->name, e->set, e->body, e->span);
        return e->kind == K::ForallS ? st::forall_t(x, t, st::dep_imp(guard.first, guard.second, body), e->span)
                                     : st::exists_t(x, t, st::dep_and(guard.first, guard.second, body), e->span);
      }
      case K::Eq: {
        TermP l = term(ctx, e->left);
        return st::eq(l, term(ctx, e->right), e->span);
      }
      case K::Mem: {
        TermP l = term(ctx, e->left);
        return st::mem(l, term(ctx, e->set), e->span);
      }
      case K::Pred: {
        std::vector<TermP> args;
        for (const auto& a : e->args) args.push_back(term(ctx, a));
        return st::pred(e->name, std::move(args), e->span);
      }
    }
    return e;
  }

  TermP term(const Context& ctx, const TermP& t) {
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Desc: return t;
      case Term::Kind::App: {
        auto n = std::make_shared<Term>(*t);
        for (auto& a : n->args)
          if (a.term) a.term = term(ctx, a.term);
        return n;
      }
      case Term::Kind::Compr: {
        auto n = std::make_shared<Term>(*t);
        n->body = stmt(ctx.with(ContextEntry::type_decl(t->name, t->type)), t->body);
        return n;
      }
      case Term::Kind::ComprSet: {
        auto [x, ty, guard, body] = bounded(ctx, t->name, t->set, t->body, t->span);
        return tm::compr(x, ty, st::dep_and(guard.first, guard.second, body), t->span);
      }
    }
    return t;
  }

 private:
  struct Bounded {
    std::string x;
    TypeP type;
    std::pair<std::string, StmtP> guard;
    StmtP body;
  };

  Bounded bounded(const Context& ctx, std::string x, const TermP& set_high, StmtP body, Span span) {
    TermP set = term(ctx, set_high);
    TypeP host = host_of(ctx, *set, span);
    std::set<std::string> set_names = free_names(*set);
    if (set_names.count(x)) {
      // The range mentions a variable of the same name; rename the binder.
      auto avoid = all_free(*body, ctx);
      avoid.merge(set_names);
      std::string x2 = fresh_name(x, avoid, false);
      body = substitute(body, tm::var(x2), x);
      x = x2;
    }
    Context cx = ctx.with(ContextEntry::type_decl(x, host));
    auto avoid = all_free(*body, cx);
    std::string w = warrantor_for(x, avoid);
    StmtP m = st::mem(tm::var(x), set);
    table_[w] = {m, span};
    StmtP lowered = stmt(cx.with(ContextEntry::assume(w, m)), body);
    return {x, host, {w, m}, lowered};
  }

  TypeP host_of(const Context& ctx, const Term& set, Span span) {
    TypeP t;
    try {
      t = synth_type(sig_, ctx, set, {false, true});
    } catch (const DiagnosticError& err) {
      fail(DiagKind::HostUnresolvable, "cannot type the range: " + err.diagnostic().message, to_string(set),
           span);
    }
    if (t->kind != Type::Kind::Set)
      fail(DiagKind::HostUnresolvable, "range has type " + to_string(*t) + ", not a set type", to_string(set),
           span);
    return t->elem;
  }

  std::string warrantor_for(const std::string& x, std::set<std::string> avoid) {
    for (const auto& [name, _] : table_) avoid.insert(name);
    return fresh_name("w_" + x, avoid);
  }

  const Signature& sig_;
  std::map<std::string, WarrantorInfo>& table_;
};

// ---------------------------------------------------------------------------

class Resolver {
 public:
  explicit Resolver(const Signature& sig) : sig_(sig) {}

  StmtP stmt(const Context& ctx, const StmtP& e) {
    switch (e->kind) {
      case K::Top: return e;
      case K::Or: {
        StmtP l = stmt(ctx, e->lhs);
        return with_children(*e, l, stmt(ctx, e->rhs));
      }
      case K::And:
      case K::Imp:
      case K::DepAnd:
      case K::DepImp: {
        StmtP l = stmt(ctx, e->lhs);
        const bool dependent = is_dependent(e->kind);
        std::string z = e->name;
        if (z.empty()) {
          auto avoid = all_free(*e->rhs, ctx);
          avoid.merge(free_names(*l));
          z = fresh_name("z", avoid);
        }
        Context inner = ctx.with(ContextEntry::assume(z, l));
        if (!dependent) pending_.insert(z);
        StmtP r = stmt(inner, e->rhs);
        pending_.erase(z);
        const bool used = used_.count(z) > 0;
        used_.erase(z);
        if (dependent || used) {
          const bool conj = e->kind == K::And || e->kind == K::DepAnd;
          return conj ? st::dep_and(z, l, r, e->span) : st::dep_imp(z, l, r, e->span);
        }
        // The right side was resolved with z in scope but never used it.
        return with_children(*e, l, r);
      }
      case K::ForallT:
      case K::ExistsT:
      case K::ExistsUniqueT: {
        auto n = std::make_shared<Stmt>(*e);
        n->body = stmt(ctx.with(ContextEntry::type_decl(e->name, e->type)), e->body);
        return n;
      }
      case K::ForallS:
      case K::ExistsS: {
        auto n = std::make_shared<Stmt>(*e);
        n->set = term(ctx, e->set);
        n->body = stmt(ctx.with(ContextEntry::set_decl(e->name, n->set)), e->body);
        return n;
      }
      case K::Eq: {
        TermP l = term(ctx, e->left);
        return st::eq(l, term(ctx, e->right), e->span);
      }
      case K::Mem: {
        TermP l = term(ctx, e->left);
        return st::mem(l, term(ctx, e->set), e->span);
      }
      case K::Pred: {
        std::vector<TermP> args;
        for (const auto& a : e->args) args.push_back(term(ctx, a));
        return st::pred(e->name, std::move(args), e->span);
      }
    }
    return e;
  }

  TermP term(const Context& ctx, const TermP& t) {
    auto n = std::make_shared<Term>(*t);
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Desc: return t;
      case Term::Kind::Compr:
        n->body = stmt(ctx.with(ContextEntry::type_decl(t->name, t->type)), t->body);
        return n;
      case Term::Kind::ComprSet:
        n->set = term(ctx, t->set);
        n->body = stmt(ctx.with(ContextEntry::set_decl(t->name, n->set)), t->body);
        return n;
      case Term::Kind::App: break;
    }
    for (auto& a : n->args)
      if (a.term) a.term = term(ctx, a.term);
    const FunctionSymbol* f = sig_.function(t->name);
    if (!f || f->params.size() != n->args.size()) return n;
    for (std::size_t i = 0; i < f->params.size(); ++i) {
      if (!f->params[i].is_warrant() || !n->args[i].is_hole()) continue;
      SubstMap m;
      for (std::size_t j = 0; j < i; ++j) {
        const Param& p = f->params[j];
        if (p.is_warrant())
          m[p.name] = Replacement::warrantor(n->args[j].warrant);
        else
          m[p.name] = Replacement::of(n->args[j].term);
      }
      StmtP want = substitute(f->params[i].schema, m);
      n->args[i] = Arg::warrant_ref(find(ctx, *want, *n));
    }
    return n;
  }

 private:
  std::string find(const Context& ctx, const Stmt& want, const Term& at) {
    const std::string key = canonical_key(want, ctx);
    for (std::size_t i = ctx.size(); i-- > 0;) {
      const ContextEntry& e = ctx[i];
      if (e.kind != ContextEntry::Kind::Assume) continue;
      // Only the nearest entry of a name is visible.
      if (ctx.find(e.name) != &e) continue;
      if (canonical_key(*e.stmt, ctx.prefix(i)) != key) continue;
      if (pending_.count(e.name)) used_.insert(e.name);
      return e.name;
    }
    fail(DiagKind::NoWarrantorInScope, "no assumption in scope proves `" + to_string(want) + "`",
         to_string(at), at.span);
  }

  const Signature& sig_;
  std::set<std::string> pending_, used_;
};

}  // namespace

StmtP align_warrant_slots(const Signature& sig, const StmtP& e) { return Aligner(sig).stmt(e); }
TermP align_warrant_slots(const Signature& sig, const TermP& t) { return Aligner(sig).term(t); }

ElabResult elaborate_context(const Signature& sig, const Context& high) {
  ElabResult r;
  Elaborator el(sig, r.warrantors);
  r.context = el.context(high);
  return r;
}

ElabResult elaborate_statement(const Signature& sig, const Context& ctx, const StmtP& e) {
  ElabResult r;
  Elaborator el(sig, r.warrantors);
  r.context = el.context(ctx);
  r.statement = el.stmt(r.context, align_warrant_slots(sig, e));
  require_meaningful(sig, r.context, *r.statement, {false, true});
  return r;
}

StmtP resolve_warrantors(const Signature& sig, const Context& ctx, const StmtP& e) {
  return Resolver(sig).stmt(ctx, align_warrant_slots(sig, e));
}

ElabResult lower(const Signature& sig, const Context& ctx, const StmtP& e) {
  ElabResult r = elaborate_statement(sig, ctx, e);
  r.statement = resolve_warrantors(sig, r.context, r.statement);
  require_meaningful(sig, r.context, *r.statement);
  return r;
}

std::string render_vernacular(const StmtP& e) { return to_string(e, {true}); }
std::string render_vernacular(const Context& ctx) { return to_string(ctx, {true}); }

std::string warrantor_table_text(const ElabResult& r) {
  std::string out;
  for (const auto& [name, info] : r.warrantors) {
    out += "# " + name + " : " + to_string(info.membership);
    if (info.origin.line) out += "  (line " + std::to_string(info.origin.line) + ")";
    out += "\n";
  }
  return out;
}

}  // namespace depconj
