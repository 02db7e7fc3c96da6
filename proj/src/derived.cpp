#include "depconj/derived.hpp"

#include "depconj/parser.hpp"

namespace depconj {

using namespace rules;

namespace {

struct DerivedInfo {
  DerivedRule rule;
  const char* name;
  const char* usage;
};

const std::vector<DerivedInfo>& derived_table() {
  static const std::vector<DerivedInfo> table = {
      {DerivedRule::UnitOf, "UnitOf",
       "adj=and E | adj=or E F component=l|r | adj=imp F E | adj=forall|exists|compr decl E | "
       "adj=depand|depimp assume F"},
      {DerivedRule::CounitOf, "CounitOf",
       "adj=and E F component=l|r | adj=or G | adj=imp F G | adj=forall|exists decl G | adj=compr decl A | "
       "adj=depand|depimp assume G"},
      {DerivedRule::AssumptionTruth, "AssumptionTruth", "name E [H]"},
      {DerivedRule::DepModusPonens, "DepModusPonens", "name E G"},
      {DerivedRule::DepModusPonensSimplified, "DepModusPonensSimplified", "name E G"},
      {DerivedRule::DepAndEquivFwd, "DepAndEquivFwd", "name E F"},
      {DerivedRule::DepAndEquivBwd, "DepAndEquivBwd", "name E F"},
      {DerivedRule::DepImpEquivFwd, "DepImpEquivFwd", "name E F"},
      {DerivedRule::DepImpEquivBwd, "DepImpEquivBwd", "name E F"},
      {DerivedRule::ElabForallAdj, "ElabForallAdj", "var set body [warrant]"},
      {DerivedRule::ElabExistsAdj, "ElabExistsAdj", "var set body [warrant]"},
      {DerivedRule::ElabComprAdj, "ElabComprAdj", "var set body [warrant]"},
  };
  return table;
}

[[noreturn]] void bad_args(const std::string& message) { throw DeriveError(DeriveError::Kind::BadArgs, message); }

StmtP as_stmt(const Object& o) {
  if (auto* s = std::get_if<StmtP>(&o)) return *s;
  bad_args("expected a statement, got the set " + to_string(o));
}

TermP as_term(const Object& o) {
  if (auto* t = std::get_if<TermP>(&o)) return *t;
  bad_args("expected a set, got the statement " + to_string(o));
}

DerivP refl_on(const Side& side, const Object& o) {
  if (side.is_sets()) return incl_refl(side.ctx, as_term(o));
  return refl(side.ctx, as_stmt(o));
}

Object same(const Object& o) { return o; }
DerivP keep(DerivP d) { return d; }

bool is_commutation(const Derivation& d) {
  if (d.rule != Rule::AndIntro || d.premises.size() != 2) return false;
  const auto& a = *d.premises[0];
  const auto& b = *d.premises[1];
  return a.rule == Rule::AndElimR && b.rule == Rule::AndElimL;
}

void walk_main(const Derivation& d, std::vector<Rule>& out) {
  if (d.rule == Rule::Trans && d.premises.size() == 2) {
    if (is_commutation(*d.premises[0])) return walk_main(*d.premises[1], out);
    if (is_commutation(*d.premises[1])) return walk_main(*d.premises[0], out);
  }
  if (!d.premises.empty()) walk_main(*d.premises[0], out);
  out.push_back(d.rule);
}

// E /\ F <= F /\ E
DerivP commute(const Context& g, const StmtP& e, const StmtP& f) {
  return and_intro(and_elim_r(g, e, f), and_elim_l(g, e, f));
}

// Reads and validates the arguments of one derive() call.
class Args {
 public:
  Args(const Signature& sig, const Context& ctx, const DeriveArgs& args) : sig_(sig), ctx_(ctx), args_(args) {}

  bool has(const std::string& key) const { return args_.count(key) > 0; }

  const ParamValue& raw(const std::string& key) const {
    auto it = args_.find(key);
    if (it == args_.end()) bad_args("missing argument `" + key + "`");
    used_.insert(key);
    return it->second;
  }

  std::string name(const std::string& key) const {
    auto* v = std::get_if<std::string>(&raw(key));
    if (!v || v->empty()) bad_args("argument `" + key + "` must be a name");
    return *v;
  }

  std::string fresh(const std::string& key, const Context& where) const {
    std::string n = name(key);
    if (where.declares(n)) bad_args("`" + n + "` is already declared in " + to_string(where));
    return n;
  }

  StmtP stmt(const std::string& key, const Context& where) const {
    auto* v = std::get_if<StmtP>(&raw(key));
    if (!v || !*v) bad_args("argument `" + key + "` must be a statement");
    if (auto d = meaningful(sig_, where, **v))
      bad_args("argument `" + key + "` is not meaningful in " + to_string(where) + ": " + d->str());
    return *v;
  }

  StmtP stmt_or(const std::string& key, const Context& where, StmtP dflt) const {
    return has(key) ? stmt(key, where) : dflt;
  }

  TermP term(const std::string& key, const Context& where) const {
    auto* v = std::get_if<TermP>(&raw(key));
    if (!v || !*v) bad_args("argument `" + key + "` must be a term");
    try {
      synth_type(sig_, where, **v);
    } catch (const DiagnosticError& e) {
      bad_args("argument `" + key + "` is not meaningful in " + to_string(where) + ": " + e.diagnostic().str());
    }
    return *v;
  }

  TypeP set_elem(const TermP& set) const {
    TypeP t = synth_type(sig_, ctx_, *set);
    if (t->kind != Type::Kind::Set) bad_args("`" + to_string(set) + "` is not a set");
    return t->elem;
  }

  ContextEntry entry(const std::string& key, ContextEntry::Kind kind) const {
    auto* v = std::get_if<ContextEntry>(&raw(key));
    if (!v || v->kind != kind)
      bad_args("argument `" + key + "` must be " +
               (kind == ContextEntry::Kind::Assume ? std::string("an assumption") : "a type declaration"));
    try {
      extend_context(sig_, ctx_, *v);
    } catch (const DiagnosticError& e) {
      bad_args("argument `" + key + "`: " + e.diagnostic().str());
    }
    return *v;
  }

  void no_extras() const {
    for (const auto& [key, value] : args_)
      if (!used_.count(key)) bad_args("unexpected argument `" + key + "`");
  }

 private:
  const Signature& sig_;
  const Context& ctx_;
  const DeriveArgs& args_;
  mutable std::set<std::string> used_;
};

DerivP unit_or_counit(bool unit, const Context& g, const Args& a) {
  std::string adj = a.name("adj");
  auto component = [&] {
    std::string c = a.name("component");
    if (c != "l" && c != "r") bad_args("component must be `l` or `r`");
    return c == "l";
  };
  if (adj == "and") {
    if (unit) {
      StmtP e = a.stmt("E", g);
      return and_intro(refl(g, e), refl(g, e));
    }
    StmtP e = a.stmt("E", g), f = a.stmt("F", g);
    return component() ? and_elim_l(g, e, f) : and_elim_r(g, e, f);
  }
  if (adj == "or") {
    if (unit) {
      StmtP e = a.stmt("E", g), f = a.stmt("F", g);
      return component() ? or_intro_l(g, e, f) : or_intro_r(g, e, f);
    }
    StmtP e = a.stmt("G", g);
    return or_elim(refl(g, e), refl(g, e));
  }
  AdjunctionInstance inst;
  if (adj == "imp") {
    inst = imp_adjunction(g, a.stmt("F", g));
  } else if (adj == "forall" || adj == "exists" || adj == "compr") {
    ContextEntry d = a.entry("decl", ContextEntry::Kind::TypeDecl);
    inst = adj == "forall"   ? forall_adjunction(g, d.name, d.type)
           : adj == "exists" ? exists_adjunction(g, d.name, d.type)
                             : compr_adjunction(g, d.name, d.type);
  } else if (adj == "depand" || adj == "depimp") {
    ContextEntry d = a.entry("assume", ContextEntry::Kind::Assume);
    inst = adj == "depand" ? dep_and_adjunction(g, d.name, d.stmt) : dep_imp_adjunction(g, d.name, d.stmt);
  } else {
    bad_args("unknown adjunction `" + adj + "` (and, or, imp, forall, exists, depand, depimp, compr)");
  }
  if (unit) return inst.unit(a.has("E") ? Object(a.stmt("E", inst.source.ctx)) : Object(a.stmt("F", inst.source.ctx)));
  if (inst.target.is_sets()) return inst.counit(a.term("A", inst.target.ctx));
  return inst.counit(a.stmt("G", inst.target.ctx));
}

DerivP build(const Signature& sig, DerivedRule r, const Context& g, const Args& a) {
  using D = DerivedRule;
  switch (r) {
    case D::UnitOf: return unit_or_counit(true, g, a);
    case D::CounitOf: return unit_or_counit(false, g, a);
    case D::AssumptionTruth: {
      StmtP e = a.stmt("E", g);
      std::string z = a.fresh("name", g);
      Context gz = g.with(ContextEntry::assume(z, e));
      StmtP h = a.stmt_or("H", gz, st::top());
      return trans(top_intro(gz, h), special_fwd(and_elim_l(g, e, st::top()), z));
    }
    case D::DepAndEquivFwd: {
      StmtP e = a.stmt("E", g), f = a.stmt("F", g);
      std::string z = a.fresh("name", g);
      return dep_and_untranspose(special_fwd(refl(g, st::conj(e, f)), z));
    }
    case D::DepAndEquivBwd: {
      StmtP e = a.stmt("E", g), f = a.stmt("F", g);
      std::string z = a.fresh("name", g);
      return special_bwd(dep_and_transpose(refl(g, st::dep_and(z, e, f))));
    }
    case D::DepImpEquivFwd: {
      StmtP e = a.stmt("E", g), f = a.stmt("F", g);
      std::string z = a.fresh("name", g);
      StmtP k = st::imp(e, f);
      DerivP mp = imp_uncurry(refl(g, k));
      return dep_imp_transpose(special_fwd(trans(commute(g, e, k), mp), z));
    }
    case D::DepImpEquivBwd: {
      StmtP e = a.stmt("E", g), f = a.stmt("F", g);
      std::string z = a.fresh("name", g);
      StmtP k = st::dep_imp(z, e, f);
      DerivP counit = dep_imp_untranspose(refl(g, k), z);
      return imp_intro(trans(commute(g, k, e), special_bwd(counit)));
    }
    case D::DepModusPonens:
    case D::DepModusPonensSimplified: {
      StmtP e = a.stmt("E", g);
      std::string z = a.fresh("name", g);
      ContextEntry assume = ContextEntry::assume(z, e);
      Context gz = g.with(assume);
      StmtP gg = a.stmt("G", gz);
      StmtP k = st::dep_imp(z, e, gg);
      // (z |- E) /\ J K <= K, then weakened; K <= G under z.
      DerivP and_counit = dep_and_untranspose(refl(gz, k));
      DerivP imp_counit = dep_imp_untranspose(refl(g, k), z);
      DerivP mp = trans(weaken(and_counit, assume), imp_counit);
      if (r == D::DepModusPonens) return mp;
      DeriveArgs raw{{"name", z}, {"E", e}, {"F", k}};
      Args inner_args(sig, g, raw);
      DerivP equiv = build(sig, D::DepAndEquivBwd, g, inner_args);
      return trans(weaken(equiv, assume), mp);
    }
    case D::ElabForallAdj:
    case D::ElabExistsAdj:
    case D::ElabComprAdj: {
      std::string x = a.fresh("var", g);
      TermP set = a.term("set", g);
      TypeP t = a.set_elem(set);
      Context gx = g.with(ContextEntry::type_decl(x, t));
      std::string w = a.has("warrant") ? a.fresh("warrant", gx) : fresh_name("w_" + x, gx.names());
      StmtP mem = st::mem(tm::var(x), set);
      Context gxw = gx.with(ContextEntry::assume(w, mem));
      StmtP body = a.stmt("body", gxw);
      if (r == D::ElabForallAdj)
        return compose_adjoints(dep_imp_adjunction(gx, w, mem), forall_adjunction(g, x, t)).counit(body);
      AdjunctionInstance inner = dep_and_adjunction(gx, w, mem);
      if (r == D::ElabExistsAdj) return compose_adjoints(exists_adjunction(g, x, t), inner).unit(body);
      return compose_adjoints(compr_adjunction(g, x, t), inner).unit(body);
    }
  }
  bad_args("unknown derived rule");
}

}  // namespace

const std::vector<DerivedRule>& all_derived_rules() {
  static const std::vector<DerivedRule> rules = [] {
    std::vector<DerivedRule> out;
    for (const auto& i : derived_table()) out.push_back(i.rule);
    return out;
  }();
  return rules;
}

const char* to_string(DerivedRule r) { return derived_table()[static_cast<std::size_t>(r)].name; }

std::optional<DerivedRule> derived_rule_from_string(std::string_view name) {
  for (const auto& i : derived_table())
    if (name == i.name) return i.rule;
  return std::nullopt;
}

std::string derive_usage(DerivedRule r) {
  return std::string(to_string(r)) + ": " + derived_table()[static_cast<std::size_t>(r)].usage;
}

DeriveError::DeriveError(Kind kind, const std::string& message)
    : std::runtime_error(std::string(kind == Kind::BadArgs ? "BadArgs" : "DomainMismatch") + ": " + message),
      kind_(kind) {}

std::optional<ParamKind> derive_arg_kind(const std::string& key) {
  static const std::map<std::string, ParamKind> kinds = {
      {"E", ParamKind::Stmt},      {"F", ParamKind::Stmt},        {"G", ParamKind::Stmt},
      {"H", ParamKind::Stmt},      {"body", ParamKind::Stmt},     {"A", ParamKind::Term},
      {"set", ParamKind::Term},    {"name", ParamKind::Name},     {"adj", ParamKind::Name},
      {"component", ParamKind::Name}, {"var", ParamKind::Name},   {"warrant", ParamKind::Name},
      {"decl", ParamKind::Entry},  {"assume", ParamKind::Entry},
  };
  auto it = kinds.find(key);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

DeriveArgs parse_derive_args(const std::map<std::string, std::string>& raw, const Signature* sig) {
  DeriveArgs out;
  for (const auto& [key, text] : raw) {
    auto kind = derive_arg_kind(key);
    if (!kind) bad_args("unknown argument `" + key + "`");
    try {
      Parser p(text, sig);
      switch (*kind) {
        case ParamKind::Stmt: out[key] = p.statement(); break;
        case ParamKind::Term: out[key] = p.term(); break;
        case ParamKind::Name: out[key] = p.ident(); break;
        case ParamKind::Entry: out[key] = p.entry(); break;
        case ParamKind::Ctx: out[key] = p.context(); break;
      }
      p.expect_end();
    } catch (const DiagnosticError& e) {
      bad_args("argument `" + key + "`: " + e.diagnostic().str());
    }
  }
  return out;
}

DerivP derive(const Signature& sig, DerivedRule r, const Context& ctx, const DeriveArgs& args) {
  try {
    validate_context(sig, ctx);
  } catch (const DiagnosticError& e) {
    bad_args("context " + to_string(ctx) + ": " + e.diagnostic().str());
  }
  if (!ctx.is_low_level()) bad_args("context " + to_string(ctx) + " must be elaborated first");
  Args a(sig, ctx, args);
  DerivP d;
  try {
    d = build(sig, r, ctx, a);
  } catch (const DiagnosticError& e) {
    bad_args(e.diagnostic().str());
  }
  a.no_extras();
  try {
    check(sig, *d);
  } catch (const KernelError& e) {
    bad_args(std::string("the arguments do not give a valid instance: ") + e.what());
  }
  return d;
}

std::vector<Rule> main_line(const Derivation& d) {
  std::vector<Rule> out;
  walk_main(d, out);
  return out;
}

// ---------------------------------------------------------------------------

bool side_eq(const Side& a, const Side& b) {
  if (a.is_sets() != b.is_sets() || !context_eq(a.ctx, b.ctx)) return false;
  return !a.is_sets() || type_eq(*a.elem, *b.elem);
}

std::string to_string(const Side& s) {
  return (s.is_sets() ? "sets of " + to_string(*s.elem) : std::string("statements")) + " in " + to_string(s.ctx);
}

std::string to_string(const Object& o) {
  return std::visit([](const auto& x) { return to_string(x); }, o);
}

DerivP AdjunctionInstance::unit(const Object& x) const { return transpose(refl_on(target, left(x))); }
DerivP AdjunctionInstance::counit(const Object& y) const { return untranspose(refl_on(source, right(y))); }

AdjunctionInstance identity_adjunction(const Side& side) { return {"id", side, side, same, same, keep, keep}; }

AdjunctionInstance imp_adjunction(const Context& ctx, StmtP f) {
  Side s = Side::statements(ctx);
  return {"imp",
          s,
          s,
          [f](const Object& e) -> Object { return st::conj(as_stmt(e), f); },
          [f](const Object& g) -> Object { return st::imp(f, as_stmt(g)); },
          imp_intro,
          imp_uncurry};
}

AdjunctionInstance forall_adjunction(const Context& ctx, const std::string& x, TypeP t) {
  return {"forall",
          Side::statements(ctx),
          Side::statements(ctx.with(ContextEntry::type_decl(x, t))),
          same,
          [x, t](const Object& f) -> Object { return st::forall_t(x, t, as_stmt(f)); },
          forall_intro,
          [x](DerivP d) { return forall_transpose(d, x); }};
}

AdjunctionInstance exists_adjunction(const Context& ctx, const std::string& x, TypeP t) {
  return {"exists",
          Side::statements(ctx.with(ContextEntry::type_decl(x, t))),
          Side::statements(ctx),
          [x, t](const Object& e) -> Object { return st::exists_t(x, t, as_stmt(e)); },
          same,
          [x](DerivP d) { return exists_transpose(d, x); },
          exists_intro};
}

AdjunctionInstance dep_and_adjunction(const Context& ctx, const std::string& z, StmtP e) {
  return {"depand",
          Side::statements(ctx.with(ContextEntry::assume(z, e))),
          Side::statements(ctx),
          [z, e](const Object& f) -> Object { return st::dep_and(z, e, as_stmt(f)); },
          same,
          [z](DerivP d) { return dep_and_transpose(d, z); },
          dep_and_untranspose};
}

AdjunctionInstance dep_imp_adjunction(const Context& ctx, const std::string& z, StmtP e) {
  return {"depimp",
          Side::statements(ctx),
          Side::statements(ctx.with(ContextEntry::assume(z, e))),
          same,
          [z, e](const Object& g) -> Object { return st::dep_imp(z, e, as_stmt(g)); },
          dep_imp_transpose,
          [z](DerivP d) { return dep_imp_untranspose(d, z); }};
}

AdjunctionInstance compr_adjunction(const Context& ctx, const std::string& x, TypeP t) {
  return {"compr",
          Side::statements(ctx.with(ContextEntry::type_decl(x, t))),
          Side::sets(ctx, t),
          [x, t](const Object& e) -> Object { return tm::compr(x, t, as_stmt(e)); },
          [x](const Object& a) -> Object { return st::mem(tm::var(x), as_term(a)); },
          [x](DerivP d) { return compr_transpose(d, x); },
          compr_untranspose};
}

AdjunctionInstance compose_adjoints(const AdjunctionInstance& outer, const AdjunctionInstance& inner) {
  if (!side_eq(inner.target, outer.source))
    throw DeriveError(DeriveError::Kind::DomainMismatch, "cannot compose " + outer.name + " after " + inner.name +
                                                             ": " + to_string(inner.target) + " vs " +
                                                             to_string(outer.source));
  AdjunctionInstance out;
  out.name = outer.name == "id" ? inner.name : inner.name == "id" ? outer.name : outer.name + " . " + inner.name;
  out.source = inner.source;
  out.target = outer.target;
  out.left = [f = outer.left, g = inner.left](const Object& x) { return f(g(x)); };
  out.right = [f = inner.right, g = outer.right](const Object& y) { return f(g(y)); };
  out.transpose = [f = inner.transpose, g = outer.transpose](DerivP d) { return f(g(d)); };
  out.untranspose = [f = outer.untranspose, g = inner.untranspose](DerivP d) { return f(g(d)); };
  return out;
}

}  // namespace depconj
