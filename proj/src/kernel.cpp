#include "depconj/kernel.hpp"

#include <array>

namespace depconj {

namespace {

using K = Stmt::Kind;

struct RuleInfo {
  Rule rule;
  const char* name;
  std::size_t premises;
  std::vector<ParamSpec> params;
};

const std::vector<RuleInfo>& rule_table() {
  static const std::vector<RuleInfo> table = [] {
    const ParamSpec ctx{"ctx", ParamKind::Ctx};
    const ParamSpec stmt{"stmt", ParamKind::Stmt};
    const ParamSpec left{"left", ParamKind::Stmt};
    const ParamSpec right{"right", ParamKind::Stmt};
    const ParamSpec opt_name{"name", ParamKind::Name, true};
    const ParamSpec name{"name", ParamKind::Name};
    return std::vector<RuleInfo>{
        {Rule::Refl, "Refl", 0, {ctx, stmt}},
        {Rule::Trans, "Trans", 2, {}},
        {Rule::TopIntro, "TopIntro", 0, {ctx, stmt}},
        {Rule::AndIntro, "AndIntro", 2, {}},
        {Rule::AndElimL, "AndElimL", 0, {ctx, left, right}},
        {Rule::AndElimR, "AndElimR", 0, {ctx, left, right}},
        {Rule::OrIntroL, "OrIntroL", 0, {ctx, left, right}},
        {Rule::OrIntroR, "OrIntroR", 0, {ctx, left, right}},
        {Rule::OrElim, "OrElim", 2, {}},
        {Rule::ImpIntro, "ImpIntro", 1, {}},
        {Rule::ImpUncurry, "ImpUncurry", 1, {}},
        {Rule::ForallIntro, "ForallIntro", 1, {}},
        {Rule::ForallTranspose, "ForallTranspose", 1, {opt_name}},
        {Rule::ExistsIntro, "ExistsIntro", 1, {}},
        {Rule::ExistsTranspose, "ExistsTranspose", 1, {opt_name}},
        {Rule::Subst, "Subst", 1, {{"term", ParamKind::Term}}},
        {Rule::Weaken, "Weaken", 1, {{"entry", ParamKind::Entry}}},
        {Rule::SpecialFwd, "SpecialFwd", 1, {name}},
        {Rule::SpecialBwd, "SpecialBwd", 1, {}},
        {Rule::DepAndTranspose, "DepAndTranspose", 1, {opt_name}},
        {Rule::DepAndUntranspose, "DepAndUntranspose", 1, {}},
        {Rule::DepImpTranspose, "DepImpTranspose", 1, {}},
        {Rule::DepImpUntranspose, "DepImpUntranspose", 1, {opt_name}},
        {Rule::Description, "Description", 0, {ctx, name}},
        {Rule::InclRefl, "InclRefl", 0, {ctx, {"set", ParamKind::Term}}},
        {Rule::InclTrans, "InclTrans", 2, {}},
        {Rule::ComprTranspose, "ComprTranspose", 1, {opt_name}},
        {Rule::ComprUntranspose, "ComprUntranspose", 1, {}},
    };
  }();
  return table;
}

const RuleInfo& info(Rule r) { return rule_table()[static_cast<std::size_t>(r)]; }

}  // namespace

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (const auto& i : rule_table()) out.push_back(i.rule);
    return out;
  }();
  return rules;
}

const char* to_string(Rule r) { return info(r).name; }

std::optional<Rule> rule_from_string(std::string_view name) {
  for (const auto& i : rule_table())
    if (name == i.name) return i.rule;
  return std::nullopt;
}

const std::vector<ParamSpec>& param_schema(Rule r) { return info(r).params; }
std::size_t premise_count(Rule r) { return info(r).premises; }

Judgment Judgment::leq(Context ctx, StmtP e, StmtP f) {
  Judgment j;
  j.kind = Kind::Leq;
  j.ctx = std::move(ctx);
  j.lhs = std::move(e);
  j.rhs = std::move(f);
  return j;
}

Judgment Judgment::incl(Context ctx, TermP a, TermP b) {
  Judgment j;
  j.kind = Kind::Incl;
  j.ctx = std::move(ctx);
  j.lset = std::move(a);
  j.rset = std::move(b);
  return j;
}

bool judgment_eq(const Judgment& a, const Judgment& b) {
  if (a.kind != b.kind || !context_eq(a.ctx, b.ctx)) return false;
  if (a.kind == Judgment::Kind::Leq)
    return struct_eq(*a.lhs, *b.lhs, a.ctx) && struct_eq(*a.rhs, *b.rhs, a.ctx);
  return struct_eq(*a.lset, *b.lset, a.ctx) && struct_eq(*a.rset, *b.rset, a.ctx);
}

std::string to_string(const Judgment& j, PrintOptions opts) {
  std::string out = to_string(j.ctx, opts) + " |- ";
  if (j.kind == Judgment::Kind::Leq) return out + to_string(j.lhs, opts) + " <= " + to_string(j.rhs, opts);
  return out + to_string(j.lset, opts) + " sub " + to_string(j.rset, opts);
}

// ---------------------------------------------------------------------------

namespace {
template <class T>
const T* get_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return nullptr;
  return std::get_if<T>(&it->second);
}
}  // namespace

const Context* Derivation::ctx_param(const std::string& key) const { return get_param<Context>(params, key); }
const StmtP* Derivation::stmt_param(const std::string& key) const { return get_param<StmtP>(params, key); }
const TermP* Derivation::term_param(const std::string& key) const { return get_param<TermP>(params, key); }
const ContextEntry* Derivation::entry_param(const std::string& key) const {
  return get_param<ContextEntry>(params, key);
}
const std::string* Derivation::name_param(const std::string& key) const {
  return get_param<std::string>(params, key);
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises)
    if (p) n += p->size();
  return n;
}

DerivP make(Rule r, Params params, std::vector<DerivP> premises) {
  return std::make_shared<Derivation>(r, std::move(params), std::move(premises));
}

const char* to_string(KernelErrorKind k) {
  switch (k) {
    case KernelErrorKind::RuleMismatch: return "RuleMismatch";
    case KernelErrorKind::SideConditionFailed: return "SideConditionFailed";
    case KernelErrorKind::NotMeaningful: return "NotMeaningful";
    case KernelErrorKind::HighLevelLeak: return "HighLevelLeak";
  }
  return "?";
}

namespace {
std::string format_error(KernelErrorKind kind, Rule rule, const std::vector<std::size_t>& path,
                         const std::string& message) {
  std::string where = "root";
  for (auto i : path) where += "." + std::to_string(i);
  return std::string(to_string(kind)) + " at " + where + " (" + to_string(rule) + "): " + message;
}
}  // namespace

KernelError::KernelError(KernelErrorKind kind, Rule rule, std::vector<std::size_t> path, std::string message)
    : std::runtime_error(format_error(kind, rule, path, message)),
      kind_(kind),
      rule_(rule),
      path_(std::move(path)),
      detail_(std::move(message)) {}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

class Checker {
 public:
  Checker(const Signature& sig, bool use_cache) : sig_(sig), fp_(sig.fingerprint()), use_cache_(use_cache) {}

  Judgment visit(const Derivation& d) {
    if (use_cache_) {
      std::lock_guard lock(d.cache_mutex_);
      if (d.cache_ && d.cache_key_ == fp_) return *d.cache_;
    }
    rule_ = d.rule;
    if (d.premises.size() != premise_count(d.rule))
      fail(KernelErrorKind::RuleMismatch, "expected " + std::to_string(premise_count(d.rule)) +
                                              " premises, got " + std::to_string(d.premises.size()));
    std::vector<Judgment> prem;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      if (!d.premises[i]) fail(KernelErrorKind::RuleMismatch, "missing premise");
      path_.push_back(i);
      prem.push_back(visit(*d.premises[i]));
      path_.pop_back();
    }
    rule_ = d.rule;
    check_params(d);
    Judgment j = conclude(d, prem);
    validate(j);
    {
      std::lock_guard lock(d.cache_mutex_);
      d.cache_key_ = fp_;
      d.cache_ = j;
    }
    return j;
  }

 private:
  [[noreturn]] void fail(KernelErrorKind kind, const std::string& message) const {
    throw KernelError(kind, rule_, path_, message);
  }

  void check_params(const Derivation& d) {
    const auto& schema = param_schema(d.rule);
    for (const auto& [key, value] : d.params) {
      bool known = false;
      for (const auto& s : schema) known |= s.key == key;
      if (!known) fail(KernelErrorKind::RuleMismatch, "unexpected parameter `" + key + "`");
    }
    for (const auto& s : schema) {
      auto it = d.params.find(s.key);
      if (it == d.params.end()) {
        if (!s.optional) fail(KernelErrorKind::RuleMismatch, "missing parameter `" + s.key + "`");
        continue;
      }
      const ParamValue& v = it->second;
      bool ok = false;
      switch (s.kind) {
        case ParamKind::Ctx:
          if (auto* c = std::get_if<Context>(&v)) {
            ok = true;
            leak_check(*c);
          }
          break;
        case ParamKind::Stmt:
          if (auto* e = std::get_if<StmtP>(&v); e && *e) {
            ok = true;
            if (!is_low_level(**e)) fail(KernelErrorKind::HighLevelLeak, "high-level statement " + to_string(*e));
          }
          break;
        case ParamKind::Term:
          if (auto* t = std::get_if<TermP>(&v); t && *t) {
            ok = true;
            if (!is_low_level(**t)) fail(KernelErrorKind::HighLevelLeak, "high-level term " + to_string(*t));
          }
          break;
        case ParamKind::Entry:
          if (auto* e = std::get_if<ContextEntry>(&v)) {
            ok = true;
            leak_check(Context({*e}));
          }
          break;
        case ParamKind::Name:
          if (auto* n = std::get_if<std::string>(&v)) ok = !n->empty();
          break;
      }
      if (!ok) fail(KernelErrorKind::RuleMismatch, "parameter `" + s.key + "` has the wrong kind");
    }
  }

  void leak_check(const Context& c) const {
    for (const auto& e : c) {
      if (e.kind == ContextEntry::Kind::SetDecl)
        fail(KernelErrorKind::HighLevelLeak, "set declaration `" + to_string(e) + "` in context");
      if (e.kind == ContextEntry::Kind::Assume && !is_low_level(*e.stmt))
        fail(KernelErrorKind::HighLevelLeak, "high-level assumption `" + to_string(e) + "`");
    }
  }

  void validate(const Judgment& j) const {
    leak_check(j.ctx);
    if (j.kind == Judgment::Kind::Leq) {
      for (const auto* s : {&j.lhs, &j.rhs})
        if (!is_low_level(**s)) fail(KernelErrorKind::HighLevelLeak, "high-level statement " + to_string(*s));
    } else {
      for (const auto* t : {&j.lset, &j.rset})
        if (!is_low_level(**t)) fail(KernelErrorKind::HighLevelLeak, "high-level term " + to_string(*t));
    }
    try {
      validate_context(sig_, j.ctx);
    } catch (const DiagnosticError& e) {
      fail(KernelErrorKind::NotMeaningful, "context " + to_string(j.ctx) + ": " + e.diagnostic().str());
    }
    if (j.kind == Judgment::Kind::Leq) {
      for (const auto* s : {&j.lhs, &j.rhs})
        if (auto d = meaningful(sig_, j.ctx, **s)) fail(KernelErrorKind::NotMeaningful, d->str());
      return;
    }
    TypeP ta = set_type(j.ctx, *j.lset), tb = set_type(j.ctx, *j.rset);
    if (!type_eq(*ta, *tb))
      fail(KernelErrorKind::NotMeaningful, "inclusion between " + to_string(*ta) + " and " + to_string(*tb));
  }

  TypeP set_type(const Context& ctx, const Term& t) const {
    TypeP ty;
    try {
      ty = synth_type(sig_, ctx, t);
    } catch (const DiagnosticError& e) {
      fail(KernelErrorKind::NotMeaningful, e.diagnostic().str());
    }
    if (ty->kind != Type::Kind::Set) fail(KernelErrorKind::NotMeaningful, "`" + to_string(t) + "` is not a set");
    return ty;
  }

  bool meaningful_in(const Context& ctx, const Stmt& e) const { return !meaningful(sig_, ctx, e).has_value(); }
  bool meaningful_in(const Context& ctx, const Term& t) const {
    try {
      synth_type(sig_, ctx, t);
      return true;
    } catch (const DiagnosticError&) {
      return false;
    }
  }

  const Judgment& leq(const std::vector<Judgment>& prem, std::size_t i) const {
    if (prem[i].kind != Judgment::Kind::Leq)
      fail(KernelErrorKind::RuleMismatch, "premise " + std::to_string(i) + " is not an entailment");
    return prem[i];
  }

  const Judgment& incl(const std::vector<Judgment>& prem, std::size_t i) const {
    if (prem[i].kind != Judgment::Kind::Incl)
      fail(KernelErrorKind::RuleMismatch, "premise " + std::to_string(i) + " is not an inclusion");
    return prem[i];
  }

  void same_context(const Judgment& a, const Judgment& b) const {
    if (!context_eq(a.ctx, b.ctx))
      fail(KernelErrorKind::RuleMismatch, "premises live in different contexts " + to_string(a.ctx) + " and " +
                                              to_string(b.ctx));
  }

  void expect_shape(const StmtP& s, K kind, const char* what) const {
    if (s->kind != kind) fail(KernelErrorKind::RuleMismatch, std::string("expected ") + what + ", got " + to_string(s));
  }

  void expect_same(const StmtP& a, const StmtP& b, const Context& ctx) const {
    if (!struct_eq(*a, *b, ctx))
      fail(KernelErrorKind::RuleMismatch, "`" + to_string(a) + "` does not match `" + to_string(b) + "`");
  }

  // Splits Γ(e) into Γ and e, requiring e to be of the given kind.
  std::pair<Context, ContextEntry> split_last(const Judgment& j, ContextEntry::Kind kind) const {
    if (j.ctx.empty() || j.ctx.back().kind != kind) {
      const char* want = kind == ContextEntry::Kind::Assume ? "an assumption" : "a type declaration";
      fail(KernelErrorKind::RuleMismatch, std::string("premise context must end with ") + want + ", got " +
                                              to_string(j.ctx));
    }
    return {j.ctx.prefix(j.ctx.size() - 1), j.ctx.back()};
  }

  std::string chosen_name(const Derivation& d, const std::string& dflt, const Context& ctx) const {
    const std::string* n = d.name_param("name");
    std::string name = n ? *n : dflt;
    if (ctx.declares(name))
      fail(KernelErrorKind::SideConditionFailed, "`" + name + "` is already declared in " + to_string(ctx));
    return name;
  }

  void fresh_in(const std::string& name, const Context& ctx) const {
    if (ctx.declares(name))
      fail(KernelErrorKind::SideConditionFailed, "`" + name + "` is already declared in " + to_string(ctx));
  }

  void free_of(const Context& gamma, const Stmt& s, const std::string& name) const {
    if (!meaningful_in(gamma, s))
      fail(KernelErrorKind::SideConditionFailed, "`" + to_string(s) + "` depends on `" + name + "`");
  }

  Judgment conclude(const Derivation& d, const std::vector<Judgment>& prem) const {
    using R = Rule;
    switch (d.rule) {
      case R::Refl: {
        const StmtP& e = *d.stmt_param("stmt");
        return Judgment::leq(*d.ctx_param("ctx"), e, e);
      }
      case R::Trans: {
        const auto& a = leq(prem, 0);
        const auto& b = leq(prem, 1);
        same_context(a, b);
        expect_same(a.rhs, b.lhs, a.ctx);
        return Judgment::leq(a.ctx, a.lhs, b.rhs);
      }
      case R::TopIntro: return Judgment::leq(*d.ctx_param("ctx"), *d.stmt_param("stmt"), st::top());
      case R::AndIntro: {
        const auto& a = leq(prem, 0);
        const auto& b = leq(prem, 1);
        same_context(a, b);
        expect_same(a.lhs, b.lhs, a.ctx);
        return Judgment::leq(a.ctx, a.lhs, st::conj(a.rhs, b.rhs));
      }
      case R::AndElimL:
      case R::AndElimR: {
        const StmtP& e = *d.stmt_param("left");
        const StmtP& f = *d.stmt_param("right");
        return Judgment::leq(*d.ctx_param("ctx"), st::conj(e, f), d.rule == R::AndElimL ? e : f);
      }
      case R::OrIntroL:
      case R::OrIntroR: {
        const StmtP& e = *d.stmt_param("left");
        const StmtP& f = *d.stmt_param("right");
        return Judgment::leq(*d.ctx_param("ctx"), d.rule == R::OrIntroL ? e : f, st::disj(e, f));
      }
      case R::OrElim: {
        const auto& a = leq(prem, 0);
        const auto& b = leq(prem, 1);
        same_context(a, b);
        expect_same(a.rhs, b.rhs, a.ctx);
        return Judgment::leq(a.ctx, st::disj(a.lhs, b.lhs), a.rhs);
      }
      case R::ImpIntro: {
        const auto& a = leq(prem, 0);
        expect_shape(a.lhs, K::And, "a conjunction on the left");
        return Judgment::leq(a.ctx, a.lhs->lhs, st::imp(a.lhs->rhs, a.rhs));
      }
      case R::ImpUncurry: {
        const auto& a = leq(prem, 0);
        expect_shape(a.rhs, K::Imp, "an implication on the right");
        return Judgment::leq(a.ctx, st::conj(a.lhs, a.rhs->lhs), a.rhs->rhs);
      }
      case R::ForallIntro: {
        const auto& a = leq(prem, 0);
        auto [gamma, x] = split_last(a, ContextEntry::Kind::TypeDecl);
        free_of(gamma, *a.lhs, x.name);
        return Judgment::leq(gamma, a.lhs, st::forall_t(x.name, x.type, a.rhs));
      }
      case R::ForallTranspose: {
        const auto& a = leq(prem, 0);
        expect_shape(a.rhs, K::ForallT, "a universal statement on the right");
        const Stmt& q = *a.rhs;
        std::string y = chosen_name(d, q.name, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::type_decl(y, q.type)), a.lhs,
                             substitute(q.body, tm::var(y), q.name));
      }
      case R::ExistsIntro: {
        const auto& a = leq(prem, 0);
        auto [gamma, x] = split_last(a, ContextEntry::Kind::TypeDecl);
        free_of(gamma, *a.rhs, x.name);
        return Judgment::leq(gamma, st::exists_t(x.name, x.type, a.lhs), a.rhs);
      }
      case R::ExistsTranspose: {
        const auto& a = leq(prem, 0);
        expect_shape(a.lhs, K::ExistsT, "an existential statement on the left");
        const Stmt& q = *a.lhs;
        std::string y = chosen_name(d, q.name, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::type_decl(y, q.type)), substitute(q.body, tm::var(y), q.name),
                             a.rhs);
      }
      case R::Subst: {
        const auto& a = leq(prem, 0);
        auto [gamma, x] = split_last(a, ContextEntry::Kind::TypeDecl);
        const TermP& t = *d.term_param("term");
        TypeP ty;
        try {
          ty = synth_type(sig_, gamma, *t);
        } catch (const DiagnosticError& e) {
          fail(KernelErrorKind::NotMeaningful, e.diagnostic().str());
        }
        if (!type_eq(*ty, *x.type))
          fail(KernelErrorKind::SideConditionFailed, "`" + to_string(t) + "` has type " + to_string(*ty) +
                                                         ", expected " + to_string(*x.type));
        return Judgment::leq(gamma, substitute(a.lhs, t, x.name), substitute(a.rhs, t, x.name));
      }
      case R::Weaken: {
        const Judgment& a = prem[0];
        const ContextEntry& e = *d.entry_param("entry");
        fresh_in(e.name, a.ctx);
        Judgment out = a;
        try {
          out.ctx = extend_context(sig_, a.ctx, e);
        } catch (const DiagnosticError& err) {
          fail(KernelErrorKind::NotMeaningful, err.diagnostic().str());
        }
        return out;
      }
      case R::SpecialFwd: {
        const auto& a = leq(prem, 0);
        expect_shape(a.lhs, K::And, "a conjunction on the left");
        const std::string& z = *d.name_param("name");
        fresh_in(z, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::assume(z, a.lhs->lhs)), a.lhs->rhs, a.rhs);
      }
      case R::SpecialBwd: {
        const auto& a = leq(prem, 0);
        auto [gamma, z] = split_last(a, ContextEntry::Kind::Assume);
        free_of(gamma, *a.lhs, z.name);
        free_of(gamma, *a.rhs, z.name);
        return Judgment::leq(gamma, st::conj(z.stmt, a.lhs), a.rhs);
      }
      case R::DepAndTranspose: {
        const auto& a = leq(prem, 0);
        expect_shape(a.lhs, K::DepAnd, "a dependent conjunction on the left");
        const Stmt& q = *a.lhs;
        std::string eta = chosen_name(d, q.name, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::assume(eta, q.lhs)), rename_warrantor(q.rhs, q.name, eta),
                             a.rhs);
      }
      case R::DepAndUntranspose: {
        const auto& a = leq(prem, 0);
        auto [gamma, z] = split_last(a, ContextEntry::Kind::Assume);
        free_of(gamma, *a.rhs, z.name);
        return Judgment::leq(gamma, st::dep_and(z.name, z.stmt, a.lhs), a.rhs);
      }
      case R::DepImpTranspose: {
        const auto& a = leq(prem, 0);
        auto [gamma, z] = split_last(a, ContextEntry::Kind::Assume);
        free_of(gamma, *a.lhs, z.name);
        return Judgment::leq(gamma, a.lhs, st::dep_imp(z.name, z.stmt, a.rhs));
      }
      case R::DepImpUntranspose: {
        const auto& a = leq(prem, 0);
        expect_shape(a.rhs, K::DepImp, "a dependent implication on the right");
        const Stmt& q = *a.rhs;
        std::string eta = chosen_name(d, q.name, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::assume(eta, q.lhs)), a.lhs,
                             rename_warrantor(q.rhs, q.name, eta));
      }
      case R::Description: {
        const Context& ctx = *d.ctx_param("ctx");
        const std::string& z = *d.name_param("name");
        const ContextEntry* e = ctx.find(z);
        if (!e || e->kind != ContextEntry::Kind::Assume || e->stmt->kind != K::ExistsUniqueT)
          fail(KernelErrorKind::SideConditionFailed, "`" + z + "` is not an assumption of unique existence");
        const Stmt& q = *e->stmt;
        return Judgment::leq(ctx, st::top(), substitute(q.body, tm::desc(z), q.name));
      }
      case R::InclRefl: {
        const TermP& a = *d.term_param("set");
        return Judgment::incl(*d.ctx_param("ctx"), a, a);
      }
      case R::InclTrans: {
        const auto& a = incl(prem, 0);
        const auto& b = incl(prem, 1);
        same_context(a, b);
        if (!struct_eq(*a.rset, *b.lset, a.ctx))
          fail(KernelErrorKind::RuleMismatch,
               "`" + to_string(a.rset) + "` does not match `" + to_string(b.lset) + "`");
        return Judgment::incl(a.ctx, a.lset, b.rset);
      }
      case R::ComprTranspose: {
        const auto& a = incl(prem, 0);
        if (a.lset->kind != Term::Kind::Compr)
          fail(KernelErrorKind::RuleMismatch, "expected a comprehension on the left, got " + to_string(a.lset));
        const Term& c = *a.lset;
        std::string y = chosen_name(d, c.name, a.ctx);
        return Judgment::leq(a.ctx.with(ContextEntry::type_decl(y, c.type)), substitute(c.body, tm::var(y), c.name),
                             st::mem(tm::var(y), a.rset));
      }
      case R::ComprUntranspose: {
        const auto& a = leq(prem, 0);
        auto [gamma, x] = split_last(a, ContextEntry::Kind::TypeDecl);
        expect_shape(a.rhs, K::Mem, "a membership on the right");
        const Stmt& m = *a.rhs;
        if (m.left->kind != Term::Kind::Var || m.left->name != x.name)
          fail(KernelErrorKind::RuleMismatch, "membership must test the declared variable `" + x.name + "`");
        if (!meaningful_in(gamma, *m.set))
          fail(KernelErrorKind::SideConditionFailed, "`" + to_string(m.set) + "` depends on `" + x.name + "`");
        return Judgment::incl(gamma, tm::compr(x.name, x.type, a.lhs), m.set);
      }
    }
    fail(KernelErrorKind::RuleMismatch, "unknown rule");
  }

  const Signature& sig_;
  std::string fp_;
  bool use_cache_;
  Rule rule_ = Rule::Refl;
  std::vector<std::size_t> path_;
};

Judgment check(const Signature& sig, const Derivation& d) { return Checker(sig, false).visit(d); }
Judgment judgment_of(const Signature& sig, const Derivation& d) { return Checker(sig, true).visit(d); }

// ---------------------------------------------------------------------------

namespace rules {
namespace {
Params name_param(const std::string& name) {
  Params p;
  if (!name.empty()) p["name"] = name;
  return p;
}
}  // namespace

DerivP refl(const Context& ctx, StmtP e) { return make(Rule::Refl, {{"ctx", ctx}, {"stmt", std::move(e)}}); }
DerivP trans(DerivP a, DerivP b) { return make(Rule::Trans, {}, {std::move(a), std::move(b)}); }
DerivP top_intro(const Context& ctx, StmtP e) { return make(Rule::TopIntro, {{"ctx", ctx}, {"stmt", std::move(e)}}); }
DerivP and_intro(DerivP a, DerivP b) { return make(Rule::AndIntro, {}, {std::move(a), std::move(b)}); }
DerivP and_elim_l(const Context& ctx, StmtP e, StmtP f) {
  return make(Rule::AndElimL, {{"ctx", ctx}, {"left", std::move(e)}, {"right", std::move(f)}});
}
DerivP and_elim_r(const Context& ctx, StmtP e, StmtP f) {
  return make(Rule::AndElimR, {{"ctx", ctx}, {"left", std::move(e)}, {"right", std::move(f)}});
}
DerivP or_intro_l(const Context& ctx, StmtP e, StmtP f) {
  return make(Rule::OrIntroL, {{"ctx", ctx}, {"left", std::move(e)}, {"right", std::move(f)}});
}
DerivP or_intro_r(const Context& ctx, StmtP e, StmtP f) {
  return make(Rule::OrIntroR, {{"ctx", ctx}, {"left", std::move(e)}, {"right", std::move(f)}});
}
DerivP or_elim(DerivP a, DerivP b) { return make(Rule::OrElim, {}, {std::move(a), std::move(b)}); }
DerivP imp_intro(DerivP a) { return make(Rule::ImpIntro, {}, {std::move(a)}); }
DerivP imp_uncurry(DerivP a) { return make(Rule::ImpUncurry, {}, {std::move(a)}); }
DerivP forall_intro(DerivP a) { return make(Rule::ForallIntro, {}, {std::move(a)}); }
DerivP forall_transpose(DerivP a, std::string name) {
  return make(Rule::ForallTranspose, name_param(name), {std::move(a)});
}
DerivP exists_intro(DerivP a) { return make(Rule::ExistsIntro, {}, {std::move(a)}); }
DerivP exists_transpose(DerivP a, std::string name) {
  return make(Rule::ExistsTranspose, name_param(name), {std::move(a)});
}
DerivP subst(DerivP a, TermP term) { return make(Rule::Subst, {{"term", std::move(term)}}, {std::move(a)}); }
DerivP weaken(DerivP a, ContextEntry entry) {
  return make(Rule::Weaken, {{"entry", std::move(entry)}}, {std::move(a)});
}
DerivP special_fwd(DerivP a, std::string name) {
  return make(Rule::SpecialFwd, {{"name", std::move(name)}}, {std::move(a)});
}
DerivP special_bwd(DerivP a) { return make(Rule::SpecialBwd, {}, {std::move(a)}); }
DerivP dep_and_transpose(DerivP a, std::string name) {
  return make(Rule::DepAndTranspose, name_param(name), {std::move(a)});
}
DerivP dep_and_untranspose(DerivP a) { return make(Rule::DepAndUntranspose, {}, {std::move(a)}); }
DerivP dep_imp_transpose(DerivP a) { return make(Rule::DepImpTranspose, {}, {std::move(a)}); }
DerivP dep_imp_untranspose(DerivP a, std::string name) {
  return make(Rule::DepImpUntranspose, name_param(name), {std::move(a)});
}
DerivP description(const Context& ctx, std::string name) {
  return make(Rule::Description, {{"ctx", ctx}, {"name", std::move(name)}});
}
DerivP incl_refl(const Context& ctx, TermP set) { return make(Rule::InclRefl, {{"ctx", ctx}, {"set", std::move(set)}}); }
DerivP incl_trans(DerivP a, DerivP b) { return make(Rule::InclTrans, {}, {std::move(a), std::move(b)}); }
DerivP compr_transpose(DerivP a, std::string name) {
  return make(Rule::ComprTranspose, name_param(name), {std::move(a)});
}
DerivP compr_untranspose(DerivP a) { return make(Rule::ComprUntranspose, {}, {std::move(a)}); }
}  // namespace rules

namespace {
void preorder(const Derivation& d, std::vector<Rule>& out) {
  out.push_back(d.rule);
  for (const auto& p : d.premises)
    if (p) preorder(*p, out);
}
}  // namespace

std::vector<Rule> rule_sequence(const Derivation& d) {
  std::vector<Rule> out;
  preorder(d, out);
  return out;
}

std::vector<Rule> spine(const Derivation& d) {
  std::vector<Rule> out;
  for (const Derivation* n = &d; n; n = n->premises.empty() ? nullptr : n->premises[0].get()) out.push_back(n->rule);
  return {out.rbegin(), out.rend()};
}

}  // namespace depconj
