#include "depconj/fuzz.hpp"

#include <atomic>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "depconj/derived.hpp"

namespace depconj {

using namespace rules;

const Signature& fuzz_signature() {
  static const Signature sig = [] {
    Signature s;
    s.add_base_type("Nat");
    auto nat = Type::base("Nat");
    s.add_predicate({"P", {}, {}});
    s.add_predicate({"Q", {}, {}});
    s.add_predicate({"R", {}, {}});
    s.add_predicate({"S", {nat}, {}});
    s.add_function({"0", {}, nat, {}});
    return s;
  }();
  return sig;
}

namespace {

using K = Stmt::Kind;

class Generator {
 public:
  Generator(std::uint64_t seed, std::size_t index) : sig_(fuzz_signature()) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }

  DerivP derivation() {
    Context ctx = context();
    DerivP d;
    switch (pick(6)) {
      case 0: d = inclusion(ctx); break;
      case 1: d = leaf(ctx); break;
      default: d = from(ctx, stmt(ctx, 2), 2); break;
    }
    for (int steps = pick(4); steps > 0; --steps)
      if (DerivP next = unary(d)) d = next;
    return d;
  }

 private:
  int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }
  bool coin(int percent) { return pick(100) < percent; }

  Judgment j(const DerivP& d) { return judgment_of(sig_, *d); }

  // Keeps d when the kernel accepts it, else the fallback.
  DerivP accept(DerivP d, DerivP fallback) {
    if (!d) return fallback;
    try {
      judgment_of(sig_, *d);
      return d;
    } catch (const KernelError&) {
      return fallback;
    }
  }

  DerivP try_derive(DerivedRule r, const Context& ctx, const DeriveArgs& args) {
    try {
      return derive(sig_, r, ctx, args);
    } catch (const DeriveError&) {
      return nullptr;
    }
  }

  std::string fresh(const std::string& base, const Context& ctx, const std::vector<StmtP>& also = {}) {
    auto avoid = ctx.names();
    for (const auto& s : also) avoid.merge(free_names(*s));
    return fresh_name(base, avoid);
  }

  std::vector<std::string> vars_of(const Context& ctx, bool sets) {
    std::vector<std::string> out;
    for (const auto& e : ctx)
      if (e.kind == ContextEntry::Kind::TypeDecl && (e.type->kind == Type::Kind::Set) == sets) out.push_back(e.name);
    return out;
  }

  TermP nat(const Context& ctx) {
    auto vs = vars_of(ctx, false);
    if (vs.empty() || coin(25)) return tm::app("0", {});
    return tm::var(vs[pick(static_cast<int>(vs.size()))]);
  }

  StmtP atom(const Context& ctx) {
    auto sets = vars_of(ctx, true);
    switch (pick(sets.empty() ? 6 : 7)) {
      case 0: return st::pred("P");
      case 1: return st::pred("Q");
      case 2: return st::pred("R");
      case 3: return st::top();
      case 4:
      case 5: return st::pred("S", {nat(ctx)});
      default: return st::mem(nat(ctx), tm::var(sets[pick(static_cast<int>(sets.size()))]));
    }
  }

  StmtP stmt(const Context& ctx, int depth) {
    if (depth <= 0 || coin(30)) return atom(ctx);
    switch (pick(7)) {
      case 0:
      case 1: return st::conj(stmt(ctx, depth - 1), stmt(ctx, depth - 1));
      case 2: return st::disj(stmt(ctx, depth - 1), stmt(ctx, depth - 1));
      case 3: return st::imp(stmt(ctx, depth - 1), stmt(ctx, depth - 1));
      case 4: {
        std::string n = fresh("n", ctx);
        StmtP body = stmt(ctx.with(ContextEntry::type_decl(n, Type::base("Nat"))), depth - 1);
        return coin(50) ? st::forall_t(n, Type::base("Nat"), body) : st::exists_t(n, Type::base("Nat"), body);
      }
      default: {
        StmtP e = stmt(ctx, depth - 1);
        StmtP f = stmt(ctx, depth - 1);
        std::string z = fresh("z", ctx, {e, f});
        return coin(50) ? st::dep_and(z, e, f) : st::dep_imp(z, e, f);
      }
    }
  }

  Context context() {
    Context ctx;
    if (coin(50)) ctx = ctx.with(ContextEntry::type_decl("x", Type::base("Nat")));
    if (coin(25)) ctx = ctx.with(ContextEntry::type_decl("A", Type::set(Type::base("Nat"))));
    if (coin(30)) ctx = ctx.with(ContextEntry::assume("h", atom(ctx)));
    return ctx;
  }

  DerivP leaf(const Context& ctx) {
    switch (pick(6)) {
      case 0: {
        StmtP e = atom(ctx);
        std::string z = fresh("z", ctx);
        DeriveArgs args{{"name", z}, {"E", e}, {"H", stmt(ctx, 1)}};
        return accept(try_derive(DerivedRule::AssumptionTruth, ctx, args), refl(ctx, e));
      }
      case 1:
      case 2: {
        static const DerivedRule pool[] = {DerivedRule::DepAndEquivFwd, DerivedRule::DepAndEquivBwd,
                                           DerivedRule::DepImpEquivFwd, DerivedRule::DepImpEquivBwd,
                                           DerivedRule::DepModusPonens, DerivedRule::DepModusPonensSimplified};
        DerivedRule r = pool[pick(6)];
        StmtP e = stmt(ctx, 1);
        StmtP f = stmt(ctx, 1);
        std::string z = fresh("z", ctx, {e, f});
        const bool mp = r == DerivedRule::DepModusPonens || r == DerivedRule::DepModusPonensSimplified;
        DeriveArgs args{{"name", z}, {"E", e}, {mp ? "G" : "F", f}};
        return derive(sig_, r, ctx, args);
      }
      case 3: {
        StmtP e = stmt(ctx, 1);
        StmtP f = stmt(ctx, 1);
        switch (pick(4)) {
          case 0: return and_elim_l(ctx, e, f);
          case 1: return and_elim_r(ctx, e, f);
          case 2: return or_intro_l(ctx, e, f);
          default: return or_intro_r(ctx, e, f);
        }
      }
      case 4: {
        // A unit or counit of one of the basic adjunctions.
        static const char* adjs[] = {"and", "or", "imp", "forall", "exists", "depand", "depimp"};
        std::string adj = adjs[pick(7)];
        const bool unit = coin(50);
        StmtP e = stmt(ctx, 1);
        StmtP f = stmt(ctx, 1);
        DeriveArgs args{{"adj", adj}};
        if (adj == "and") {
          args["E"] = e;
          if (!unit) args.insert({{"F", f}, {"component", std::string(coin(50) ? "l" : "r")}});
        } else if (adj == "or") {
          if (unit)
            args.insert({{"E", e}, {"F", f}, {"component", std::string(coin(50) ? "l" : "r")}});
          else
            args["G"] = e;
        } else if (adj == "imp") {
          args.insert({{"F", f}, {unit ? "E" : "G", e}});
        } else if (adj == "forall" || adj == "exists") {
          std::string y = fresh("y", ctx, {e});
          args["decl"] = ContextEntry::type_decl(y, Type::base("Nat"));
          Context inner = ctx.with(ContextEntry::type_decl(y, Type::base("Nat")));
          StmtP body = (adj == "forall") == unit ? e : stmt(inner, 1);
          args[unit ? "E" : "G"] = body;
        } else {
          std::string z = fresh("z", ctx, {e, f});
          args["assume"] = ContextEntry::assume(z, e);
          args[unit ? "F" : "G"] = f;
        }
        return derive(sig_, unit ? DerivedRule::UnitOf : DerivedRule::CounitOf, ctx, args);
      }
      default: return coin(50) ? refl(ctx, stmt(ctx, 2)) : top_intro(ctx, stmt(ctx, 2));
    }
  }

  // Some derivation whose left side is l.
  DerivP from(const Context& ctx, StmtP l, int depth) {
    DerivP base = coin(50) ? refl(ctx, l) : top_intro(ctx, l);
    if (depth <= 0) return base;
    switch (pick(11)) {
      case 0: return base;
      case 1: {
        DerivP a = from(ctx, l, depth - 1);
        return accept(trans(a, from(ctx, j(a).rhs, depth - 1)), base);
      }
      case 2: return accept(and_intro(from(ctx, l, depth - 1), from(ctx, l, depth - 1)), base);
      case 3: return accept(imp_intro(from(ctx, st::conj(l, atom(ctx)), depth - 1)), base);
      case 4: {
        std::string y = fresh("y", ctx, {l});
        return accept(forall_intro(from(ctx.with(ContextEntry::type_decl(y, Type::base("Nat"))), l, depth - 1)), base);
      }
      case 5: {
        StmtP e = atom(ctx);
        std::string z = fresh("z", ctx, {l, e});
        return accept(dep_imp_transpose(from(ctx.with(ContextEntry::assume(z, e)), l, depth - 1)), base);
      }
      case 6: {
        // Left side split along its own shape, when it has one.
        if (l->kind == K::And)
          return coin(50) ? and_elim_l(ctx, l->lhs, l->rhs) : and_elim_r(ctx, l->lhs, l->rhs);
        if (l->kind == K::Or) {
          DerivP a = from(ctx, l->lhs, depth - 1);
          DerivP b = from(ctx, l->rhs, depth - 1);
          StmtP ra = j(a).rhs, rb = j(b).rhs;
          return accept(or_elim(trans(a, or_intro_l(ctx, ra, rb)), trans(b, or_intro_r(ctx, ra, rb))), base);
        }
        if (l->kind == K::ExistsT) {
          std::string y = fresh(l->name, ctx);
          Context inner = ctx.with(ContextEntry::type_decl(y, l->type));
          return accept(exists_intro(from(inner, substitute(l->body, tm::var(y), l->name), depth - 1)), base);
        }
        if (l->kind == K::DepAnd) {
          if (coin(50)) {
            DeriveArgs args{{"name", l->name}, {"E", l->lhs}, {"F", l->rhs}};
            return accept(try_derive(DerivedRule::DepAndEquivFwd, ctx, args), base);
          }
          std::string z = fresh(l->name, ctx);
          Context inner = ctx.with(ContextEntry::assume(z, l->lhs));
          return accept(dep_and_untranspose(from(inner, rename_warrantor(l->rhs, l->name, z), depth - 1)), base);
        }
        return or_intro_l(ctx, l, atom(ctx));
      }
      case 7: return or_intro_r(ctx, atom(ctx), l);
      case 8: {
        DerivP a = from(ctx, l, depth - 1);
        if (DerivP u = unary(a)) {
          const Judgment ju = j(u);
          if (context_eq(ju.ctx, ctx) && ju.kind == Judgment::Kind::Leq && struct_eq(ju.lhs, l, ctx)) return u;
        }
        return a;
      }
      default: {
        DerivP a = from(ctx, l, depth - 1);
        return accept(trans(a, or_intro_l(ctx, j(a).rhs, atom(ctx))), base);
      }
    }
  }

  DerivP inclusion(const Context& ctx0) {
    Context ctx = ctx0;
    if (vars_of(ctx, true).empty()) ctx = ctx.with(ContextEntry::type_decl("A", Type::set(Type::base("Nat"))));
    TermP a = tm::var(vars_of(ctx, true).back());
    std::string y = fresh("y", ctx);
    Context cy = ctx.with(ContextEntry::type_decl(y, Type::base("Nat")));
    StmtP mem = st::mem(tm::var(y), a);
    DerivP d;
    switch (pick(4)) {
      case 0: d = incl_refl(ctx, a); break;
      case 1: d = compr_untranspose(and_elim_l(cy, mem, stmt(cy, 1))); break;
      case 2: {
        // Through an assumption of membership.
        std::string h = fresh("w", cy);
        DeriveArgs args{{"name", h}, {"E", mem}, {"H", stmt(cy, 1)}};
        d = compr_untranspose(special_bwd(derive(sig_, DerivedRule::AssumptionTruth, cy, args)));
        break;
      }
      default: {
        DeriveArgs args{{"adj", std::string("compr")}, {"decl", ContextEntry::type_decl(y, Type::base("Nat"))}};
        if (coin(50)) {
          args["A"] = a;
          d = derive(sig_, DerivedRule::CounitOf, ctx, args);
        } else {
          args["E"] = stmt(cy, 1);
          return derive(sig_, DerivedRule::UnitOf, ctx, args);
        }
      }
    }
    if (coin(50)) d = accept(incl_trans(d, incl_refl(ctx, j(d).rset)), d);
    if (coin(30)) d = accept(incl_trans(incl_refl(ctx, j(d).lset), d), d);
    if (coin(60) && j(d).lset->kind == Term::Kind::Compr) d = accept(compr_transpose(d), d);
    return d;
  }

  // A random rule whose premise shape matches d, or null.
  DerivP unary(const DerivP& d) {
    const Judgment a = j(d);
    std::vector<std::function<DerivP()>> moves;
    const ContextEntry* last = a.ctx.empty() ? nullptr : &a.ctx.back();
    // Weakening applies to everything.
    moves.push_back([&] {
      if (coin(50)) return weaken(d, ContextEntry::type_decl(fresh("y", a.ctx), Type::base("Nat")));
      return weaken(d, ContextEntry::assume(fresh("h", a.ctx), atom(a.ctx)));
    });
    if (a.kind == Judgment::Kind::Incl) {
      if (a.lset->kind == Term::Kind::Compr) moves.push_back([&] { return compr_transpose(d); });
    } else {
      if (a.lhs->kind == K::And) {
        moves.push_back([&] { return imp_intro(d); });
        moves.push_back([&] { return special_fwd(d, fresh("z", a.ctx)); });
      }
      if (a.rhs->kind == K::Imp) moves.push_back([&] { return imp_uncurry(d); });
      if (a.rhs->kind == K::ForallT) moves.push_back([&] { return forall_transpose(d); });
      if (a.lhs->kind == K::ExistsT) moves.push_back([&] { return exists_transpose(d); });
      if (a.lhs->kind == K::DepAnd) moves.push_back([&] { return dep_and_transpose(d); });
      if (a.rhs->kind == K::DepImp) moves.push_back([&] { return dep_imp_untranspose(d); });
      if (last && last->kind == ContextEntry::Kind::TypeDecl) {
        moves.push_back([&] { return forall_intro(d); });
        moves.push_back([&] { return exists_intro(d); });
        if (a.rhs->kind == K::Mem) moves.push_back([&] { return compr_untranspose(d); });
        if (last->type->kind == Type::Kind::Base) {
          Context prefix = a.ctx.prefix(a.ctx.size() - 1);
          moves.push_back([&, prefix] { return subst(d, nat(prefix)); });
        }
      }
      if (last && last->kind == ContextEntry::Kind::Assume) {
        moves.push_back([&] { return special_bwd(d); });
        moves.push_back([&] { return dep_and_untranspose(d); });
        moves.push_back([&] { return dep_imp_transpose(d); });
      }
    }
    for (int tries = 0; tries < 3; ++tries) {
      DerivP next = moves[pick(static_cast<int>(moves.size()))]();
      try {
        judgment_of(sig_, *next);
        return next;
      } catch (const KernelError&) {
      }
    }
    return nullptr;
  }

  const Signature& sig_;
  std::mt19937_64 rng_;
};

}  // namespace

DerivP fuzz_derivation(std::uint64_t seed, std::size_t index) { return Generator(seed, index).derivation(); }

double FuzzReport::coverage_fraction() const {
  std::size_t used = 0;
  for (auto r : all_rules())
    if (auto it = coverage.find(r); it != coverage.end() && it->second > 0) ++used;
  return static_cast<double>(used) / static_cast<double>(all_rules().size());
}

std::string FuzzReport::text() const {
  std::ostringstream out;
  out << "fuzz seed=" << seed << " count=" << count << " models=";
  for (std::size_t i = 0; i < models.size(); ++i) out << (i ? "," : "") << models[i];
  out << "\nchecked " << checked << ", unsupported " << unsupported << ", rejected " << rejected << ", failures "
      << failures.size() << "\n";
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.1f", 100.0 * coverage_fraction());
  out << "rule coverage " << pct << "%\n";
  for (auto r : all_rules()) {
    auto it = coverage.find(r);
    out << "  " << to_string(r) << " " << (it == coverage.end() ? 0 : it->second) << "\n";
  }
  for (const auto& f : failures)
    out << "failure #" << f.index << " in " << f.model << ": " << f.judgment << "\n  " << f.counterexample << "\n";
  return out.str();
}

std::string FuzzReport::json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["count"] = count;
  j["models"] = models;
  j["checked"] = checked;
  j["unsupported"] = unsupported;
  j["rejected"] = rejected;
  j["coverage_fraction"] = coverage_fraction();
  nlohmann::ordered_json cov = nlohmann::ordered_json::object();
  for (auto r : all_rules()) {
    auto it = coverage.find(r);
    cov[to_string(r)] = it == coverage.end() ? 0 : it->second;
  }
  j["coverage"] = cov;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures)
    j["failures"].push_back({{"index", f.index},
                             {"model", f.model},
                             {"judgment", f.judgment},
                             {"counterexample", f.counterexample},
                             {"derivation", f.derivation}});
  return j.dump(2);
}

FuzzReport fuzz(const FuzzOptions& opts) {
  std::vector<const HeytingModel*> models = opts.models;
  if (models.empty())
    for (const auto& m : catalogue()) models.push_back(&m);

  struct Outcome {
    enum { Checked, Unsupported, Rejected } status = Rejected;
    std::set<Rule> rules;
    std::vector<FuzzFailure> failures;
  };
  std::vector<Outcome> outcomes(opts.count);
  const Signature& sig = fuzz_signature();

  auto run_one = [&](std::size_t i) {
    Outcome& o = outcomes[i];
    DerivP d;
    Judgment jd;
    try {
      d = fuzz_derivation(opts.seed, i);
      jd = check(sig, *d);
    } catch (const KernelError&) {
      o.status = Outcome::Rejected;
      return;
    } catch (const DeriveError&) {
      o.status = Outcome::Rejected;
      return;
    }
    try {
      for (const HeytingModel* m : models)
        if (auto ce = check_soundness(sig, *m, jd))
          o.failures.push_back({i, m->name(), to_string(jd), ce->str(), to_text(*d)});
    } catch (const ModelError&) {
      o.status = Outcome::Unsupported;
      return;
    }
    o.status = Outcome::Checked;
    auto seq = rule_sequence(*d);
    o.rules.insert(seq.begin(), seq.end());
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, opts.count)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < opts.count;) run_one(i);
    });
  for (auto& t : pool) t.join();

  FuzzReport r;
  r.seed = opts.seed;
  r.count = opts.count;
  for (const HeytingModel* m : models) r.models.push_back(m->name());
  for (const auto& o : outcomes) {
    switch (o.status) {
      case Outcome::Checked: ++r.checked; break;
      case Outcome::Unsupported: ++r.unsupported; break;
      case Outcome::Rejected: ++r.rejected; break;
    }
    for (Rule rule : o.rules) ++r.coverage[rule];
    r.failures.insert(r.failures.end(), o.failures.begin(), o.failures.end());
  }
  return r;
}

}  // namespace depconj
