// Acceptance run: one line per criterion, PASS or FAIL, with the measured
// numbers. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "depconj/fuzz.hpp"
#include "depconj/parser.hpp"
#include "depconj/script.hpp"

using namespace depconj;
using R = Rule;

namespace {

// Pinned limits.
constexpr double kChainSeconds = 1.0;
constexpr double kSoundnessSeconds = 5.0;
constexpr double kFuzzSeconds = 60.0;
constexpr double kFuzzCoverage = 0.95;
constexpr std::uint64_t kFuzzSeed = 42;
constexpr std::size_t kFuzzCount = 10000;
constexpr int kRandomMaps = 100;
constexpr int kRandomPosetMax = 6;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::filesystem::path corpus_dir = DEPCONJ_CORPUS_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  require(static_cast<bool>(in), "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus_scripts() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
    if (e.path().extension() == ".prf" && e.path().filename() != "meaningless.prf") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

DeriveArgs args_of(const Signature& sig, const std::map<std::string, std::string>& raw) {
  return parse_derive_args(raw, &sig);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

// Named derived rules on small statements over P, Q, R.
struct Instance {
  DerivedRule rule;
  std::string ctx;
  std::map<std::string, std::string> args;
};

const std::vector<std::string> kOperands = {"P", "Q", "P /\\ R", "P => Q", "Q \\/ R", "top"};

std::vector<Instance> dependent_instances() {
  std::vector<Instance> out;
  for (const auto& e : kOperands) {
    out.push_back({DerivedRule::AssumptionTruth, "[]", {{"name", "z"}, {"E", e}}});
    out.push_back({DerivedRule::AssumptionTruth, "[]", {{"name", "z"}, {"E", e}, {"H", "Q /\\ R"}}});
    for (const auto& g : kOperands) {
      out.push_back({DerivedRule::DepModusPonens, "[]", {{"name", "z"}, {"E", e}, {"G", g}}});
      out.push_back({DerivedRule::DepModusPonensSimplified, "[]", {{"name", "z"}, {"E", e}, {"G", g}}});
    }
  }
  out.push_back({DerivedRule::DepModusPonens, "[x : Nat]", {{"name", "z"}, {"E", "S(x)"}, {"G", "S(0) \\/ P"}}});
  out.push_back({DerivedRule::DepModusPonensSimplified, "[x : Nat]", {{"name", "z"}, {"E", "S(x)"}, {"G", "S(x)"}}});
  out.push_back({DerivedRule::AssumptionTruth, "[x : Nat]", {{"name", "z"}, {"E", "exists y : Nat . S(y)"}}});
  return out;
}

DerivP build(const Signature& sig, const Instance& i) {
  return derive(sig, i.rule, parse_context(i.ctx, &sig), args_of(sig, i.args));
}

Judgment erased(const Judgment& j) {
  std::vector<ContextEntry> entries;
  for (ContextEntry e : j.ctx) {
    if (e.kind == ContextEntry::Kind::Assume) e.stmt = erase(e.stmt);
    entries.push_back(std::move(e));
  }
  return Judgment::leq(Context(std::move(entries)), erase(j.lhs), erase(j.rhs));
}

// ---------------------------------------------------------------------------

std::string criterion1() {
  const Signature& sig = fuzz_signature();
  struct Chain {
    DerivedRule rule;
    const char* conclusion;
    std::vector<R> steps;  // reflexivity / adjunction, special rule, transposition
  };
  const std::vector<Chain> chains = {
      {DerivedRule::DepAndEquivFwd, "[] |- [z |- P] /\\ Q <= P /\\ Q", {R::Refl, R::SpecialFwd, R::DepAndUntranspose}},
      {DerivedRule::DepAndEquivBwd, "[] |- P /\\ Q <= [z |- P] /\\ Q", {R::Refl, R::DepAndTranspose, R::SpecialBwd}},
      {DerivedRule::DepImpEquivFwd, "[] |- P => Q <= [z |- P] => Q",
       {R::Refl, R::ImpUncurry, R::SpecialFwd, R::DepImpTranspose}},
      {DerivedRule::DepImpEquivBwd, "[] |- [z |- P] => Q <= P => Q",
       {R::Refl, R::DepImpUntranspose, R::SpecialBwd, R::ImpIntro}},
  };
  auto t0 = std::chrono::steady_clock::now();
  std::size_t n = 0;
  for (const auto& c : chains) {
    DerivP d = derive(sig, c.rule, {}, args_of(sig, {{"name", "z"}, {"E", "P"}, {"F", "Q"}}));
    Judgment j = check(sig, *d);
    require(to_string(j) == c.conclusion, std::string(to_string(c.rule)) + " concludes " + to_string(j));
    require(main_line(*d) == c.steps, std::string(to_string(c.rule)) + ": main line differs");
    for (const auto& e : kOperands)
      for (const auto& f : kOperands) {
        check(sig, *derive(sig, c.rule, {}, args_of(sig, {{"name", "z"}, {"E", e}, {"F", f}})));
        ++n;
      }
  }
  Script s = parse_script(slurp(corpus_dir / "equivalences.prf"));
  auto results = check_script(s);
  require(results.size() == 4, "equivalences.prf has " + std::to_string(results.size()) + " claims");
  for (const auto& r : results) require(r.ok, r.label + ": " + r.error);
  double t = seconds_since(t0);
  require(t < kChainSeconds, "took " + fmt_seconds(t));
  return "4 chains, main lines match, " + std::to_string(n) + " instances, equivalences.prf 4/4 ok, " + fmt_seconds(t);
}

std::string criterion2() {
  const Signature& sig = fuzz_signature();
  auto t0 = std::chrono::steady_clock::now();
  std::size_t checks = 0;
  auto instances = dependent_instances();
  for (const auto& i : instances) {
    DerivP d = build(sig, i);
    Judgment j = erased(check(sig, *d));
    for (const auto& m : catalogue()) {
      auto cex = check_soundness(sig, m, j);
      require(!cex, std::string(to_string(i.rule)) + ": " + cex.value_or(Counterexample{}).str());
      ++checks;
    }
  }
  double t = seconds_since(t0);
  require(t < kSoundnessSeconds, "took " + fmt_seconds(t));
  return std::to_string(instances.size()) + " instances, " + std::to_string(checks) + " model checks, " +
         fmt_seconds(t);
}

std::string criterion3() {
  Script s = parse_script("type Nat; pred S(Nat); context [X : Set(Nat); y : Nat];");
  const Signature& sig = s.sig;
  const std::vector<std::pair<std::string, std::string>> goldens = {
      {"forall x in X . S(x)", "forall x : Nat . [w_x |- x in X] => S(x)"},
      {"exists x in X . S(x)", "exists x : Nat . [w_x |- x in X] /\\ S(x)"},
      {"y in { x in X | S(x) }", "y in { x : Nat | [w_x |- x in X] /\\ S(x) }"},
  };
  std::vector<StmtP> lowered;
  for (const auto& [high, low] : goldens) {
    ElabResult r = lower(sig, s.context, parse_statement(high, &sig));
    require(to_string(r.statement) == low, high + " became " + to_string(r.statement));
    lowered.push_back(r.statement);
  }
  Context g = parse_context("[X : Set(Nat)]", &sig);
  auto adj = [&](DerivedRule r) {
    DerivP d = derive(sig, r, g, args_of(sig, {{"var", "x"}, {"set", "X"}, {"body", "S(x)"}}));
    return check(sig, *d);
  };
  Judgment fa = adj(DerivedRule::ElabForallAdj);
  require(struct_eq(fa.lhs, lowered[0], fa.ctx), "ElabForallAdj left side " + to_string(fa.lhs));
  Judgment ex = adj(DerivedRule::ElabExistsAdj);
  require(struct_eq(ex.rhs, lowered[1], ex.ctx), "ElabExistsAdj right side " + to_string(ex.rhs));
  Judgment co = adj(DerivedRule::ElabComprAdj);
  StmtP at_x = lower(sig, parse_context("[X : Set(Nat); x : Nat]", &sig),
                     parse_statement("x in { x in X | S(x) }", &sig))
                   .statement;
  require(struct_eq(co.rhs, at_x, co.ctx), "ElabComprAdj right side " + to_string(co.rhs));
  return "3 goldens byte-exact, ElabForallAdj/ElabExistsAdj/ElabComprAdj check";
}

std::string criterion4() {
  Script s = parse_script(slurp(corpus_dir / "infimum.prf"));
  const Signature& sig = s.sig;
  ElabResult ok = lower_statement(sig, s.context, parse_statement("nonempty(A) /\\ inf(A) = 0", &sig));
  require(to_string(ok.statement) == "[z |- nonempty(A)] /\\ inf(A, @z) = 0",
          "resolved to " + to_string(ok.statement));
  require(!meaningful(sig, s.context, *ok.statement), "resolved statement is not meaningful");
  bool unbound = false;
  try {
    lower_statement(sig, s.context, parse_statement("inf(A) = 0 /\\ nonempty(A)", &sig));
  } catch (const DiagnosticError& e) {
    unbound = e.diagnostic().kind == DiagKind::UnboundWarrantor && e.diagnostic().subject == "inf(A, @_)";
  }
  require(unbound, "reversed order did not give UnboundWarrantor on inf(A, @_)");

  bool described = false;
  for (const auto& r : check_script(s)) {
    if (r.label != "claim description") continue;
    require(r.ok, r.error);
    const Judgment& j = *r.judgment;
    const ContextEntry* z = j.ctx.find("z");
    require(z && z->stmt->kind == Stmt::Kind::ExistsUniqueT, "no exists! assumption");
    StmtP want = substitute(z->stmt->body, tm::desc("z"), z->stmt->name);
    require(j.lhs->kind == Stmt::Kind::Top && struct_eq(j.rhs, want, j.ctx),
            "description concludes " + to_string(j));
    described = true;
  }
  require(described, "infimum.prf has no description claim");
  return "dependent reading resolves, reversed gives UnboundWarrantor, description gives top <= lower_bound(desc(z), A)";
}

std::string criterion5() {
  FuzzOptions o;
  o.seed = kFuzzSeed;
  o.count = kFuzzCount;
  auto t0 = std::chrono::steady_clock::now();
  FuzzReport a = fuzz(o);
  double t = seconds_since(t0);
  o.threads = 1;
  FuzzReport b = fuzz(o);
  require(a.failures.empty(), std::to_string(a.failures.size()) + " counterexamples, first: " +
                                  (a.failures.empty() ? "" : a.failures[0].counterexample));
  require(a.coverage_fraction() >= kFuzzCoverage, "coverage " + std::to_string(a.coverage_fraction()));
  require(a.text() == b.text() && a.json() == b.json(), "reports differ between runs");
  require(t < kFuzzSeconds, "took " + fmt_seconds(t));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu checked, %zu unsupported, 0 counterexamples, coverage %.1f%%, deterministic, %s",
                a.checked, a.unsupported, 100.0 * a.coverage_fraction(), fmt_seconds(t).c_str());
  return buf;
}

// Every monotone map p -> q.
std::vector<MonotoneMap> monotone_maps(const FinitePoset& p, const FinitePoset& q) {
  std::vector<MonotoneMap> out;
  std::vector<int> table(p.size(), 0);
  std::function<void(int)> go = [&](int x) {
    if (x == p.size()) {
      out.push_back({p, q, table});
      return;
    }
    for (int y = 0; y < q.size(); ++y) {
      bool ok = true;
      for (int w = 0; w < x && ok; ++w) {
        if (p.leq(w, x) && !q.leq(table[w], y)) ok = false;
        if (p.leq(x, w) && !q.leq(y, table[w])) ok = false;
      }
      if (!ok) continue;
      table[x] = y;
      go(x + 1);
    }
  };
  go(0);
  return out;
}

FinitePoset random_poset(std::mt19937_64& rng, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> less;
  std::bernoulli_distribution edge(0.35);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) less.push_back({i, j});
  return FinitePoset::from_order(names, less);
}

MonotoneMap random_monotone(std::mt19937_64& rng, const FinitePoset& p, const FinitePoset& q) {
  // Indices are a linear extension of p, so each choice only has to sit
  // above the images of earlier elements below it.
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<int> table(p.size());
    bool stuck = false;
    for (int x = 0; x < p.size() && !stuck; ++x) {
      std::vector<int> options;
      for (int y = 0; y < q.size(); ++y) {
        bool ok = true;
        for (int w = 0; w < x && ok; ++w)
          if (p.leq(w, x) && !q.leq(table[w], y)) ok = false;
        if (ok) options.push_back(y);
      }
      if (options.empty()) {
        stuck = true;
        break;
      }
      table[x] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    }
    if (!stuck) return {p, q, table};
  }
  return {p, q, std::vector<int>(p.size(), 0)};
}

// Whether f sends the meet (or, dually, the join) of every subset of its
// domain that has one to the meet of the image. Subsets are walked
// depth-first with their sets of lower bounds as bitmasks.
bool preserves(const MonotoneMap& f, bool meets) {
  auto masks = [meets](const FinitePoset& p) {
    std::vector<std::uint32_t> m(p.size(), 0);  // lower (upper) cone of each element
    for (int x = 0; x < p.size(); ++x)
      for (int w = 0; w < p.size(); ++w)
        if (meets ? p.leq(w, x) : p.leq(x, w)) m[x] |= 1u << w;
    return m;
  };
  const auto dom = masks(f.from), cod = masks(f.to);
  auto extreme = [](std::uint32_t set, const std::vector<std::uint32_t>& cone) -> int {
    for (int b = 0; b < static_cast<int>(cone.size()); ++b)
      if ((set >> b & 1) && (set & ~cone[b]) == 0) return b;
    return -1;
  };
  const std::uint32_t all_dom = f.from.size() == 32 ? ~0u : (1u << f.from.size()) - 1;
  const std::uint32_t all_cod = f.to.size() == 32 ? ~0u : (1u << f.to.size()) - 1;
  bool ok = true;
  std::function<void(int, std::uint32_t, std::uint32_t)> walk = [&](int k, std::uint32_t bounds, std::uint32_t image) {
    if (!ok) return;
    int m = extreme(bounds, dom);
    if (m >= 0 && extreme(image, cod) != f(m)) ok = false;
    for (int y = k; y < f.from.size(); ++y) walk(y + 1, bounds & dom[y], image & cod[f(y)]);
  };
  walk(0, all_dom, all_cod);
  return ok;
}

// Whether f has an adjoint on `side`, straight from the definition: for a
// right adjoint every {x | f(x) <= y} has a greatest element, for a left one
// every {x | y <= f(x)} has a least element.
bool adjoint_exists(AdjointSide side, const MonotoneMap& f) {
  if (side == AdjointSide::Right) {
    for (int y = 0; y < f.to.size(); ++y) {
      std::vector<int> below;
      for (int x = 0; x < f.from.size(); ++x)
        if (f.to.leq(f(x), y)) below.push_back(x);
      bool top = false;
      for (int m : below) {
        bool greatest = true;
        for (int x : below) greatest = greatest && f.from.leq(x, m);
        top = top || greatest;
      }
      if (!top) return false;
    }
    return true;
  }
  for (int y = 0; y < f.to.size(); ++y) {
    std::vector<int> above;
    for (int x = 0; x < f.from.size(); ++x)
      if (f.to.leq(y, f(x))) above.push_back(x);
    bool bottom = false;
    for (int m : above) {
      bool least = true;
      for (int x : above) least = least && f.from.leq(m, x);
      bottom = bottom || least;
    }
    if (!bottom) return false;
  }
  return true;
}

struct AdjointTally {
  std::size_t maps = 0, adjunctions = 0;
};

void check_adjoints(const MonotoneMap& f, AdjointTally& tally) {
  ++tally.maps;
  for (auto side : {AdjointSide::Left, AdjointSide::Right}) {
    std::optional<MonotoneMap> up, down;
    try {
      up = compute_adjoint(side, f, SearchOrder::Ascending);
    } catch (const ModelError&) {
    }
    try {
      down = compute_adjoint(side, f, SearchOrder::Descending);
    } catch (const ModelError&) {
    }
    require(up.has_value() == adjoint_exists(side, f), "adjoint existence disagrees with the definition");
    require(up.has_value() == down.has_value(), "search orders disagree on existence");
    if (!up) continue;
    require(up->table == down->table, "search orders found different adjoints");
    ++tally.adjunctions;
    const MonotoneMap& l = side == AdjointSide::Right ? f : *up;
    const MonotoneMap& r = side == AdjointSide::Right ? *up : f;
    for (int x = 0; x < l.from.size(); ++x)
      for (int y = 0; y < r.from.size(); ++y)
        require(l.to.leq(l(x), y) == l.from.leq(x, r(y)), "not a Galois connection");
    for (int x = 0; x < l.from.size(); ++x) require(l.from.leq(x, r(l(x))), "unit fails");
    for (int y = 0; y < r.from.size(); ++y) require(r.from.leq(l(r(y)), y), "counit fails");
    require(preserves(l, false), "left adjoint does not preserve a join");
    require(preserves(r, true), "right adjoint does not preserve a meet");
  }
}

std::string criterion6() {
  AdjointTally tally;
  for (const auto& m : catalogue()) {
    FinitePoset p = m.order();
    const int n = p.size();
    MonotoneMap delta{p, FinitePoset::product(p, p), {}};
    for (int x = 0; x < n; ++x) delta.table.push_back(x * n + x);
    MonotoneMap meet = compute_adjoint(AdjointSide::Right, delta);
    MonotoneMap join = compute_adjoint(AdjointSide::Left, delta);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        require(meet(a * n + b) == m.meet(a, b), m.name() + ": right adjoint of the diagonal is not meet");
        require(join(a * n + b) == m.join(a, b), m.name() + ": left adjoint of the diagonal is not join");
      }
    check_adjoints(delta, tally);
  }
  for (const auto& a : catalogue())
    for (const auto& b : catalogue())
      for (const auto& f : monotone_maps(a.order(), b.order())) check_adjoints(f, tally);
  const std::size_t catalogue_maps = tally.maps;

  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> size(1, kRandomPosetMax);
  for (int i = 0; i < kRandomMaps; ++i) {
    FinitePoset p = random_poset(rng, size(rng));
    FinitePoset q = random_poset(rng, size(rng));
    MonotoneMap f = random_monotone(rng, p, q);
    require(f.is_monotone(), "generated map is not monotone");
    check_adjoints(f, tally);
  }
  return "meet and join from the diagonal on " + std::to_string(catalogue().size()) + " lattices, " +
         std::to_string(catalogue_maps) + " catalogue maps + " + std::to_string(kRandomMaps) + " random maps, " +
         std::to_string(tally.adjunctions) + " adjunctions verified";
}

Judgment rename_judgment(const Judgment& j, const std::string& from, const std::string& to) {
  std::vector<ContextEntry> entries;
  for (ContextEntry e : j.ctx) {
    if (e.name == from) e.name = to;
    if (e.stmt) e.stmt = rename_everywhere(e.stmt, from, to);
    if (e.set) e.set = rename_everywhere(e.set, from, to);
    entries.push_back(std::move(e));
  }
  Context ctx(std::move(entries));
  if (j.kind == Judgment::Kind::Leq)
    return Judgment::leq(ctx, rename_everywhere(j.lhs, from, to), rename_everywhere(j.rhs, from, to));
  return Judgment::incl(ctx, rename_everywhere(j.lset, from, to), rename_everywhere(j.rset, from, to));
}

// Declares `copy`, with the statement of the root's `z`, right after that
// declaration wherever it is in scope. `at` is its index in the root
// context. A node that introduces it gets a weakening for the copy.
DerivP with_duplicate(const Signature& sig, const Derivation& d, const std::string& z, const std::string& copy,
                      std::size_t at, bool in_scope = true) {
  Params params;
  for (const auto& [key, value] : d.params) {
    const auto* c = std::get_if<Context>(&value);
    if (!in_scope || !c || c->size() <= at || (*c)[at].name != z) {
      params[key] = value;
      continue;
    }
    std::vector<ContextEntry> entries = c->entries();
    entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(at) + 1, ContextEntry::assume(copy, (*c)[at].stmt));
    params[key] = Context(std::move(entries));
  }
  std::vector<DerivP> premises;
  for (const auto& p : d.premises) {
    const Context& pc = judgment_of(sig, *p).ctx;
    const bool below = in_scope && pc.size() > at && pc[at].name == z;
    premises.push_back(with_duplicate(sig, *p, z, copy, at, below));
  }
  DerivP out = make(d.rule, std::move(params), std::move(premises));
  if (!in_scope) return out;
  Judgment j = check(sig, *out);
  require(j.ctx.size() > at && j.ctx[at].name == z, "lost track of `" + z + "`");
  if (!j.ctx.declares(copy)) out = rules::weaken(out, ContextEntry::assume(copy, j.ctx[at].stmt));
  return out;
}

std::string criterion7() {
  std::size_t renames = 0, duplicates = 0, redirections = 0, swaps = 0, claims = 0;
  for (const auto& path : corpus_scripts()) {
    Script s = parse_script(slurp(path));
    for (const auto& r : check_script(s)) {
      if (!r.derivation) continue;
      require(r.ok, path.filename().string() + " " + r.label + ": " + r.error);
      ++claims;
      const Judgment& j = *r.judgment;
      std::set<std::string> avoid = names_in(*r.derivation);
      for (const auto& n : j.ctx.names()) avoid.insert(n);
      for (std::size_t i = 0; i < j.ctx.size(); ++i) {
        const ContextEntry& e = j.ctx[i];
        const std::string label = path.filename().string() + " " + r.label + " `" + e.name + "`";
        std::string fresh = fresh_name(e.name + "_r", avoid);
        Judgment got = check(s.sig, *rename_in_derivation(*r.derivation, e.name, fresh));
        require(judgment_eq(got, rename_judgment(j, e.name, fresh)), label + ": renaming changed the conclusion");
        ++renames;
        if (e.kind != ContextEntry::Kind::Assume) continue;

        std::string copy = fresh_name(e.name + "_dup", avoid);
        DerivP dup = with_duplicate(s.sig, *r.derivation, e.name, copy, i);
        Judgment before = check(s.sig, *dup);
        DerivP redirected = redirect_warrant(*dup, e.name, copy);
        Judgment after = check(s.sig, *redirected);
        if (to_text(*redirected) != to_text(*dup)) ++redirections;
        require(judgment_eq(before, after), label + ": swapping for a duplicate changed the conclusion");
        require(struct_eq(before.lhs ? before.lhs : st::top(), j.lhs ? j.lhs : st::top(), before.ctx),
                label + ": duplicate changed the left side");
        ++duplicates;

        // Assumptions already duplicated in the claim's own context.
        for (std::size_t k = 0; k < j.ctx.size(); ++k) {
          const ContextEntry& o = j.ctx[k];
          if (k == i || o.kind != ContextEntry::Kind::Assume) continue;
          if (!struct_eq(e.stmt, o.stmt, j.ctx.prefix(std::min(i, k)))) continue;
          Judgment swapped = check(s.sig, *redirect_warrant(*r.derivation, e.name, o.name));
          require(judgment_eq(swapped, j), label + ": swapping with `" + o.name + "` changed the conclusion");
          ++swaps;
        }
      }
    }
  }
  require(swaps > 0, "no duplicated assumptions in the corpus");

  Script s = parse_script(slurp(corpus_dir / "infimum.prf"));
  Context two = parse_context(
      "[A : Set(Nat); p |- exists! x : Nat . lower_bound(x, A); q |- exists! x : Nat . lower_bound(x, A);"
      " r |- exists! x : Nat . lower_bound(x, A) /\\ x = 0]",
      &s.sig);
  auto st_ = [&](const char* t) { return parse_statement(t, &s.sig); };
  require(struct_eq(st_("desc(p) = 0"), st_("desc(q) = 0"), two), "desc(p) and desc(q) differ");
  require(!struct_eq(st_("desc(p) = 0"), st_("desc(r) = 0"), two), "desc(p) and desc(r) agree");
  return std::to_string(claims) + " claims: " + std::to_string(renames) + " renamings, " +
         std::to_string(duplicates) + " duplicates (" + std::to_string(redirections) + " changing the tree), " + std::to_string(swaps) +
         " in-context swaps; Desc(p) = Desc(q) exactly when the statements match";
}

std::string criterion8() {
  std::size_t derivations = 0, statements = 0;
  auto round_trip = [&](const Signature& sig, const DerivP& d, const std::string& label) {
    std::string text = to_text(*d), json = to_json(*d);
    DerivP t = parse_derivation(text, &sig);
    DerivP j = derivation_from_json(json, &sig);
    require(to_text(*t) == text, label + ": text form does not round-trip");
    require(to_json(*j) == json, label + ": JSON form does not round-trip");
    Judgment want = check(sig, *d);
    require(judgment_eq(check(sig, *t), want) && judgment_eq(check(sig, *j), want), label + ": re-check differs");
    ++derivations;
  };
  auto vernacular = [&](const Signature& sig, const Context& ctx, const StmtP& e, const std::string& label) {
    StmtP back = resolve_warrantors(sig, ctx, align_warrant_slots(sig, parse_statement(render_vernacular(e), &sig)));
    require(struct_eq(back, e, ctx), label + ": `" + to_string(e) + "` came back as `" + to_string(back) + "`");
    ++statements;
  };
  for (const auto& path : corpus_scripts()) {
    Script s = parse_script(slurp(path));
    for (const auto& r : check_script(s)) {
      const std::string label = path.filename().string() + " " + r.label;
      require(r.ok, label + ": " + r.error);
      if (r.derivation) round_trip(s.sig, r.derivation, label);
      if (r.statement) vernacular(s.sig, lower_context(s.sig, s.context).context, r.statement, label);
      if (!r.judgment) continue;
      const Judgment& j = *r.judgment;
      for (std::size_t i = 0; i < j.ctx.size(); ++i)
        if (j.ctx[i].kind == ContextEntry::Kind::Assume) vernacular(s.sig, j.ctx.prefix(i), j.ctx[i].stmt, label);
      if (j.kind == Judgment::Kind::Leq) {
        vernacular(s.sig, j.ctx, j.lhs, label);
        vernacular(s.sig, j.ctx, j.rhs, label);
      } else {
        vernacular(s.sig, j.ctx, st::eq(j.lset, j.rset), label);
      }
    }
  }
  const Signature& sig = fuzz_signature();
  for (const auto& i : dependent_instances()) round_trip(sig, build(sig, i), to_string(i.rule));
  return std::to_string(derivations) + " derivations through text and JSON, " + std::to_string(statements) +
         " statements through the vernacular";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) corpus_dir = argv[1];
  const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
      {"four chains replayed", criterion1},
      {"dependent modus ponens and assumption truth", criterion2},
      {"elaboration goldens", criterion3},
      {"meaningfulness of the infimum", criterion4},
      {"kernel and models agree", criterion5},
      {"adjoint calculus", criterion6},
      {"proof irrelevance", criterion7},
      {"round trips", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = true;
    auto t0 = std::chrono::steady_clock::now();
    try {
      detail = criteria[i].second();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    failed += !ok;
    std::printf("criterion %zu %s: %s (%s) [%s]\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first, detail.c_str(),
                fmt_seconds(seconds_since(t0)).c_str());
    std::fflush(stdout);
  }
  return failed;
}
