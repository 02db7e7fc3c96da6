#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "depconj/kernel.hpp"
#include "fixtures.hpp"

using namespace depconj;
using namespace depconj::rules;
using fixtures::C;
using fixtures::S;

namespace {

const Signature& sig() {
  static const Signature s = fixtures::inf_signature();
  return s;
}

StmtP s(const char* src) { return S(src, sig()); }
Context c(const char* src) { return C(src, sig()); }

std::string conclusion(const DerivP& d) { return to_string(check(sig(), *d)); }

KernelError kernel_error(const DerivP& d) {
  try {
    check(sig(), *d);
  } catch (const KernelError& e) {
    return e;
  }
  FAIL("expected a kernel error");
  throw;
}

}  // namespace

TEST_CASE("rule table") {
  CHECK(all_rules().size() == 28);
  for (Rule r : all_rules()) CHECK(rule_from_string(to_string(r)) == r);
  CHECK_FALSE(rule_from_string("Cut"));
}

TEST_CASE("basic rules") {
  CHECK(conclusion(refl({}, st::top())) == "[] |- top <= top");
  auto pq = s("P /\\ Q");
  auto comm = and_intro(and_elim_r({}, s("P"), s("Q")), and_elim_l({}, s("P"), s("Q")));
  CHECK(conclusion(comm) == "[] |- P /\\ Q <= Q /\\ P");
  CHECK(conclusion(or_elim(or_intro_r({}, s("Q"), s("P")), or_intro_l({}, s("Q"), s("P")))) ==
        "[] |- P \\/ Q <= Q \\/ P");
  CHECK(conclusion(top_intro({}, pq)) == "[] |- P /\\ Q <= top");
}

TEST_CASE("assumption truth: if you assume E, then E is true") {
  Context g = c("[x : Nat]");
  auto e = s("S(x)");
  auto h = s("R");
  auto d = trans(top_intro(g.with(ContextEntry::assume("z", e)), h),
                 special_fwd(and_elim_l(g, e, st::top()), "z"));
  CHECK(conclusion(d) == "[x : Nat; z |- S(x)] |- R <= S(x)");
}

TEST_CASE("modus ponens, particularization, exhibition") {
  CHECK(conclusion(imp_uncurry(refl({}, s("P => Q")))) == "[] |- (P => Q) /\\ P <= Q");
  auto zero = parse_term("0", &sig());
  CHECK(conclusion(subst(forall_transpose(refl({}, s("forall x : Nat . S(x)"))), zero)) ==
        "[] |- forall x : Nat . S(x) <= S(0)");
  CHECK(conclusion(subst(exists_transpose(refl({}, s("exists x : Nat . S(x)"))), zero)) ==
        "[] |- S(0) <= exists x : Nat . S(x)");
}

TEST_CASE("weakening and dependent rules") {
  CHECK(conclusion(weaken(refl({}, s("P")), ContextEntry::type_decl("n", Type::base("Nat")))) ==
        "[n : Nat] |- P <= P");
  auto dep = s("[z |- P] /\\ Q");
  CHECK(conclusion(dep_and_transpose(refl({}, dep))) == "[z |- P] |- Q <= [z |- P] /\\ Q");
  CHECK(conclusion(dep_and_transpose(refl({}, dep), "w")) == "[w |- P] |- Q <= [z |- P] /\\ Q");
  auto imp = s("[z |- P] => Q");
  CHECK(conclusion(dep_imp_untranspose(refl({}, imp))) == "[z |- P] |- [z |- P] => Q <= Q");
}

TEST_CASE("dependent warrantors are renamed by transposition") {
  Context g = c("[A : Set(Nat)]");
  auto e = s("[z |- nonempty(A)] /\\ inf(A, @z) = 0");
  CHECK(conclusion(dep_and_transpose(refl(g, e), "w")) ==
        "[A : Set(Nat); w |- nonempty(A)] |- inf(A, @w) = 0 <= [z |- nonempty(A)] /\\ inf(A, @z) = 0");
}

TEST_CASE("description") {
  Context g = c("[A : Set(Nat); z |- exists! x : Nat . lower_bound(x, A)]");
  CHECK(conclusion(description(g, "z")) ==
        "[A : Set(Nat); z |- exists! x : Nat . lower_bound(x, A)] |- top <= lower_bound(desc(z), A)");
  CHECK(kernel_error(description(c("[A : Set(Nat); z |- nonempty(A)]"), "z")).kind() ==
        KernelErrorKind::SideConditionFailed);
}

TEST_CASE("inclusion rules") {
  auto a = parse_term("{ x : Nat | S(x) }", &sig());
  auto d = compr_transpose(incl_refl({}, a));
  CHECK(conclusion(d) == "[x : Nat] |- S(x) <= x in { x : Nat | S(x) }");
  CHECK(conclusion(compr_untranspose(d)) == "[] |- { x : Nat | S(x) } sub { x : Nat | S(x) }");
  CHECK(conclusion(incl_trans(incl_refl({}, a), incl_refl({}, a))) ==
        "[] |- { x : Nat | S(x) } sub { x : Nat | S(x) }");
}

TEST_CASE("adjunction round trips") {
  Context none;
  auto x_nat = ContextEntry::type_decl("x", Type::base("Nat"));
  struct Case {
    const char* name;
    DerivP start;
    std::function<DerivP(DerivP)> there, back;
  };
  std::vector<Case> cases = {
      {"imp", and_elim_l(none, s("P"), s("Q")), imp_intro, imp_uncurry},
      {"imp inverse", refl(none, s("P => Q")), imp_uncurry, imp_intro},
      {"forall", forall_transpose(refl(none, s("forall y : Nat . S(y)")), "x"), forall_intro,
       [](DerivP d) { return forall_transpose(d); }},
      {"exists", exists_transpose(refl(none, s("exists y : Nat . S(y)")), "x"), exists_intro,
       [](DerivP d) { return exists_transpose(d); }},
      {"special", and_elim_l(none, s("P"), s("Q")), [](DerivP d) { return special_fwd(d, "z"); }, special_bwd},
      {"dep and", refl(none, s("[z |- P] /\\ Q")), [](DerivP d) { return dep_and_transpose(d); },
       dep_and_untranspose},
      {"dep imp", refl(none, s("[z |- P] => Q")), [](DerivP d) { return dep_imp_untranspose(d); },
       dep_imp_transpose},
      {"compr", incl_refl(none, parse_term("{ y : Nat | S(y) }", &sig())),
       [](DerivP d) { return compr_transpose(d); }, compr_untranspose},
  };
  for (const auto& k : cases) {
    CAPTURE(k.name);
    Judgment before = check(sig(), *k.start);
    Judgment after = check(sig(), *k.back(k.there(k.start)));
    CHECK(judgment_eq(before, after));
  }
}

TEST_CASE("kernel errors") {
  SUBCASE("middle statements must match") {
    auto e = kernel_error(trans(refl({}, s("P")), refl({}, s("Q"))));
    CHECK(e.kind() == KernelErrorKind::RuleMismatch);
    CHECK(e.path().empty());
  }
  SUBCASE("premise shape") {
    CHECK(kernel_error(imp_intro(refl({}, s("P")))).kind() == KernelErrorKind::RuleMismatch);
    CHECK(kernel_error(imp_uncurry(refl({}, s("P")))).kind() == KernelErrorKind::RuleMismatch);
    CHECK(kernel_error(compr_transpose(refl({}, s("P")))).kind() == KernelErrorKind::RuleMismatch);
    CHECK(kernel_error(make(Rule::Trans, {}, {refl({}, s("P"))})).kind() == KernelErrorKind::RuleMismatch);
    CHECK(kernel_error(make(Rule::Refl, {{"ctx", Context()}})).kind() == KernelErrorKind::RuleMismatch);
  }
  SUBCASE("contexts must agree") {
    auto e = kernel_error(trans(refl({}, s("P")), refl(c("[n : Nat]"), s("P"))));
    CHECK(e.kind() == KernelErrorKind::RuleMismatch);
  }
  SUBCASE("freshness and independence") {
    auto g = c("[z |- P]");
    CHECK(kernel_error(special_fwd(and_elim_l(g, s("P"), s("Q")), "z")).kind() ==
          KernelErrorKind::SideConditionFailed);
    auto dep = forall_intro(refl(c("[x : Nat]"), s("S(x)")));
    CHECK(kernel_error(dep).kind() == KernelErrorKind::SideConditionFailed);
    auto dep2 = dep_and_untranspose(refl(c("[A : Set(Nat); z |- nonempty(A)]"), s("inf(A, @z) = 0")));
    CHECK(kernel_error(dep2).kind() == KernelErrorKind::SideConditionFailed);
    CHECK(kernel_error(subst(forall_transpose(refl({}, s("forall x : Nat . S(x)"))),
                             parse_term("{ y : Nat | top }", &sig())))
              .kind() == KernelErrorKind::SideConditionFailed);
  }
  SUBCASE("meaningfulness") {
    CHECK(kernel_error(refl(c("[A : Set(Nat)]"), s("inf(A, @z) = 0"))).kind() == KernelErrorKind::NotMeaningful);
    CHECK(kernel_error(refl({}, s("S(y)"))).kind() == KernelErrorKind::NotMeaningful);
    CHECK(kernel_error(refl(c("[x : Nat; x : Nat]"), s("P"))).kind() == KernelErrorKind::NotMeaningful);
  }
  SUBCASE("high-level constructs are rejected") {
    auto e = kernel_error(refl(c("[A : Set(Nat)]"), s("forall x in A . S(x)")));
    CHECK(e.kind() == KernelErrorKind::HighLevelLeak);
    std::vector<ContextEntry> entries = {ContextEntry::type_decl("A", Type::set(Type::base("Nat"))),
                                         ContextEntry::set_decl("x", tm::var("A"))};
    CHECK(kernel_error(refl(Context(entries), s("P"))).kind() == KernelErrorKind::HighLevelLeak);
  }
  SUBCASE("the failing node is located") {
    auto bad = trans(refl({}, s("P")), imp_intro(refl({}, s("P"))));
    auto e = kernel_error(bad);
    CHECK(e.path() == std::vector<std::size_t>{1});
    CHECK(e.rule() == Rule::ImpIntro);
  }
}

TEST_CASE("judgment_of uses the cache and agrees with check") {
  auto d = and_intro(and_elim_r({}, s("P"), s("Q")), and_elim_l({}, s("P"), s("Q")));
  Judgment a = judgment_of(sig(), *d);
  Judgment b = judgment_of(sig(), *d);
  Judgment c2 = check(sig(), *d);
  CHECK(judgment_eq(a, b));
  CHECK(judgment_eq(a, c2));
  CHECK_THROWS_AS(judgment_of(sig(), *trans(refl({}, s("P")), refl({}, s("Q")))), KernelError);
  CHECK_THROWS_AS(judgment_of(sig(), *refl(c("[A : Set(Nat)]"), s("forall x in A . S(x)"))), KernelError);
  // A different signature does not reuse the cached conclusion.
  Signature other;
  other.add_predicate({"P", {}, {}});
  CHECK_THROWS_AS(judgment_of(other, *d), KernelError);
}

TEST_CASE("concurrent checking") {
  auto d = imp_uncurry(refl({}, s("P => Q")));
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&, i] {
      for (int k = 0; k < 50; ++k) ok[i] += judgment_eq(judgment_of(sig(), *d), check(sig(), *d));
    });
  for (auto& t : pool) t.join();
  for (int v : ok) CHECK(v == 50);
}

TEST_CASE("serialization round trip") {
  Context g = c("[A : Set(Nat); x : Nat]");
  std::vector<DerivP> trees = {
      and_intro(and_elim_r(g, s("P"), s("S(x)")), and_elim_l(g, s("P"), s("S(x)"))),
      dep_and_transpose(refl(g, s("[z |- nonempty(A)] /\\ inf(A, @z) = x")), "w"),
      weaken(refl(g, s("P")), ContextEntry::assume("h", s("x in A"))),
      subst(forall_transpose(refl({}, s("forall x : Nat . S(x)"))), parse_term("0", &sig())),
      compr_transpose(incl_refl({}, parse_term("{ y : Nat | S(y) /\\ (P => Q) }", &sig()))),
      description(c("[A : Set(Nat); z |- exists! x : Nat . lower_bound(x, A)]"), "z"),
  };
  for (const auto& d : trees) {
    std::string text = to_text(*d);
    CAPTURE(text);
    auto back = parse_derivation(text, &sig());
    CHECK(to_text(*back) == text);
    CHECK(judgment_eq(check(sig(), *d), check(sig(), *back)));
    auto from_json = derivation_from_json(to_json(*d), &sig());
    CHECK(to_text(*from_json) == text);
    CHECK(to_json(*from_json) == to_json(*d));
  }
}

TEST_CASE("hand-written derivation text") {
  auto d = parse_derivation(R"(AndIntro
  AndElimR(ctx=[], left=P, right=Q)
  AndElimL(ctx=[], left=P, right=Q)
)",
                            &sig());
  CHECK(conclusion(d) == "[] |- P /\\ Q <= Q /\\ P");
  CHECK_THROWS_AS(parse_derivation("Cut(ctx=[])", &sig()), DiagnosticError);
  CHECK_THROWS_AS(parse_derivation("Refl(bogus=P)", &sig()), DiagnosticError);
  auto j = parse_judgment("[A : Set(Nat)] |- { x : Nat | x in A } sub A", &sig());
  CHECK(j.kind == Judgment::Kind::Incl);
  auto j2 = parse_judgment("[] |- P /\\ Q <= Q", &sig());
  CHECK(j2.kind == Judgment::Kind::Leq);
}

TEST_CASE("property: renaming assumptions preserves validity") {
  Context g = c("[A : Set(Nat); z |- nonempty(A)]");
  auto d = trans(refl(g, s("inf(A, @z) = 0")), refl(g, s("inf(A, @z) = 0")));
  auto renamed = rename_in_derivation(*d, "z", "fresh");
  Judgment a = check(sig(), *d), b = check(sig(), *renamed);
  CHECK(to_string(b) == "[A : Set(Nat); fresh |- nonempty(A)] |- inf(A, @fresh) = 0 <= inf(A, @fresh) = 0");
  CHECK(struct_eq(*rename_everywhere(a.lhs, "z", "fresh"), *b.lhs, b.ctx));

  Context dup = c("[A : Set(Nat); p |- nonempty(A); q |- nonempty(A)]");
  auto dd = dep_and_transpose(refl(dup, s("[z |- nonempty(A)] /\\ inf(A, @z) = inf(A, @p)")));
  auto swapped = redirect_warrant(*dd, "p", "q");
  Judgment x = check(sig(), *dd), y = check(sig(), *swapped);
  CHECK(judgment_eq(x, y));
}
