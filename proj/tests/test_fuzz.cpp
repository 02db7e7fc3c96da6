#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "depconj/fuzz.hpp"

using namespace depconj;

TEST_CASE("empty run") {
  FuzzOptions o;
  o.count = 0;
  auto r = fuzz(o);
  CHECK(r.checked == 0);
  CHECK(r.failures.empty());
  CHECK(r.coverage.empty());
  CHECK(r.coverage_fraction() == 0.0);
}

TEST_CASE("small run on the two-element chain") {
  FuzzOptions o;
  o.seed = 1;
  o.count = 100;
  o.models = {catalogue_model("chain2")};
  auto r = fuzz(o);
  INFO(r.text());
  CHECK(r.failures.empty());
  CHECK(r.rejected == 0);
  CHECK(r.checked + r.unsupported == 100);
  for (auto rule : {Rule::ForallTranspose, Rule::ExistsTranspose, Rule::DepAndTranspose, Rule::DepAndUntranspose,
                    Rule::DepImpTranspose, Rule::DepImpUntranspose, Rule::ComprTranspose, Rule::ComprUntranspose})
    CHECK(r.coverage[rule] > 0);
}

TEST_CASE("reports are reproducible") {
  FuzzOptions o;
  o.seed = 7;
  o.count = 300;
  o.threads = 4;
  auto a = fuzz(o);
  o.threads = 1;
  auto b = fuzz(o);
  CHECK(a.text() == b.text());
  CHECK(a.json() == b.json());
  for (std::size_t i : {0u, 17u, 299u}) CHECK(to_text(*fuzz_derivation(7, i)) == to_text(*fuzz_derivation(7, i)));
  auto j = nlohmann::json::parse(a.json());
  CHECK(j["count"] == 300);
  CHECK(j["coverage"].size() == all_rules().size());
}

TEST_CASE("every generated derivation passes the kernel") {
  const auto& sig = fuzz_signature();
  for (std::size_t i = 0; i < 300; ++i) {
    auto d = fuzz_derivation(3, i);
    CAPTURE(to_text(*d));
    CHECK_NOTHROW(check(sig, *d));
  }
}

TEST_CASE("coverage on a larger run") {
  FuzzOptions o;
  o.seed = 42;
  o.count = 2000;
  auto r = fuzz(o);
  INFO(r.text());
  CHECK(r.failures.empty());
  CHECK(r.coverage_fraction() >= 0.95);
}
