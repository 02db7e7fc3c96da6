#pragma once

// Random derivations checked by the kernel and then by the finite models.

#include "depconj/model.hpp"

namespace depconj {

// Nat with 0, nullary P Q R and unary S.
const Signature& fuzz_signature();

// Derivation number `index` of the run seeded with `seed`. Each index has
// its own generator, so any single case can be regenerated.
DerivP fuzz_derivation(std::uint64_t seed, std::size_t index);

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::vector<const HeytingModel*> models;  // empty: the whole catalogue
  unsigned threads = 0;                     // 0: one per hardware thread
};

struct FuzzFailure {
  std::size_t index;
  std::string model;
  std::string judgment;
  std::string counterexample;
  std::string derivation;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<std::string> models;
  std::size_t checked = 0;      // passed the kernel and went through every model
  std::size_t unsupported = 0;  // outside what the models can evaluate
  std::size_t rejected = 0;     // generator produced something the kernel refused
  std::vector<FuzzFailure> failures;
  std::map<Rule, std::size_t> coverage;  // derivations using each rule, among the checked ones

  double coverage_fraction() const;  // rules used at least once, over all rules
  std::string text() const;
  std::string json() const;
};

FuzzReport fuzz(const FuzzOptions& opts);

}  // namespace depconj
