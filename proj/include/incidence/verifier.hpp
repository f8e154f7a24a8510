#pragma once

// Normal-form classification, brute-force censuses, lemma and criteria
// checks, and the worked examples.
//
// Lemma keys are the labels used in the literature on invertibility
// preservers of incidence algebras, e.g. "vf-maps-J-to-J", "lb-separating".

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "incidence/preserver.hpp"

namespace incidence {

/// A map that is not a unital invertibility preserver, with the lemma whose
/// conclusion it violates.
class ClassificationError : public std::domain_error {
 public:
  ClassificationError(std::string lemma, const std::string& message)
      : std::domain_error(message), lemma_(std::move(lemma)) {}

  const std::string& lemma() const { return lemma_; }

 private:
  std::string lemma_;
};

/// Decomposes phi into (lambda, psi) and checks build_preserver reproduces it.
/// Exact over every field, so over Q this decides whether phi is a unital
/// invertibility preserver.
PreserverSpec classify(const LinearMap& phi);

/// |K| > 2: n^n q^{m(d-1)}.  K = Z_2: 2^{n(n-1)} 2^{m(d-1)}.
BigInt count_from_theorem(const Poset& poset, const FieldDesc& field);

/// Every normal form, in a fixed order (lambda slowest). Gate: 10^6 specs.
std::vector<PreserverSpec> enumerate_specs(const PosetPtr& poset, const FieldDesc& field, const GateOptions& gates = {});

/// A uniformly random lambda with psi entries uniform (finite fields) or in
/// [-3, 3] (Q).
PreserverSpec random_spec(const PosetPtr& poset, const FieldDesc& field, std::mt19937_64& rng);

/// The map with the given index in row-major order (entry (0,0) most significant).
LinearMap map_at(const PosetPtr& poset, const FieldDesc& field, std::uint64_t index);

/// Largest q^{d^2} for brute-force enumeration of linear maps.
inline constexpr std::uint64_t kMaxMapEnumeration = 100'000'000;

/// q^{d^2}, after the gate.
std::uint64_t map_space_size(const Poset& poset, const FieldDesc& field, const GateOptions& gates = {});

/// Indices in [begin, end) of the unital invertibility preservers. Any split
/// of the index space into ranges gives the same union, so long runs can be
/// resumed range by range.
std::vector<std::uint64_t> scan_preservers(const PosetPtr& poset, const FieldDesc& field, std::uint64_t begin,
                                           std::uint64_t end);

struct CensusRecord {
  std::uint64_t index;
  LinearMap phi;
  PreserverSpec spec;
  bool strong;
  bool lambda_injective;
  bool bijective;
  bool lambda_automorphism;
  bool psi_bijective_on_radical;
};

struct CensusReport {
  std::string poset_id;
  PosetPtr poset;
  FieldDesc field = FieldDesc::rationals();
  std::uint64_t maps_searched = 0;
  std::uint64_t oracle_count = 0;
  BigInt theorem_count = 0;
  /// Survivors equal the matrices built from all normal forms, as sets.
  bool matches_normal_forms = false;
  std::vector<CensusRecord> records;
  double elapsed_seconds = 0;

  std::size_t strong_count() const;
  std::size_t injective_lambda_count() const;
  std::size_t bijective_count() const;
  /// oracle_count = theorem_count and set equality.
  bool consistent() const;
};

struct CensusOptions {
  GateOptions gates;
  unsigned threads = 1;
  std::string poset_id;
};

CensusReport enumerate_preservers(const PosetPtr& poset, const FieldDesc& field, const CensusOptions& options = {});

struct LemmaVerdict {
  std::string lemma;
  std::string instance;
  bool pass = true;
  /// False when the statement's hypotheses exclude this instance.
  bool applicable = true;
  std::optional<std::string> witness;

  friend bool operator==(const LemmaVerdict&, const LemmaVerdict&) = default;
};

bool all_pass(const std::vector<LemmaVerdict>& verdicts);

struct Sampling {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;

  static Sampling all() { return {}; }
  static Sampling randomized(std::uint64_t seed, std::uint64_t trials) { return {false, seed, trials}; }
};

/// Lemma checks on one unital invertibility preserver. The keys run are
/// "vf-maps-J-to-J", "vf(f)_D-is-vf(f_D)_D", "from-vf-to-lb",
/// "union-lb(L_k(f))=X", plus "lb-separating", "lb-preserves-diff-and-cap",
/// "vf(f)_D=sum-k-e_lb(L_k)" when |K| > 2 and "lb-prese-symm-diff" over Z_2.
std::vector<LemmaVerdict> check_lemmas(const LinearMap& phi, const std::string& instance);

/// Exhaustive mode checks every census survivor; randomized mode checks
/// maps built from seeded random normal forms (works over Q too).
std::vector<LemmaVerdict> verify_lemma_suite(const PosetPtr& poset, const FieldDesc& field, const Sampling& sampling,
                                             const CensusOptions& options = {});

/// Strongness and bijectivity criteria for the map built from spec, each
/// checked in both directions. Finite fields only.
std::vector<LemmaVerdict> verify_criteria(const PreserverSpec& spec, const GateOptions& gates = {});

/// Results on inverse preservers over char != 2, by enumeration of all maps.
/// Over char 2 the suite is marked not applicable and the Z_2 counterexample
/// is reproduced instead.
std::vector<LemmaVerdict> verify_inverse_preserver_results(const PosetPtr& poset, const FieldDesc& field,
                                                           const CensusOptions& options = {});

/// "z2-nonseparating", "diagonal-truncation", "z2-not-jordan".
std::vector<std::string> example_ids();
/// Throws std::invalid_argument on an unknown id.
LemmaVerdict reproduce_example(const std::string& id);
/// The map an example is about.
LinearMap example_map(const std::string& id);

}  // namespace incidence
