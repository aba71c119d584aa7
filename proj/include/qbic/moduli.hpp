#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbic/field.hpp"
#include "qbic/function_field.hpp"
#include "qbic/matrix.hpp"
#include "qbic/type_signature.hpp"

namespace qbic {

// All types with a + Σ m b_m = n, increasing in (a, b_1, b_2, ...).
std::vector<TypeSignature> enumerate_types(std::size_t n);

std::size_t stratum_dim(const TypeSignature& t);  // n² − group_dim

std::size_t psi(const TypeSignature& t, unsigned m);
std::size_t theta(const TypeSignature& t, unsigned m);
// Θ_m for m past every block.
std::size_t theta_limit(const TypeSignature& t);

// Smallest m with Ψ_m(from) > Ψ_m(to), if any.
std::optional<unsigned> first_psi_violation(const TypeSignature& from, const TypeSignature& to);
bool necessary(const TypeSignature& from, const TypeSignature& to);
bool sufficient(const TypeSignature& from, const TypeSignature& to);

// F1–F5: the five basic degenerations; F6: 1^{2t−2s−1} ⊕ N_{2s} ⇝ N_{2t−1}.
enum class Family { F1 = 1, F2, F3, F4, F5, F6 };
std::string to_string(Family f);
Family parse_family(std::string_view text);

struct FamilyInstance {
  Family family;
  unsigned s = 0;
  unsigned t = 0;  // unused by F1–F3

  friend auto operator<=>(const FamilyInstance&, const FamilyInstance&) = default;
};

// Throws InputError when parameters are out of range.
void validate(const FamilyInstance& inst);
TypeSignature generic_side(const FamilyInstance& inst);
TypeSignature special_side(const FamilyInstance& inst);

struct SpecializationWitness {
  FamilyInstance instance;
  Matrix<FunctionField> gram;  // over GF(q²)(π)
  TypeSignature generic_claim, special_claim;
  TypeSignature generic_type, special_type;

  bool verified() const { return generic_type == generic_claim && special_type == special_claim; }
};

// The degenerating family as a Gram matrix over k(π), both fibers classified.
SpecializationWitness witness(const FamilyInstance& inst, const FiniteField& k);

// Memoized witness verification over GF(4).
bool instance_verified(const FamilyInstance& inst);
// Instances whose witness failed so far; they never produce generator steps.
std::vector<FamilyInstance> failed_instances();

struct GeneratorStep {
  TypeSignature from, to;
  FamilyInstance instance;
};

// Every type reached from t by one verified family instance applied to a summand.
std::vector<GeneratorStep> generator_steps(const TypeSignature& t);

// `chain`: only a path mixing predicate steps and family steps is known.
enum class Evidence { sufficient, generator, both, chain };
std::string to_string(Evidence e);

struct StratumNode {
  TypeSignature type;
  std::size_t stratum_dim = 0;
  std::size_t codim = 0;
};

struct SpecEdge {
  std::size_t from = 0, to = 0;  // node indices
  Evidence evidence = Evidence::sufficient;
  std::optional<GeneratorStep> step;  // present for generator evidence
};

struct ModuliPoset {
  std::size_t n = 0;
  std::vector<StratumNode> nodes;
  std::vector<SpecEdge> edges;                            // immediate proven relations
  std::vector<std::pair<std::size_t, std::size_t>> unknown;  // necessary holds, not proven

  std::optional<std::size_t> index_of(const TypeSignature& t) const;
};

struct PosetOptions {
  std::size_t max_n = 8;
  std::size_t jobs = 1;
};

ModuliPoset build_poset(std::size_t n, const PosetOptions& opts = {});

// Keeps the listed nodes, the immediate edges between them and the unknown
// pairs between them. Node order follows `keep`.
ModuliPoset restrict_poset(const ModuliPoset& p, const std::vector<TypeSignature>& keep);

std::string to_dot(const ModuliPoset& p, bool show_unknown);

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct PathStep {
  TypeSignature from, to;
  std::optional<FamilyInstance> instance;  // empty for a sufficient-predicate step
};

struct SpecializeResult {
  Verdict verdict = Verdict::unknown;
  std::optional<Evidence> evidence;
  std::vector<PathStep> path;
  std::optional<unsigned> violated_m;
};

SpecializeResult specialize_query(const TypeSignature& from, const TypeSignature& to);

}  // namespace qbic
