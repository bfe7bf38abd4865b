#pragma once

#include "jnum/effectivity.hpp"
#include "jnum/model.hpp"
#include "jnum/rational.hpp"
#include "jnum/unloading.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jnum {

enum class CertVerdict { CertifiedJumping, CertifiedNotJumping, Undetermined };
enum class Rule { R0, R1, R2, R3, R4, R5, R6 };

std::string to_string(CertVerdict v);
std::string to_string(Rule r);

// One connected sub-divisor of G_lambda together with the component whose
// contribution class refutes it.
struct Refutation {
  std::vector<std::string> subset;
  std::string component;
  PicClass cls;
  Decision decision;
};

struct CertificationStatus {
  CertVerdict verdict = CertVerdict::Undetermined;
  std::optional<Rule> rule;
  // CertifiedJumping: the contributing divisor (R1, R3, R4, R5).
  Divisor witness;
  // R4/R5: contribution classes and their Effective / zero decisions.
  std::vector<std::pair<std::string, PicClass>> witness_classes;
  std::vector<Decision> witness_decisions;
  // R2: the certified value this one is tied to.
  std::optional<Rational> related_lambda;
  // R6 (CertifiedNotJumping) table, or the refuted part when Undetermined.
  std::vector<Refutation> refutations;
  // Undetermined: connected sub-divisors that were not refuted.
  std::vector<std::vector<std::string>> unresolved;
  std::string note;
};

struct SupercandidateRecord {
  Rational lambda;
  Divisor d_lambda;
  std::vector<std::string> g_lambda;
  CertificationStatus status;
};

struct JumpingOptions {
  ClosureOptions closure;
  std::size_t r6_cap = 20;
};

Rational lct(const ResolutionData& r);

std::vector<Rational> candidates(const ResolutionData& r, const Rational& bound);

std::pair<Rational, std::vector<std::string>> next_supercandidate(const ResolutionData& r,
                                                                  const Divisor& d_lambda);

// Records with lambda <= bound; statuses left Undetermined.
std::vector<SupercandidateRecord> supercandidates(const ResolutionData& r, const Rational& bound,
                                                  const JumpingOptions& options = {});

bool is_candidate_for(const ResolutionData& r, const Rational& lambda,
                      const std::vector<std::string>& G);

// restrict(K - floor(lambda F) + G, E).
PicClass contribution_class(const ResolutionData& r, const Rational& lambda, const Divisor& G,
                            const std::string& E);

// Skoda / periodicity threshold for ideal inputs: min(ambient_dim, num_generators).
std::int64_t skoda_threshold(const ResolutionData& r);

CertificationStatus certify(const ResolutionData& r, const SupercandidateRecord& rec,
                            const std::vector<SupercandidateRecord>& known,
                            const JumpingOptions& options = {});

// Certifies every record, then re-applies the periodicity rule until no
// Undetermined record changes.
void certify_all(const ResolutionData& r, std::vector<SupercandidateRecord>& records,
                 const JumpingOptions& options = {});

// Independent re-check of a status against the oracles and adjacency.
bool verify_status(const ResolutionData& r, const SupercandidateRecord& rec,
                   const std::vector<SupercandidateRecord>& known,
                   const JumpingOptions& options = {});

std::vector<Rational> brute_scan(const ResolutionData& r, const Rational& bound,
                                 const ClosureOptions& options = {});

// `window` defaults to the largest lambda among `certified`.
std::vector<Rational> extend_by_periodicity(const ResolutionData& r,
                                            const std::vector<SupercandidateRecord>& certified,
                                            const Rational& bound,
                                            std::optional<Rational> window = std::nullopt);

}  // namespace jnum
