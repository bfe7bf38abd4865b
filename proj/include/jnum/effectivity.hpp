#pragma once

#include "jnum/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jnum {

// A divisor class on an exceptional prime, in the coordinates of that
// prime's lattice basis.
struct PicClass {
  std::vector<std::int64_t> entries;

  std::size_t rank() const { return entries.size(); }
  bool is_zero() const;

  PicClass& operator+=(const PicClass& o);
  friend PicClass operator+(PicClass a, const PicClass& b) { return a += b; }
  PicClass operator-() const;
  friend bool operator==(const PicClass&, const PicClass&) = default;

  std::string str() const;
};

using Covector = std::vector<std::int64_t>;

struct SufficientInequality {
  Covector covector;
  bool strict = false;
  friend bool operator==(const SufficientInequality&, const SufficientInequality&) = default;
};

using InequalitySystem = std::vector<SufficientInequality>;

// Decision data for "this class contains an effective divisor":
//  - generators span a cone of classes known to be effective,
//  - necessary covectors are nonnegative on every effective class,
//  - each sufficient system, when fully satisfied, implies effectivity.
struct EffectivityOracle {
  std::vector<PicClass> generators;
  std::vector<Covector> necessary;
  std::vector<InequalitySystem> sufficient_systems;

  friend bool operator==(const EffectivityOracle&, const EffectivityOracle&) = default;
};

enum class Verdict { Effective, NotEffective, Unknown };

std::string to_string(Verdict v);

struct ConeCertificate {
  std::vector<Rational> coefficients;  // one per generator, all >= 0
};

struct SystemCertificate {
  std::size_t system_index = 0;
};

struct RefutationCertificate {
  std::size_t covector_index = 0;
  Covector covector;
  std::int64_t value = 0;  // covector . class, negative
};

using Certificate =
    std::variant<std::monostate, ConeCertificate, SystemCertificate, RefutationCertificate>;

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Certificate certificate;

  // Exact re-check of the certificate against the oracle and class.
  bool verify(const EffectivityOracle& oracle, const PicClass& cls) const;
};

std::int64_t apply(const Covector& phi, const PicClass& cls);

// NotEffective if a necessary covector is negative on `cls`; otherwise
// Effective via cone membership or a satisfied sufficient system; otherwise
// Unknown. The certificate is re-verified before returning.
Decision decide_effective(const EffectivityOracle& oracle, const PicClass& cls);

// Nonnegative rational coefficients c with sum c_i g_i == target, or nullopt.
std::optional<std::vector<Rational>> cone_member(const PicClass& target,
                                                 const std::vector<PicClass>& generators);

// Process-wide tallies of decide_effective outcomes; every counted
// certificate has already passed re-verification.
struct DecisionStats {
  std::uint64_t effective = 0;
  std::uint64_t not_effective = 0;
  std::uint64_t unknown = 0;
  std::uint64_t verified = 0;
};

DecisionStats decision_stats();
void reset_decision_stats();

// Inconsistencies of the oracle itself (generator violating a necessary
// covector, dimension errors). Empty when consistent.
std::vector<std::string> oracle_problems(const EffectivityOracle& oracle, std::size_t rank);

}  // namespace jnum
