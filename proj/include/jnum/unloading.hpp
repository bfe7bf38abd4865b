#pragma once

#include "jnum/effectivity.hpp"
#include "jnum/errors.hpp"
#include "jnum/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jnum {

// Unloading stalled: no exceptional prime is refuted, but some are Unknown.
class UnknownEffectivity : public Error {
 public:
  UnknownEffectivity(Divisor divisor, std::vector<std::string> labels, std::vector<PicClass> classes,
                     std::optional<Rational> lambda = std::nullopt);

  const Divisor& divisor() const { return divisor_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<PicClass>& classes() const { return classes_; }
  const std::optional<Rational>& lambda() const { return lambda_; }

  UnknownEffectivity at_lambda(const Rational& lambda) const;

 private:
  static std::string describe(const std::vector<std::string>& labels,
                              const std::vector<PicClass>& classes,
                              const std::optional<Rational>& lambda);

  Divisor divisor_;
  std::vector<std::string> labels_;
  std::vector<PicClass> classes_;
  std::optional<Rational> lambda_;
};

enum class UnloadMode { Batch, Sequential };

struct UnloadStep {
  std::uint64_t sweep = 0;
  std::vector<std::string> added;
};

struct UnloadTrace {
  std::vector<UnloadStep> steps;
  Divisor final;
};

struct ClosureOptions {
  UnloadMode mode = UnloadMode::Batch;
  // Sequential scan order; empty means prime order.
  std::vector<std::string> order;
  std::uint64_t iteration_cap = 1'000'000;
};

struct AntieffectivityReport {
  Verdict verdict = Verdict::Effective;
  std::map<std::string, PicClass> classes;  // -D|_E
  std::map<std::string, Decision> decisions;
};

AntieffectivityReport is_antieffective(const ResolutionData& r, const Divisor& D);

std::pair<Divisor, UnloadTrace> antieffective_closure(const ResolutionData& r, const Divisor& D,
                                                      const ClosureOptions& options = {});

Divisor closure(const ResolutionData& r, const Divisor& D, const ClosureOptions& options = {});

}  // namespace jnum
