#include "jnum/unloading.hpp"

#include <algorithm>

namespace jnum {

UnknownEffectivity::UnknownEffectivity(Divisor divisor, std::vector<std::string> labels,
                                       std::vector<PicClass> classes,
                                       std::optional<Rational> lambda)
    : Error(describe(labels, classes, lambda)),
      divisor_(std::move(divisor)),
      labels_(std::move(labels)),
      classes_(std::move(classes)),
      lambda_(std::move(lambda)) {}

std::string UnknownEffectivity::describe(const std::vector<std::string>& labels,
                                         const std::vector<PicClass>& classes,
                                         const std::optional<Rational>& lambda) {
  std::string msg = "unloading blocked by undecided effectivity";
  if (lambda) msg += " at lambda=" + lambda->str();
  msg += ":";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    msg += " " + labels[i];
    if (i < classes.size()) msg += " " + classes[i].str();
  }
  return msg;
}

UnknownEffectivity UnknownEffectivity::at_lambda(const Rational& lambda) const {
  return UnknownEffectivity(divisor_, labels_, classes_, lambda);
}

AntieffectivityReport is_antieffective(const ResolutionData& r, const Divisor& D) {
  AntieffectivityReport rep;
  bool unknown = false, refuted = false;
  for (const auto& E : r.exceptional_labels()) {
    PicClass cls = -restrict(r, D, E);
    Decision d = decide_effective(r.geometry(E).oracle, cls);
    refuted |= d.verdict == Verdict::NotEffective;
    unknown |= d.verdict == Verdict::Unknown;
    rep.classes.emplace(E, std::move(cls));
    rep.decisions.emplace(E, std::move(d));
  }
  rep.verdict = refuted ? Verdict::NotEffective : unknown ? Verdict::Unknown : Verdict::Effective;
  return rep;
}

std::pair<Divisor, UnloadTrace> antieffective_closure(const ResolutionData& r, const Divisor& D,
                                                      const ClosureOptions& options) {
  std::vector<std::string> order = options.order;
  if (order.empty()) {
    order = r.exceptional_labels();
  } else {
    for (const auto& label : order) {
      if (!r.is_exceptional(label)) throw UnknownLabel(label);
    }
    for (const auto& label : r.exceptional_labels()) {
      if (std::find(order.begin(), order.end(), label) == order.end())
        throw UnknownLabel("closure order omits " + label);
    }
  }

  Divisor current = D;
  UnloadTrace trace;
  for (std::uint64_t sweep = 0;; ++sweep) {
    if (sweep >= options.iteration_cap)
      throw IterationCapExceeded("unloading did not terminate within " +
                                 std::to_string(options.iteration_cap) + " sweeps");
    std::vector<std::string> added;
    std::vector<std::string> blocked;
    std::vector<PicClass> blocked_classes;
    for (const auto& E : order) {
      PicClass cls = -restrict(r, current, E);
      Decision d = decide_effective(r.geometry(E).oracle, cls);
      if (d.verdict == Verdict::NotEffective) {
        added.push_back(E);
        if (options.mode == UnloadMode::Sequential) break;
      } else if (d.verdict == Verdict::Unknown) {
        blocked.push_back(E);
        blocked_classes.push_back(std::move(cls));
      }
    }
    if (added.empty()) {
      if (!blocked.empty())
        throw UnknownEffectivity(current, std::move(blocked), std::move(blocked_classes));
      break;
    }
    for (const auto& E : added) current.add(E, 1);
    trace.steps.push_back({sweep, std::move(added)});
  }
  trace.final = current;
  return {std::move(current), std::move(trace)};
}

Divisor closure(const ResolutionData& r, const Divisor& D, const ClosureOptions& options) {
  return antieffective_closure(r, D, options).first;
}

}  // namespace jnum
