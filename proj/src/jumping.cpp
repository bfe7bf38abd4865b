#include "jnum/jumping.hpp"

#include "jnum/errors.hpp"

#include <algorithm>
#include <set>

namespace jnum {

std::string to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::CertifiedJumping:
      return "CertifiedJumping";
    case CertVerdict::CertifiedNotJumping:
      return "CertifiedNotJumping";
    case CertVerdict::Undetermined:
      return "Undetermined";
  }
  return "?";
}

std::string to_string(Rule r) { return "R" + std::to_string(static_cast<int>(r)); }

Rational lct(const ResolutionData& r) {
  std::optional<Rational> best;
  for (const auto& p : r.primes()) {
    if (p.e < 1) continue;
    Rational v(BigInt(p.k + 1), BigInt(p.e));
    if (!best || v < *best) best = v;
  }
  if (!best) throw NoPositiveMultiplicity("no prime divisor has positive multiplicity");
  return *best;
}

std::vector<Rational> candidates(const ResolutionData& r, const Rational& bound) {
  std::set<Rational> out;
  for (const auto& p : r.primes()) {
    if (p.e < 1) continue;
    std::int64_t top = to_int64((bound * Rational(p.e)).floor()) - p.k;
    for (std::int64_t n = 1; n <= top; ++n) out.insert(Rational(BigInt(p.k + n), BigInt(p.e)));
  }
  return {out.begin(), out.end()};
}

std::pair<Rational, std::vector<std::string>> next_supercandidate(const ResolutionData& r,
                                                                  const Divisor& d_lambda) {
  std::optional<Rational> best;
  std::vector<std::string> argmin;
  for (const auto& p : r.primes()) {
    if (p.e < 1) continue;
    Rational v(BigInt(p.k + 1 + d_lambda[p.label]), BigInt(p.e));
    if (!best || v < *best) {
      best = v;
      argmin = {p.label};
    } else if (v == *best) {
      argmin.push_back(p.label);
    }
  }
  if (!best) throw NoPositiveMultiplicity("no prime divisor has positive multiplicity");
  return {*best, argmin};
}

namespace {

Divisor closure_at(const ResolutionData& r, const Rational& lambda, const ClosureOptions& options) {
  try {
    return closure(r, twist_divisor(r, lambda), options);
  } catch (const UnknownEffectivity& e) {
    throw e.at_lambda(lambda);
  }
}

}  // namespace

std::vector<SupercandidateRecord> supercandidates(const ResolutionData& r, const Rational& bound,
                                                  const JumpingOptions& options) {
  std::vector<SupercandidateRecord> out;
  Divisor d = closure_at(r, Rational(0), options.closure);
  auto [lambda, g] = next_supercandidate(r, d);
  while (lambda <= bound) {
    SupercandidateRecord rec;
    rec.lambda = lambda;
    rec.d_lambda = closure_at(r, lambda, options.closure);
    rec.g_lambda = g;
    if (is_antieffective(r, rec.d_lambda).verdict != Verdict::Effective)
      throw std::logic_error("closure at " + lambda.str() + " is not antieffective");
    std::tie(lambda, g) = next_supercandidate(r, rec.d_lambda);
    if (lambda <= rec.lambda) throw std::logic_error("supercandidates failed to increase");
    out.push_back(std::move(rec));
  }
  return out;
}

bool is_candidate_for(const ResolutionData& r, const Rational& lambda,
                      const std::vector<std::string>& G) {
  for (const auto& label : G) {
    const auto& p = r.prime(label);
    Rational v = lambda * Rational(p.e) - Rational(p.k);
    if (!v.is_integer() || v.sign() <= 0) return false;
  }
  return true;
}

PicClass contribution_class(const ResolutionData& r, const Rational& lambda, const Divisor& G,
                            const std::string& E) {
  std::vector<std::string> support;
  for (const auto& [label, c] : G.coefficients()) support.push_back(label);
  if (G[E] == 0) throw NotACandidate(E + " is not a component of G");
  if (!is_candidate_for(r, lambda, support))
    throw NotACandidate(lambda.str() + " is not a candidate jumping number for the given G");
  Divisor K = r.discrepancies();
  Divisor floor_f = QDivisor(r.multiplicities(), lambda).floor();
  return restrict(r, K - floor_f + G, E);
}

std::int64_t skoda_threshold(const ResolutionData& r) {
  std::int64_t m0 = r.ambient_dim();
  if (r.num_generators()) m0 = std::min(m0, *r.num_generators());
  return m0;
}

namespace {

Divisor reduced(const std::vector<std::string>& labels) {
  Divisor d;
  for (const auto& l : labels) d.set(l, 1);
  return d;
}

bool is_orbit(const ResolutionData& r, const std::string& label) {
  const auto& p = r.prime(label);
  return p.count > 1;
}

const SupercandidateRecord* find_certified(const std::vector<SupercandidateRecord>& known,
                                           const Rational& lambda) {
  for (const auto& k : known) {
    if (k.lambda == lambda && k.status.verdict == CertVerdict::CertifiedJumping) return &k;
  }
  return nullptr;
}

// Periodicity partner of `lambda` that is already certified, if the rule applies.
std::optional<Rational> periodic_partner(const ResolutionData& r, const Rational& lambda,
                                         const std::vector<SupercandidateRecord>& known) {
  const bool ideal = r.input_kind() == InputKind::Ideal;
  const Rational m0(skoda_threshold(r));
  for (const Rational& partner : {lambda - Rational(1), lambda + Rational(1)}) {
    if (partner.sign() <= 0) continue;
    if (ideal && std::max(lambda, partner) < m0) continue;
    if (find_certified(known, partner)) return partner;
  }
  return std::nullopt;
}

std::vector<std::string> exceptional_part(const ResolutionData& r,
                                          const std::vector<std::string>& g) {
  std::vector<std::string> out;
  for (const auto& l : g) {
    if (r.is_exceptional(l)) out.push_back(l);
  }
  return out;
}

// Connected, nonempty subsets of `xs` in a fixed enumeration order.
std::vector<std::vector<std::string>> connected_subsets(const AdjacencyGraph& graph,
                                                        const std::vector<std::string>& xs) {
  std::vector<std::vector<std::string>> out;
  const std::size_t n = xs.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) s.push_back(xs[i]);
    }
    if (graph.connected(s)) out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// Components at which a refutation of `subset` is meaningful.
std::vector<std::string> refutable_components(const ResolutionData& r,
                                              const std::vector<std::string>& subset) {
  if (subset.size() > 1) {
    std::vector<std::string> orbits;
    for (const auto& l : subset) {
      if (is_orbit(r, l)) orbits.push_back(l);
    }
    if (!orbits.empty()) return orbits;
  }
  return subset;
}

std::optional<Refutation> refute(const ResolutionData& r, const Rational& lambda,
                                 const std::vector<std::string>& subset) {
  if (!is_candidate_for(r, lambda, subset)) return std::nullopt;
  Divisor G = reduced(subset);
  for (const auto& E : refutable_components(r, subset)) {
    PicClass cls = contribution_class(r, lambda, G, E);
    Decision d = decide_effective(r.geometry(E).oracle, cls);
    if (d.verdict == Verdict::NotEffective) return Refutation{subset, E, std::move(cls), std::move(d)};
  }
  return std::nullopt;
}

bool rule_r5_pair(const ResolutionData& r, const AdjacencyGraph& graph, const Rational& lambda,
                  const std::string& a, const std::string& b,
                  std::vector<std::pair<std::string, PicClass>>* classes) {
  if (is_orbit(r, a) || is_orbit(r, b)) return false;
  if (!graph.adjacent(a, b) || !r.flagged_intersection_connected(a, b)) return false;
  if (!r.geometry(a).faithful_for_triviality || !r.geometry(b).faithful_for_triviality) return false;
  if (!is_candidate_for(r, lambda, {a, b})) return false;
  Divisor G = reduced({a, b});
  PicClass ca = contribution_class(r, lambda, G, a);
  PicClass cb = contribution_class(r, lambda, G, b);
  if (!ca.is_zero() || !cb.is_zero()) return false;
  if (classes) *classes = {{a, ca}, {b, cb}};
  return true;
}

bool affine_rule(const ResolutionData& r, const Rational& lambda, std::string* label) {
  for (const auto& p : r.primes()) {
    if (p.exceptional() || p.e < 1) continue;
    if ((lambda * Rational(p.e)).is_integer()) {
      if (label) *label = p.label;
      return true;
    }
  }
  return false;
}

std::optional<std::string> isolated_exceptional(const ResolutionData& r, const AdjacencyGraph& graph,
                                                const std::vector<std::string>& g) {
  for (const auto& comp : graph.components(g)) {
    if (comp.size() == 1 && r.is_exceptional(comp.front())) return comp.front();
  }
  return std::nullopt;
}

}  // namespace

CertificationStatus certify(const ResolutionData& r, const SupercandidateRecord& rec,
                            const std::vector<SupercandidateRecord>& known,
                            const JumpingOptions& options) {
  CertificationStatus st;
  const Rational& lambda = rec.lambda;
  const AdjacencyGraph graph = adjacency(r);
  auto jumping = [&](Rule rule) {
    st.verdict = CertVerdict::CertifiedJumping;
    st.rule = rule;
    return st;
  };

  std::string label;
  if (affine_rule(r, lambda, &label)) {
    st.witness = reduced({label});
    return jumping(Rule::R1);
  }
  if (auto partner = periodic_partner(r, lambda, known)) {
    st.related_lambda = *partner;
    return jumping(Rule::R2);
  }
  if (auto E = isolated_exceptional(r, graph, rec.g_lambda)) {
    st.witness = reduced({*E});
    return jumping(Rule::R3);
  }
  const std::vector<std::string> xs = exceptional_part(r, rec.g_lambda);
  for (const auto& E : xs) {
    if (!is_candidate_for(r, lambda, {E})) continue;
    PicClass cls = contribution_class(r, lambda, reduced({E}), E);
    Decision d = decide_effective(r.geometry(E).oracle, cls);
    if (d.verdict == Verdict::Effective) {
      st.witness = reduced({E});
      st.witness_classes = {{E, std::move(cls)}};
      st.witness_decisions = {std::move(d)};
      return jumping(Rule::R4);
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      std::vector<std::pair<std::string, PicClass>> classes;
      if (rule_r5_pair(r, graph, lambda, xs[i], xs[j], &classes)) {
        st.witness = reduced({xs[i], xs[j]});
        st.witness_classes = std::move(classes);
        return jumping(Rule::R5);
      }
    }
  }
  if (lambda == jnum::lct(r)) return jumping(Rule::R0);

  if (xs.empty()) {
    st.note = "minimal jumping divisor has no exceptional component";
    return st;
  }
  if (xs.size() > options.r6_cap) {
    st.note = "minimal jumping divisor has " + std::to_string(xs.size()) +
              " exceptional components, above the enumeration cap " +
              std::to_string(options.r6_cap);
    return st;
  }
  for (auto& subset : connected_subsets(graph, xs)) {
    if (auto ref = refute(r, lambda, subset)) {
      st.refutations.push_back(std::move(*ref));
    } else {
      st.unresolved.push_back(std::move(subset));
    }
  }
  if (st.unresolved.empty()) {
    st.verdict = CertVerdict::CertifiedNotJumping;
    st.rule = Rule::R6;
  }
  return st;
}

void certify_all(const ResolutionData& r, std::vector<SupercandidateRecord>& records,
                 const JumpingOptions& options) {
  for (auto& rec : records) rec.status = CertificationStatus{};
  for (auto& rec : records) rec.status = certify(r, rec, records, options);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& rec : records) {
      if (rec.status.verdict != CertVerdict::Undetermined) continue;
      if (auto partner = periodic_partner(r, rec.lambda, records)) {
        rec.status = CertificationStatus{};
        rec.status.verdict = CertVerdict::CertifiedJumping;
        rec.status.rule = Rule::R2;
        rec.status.related_lambda = *partner;
        changed = true;
      }
    }
  }
}

bool verify_status(const ResolutionData& r, const SupercandidateRecord& rec,
                   const std::vector<SupercandidateRecord>& known, const JumpingOptions& options) {
  const CertificationStatus& st = rec.status;
  const Rational& lambda = rec.lambda;
  const AdjacencyGraph graph = adjacency(r);
  if (st.verdict == CertVerdict::Undetermined) return !st.rule.has_value();
  if (!st.rule) return false;
  auto witness_labels = [&] {
    std::vector<std::string> out;
    for (const auto& [l, c] : st.witness.coefficients()) out.push_back(l);
    return out;
  };
  switch (*st.rule) {
    case Rule::R0:
      return st.verdict == CertVerdict::CertifiedJumping && lambda == jnum::lct(r);
    case Rule::R1: {
      auto ws = witness_labels();
      if (ws.size() != 1 || r.is_exceptional(ws[0])) return false;
      const auto& p = r.prime(ws[0]);
      return p.e >= 1 && (lambda * Rational(p.e)).is_integer();
    }
    case Rule::R2: {
      if (!st.related_lambda || !find_certified(known, *st.related_lambda)) return false;
      Rational diff = lambda - *st.related_lambda;
      if (diff != Rational(1) && diff != Rational(-1)) return false;
      if (r.input_kind() == InputKind::Ideal &&
          std::max(lambda, *st.related_lambda) < Rational(skoda_threshold(r)))
        return false;
      return true;
    }
    case Rule::R3: {
      auto ws = witness_labels();
      if (ws.size() != 1 || !r.is_exceptional(ws[0])) return false;
      for (const auto& comp : graph.components(rec.g_lambda)) {
        if (comp.size() == 1 && comp.front() == ws[0]) return true;
      }
      return false;
    }
    case Rule::R4: {
      auto ws = witness_labels();
      if (ws.size() != 1 || st.witness_classes.size() != 1) return false;
      if (std::find(rec.g_lambda.begin(), rec.g_lambda.end(), ws[0]) == rec.g_lambda.end())
        return false;
      PicClass cls = contribution_class(r, lambda, st.witness, ws[0]);
      if (!(cls == st.witness_classes[0].second)) return false;
      const auto& oracle = r.geometry(ws[0]).oracle;
      if (st.witness_decisions.size() != 1 || !st.witness_decisions[0].verify(oracle, cls))
        return false;
      return decide_effective(oracle, cls).verdict == Verdict::Effective &&
             st.witness_decisions[0].verdict == Verdict::Effective;
    }
    case Rule::R5: {
      auto ws = witness_labels();
      if (ws.size() != 2) return false;
      for (const auto& w : ws) {
        if (std::find(rec.g_lambda.begin(), rec.g_lambda.end(), w) == rec.g_lambda.end())
          return false;
      }
      return rule_r5_pair(r, graph, lambda, ws[0], ws[1], nullptr);
    }
    case Rule::R6: {
      if (st.verdict != CertVerdict::CertifiedNotJumping || !st.unresolved.empty()) return false;
      const auto xs = exceptional_part(r, rec.g_lambda);
      if (xs.size() > options.r6_cap) return false;
      auto subsets = connected_subsets(graph, xs);
      if (subsets.size() != st.refutations.size()) return false;
      for (const auto& subset : subsets) {
        auto it = std::find_if(st.refutations.begin(), st.refutations.end(),
                               [&](const Refutation& ref) { return ref.subset == subset; });
        if (it == st.refutations.end()) return false;
        auto comps = refutable_components(r, subset);
        if (std::find(comps.begin(), comps.end(), it->component) == comps.end()) return false;
        PicClass cls = contribution_class(r, lambda, reduced(subset), it->component);
        const auto& oracle = r.geometry(it->component).oracle;
        if (!(cls == it->cls) || it->decision.verdict != Verdict::NotEffective ||
            !it->decision.verify(oracle, cls))
          return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<Rational> brute_scan(const ResolutionData& r, const Rational& bound,
                                 const ClosureOptions& options) {
  std::vector<Rational> out;
  Divisor prev = closure_at(r, Rational(0), options);
  for (const auto& c : candidates(r, bound)) {
    Divisor d = closure_at(r, c, options);
    if (!(d == prev)) out.push_back(c);
    prev = std::move(d);
  }
  return out;
}

std::vector<Rational> extend_by_periodicity(const ResolutionData& r,
                                            const std::vector<SupercandidateRecord>& certified,
                                            const Rational& bound, std::optional<Rational> window) {
  if (!window) {
    window = Rational(0);
    for (const auto& rec : certified) window = std::max(*window, rec.lambda);
  }
  std::set<Rational> base;
  for (const auto& rec : certified) {
    if (rec.status.verdict == CertVerdict::CertifiedJumping && rec.lambda <= *window)
      base.insert(rec.lambda);
  }
  const bool ideal = r.input_kind() == InputKind::Ideal;
  const Rational start = ideal ? Rational(skoda_threshold(r)) : Rational(1);
  if (*window < start)
    throw InsufficientBaseWindow("periodicity needs jumping numbers certified up to " + start.str() +
                                 ", have up to " + window->str());
  std::set<Rational> out;
  for (const auto& mu : base) {
    if (mu <= bound) out.insert(mu);
  }
  const Rational period_from = start - Rational(1);
  for (const auto& mu : base) {
    if (mu <= period_from || mu > start) continue;
    for (Rational v = mu + Rational(1); v <= bound; v += Rational(1)) out.insert(v);
  }
  return {out.begin(), out.end()};
}

}  // namespace jnum
