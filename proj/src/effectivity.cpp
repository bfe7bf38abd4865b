#include "jnum/effectivity.hpp"

#include "jnum/errors.hpp"
#include "jnum/lp.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

namespace jnum {

bool PicClass::is_zero() const {
  for (auto v : entries) {
    if (v != 0) return false;
  }
  return true;
}

PicClass& PicClass::operator+=(const PicClass& o) {
  if (o.entries.size() != entries.size())
    throw DimensionMismatch("adding classes of rank " + std::to_string(entries.size()) + " and " +
                            std::to_string(o.entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += o.entries[i];
  return *this;
}

PicClass PicClass::operator-() const {
  PicClass r = *this;
  for (auto& v : r.entries) v = -v;
  return r;
}

std::string PicClass::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? "," : "") << entries[i];
  os << ')';
  return os.str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Effective:
      return "Effective";
    case Verdict::NotEffective:
      return "NotEffective";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

std::int64_t apply(const Covector& phi, const PicClass& cls) {
  if (phi.size() != cls.entries.size())
    throw DimensionMismatch("covector of length " + std::to_string(phi.size()) +
                            " applied to class of rank " + std::to_string(cls.entries.size()));
  std::int64_t s = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * cls.entries[i];
  return s;
}

namespace {

std::atomic<std::uint64_t> g_effective{0}, g_not_effective{0}, g_unknown{0}, g_verified{0};

bool system_holds(const InequalitySystem& sys, const PicClass& cls) {
  for (const auto& ineq : sys) {
    std::int64_t v = apply(ineq.covector, cls);
    if (ineq.strict ? v <= 0 : v < 0) return false;
  }
  return true;
}

void check_dims(const EffectivityOracle& o, const PicClass& c) {
  for (const auto& g : o.generators) {
    if (g.rank() != c.rank())
      throw DimensionMismatch("generator rank " + std::to_string(g.rank()) + " vs class rank " +
                              std::to_string(c.rank()));
  }
  for (const auto& phi : o.necessary) {
    if (phi.size() != c.rank()) throw DimensionMismatch("necessary covector length mismatch");
  }
  for (const auto& sys : o.sufficient_systems) {
    for (const auto& ineq : sys) {
      if (ineq.covector.size() != c.rank())
        throw DimensionMismatch("sufficient covector length mismatch");
    }
  }
}

}  // namespace

bool Decision::verify(const EffectivityOracle& oracle, const PicClass& cls) const {
  switch (verdict) {
    case Verdict::Unknown:
      return std::holds_alternative<std::monostate>(certificate);
    case Verdict::NotEffective: {
      const auto* r = std::get_if<RefutationCertificate>(&certificate);
      if (!r || r->covector_index >= oracle.necessary.size()) return false;
      if (oracle.necessary[r->covector_index] != r->covector) return false;
      std::int64_t v = apply(r->covector, cls);
      return v == r->value && v < 0;
    }
    case Verdict::Effective: {
      if (const auto* s = std::get_if<SystemCertificate>(&certificate)) {
        return s->system_index < oracle.sufficient_systems.size() &&
               system_holds(oracle.sufficient_systems[s->system_index], cls);
      }
      const auto* c = std::get_if<ConeCertificate>(&certificate);
      if (!c || c->coefficients.size() != oracle.generators.size()) return false;
      for (std::size_t i = 0; i < cls.rank(); ++i) {
        Rational sum;
        for (std::size_t g = 0; g < oracle.generators.size(); ++g) {
          if (c->coefficients[g].sign() < 0) return false;
          sum += c->coefficients[g] * Rational(oracle.generators[g].entries[i]);
        }
        if (sum != Rational(cls.entries[i])) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<std::vector<Rational>> cone_member(const PicClass& target,
                                                 const std::vector<PicClass>& generators) {
  const std::size_t rank = target.rank();
  for (const auto& g : generators) {
    if (g.rank() != rank)
      throw DimensionMismatch("generator rank " + std::to_string(g.rank()) + " vs target rank " +
                              std::to_string(rank));
  }
  const std::size_t n = generators.size();
  if (target.is_zero()) return std::vector<Rational>(n);
  std::vector<lp::AffineConstraint> rows;
  rows.reserve(rank + n);
  for (std::size_t i = 0; i < rank; ++i) {
    lp::AffineConstraint c{std::vector<Rational>(n), true, Rational(target.entries[i])};
    for (std::size_t g = 0; g < n; ++g) c.coeffs[g] = Rational(generators[g].entries[i]);
    rows.push_back(std::move(c));
  }
  for (std::size_t g = 0; g < n; ++g) {
    lp::AffineConstraint c{std::vector<Rational>(n), false, Rational(0)};
    c.coeffs[g] = Rational(1);
    rows.push_back(std::move(c));
  }
  lp::Feasibility f = lp::solve_affine(rows, n);
  if (!f.feasible) return std::nullopt;
  return f.witness;
}

Decision decide_effective(const EffectivityOracle& oracle, const PicClass& cls) {
  check_dims(oracle, cls);
  Decision d;
  for (std::size_t i = 0; i < oracle.necessary.size(); ++i) {
    std::int64_t v = apply(oracle.necessary[i], cls);
    if (v < 0) {
      d.verdict = Verdict::NotEffective;
      d.certificate = RefutationCertificate{i, oracle.necessary[i], v};
      break;
    }
  }
  if (d.verdict == Verdict::Unknown) {
    if (auto coeffs = cone_member(cls, oracle.generators)) {
      d.verdict = Verdict::Effective;
      d.certificate = ConeCertificate{std::move(*coeffs)};
    } else {
      for (std::size_t s = 0; s < oracle.sufficient_systems.size(); ++s) {
        if (system_holds(oracle.sufficient_systems[s], cls)) {
          d.verdict = Verdict::Effective;
          d.certificate = SystemCertificate{s};
          break;
        }
      }
    }
  }
  if (!d.verify(oracle, cls)) throw std::logic_error("effectivity certificate failed re-verification");
  switch (d.verdict) {
    case Verdict::Effective:
      ++g_effective;
      ++g_verified;
      break;
    case Verdict::NotEffective:
      ++g_not_effective;
      ++g_verified;
      break;
    case Verdict::Unknown:
      ++g_unknown;
      break;
  }
  return d;
}

DecisionStats decision_stats() {
  return {g_effective.load(), g_not_effective.load(), g_unknown.load(), g_verified.load()};
}

void reset_decision_stats() {
  g_effective = 0;
  g_not_effective = 0;
  g_unknown = 0;
  g_verified = 0;
}

std::vector<std::string> oracle_problems(const EffectivityOracle& oracle, std::size_t rank) {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < oracle.generators.size(); ++g) {
    if (oracle.generators[g].rank() != rank)
      out.push_back("generator " + std::to_string(g) + " has rank " +
                    std::to_string(oracle.generators[g].rank()) + ", expected " +
                    std::to_string(rank));
  }
  for (std::size_t i = 0; i < oracle.necessary.size(); ++i) {
    if (oracle.necessary[i].size() != rank)
      out.push_back("necessary covector " + std::to_string(i) + " has wrong length");
  }
  for (std::size_t s = 0; s < oracle.sufficient_systems.size(); ++s) {
    for (const auto& ineq : oracle.sufficient_systems[s]) {
      if (ineq.covector.size() != rank)
        out.push_back("sufficient system " + std::to_string(s) + " has a covector of wrong length");
    }
  }
  if (!out.empty()) return out;
  for (std::size_t g = 0; g < oracle.generators.size(); ++g) {
    for (std::size_t i = 0; i < oracle.necessary.size(); ++i) {
      std::int64_t v = apply(oracle.necessary[i], oracle.generators[g]);
      if (v < 0)
        out.push_back("oracle inconsistency: generator " + oracle.generators[g].str() +
                      " violates necessary covector " + std::to_string(i) + " (value " +
                      std::to_string(v) + ")");
    }
  }
  return out;
}

}  // namespace jnum
