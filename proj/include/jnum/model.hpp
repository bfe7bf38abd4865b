#pragma once

#include "jnum/effectivity.hpp"
#include "jnum/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jnum {

enum class PrimeKind { Exceptional, Affine };
enum class InputKind { Divisor, Ideal };

struct PrimeDivisorEntry {
  std::string label;
  PrimeKind kind = PrimeKind::Exceptional;
  std::int64_t count = 1;
  bool orbit_disjoint = false;
  std::int64_t e = 0;
  std::int64_t k = 0;

  bool exceptional() const { return kind == PrimeKind::Exceptional; }
  friend bool operator==(const PrimeDivisorEntry&, const PrimeDivisorEntry&) = default;
};

// Lattice data of one exceptional prime. For an orbit entry, the restriction
// of the orbit to a foreign owner is the class of the sum of its members; its
// restriction to its own geometry is the self-class of a single member.
struct ExceptionalGeometry {
  std::string owner;
  std::size_t pic_rank = 0;
  std::vector<std::string> basis_labels;
  std::map<std::string, PicClass> restrictions;
  bool faithful_for_triviality = false;
  EffectivityOracle oracle;

  friend bool operator==(const ExceptionalGeometry&, const ExceptionalGeometry&) = default;
};

// Integer divisor. Zero coefficients are never stored.
class Divisor {
 public:
  Divisor() = default;
  Divisor(std::initializer_list<std::pair<const std::string, std::int64_t>> init);

  std::int64_t operator[](const std::string& label) const;
  void set(const std::string& label, std::int64_t value);
  void add(const std::string& label, std::int64_t delta) { set(label, (*this)[label] + delta); }

  const std::map<std::string, std::int64_t>& coefficients() const { return coeffs_; }
  std::set<std::string> support() const;
  bool is_zero() const { return coeffs_.empty(); }

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  Divisor operator-() const;
  Divisor scaled(std::int64_t s) const;

  // Componentwise comparison.
  bool leq(const Divisor& o) const;
  static Divisor min(const Divisor& a, const Divisor& b);

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<std::string, std::int64_t> coeffs_;
};

class QDivisor {
 public:
  QDivisor() = default;
  QDivisor(const Divisor& d, const Rational& scale);

  Rational operator[](const std::string& label) const;
  void set(const std::string& label, Rational value);
  const std::map<std::string, Rational>& coefficients() const { return coeffs_; }

  // Round-down, coefficientwise.
  Divisor floor() const;

 private:
  std::map<std::string, Rational> coeffs_;
};

struct AdjacencyGraph {
  std::vector<std::string> vertices;
  std::map<std::string, std::set<std::string>> edges;

  bool adjacent(const std::string& a, const std::string& b) const;
  // Connected components of the induced subgraph, each sorted by vertex order.
  std::vector<std::vector<std::string>> components(const std::vector<std::string>& subset) const;
  bool connected(const std::vector<std::string>& subset) const;
};

class ResolutionData {
 public:
  ResolutionData() = default;
  ResolutionData(std::vector<PrimeDivisorEntry> primes, std::vector<ExceptionalGeometry> geometries,
                 InputKind input_kind, std::optional<std::int64_t> num_generators,
                 std::int64_t ambient_dim,
                 std::vector<std::pair<std::string, std::string>> adjacency_overrides = {},
                 std::vector<std::pair<std::string, std::string>> intersection_connected = {});

  const std::vector<PrimeDivisorEntry>& primes() const { return primes_; }
  const std::vector<ExceptionalGeometry>& geometries() const { return geometries_; }
  InputKind input_kind() const { return input_kind_; }
  const std::optional<std::int64_t>& num_generators() const { return num_generators_; }
  std::int64_t ambient_dim() const { return ambient_dim_; }
  const std::vector<std::pair<std::string, std::string>>& adjacency_overrides() const {
    return adjacency_overrides_;
  }
  const std::vector<std::pair<std::string, std::string>>& intersection_connected() const {
    return intersection_connected_;
  }

  bool has(const std::string& label) const { return index_.count(label) != 0; }
  const PrimeDivisorEntry& prime(const std::string& label) const;
  bool is_exceptional(const std::string& label) const { return prime(label).exceptional(); }
  // Throws UnknownLabel when `label` has no geometry.
  const ExceptionalGeometry& geometry(const std::string& label) const;
  std::vector<std::string> labels() const;
  std::vector<std::string> exceptional_labels() const;
  bool flagged_intersection_connected(const std::string& a, const std::string& b) const;

  // F and K as divisors.
  Divisor multiplicities() const;
  Divisor discrepancies() const;

  // Divisor coefficients listed in prime order, "E1:1 E2:1"; "0" when zero.
  std::string format(const Divisor& d) const;

  friend bool operator==(const ResolutionData& a, const ResolutionData& b);

 private:
  std::vector<PrimeDivisorEntry> primes_;
  std::vector<ExceptionalGeometry> geometries_;
  InputKind input_kind_ = InputKind::Divisor;
  std::optional<std::int64_t> num_generators_;
  std::int64_t ambient_dim_ = 2;
  std::vector<std::pair<std::string, std::string>> adjacency_overrides_;
  std::vector<std::pair<std::string, std::string>> intersection_connected_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> geometry_index_;
};

struct Finding {
  std::string message;
  std::string label;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const ResolutionData& r);

// Parsing runs `validate` and throws ConsistencyError on its first error,
// unless `check` is false.
ResolutionData parse_resolution(const std::filesystem::path& path, bool check = true);
ResolutionData parse_resolution_text(const std::string& json_text, bool check = true);
std::string serialize(const ResolutionData& r);

// Surface shortcut. `matrix` is indexed by `exceptional_labels`; each affine
// row lists the intersection numbers of one affine prime with the
// exceptional primes in the same order.
ResolutionData from_intersection_matrix(
    const std::vector<std::string>& exceptional_labels,
    const std::vector<std::vector<std::int64_t>>& matrix,
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& affine_rows,
    const Divisor& e, const Divisor& k, InputKind input_kind = InputKind::Divisor,
    std::optional<std::int64_t> num_generators = std::nullopt);

ResolutionData make_example2(std::int64_t d);

PicClass restrict(const ResolutionData& r, const Divisor& D, const std::string& E);

// floor(lambda * e) - k, coefficientwise.
Divisor twist_divisor(const ResolutionData& r, const Rational& lambda);

AdjacencyGraph adjacency(const ResolutionData& r);

// "E2:1,E4:1" (also accepts spaces as separators).
Divisor parse_divisor_literal(const ResolutionData& r, const std::string& text);

}  // namespace jnum
