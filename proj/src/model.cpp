#include "jnum/model.hpp"

#include "jnum/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace jnum {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Divisor / QDivisor
// ---------------------------------------------------------------------------

Divisor::Divisor(std::initializer_list<std::pair<const std::string, std::int64_t>> init) {
  for (const auto& [label, v] : init) add(label, v);
}

std::int64_t Divisor::operator[](const std::string& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? 0 : it->second;
}

void Divisor::set(const std::string& label, std::int64_t value) {
  if (value == 0) {
    coeffs_.erase(label);
  } else {
    coeffs_[label] = value;
  }
}

std::set<std::string> Divisor::support() const {
  std::set<std::string> s;
  for (const auto& [label, v] : coeffs_) s.insert(label);
  return s;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [label, v] : o.coeffs_) add(label, v);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [label, v] : o.coeffs_) add(label, -v);
  return *this;
}

Divisor Divisor::operator-() const { return scaled(-1); }

Divisor Divisor::scaled(std::int64_t s) const {
  Divisor out;
  for (const auto& [label, v] : coeffs_) out.set(label, v * s);
  return out;
}

bool Divisor::leq(const Divisor& o) const {
  for (const auto& [label, v] : coeffs_) {
    if (v > o[label]) return false;
  }
  for (const auto& [label, v] : o.coeffs_) {
    if ((*this)[label] > v) return false;
  }
  return true;
}

Divisor Divisor::min(const Divisor& a, const Divisor& b) {
  Divisor out;
  std::set<std::string> keys = a.support();
  for (const auto& [label, v] : b.coeffs_) keys.insert(label);
  for (const auto& label : keys) out.set(label, std::min(a[label], b[label]));
  return out;
}

QDivisor::QDivisor(const Divisor& d, const Rational& scale) {
  for (const auto& [label, v] : d.coefficients()) set(label, Rational(v) * scale);
}

Rational QDivisor::operator[](const std::string& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? Rational() : it->second;
}

void QDivisor::set(const std::string& label, Rational value) {
  if (value.sign() == 0) {
    coeffs_.erase(label);
  } else {
    coeffs_[label] = std::move(value);
  }
}

Divisor QDivisor::floor() const {
  Divisor out;
  for (const auto& [label, v] : coeffs_) out.set(label, to_int64(v.floor()));
  return out;
}

// ---------------------------------------------------------------------------
// Adjacency graph
// ---------------------------------------------------------------------------

bool AdjacencyGraph::adjacent(const std::string& a, const std::string& b) const {
  auto it = edges.find(a);
  return it != edges.end() && it->second.count(b) != 0;
}

std::vector<std::vector<std::string>> AdjacencyGraph::components(
    const std::vector<std::string>& subset) const {
  std::set<std::string> inside(subset.begin(), subset.end());
  std::set<std::string> seen;
  std::vector<std::string> ordered;
  for (const auto& v : vertices) {
    if (inside.count(v)) ordered.push_back(v);
  }
  for (const auto& v : subset) {
    if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& start : ordered) {
    if (seen.count(start)) continue;
    std::set<std::string> comp{start};
    std::deque<std::string> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      auto it = edges.find(v);
      if (it == edges.end()) continue;
      for (const auto& w : it->second) {
        if (inside.count(w) && !seen.count(w)) {
          seen.insert(w);
          comp.insert(w);
          queue.push_back(w);
        }
      }
    }
    std::vector<std::string> c;
    for (const auto& v : ordered) {
      if (comp.count(v)) c.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool AdjacencyGraph::connected(const std::vector<std::string>& subset) const {
  return !subset.empty() && components(subset).size() == 1;
}

// ---------------------------------------------------------------------------
// ResolutionData
// ---------------------------------------------------------------------------

ResolutionData::ResolutionData(std::vector<PrimeDivisorEntry> primes,
                               std::vector<ExceptionalGeometry> geometries, InputKind input_kind,
                               std::optional<std::int64_t> num_generators,
                               std::int64_t ambient_dim,
                               std::vector<std::pair<std::string, std::string>> adjacency_overrides,
                               std::vector<std::pair<std::string, std::string>> intersection_connected)
    : primes_(std::move(primes)),
      geometries_(std::move(geometries)),
      input_kind_(input_kind),
      num_generators_(num_generators),
      ambient_dim_(ambient_dim),
      adjacency_overrides_(std::move(adjacency_overrides)),
      intersection_connected_(std::move(intersection_connected)) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i].label.empty()) throw ConsistencyError("empty prime label");
    if (!index_.emplace(primes_[i].label, i).second)
      throw ConsistencyError("duplicate prime label", primes_[i].label);
  }
  for (std::size_t i = 0; i < geometries_.size(); ++i) {
    const auto& owner = geometries_[i].owner;
    if (!index_.count(owner)) throw ConsistencyError("geometry for unknown prime", owner);
    if (!primes_[index_.at(owner)].exceptional())
      throw ConsistencyError("geometry attached to an affine prime", owner);
    if (!geometry_index_.emplace(owner, i).second)
      throw ConsistencyError("duplicate geometry", owner);
  }
}

const PrimeDivisorEntry& ResolutionData::prime(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel(label);
  return primes_[it->second];
}

const ExceptionalGeometry& ResolutionData::geometry(const std::string& label) const {
  auto it = geometry_index_.find(label);
  if (it == geometry_index_.end()) throw UnknownLabel(label);
  return geometries_[it->second];
}

std::vector<std::string> ResolutionData::labels() const {
  std::vector<std::string> out;
  for (const auto& p : primes_) out.push_back(p.label);
  return out;
}

std::vector<std::string> ResolutionData::exceptional_labels() const {
  std::vector<std::string> out;
  for (const auto& p : primes_) {
    if (p.exceptional()) out.push_back(p.label);
  }
  return out;
}

bool ResolutionData::flagged_intersection_connected(const std::string& a,
                                                    const std::string& b) const {
  for (const auto& [x, y] : intersection_connected_) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

Divisor ResolutionData::multiplicities() const {
  Divisor d;
  for (const auto& p : primes_) d.set(p.label, p.e);
  return d;
}

Divisor ResolutionData::discrepancies() const {
  Divisor d;
  for (const auto& p : primes_) d.set(p.label, p.k);
  return d;
}

std::string ResolutionData::format(const Divisor& d) const {
  std::string out;
  for (const auto& p : primes_) {
    std::int64_t v = d[p.label];
    if (v == 0) continue;
    if (!out.empty()) out += ' ';
    out += p.label + ":" + std::to_string(v);
  }
  for (const auto& [label, v] : d.coefficients()) {
    if (!has(label)) out += (out.empty() ? "" : " ") + label + ":" + std::to_string(v);
  }
  return out.empty() ? "0" : out;
}

bool operator==(const ResolutionData& a, const ResolutionData& b) {
  return a.primes_ == b.primes_ && a.geometries_ == b.geometries_ &&
         a.input_kind_ == b.input_kind_ && a.num_generators_ == b.num_generators_ &&
         a.ambient_dim_ == b.ambient_dim_ && a.adjacency_overrides_ == b.adjacency_overrides_ &&
         a.intersection_connected_ == b.intersection_connected_;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

PicClass restrict(const ResolutionData& r, const Divisor& D, const std::string& E) {
  const ExceptionalGeometry& g = r.geometry(E);
  PicClass out{std::vector<std::int64_t>(g.pic_rank, 0)};
  for (const auto& [label, c] : D.coefficients()) {
    if (!r.has(label)) throw UnknownLabel(label);
    auto it = g.restrictions.find(label);
    if (it == g.restrictions.end()) throw UnknownLabel(label);
    const auto& v = it->second.entries;
    if (v.size() != g.pic_rank)
      throw DimensionMismatch("restriction of " + label + " to " + E + " has wrong length");
    for (std::size_t i = 0; i < g.pic_rank; ++i) out.entries[i] += c * v[i];
  }
  return out;
}

Divisor twist_divisor(const ResolutionData& r, const Rational& lambda) {
  Divisor out;
  for (const auto& p : r.primes()) {
    Rational prod = lambda * Rational(p.e);
    out.set(p.label, to_int64(prod.floor()) - p.k);
  }
  return out;
}

AdjacencyGraph adjacency(const ResolutionData& r) {
  AdjacencyGraph g;
  g.vertices = r.labels();
  for (const auto& v : g.vertices) g.edges[v];
  for (const auto& geom : r.geometries()) {
    for (const auto& [label, cls] : geom.restrictions) {
      if (label == geom.owner || cls.is_zero() || !r.has(label)) continue;
      g.edges[label].insert(geom.owner);
      g.edges[geom.owner].insert(label);
    }
  }
  for (const auto& [a, b] : r.adjacency_overrides()) {
    if (a == b) continue;
    g.edges[a].insert(b);
    g.edges[b].insert(a);
  }
  return g;
}

Divisor parse_divisor_literal(const ResolutionData& r, const std::string& text) {
  Divisor d;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) {
    auto colon = tok.rfind(':');
    std::string label = colon == std::string::npos ? tok : tok.substr(0, colon);
    std::int64_t v = 1;
    if (colon != std::string::npos) {
      std::string num = tok.substr(colon + 1);
      try {
        std::size_t used = 0;
        v = std::stoll(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
      } catch (const std::exception&) {
        throw SchemaError("bad coefficient in divisor literal: '" + tok + "'");
      }
    }
    if (!r.has(label)) throw UnknownLabel(label);
    d.add(label, v);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate(const ResolutionData& r) {
  ValidationReport rep;
  auto error = [&](std::string msg, std::string label = {}) {
    rep.errors.push_back({std::move(msg), std::move(label)});
  };

  if (r.ambient_dim() < 2) error("ambient_dim must be at least 2");
  if (r.input_kind() == InputKind::Ideal) {
    if (!r.num_generators() || *r.num_generators() < 1)
      error("ideal input requires a positive num_generators");
  }

  bool any_positive = false, affine_positive = false;
  for (const auto& p : r.primes()) {
    if (p.count < 1) error("count must be positive", p.label);
    if (p.count > 1 && !p.orbit_disjoint) error("count > 1 requires orbit_disjoint", p.label);
    if (p.e < 0) error("e must be nonnegative", p.label);
    if (p.k < 0) error("k must be nonnegative", p.label);
    if (!p.exceptional() && p.k != 0) error("affine prime must have k = 0", p.label);
    if (p.e >= 1) any_positive = true;
    if (!p.exceptional() && p.e >= 1) affine_positive = true;
    if (p.exceptional()) {
      try {
        (void)r.geometry(p.label);
      } catch (const UnknownLabel&) {
        error("exceptional prime without geometry", p.label);
      }
    }
  }
  if (!any_positive) error("no prime has positive multiplicity");
  if (r.input_kind() == InputKind::Divisor && !affine_positive)
    error("divisor input requires an affine prime with e >= 1");

  const auto labels = r.labels();
  bool shapes_ok = true;
  for (const auto& g : r.geometries()) {
    if (g.pic_rank < 1) error("pic_rank must be positive", g.owner);
    if (g.basis_labels.size() != g.pic_rank) error("basis_labels length differs from pic_rank", g.owner);
    for (const auto& label : labels) {
      auto it = g.restrictions.find(label);
      if (it == g.restrictions.end()) {
        error("geometry lacks restriction of " + label, g.owner);
        shapes_ok = false;
      } else if (it->second.rank() != g.pic_rank) {
        error("restriction of " + label + " has length " + std::to_string(it->second.rank()) +
                  ", expected " + std::to_string(g.pic_rank),
              g.owner);
        shapes_ok = false;
      }
    }
    for (const auto& [label, cls] : g.restrictions) {
      if (!r.has(label)) {
        error("restriction of unknown prime " + label, g.owner);
        shapes_ok = false;
      }
    }
    auto problems = oracle_problems(g.oracle, g.pic_rank);
    for (auto& msg : problems) error(std::move(msg), g.owner);
    if (!problems.empty()) shapes_ok = false;
  }

  for (const auto& [a, b] : r.adjacency_overrides()) {
    if (!r.has(a)) error("adjacency override names unknown prime", a);
    if (!r.has(b)) error("adjacency override names unknown prime", b);
  }
  for (const auto& [a, b] : r.intersection_connected()) {
    if (!r.has(a)) error("intersection_connected names unknown prime", a);
    if (!r.has(b)) error("intersection_connected names unknown prime", b);
  }
  if (!rep.ok() || !shapes_ok) return rep;

  for (const auto& g : r.geometries()) {
    for (const auto& [label, cls] : g.restrictions) {
      if (label == g.owner || cls.is_zero()) continue;
      Decision d = decide_effective(g.oracle, cls);
      if (d.verdict == Verdict::NotEffective)
        error("restriction of " + label + " " + cls.str() + " is not effective", g.owner);
    }
  }
  for (const auto& a : r.geometries()) {
    for (const auto& b : r.geometries()) {
      if (a.owner >= b.owner) continue;
      bool ab = a.restrictions.at(b.owner).is_zero();
      bool ba = b.restrictions.at(a.owner).is_zero();
      if (ab != ba)
        error("asymmetric adjacency between " + a.owner + " and " + b.owner, a.owner);
    }
  }

  if (rep.ok() && r.input_kind() == InputKind::Ideal) {
    for (const auto& g : r.geometries()) {
      PicClass cls = restrict(r, r.multiplicities(), g.owner);
      Decision d = decide_effective(g.oracle, -cls);
      if (d.verdict != Verdict::Effective) {
        rep.warnings.push_back({"F is not decidably antieffective on " + g.owner + " (" +
                                    to_string(d.verdict) + ")",
                                g.owner});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw SchemaError(where + ": expected a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  return j;
}

const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  return j;
}

std::vector<std::int64_t> int_vector(const Json& j, const std::string& where) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i)
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<std::string, std::string>> label_pairs(const Json& j, const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    const Json& p = as_array(j[i], w);
    if (p.size() != 2) throw SchemaError(w + ": expected a pair of labels");
    out.emplace_back(as_string(p[0], w), as_string(p[1], w));
  }
  return out;
}

InputKind parse_kind(const Json& root) {
  if (!root.contains("input_kind")) return InputKind::Divisor;
  std::string kind = as_string(root["input_kind"], "input_kind");
  if (kind == "divisor") return InputKind::Divisor;
  if (kind == "ideal") return InputKind::Ideal;
  throw SchemaError("input_kind: expected \"divisor\" or \"ideal\", got \"" + kind + "\"");
}

std::optional<std::int64_t> parse_generators(const Json& root) {
  if (!root.contains("num_generators") || root["num_generators"].is_null()) return std::nullopt;
  return as_int(root["num_generators"], "num_generators");
}

EffectivityOracle parse_oracle(const Json& j, const std::string& where) {
  EffectivityOracle o;
  as_object(j, where);
  if (j.contains("generators")) {
    const Json& gens = as_array(j["generators"], where + ".generators");
    for (std::size_t i = 0; i < gens.size(); ++i)
      o.generators.push_back({int_vector(gens[i], where + ".generators")});
  }
  if (j.contains("necessary")) {
    const Json& nec = as_array(j["necessary"], where + ".necessary");
    for (std::size_t i = 0; i < nec.size(); ++i)
      o.necessary.push_back(int_vector(nec[i], where + ".necessary"));
  }
  if (j.contains("sufficient_systems")) {
    const Json& systems = as_array(j["sufficient_systems"], where + ".sufficient_systems");
    for (std::size_t s = 0; s < systems.size(); ++s) {
      std::string w = where + ".sufficient_systems[" + std::to_string(s) + "]";
      InequalitySystem sys;
      for (const auto& ineq : as_array(systems[s], w)) {
        SufficientInequality si;
        si.covector = int_vector(field(ineq, "covector", w), w + ".covector");
        if (ineq.contains("strict")) si.strict = as_bool(ineq["strict"], w + ".strict");
        sys.push_back(std::move(si));
      }
      o.sufficient_systems.push_back(std::move(sys));
    }
  }
  return o;
}

ResolutionData parse_full(const Json& root) {
  std::vector<PrimeDivisorEntry> primes;
  const Json& jp = as_array(field(root, "primes", "document"), "primes");
  for (std::size_t i = 0; i < jp.size(); ++i) {
    std::string w = "primes[" + std::to_string(i) + "]";
    const Json& p = jp[i];
    PrimeDivisorEntry entry;
    entry.label = as_string(field(p, "label", w), w + ".label");
    w += " (" + entry.label + ")";
    std::string kind = as_string(field(p, "kind", w), w + ".kind");
    if (kind == "exceptional") {
      entry.kind = PrimeKind::Exceptional;
    } else if (kind == "affine") {
      entry.kind = PrimeKind::Affine;
    } else {
      throw SchemaError(w + ".kind: expected \"exceptional\" or \"affine\"");
    }
    if (p.contains("count")) entry.count = as_int(p["count"], w + ".count");
    if (p.contains("orbit_disjoint")) entry.orbit_disjoint = as_bool(p["orbit_disjoint"], w + ".orbit_disjoint");
    entry.e = as_int(field(p, "e", w), w + ".e");
    entry.k = as_int(field(p, "k", w), w + ".k");
    primes.push_back(std::move(entry));
  }

  std::vector<ExceptionalGeometry> geoms;
  if (root.contains("geometries")) {
    const Json& jg = as_array(root["geometries"], "geometries");
    for (std::size_t i = 0; i < jg.size(); ++i) {
      std::string w = "geometries[" + std::to_string(i) + "]";
      const Json& g = jg[i];
      ExceptionalGeometry geom;
      geom.owner = as_string(field(g, "owner", w), w + ".owner");
      w += " (" + geom.owner + ")";
      std::int64_t rank = as_int(field(g, "pic_rank", w), w + ".pic_rank");
      if (rank < 1) throw SchemaError(w + ".pic_rank: must be positive");
      geom.pic_rank = static_cast<std::size_t>(rank);
      for (const auto& b : as_array(field(g, "basis_labels", w), w + ".basis_labels"))
        geom.basis_labels.push_back(as_string(b, w + ".basis_labels"));
      const Json& restr = as_object(field(g, "restrictions", w), w + ".restrictions");
      for (auto it = restr.begin(); it != restr.end(); ++it)
        geom.restrictions[it.key()] = {int_vector(it.value(), w + ".restrictions." + it.key())};
      geom.faithful_for_triviality =
          as_bool(field(g, "faithful_for_triviality", w), w + ".faithful_for_triviality");
      geom.oracle = parse_oracle(field(g, "oracle", w), w + ".oracle");
      geoms.push_back(std::move(geom));
    }
  }

  std::int64_t dim = as_int(field(root, "ambient_dim", "document"), "ambient_dim");
  std::vector<std::pair<std::string, std::string>> overrides, connected;
  if (root.contains("adjacency_overrides"))
    overrides = label_pairs(root["adjacency_overrides"], "adjacency_overrides");
  if (root.contains("intersection_connected"))
    connected = label_pairs(root["intersection_connected"], "intersection_connected");
  return ResolutionData(std::move(primes), std::move(geoms), parse_kind(root), parse_generators(root),
                        dim, std::move(overrides), std::move(connected));
}

ResolutionData parse_shortcut(const Json& root) {
  const Json& jm = as_object(field(root, "matrix", "document"), "matrix");
  std::vector<std::string> exc;
  std::vector<std::vector<std::int64_t>> matrix;
  for (auto it = jm.begin(); it != jm.end(); ++it) {
    exc.push_back(it.key());
    matrix.push_back(int_vector(it.value(), "matrix." + it.key()));
  }
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> affine;
  if (root.contains("affine_rows")) {
    const Json& ja = as_object(root["affine_rows"], "affine_rows");
    for (auto it = ja.begin(); it != ja.end(); ++it)
      affine.emplace_back(it.key(), int_vector(it.value(), "affine_rows." + it.key()));
  }
  auto read_divisor = [&](const char* key) {
    Divisor d;
    if (!root.contains(key)) return d;
    const Json& jd = as_object(root[key], key);
    for (auto it = jd.begin(); it != jd.end(); ++it)
      d.add(it.key(), as_int(it.value(), std::string(key) + "." + it.key()));
    return d;
  };
  if (root.contains("ambient_dim") && as_int(root["ambient_dim"], "ambient_dim") != 2)
    throw SchemaError("ambient_dim: the intersection-matrix form is two-dimensional");
  return from_intersection_matrix(exc, matrix, affine, read_divisor("e"), read_divisor("k"),
                                  parse_kind(root), parse_generators(root));
}

ResolutionData parse_json(const Json& root, bool check) {
  if (!root.is_object()) throw SchemaError("document: expected a JSON object");
  ResolutionData r = root.contains("matrix") ? parse_shortcut(root) : parse_full(root);
  if (!check) return r;
  ValidationReport rep = validate(r);
  if (!rep.ok()) throw ConsistencyError(rep.errors.front().message, rep.errors.front().label);
  return r;
}

Json to_json(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

}  // namespace

ResolutionData parse_resolution_text(const std::string& json_text, bool check) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_json(root, check);
}

ResolutionData parse_resolution(const std::filesystem::path& path, bool check) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_resolution_text(buf.str(), check);
}

std::string serialize(const ResolutionData& r) {
  Json root;
  root["ambient_dim"] = r.ambient_dim();
  root["input_kind"] = r.input_kind() == InputKind::Ideal ? "ideal" : "divisor";
  if (r.num_generators()) root["num_generators"] = *r.num_generators();
  Json primes = Json::array();
  for (const auto& p : r.primes()) {
    Json jp;
    jp["label"] = p.label;
    jp["kind"] = p.exceptional() ? "exceptional" : "affine";
    if (p.count != 1) jp["count"] = p.count;
    if (p.orbit_disjoint) jp["orbit_disjoint"] = true;
    jp["e"] = p.e;
    jp["k"] = p.k;
    primes.push_back(std::move(jp));
  }
  root["primes"] = std::move(primes);
  Json geoms = Json::array();
  for (const auto& g : r.geometries()) {
    Json jg;
    jg["owner"] = g.owner;
    jg["pic_rank"] = g.pic_rank;
    jg["basis_labels"] = g.basis_labels;
    Json restr = Json::object();
    for (const auto& p : r.primes()) {
      auto it = g.restrictions.find(p.label);
      if (it != g.restrictions.end()) restr[p.label] = to_json(it->second.entries);
    }
    for (const auto& [label, cls] : g.restrictions) {
      if (!r.has(label)) restr[label] = to_json(cls.entries);
    }
    jg["restrictions"] = std::move(restr);
    jg["faithful_for_triviality"] = g.faithful_for_triviality;
    Json oracle;
    oracle["generators"] = Json::array();
    for (const auto& gen : g.oracle.generators) oracle["generators"].push_back(to_json(gen.entries));
    oracle["necessary"] = Json::array();
    for (const auto& phi : g.oracle.necessary) oracle["necessary"].push_back(to_json(phi));
    oracle["sufficient_systems"] = Json::array();
    for (const auto& sys : g.oracle.sufficient_systems) {
      Json js = Json::array();
      for (const auto& ineq : sys) js.push_back({{"covector", to_json(ineq.covector)}, {"strict", ineq.strict}});
      oracle["sufficient_systems"].push_back(std::move(js));
    }
    jg["oracle"] = std::move(oracle);
    geoms.push_back(std::move(jg));
  }
  root["geometries"] = std::move(geoms);
  auto pairs = [](const std::vector<std::pair<std::string, std::string>>& v) {
    Json a = Json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  if (!r.adjacency_overrides().empty()) root["adjacency_overrides"] = pairs(r.adjacency_overrides());
  if (!r.intersection_connected().empty())
    root["intersection_connected"] = pairs(r.intersection_connected());
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

ResolutionData from_intersection_matrix(
    const std::vector<std::string>& exceptional_labels,
    const std::vector<std::vector<std::int64_t>>& matrix,
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& affine_rows,
    const Divisor& e, const Divisor& k, InputKind input_kind,
    std::optional<std::int64_t> num_generators) {
  const std::size_t n = exceptional_labels.size();
  if (matrix.size() != n) throw DimensionMismatch("intersection matrix has the wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n)
      throw DimensionMismatch("intersection matrix row " + exceptional_labels[i] + " has wrong length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] >= 0)
      throw PositiveSelfIntersection("self-intersection must be negative", exceptional_labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i])
        throw AsymmetricMatrix("intersection matrix is not symmetric at (" + exceptional_labels[i] +
                                   ", " + exceptional_labels[j] + ")",
                               exceptional_labels[i]);
      if (i != j && matrix[i][j] < 0)
        throw ConsistencyError("negative intersection number with " + exceptional_labels[j],
                               exceptional_labels[i]);
    }
  }
  for (const auto& [label, row] : affine_rows) {
    if (row.size() != n) throw DimensionMismatch("affine row " + label + " has wrong length");
    for (auto v : row) {
      if (v < 0) throw ConsistencyError("negative affine intersection number", label);
    }
  }

  std::vector<PrimeDivisorEntry> primes;
  for (const auto& [label, row] : affine_rows)
    primes.push_back({label, PrimeKind::Affine, 1, false, e[label], k[label]});
  for (const auto& label : exceptional_labels)
    primes.push_back({label, PrimeKind::Exceptional, 1, false, e[label], k[label]});
  std::set<std::string> known;
  for (const auto& p : primes) known.insert(p.label);
  for (const auto& [label, v] : e.coefficients()) {
    if (!known.count(label)) throw UnknownLabel(label);
  }
  for (const auto& [label, v] : k.coefficients()) {
    if (!known.count(label)) throw UnknownLabel(label);
  }

  std::vector<ExceptionalGeometry> geoms;
  for (std::size_t i = 0; i < n; ++i) {
    ExceptionalGeometry g;
    g.owner = exceptional_labels[i];
    g.pic_rank = 1;
    g.basis_labels = {"degree"};
    for (std::size_t j = 0; j < n; ++j) g.restrictions[exceptional_labels[j]] = {{matrix[j][i]}};
    for (const auto& [label, row] : affine_rows) g.restrictions[label] = {{row[i]}};
    g.faithful_for_triviality = false;
    g.oracle.generators = {PicClass{{1}}};
    g.oracle.necessary = {{1}};
    geoms.push_back(std::move(g));
  }
  return ResolutionData(std::move(primes), std::move(geoms), input_kind, num_generators, 2);
}

ResolutionData make_example2(std::int64_t d) {
  if (d < 3) throw DTooSmall("d must be at least 3, got " + std::to_string(d));
  const std::int64_t k = d * (2 * d + 1);
  const std::int64_t dd = d * (d + 1);

  std::vector<PrimeDivisorEntry> primes = {
      {"D_aff", PrimeKind::Affine, 1, false, 1, 0},
      {"E1", PrimeKind::Exceptional, 1, false, 2 * d, 2},
      {"Ep", PrimeKind::Exceptional, k, true, 2 * d + 2, 4},
      {"E2", PrimeKind::Exceptional, 1, false, 2 * d + 1, 3},
      {"E3", PrimeKind::Exceptional, 1, false, 4 * d + 2, 6},
  };
  auto cls = [](std::vector<std::int64_t> v) { return PicClass{std::move(v)}; };

  // E1: plane blown up at the k points; (x, y) = x*line - y*(sum of point classes).
  ExceptionalGeometry e1;
  e1.owner = "E1";
  e1.pic_rank = 2;
  e1.basis_labels = {"line", "-points"};
  e1.restrictions = {{"D_aff", cls({0, 0})},
                     {"E1", cls({-(2 * d + 1), -1})},
                     {"Ep", cls({0, -1})},
                     {"E2", cls({0, 0})},
                     {"E3", cls({d, 1})}};
  e1.oracle.generators = {cls({0, -1}), cls({d, 1}), cls({1, 0})};
  e1.oracle.necessary = {{1, 0}};
  e1.oracle.sufficient_systems = {{{{1, 0}, false}, {{1, -d}, false}}};

  // Ep: plane blown up at a point and an infinitely near point.
  ExceptionalGeometry ep;
  ep.owner = "Ep";
  ep.pic_rank = 3;
  ep.basis_labels = {"l", "e1", "e2"};
  ep.restrictions = {{"D_aff", cls({2, -1, -1})},
                     {"E1", cls({1, -1, -1})},
                     {"Ep", cls({-1, 0, 0})},
                     {"E2", cls({0, 1, -1})},
                     {"E3", cls({0, 0, 1})}};
  ep.faithful_for_triviality = true;
  ep.oracle.generators = {cls({0, 0, 1}), cls({0, 1, -1}), cls({1, -1, -1})};
  ep.oracle.necessary = {{1, 0, 0}, {1, 1, 0}, {2, 1, 1}};

  // E2, E3: ruled surfaces over the curve; (section, fiber degree).
  ExceptionalGeometry e2;
  e2.owner = "E2";
  e2.pic_rank = 2;
  e2.basis_labels = {"section", "fiber_degree"};
  e2.restrictions = {{"D_aff", cls({0, 0})},
                     {"E1", cls({0, 0})},
                     {"Ep", cls({0, k})},
                     {"E2", cls({-2, -2 * dd})},
                     {"E3", cls({1, 0})}};
  e2.oracle.generators = {cls({1, 0}), cls({0, 1})};
  e2.oracle.necessary = {{1, 0}};
  e2.oracle.sufficient_systems = {{{{1, 0}, false}, {{0, 1}, false}}};

  ExceptionalGeometry e3;
  e3.owner = "E3";
  e3.pic_rank = 2;
  e3.basis_labels = {"section", "fiber_degree"};
  e3.restrictions = {{"D_aff", cls({1, 0})},
                     {"E1", cls({1, 0})},
                     {"Ep", cls({0, k})},
                     {"E2", cls({1, 0})},
                     {"E3", cls({-1, -dd})}};
  e3.oracle.generators = {cls({1, 0})};
  e3.oracle.necessary = {{1, 0}};
  e3.oracle.sufficient_systems = {{{{1, 0}, false}, {{0, 1}, true}},
                                  {{{1, 0}, false}, {{0, 1}, false}}};

  return ResolutionData(std::move(primes), {e1, ep, e2, e3}, InputKind::Divisor, std::nullopt, 3);
}

}  // namespace jnum
