#include "jnum/errors.hpp"
#include "jnum/jumping.hpp"
#include "jnum/model.hpp"
#include "jnum/unloading.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using Json = nlohmann::ordered_json;
using namespace jnum;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kUndetermined = 3;
constexpr int kDisagree = 4;

struct Config {
  std::string path;
  std::string divisor;
  std::string up_to;
  bool certify = false;
  std::string format = "table";
  bool trace = false;
  std::string mode = "batch";
  std::uint64_t iter_cap = 1'000'000;
  std::size_t r6_cap = 20;
  std::int64_t d = 0;
  std::string out;
  bool skip_validation = false;
};

ClosureOptions closure_options(const Config& cfg) {
  ClosureOptions o;
  o.mode = cfg.mode == "sequential" ? UnloadMode::Sequential : UnloadMode::Batch;
  o.iteration_cap = cfg.iter_cap;
  return o;
}

JumpingOptions jumping_options(const Config& cfg) {
  JumpingOptions o;
  o.closure = closure_options(cfg);
  o.r6_cap = cfg.r6_cap;
  return o;
}

Rational parse_bound(const std::string& text) {
  Rational b;
  try {
    b = Rational::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("--up-to: ") + e.what());
  }
  if (b.sign() <= 0) throw SchemaError("--up-to must be positive");
  return b;
}

// Requested bound: explicit, else 1 for divisors and min(n, l) for ideals.
Rational requested_bound(const ResolutionData& r, const Config& cfg) {
  if (!cfg.up_to.empty()) return parse_bound(cfg.up_to);
  if (r.input_kind() == InputKind::Ideal) return Rational(skoda_threshold(r));
  return Rational(1);
}

// Window actually computed before periodicity takes over.
Rational compute_window(const ResolutionData& r, const Rational& bound) {
  if (r.input_kind() == InputKind::Ideal) return std::max(bound, Rational(skoda_threshold(r)));
  return std::max(Rational(bound.ceil()), Rational(1));
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string join(const std::vector<Rational>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.str());
  return join(s, " ");
}

Json divisor_json(const ResolutionData& r, const Divisor& d) {
  Json j = Json::object();
  for (const auto& label : r.labels()) {
    if (d[label] != 0) j[label] = d[label];
  }
  return j;
}

Json ints_json(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json status_json(const ResolutionData& r, const CertificationStatus& st) {
  Json j;
  j["verdict"] = to_string(st.verdict);
  j["rule"] = st.rule ? Json(to_string(*st.rule)) : Json(nullptr);
  Json w = Json::object();
  if (st.verdict == CertVerdict::CertifiedJumping) {
    if (!st.witness.is_zero()) w["divisor"] = divisor_json(r, st.witness);
    if (st.related_lambda) w["related_lambda"] = st.related_lambda->str();
    if (!st.witness_classes.empty()) {
      Json c = Json::object();
      for (const auto& [label, cls] : st.witness_classes) c[label] = ints_json(cls.entries);
      w["classes"] = c;
    }
  } else {
    Json table = Json::array();
    for (const auto& ref : st.refutations) {
      const auto& cert = std::get<RefutationCertificate>(ref.decision.certificate);
      table.push_back({{"subset", ref.subset},
                       {"component", ref.component},
                       {"class", ints_json(ref.cls.entries)},
                       {"covector", ints_json(cert.covector)},
                       {"value", cert.value}});
    }
    w["refutations"] = table;
    if (st.verdict == CertVerdict::Undetermined) {
      Json un = Json::array();
      for (const auto& s : st.unresolved) un.push_back(s);
      w["unresolved"] = un;
      if (!st.note.empty()) w["note"] = st.note;
    }
  }
  j["witness"] = w;
  return j;
}

std::string witness_text(const ResolutionData& r, const CertificationStatus& st) {
  if (st.verdict == CertVerdict::CertifiedJumping) {
    if (st.related_lambda) return "periodic with " + st.related_lambda->str();
    if (!st.witness.is_zero()) {
      std::vector<std::string> labels;
      for (const auto& label : r.labels()) {
        if (st.witness[label] != 0) labels.push_back(label);
      }
      return join(labels, "+");
    }
    return "lct";
  }
  if (st.verdict == CertVerdict::CertifiedNotJumping)
    return std::to_string(st.refutations.size()) + " connected divisors refuted";
  if (!st.note.empty()) return st.note;
  std::vector<std::string> parts;
  for (const auto& s : st.unresolved) parts.push_back("{" + join(s, "+") + "}");
  (void)r;
  return "unresolved " + join(parts, " ");
}

std::string g_text(const std::vector<std::string>& g) { return join(g, "+"); }

int report_unknown(const UnknownEffectivity& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kInputError;
}

int cmd_validate(const Config& cfg) {
  ResolutionData r = parse_resolution(cfg.path, false);
  ValidationReport rep = validate(r);
  for (const auto& f : rep.errors)
    std::cout << "error: " << f.message << (f.label.empty() ? "" : " [" + f.label + "]") << "\n";
  for (const auto& f : rep.warnings)
    std::cout << "warning: " << f.message << (f.label.empty() ? "" : " [" + f.label + "]") << "\n";
  if (!rep.ok()) return kInputError;
  std::cout << "ok: " << r.primes().size() << " primes, " << r.geometries().size()
            << " exceptional geometries\n";
  return kOk;
}

int cmd_closure(const Config& cfg) {
  ResolutionData r = parse_resolution(cfg.path, !cfg.skip_validation);
  Divisor D = parse_divisor_literal(r, cfg.divisor);
  auto [result, trace] = antieffective_closure(r, D, closure_options(cfg));
  if (cfg.format == "json") {
    Json j;
    j["input"] = divisor_json(r, D);
    j["closure"] = divisor_json(r, result);
    if (cfg.trace) {
      Json steps = Json::array();
      for (const auto& s : trace.steps) steps.push_back({{"sweep", s.sweep}, {"added", s.added}});
      j["trace"] = steps;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  if (cfg.trace) {
    for (const auto& s : trace.steps) std::cout << "sweep " << s.sweep << ": +" << join(s.added, " +") << "\n";
  }
  std::cout << r.format(result) << "\n";
  return kOk;
}

int cmd_jumping(const Config& cfg) {
  ResolutionData r = parse_resolution(cfg.path, !cfg.skip_validation);
  const Rational bound = requested_bound(r, cfg);
  const Rational window = compute_window(r, bound);
  const JumpingOptions opts = jumping_options(cfg);
  std::vector<SupercandidateRecord> records = supercandidates(r, window, opts);
  if (cfg.certify) certify_all(r, records, opts);

  std::vector<const SupercandidateRecord*> shown;
  for (const auto& rec : records) {
    if (rec.lambda <= bound) shown.push_back(&rec);
  }
  bool undetermined = false;
  for (const auto* rec : shown) undetermined |= cfg.certify && rec->status.verdict == CertVerdict::Undetermined;

  std::optional<std::vector<Rational>> jumping_numbers;
  if (cfg.certify) jumping_numbers = extend_by_periodicity(r, records, bound, window);

  if (cfg.format == "json") {
    Json j;
    j["bound"] = bound.str();
    j["computed_window"] = window.str();
    Json recs = Json::array();
    for (const auto* rec : shown) {
      Json jr;
      jr["lambda"] = rec->lambda.str();
      jr["closure"] = divisor_json(r, rec->d_lambda);
      jr["minimal_jumping_divisor"] = rec->g_lambda;
      jr["status"] = cfg.certify ? status_json(r, rec->status) : Json(nullptr);
      recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);
    if (jumping_numbers) {
      Json jn = Json::array();
      for (const auto& x : *jumping_numbers) jn.push_back(x.str());
      j["jumping_numbers"] = std::move(jn);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::size_t wl = 6, wg = 8;
    for (const auto* rec : shown) {
      wl = std::max(wl, rec->lambda.str().size());
      wg = std::max(wg, g_text(rec->g_lambda).size());
    }
    std::cout << std::left << std::setw(static_cast<int>(wl) + 2) << "lambda"
              << std::setw(static_cast<int>(wg) + 2) << "G_lambda";
    if (cfg.certify) std::cout << std::setw(21) << "status" << std::setw(6) << "rule" << "witness";
    std::cout << "\n";
    for (const auto* rec : shown) {
      std::cout << std::setw(static_cast<int>(wl) + 2) << rec->lambda.str()
                << std::setw(static_cast<int>(wg) + 2) << g_text(rec->g_lambda);
      if (cfg.certify) {
        const auto& st = rec->status;
        std::cout << std::setw(21) << to_string(st.verdict) << std::setw(6)
                  << (st.rule ? to_string(*st.rule) : "-") << witness_text(r, st);
      }
      std::cout << "\n";
    }
    if (jumping_numbers)
      std::cout << "jumping numbers up to " << bound.str() << ": " << join(*jumping_numbers) << "\n";
  }
  return undetermined ? kUndetermined : kOk;
}

int cmd_scan(const Config& cfg) {
  ResolutionData r = parse_resolution(cfg.path, !cfg.skip_validation);
  const Rational bound = requested_bound(r, cfg);
  const JumpingOptions opts = jumping_options(cfg);
  std::vector<Rational> scan = brute_scan(r, bound, opts.closure);
  std::vector<Rational> values;
  for (const auto& rec : supercandidates(r, bound, opts)) values.push_back(rec.lambda);
  const bool agree = scan == values;
  if (cfg.format == "json") {
    Json j;
    j["bound"] = bound.str();
    Json a = Json::array(), b = Json::array();
    for (const auto& x : scan) a.push_back(x.str());
    for (const auto& x : values) b.push_back(x.str());
    j["scan"] = a;
    j["supercandidates"] = b;
    j["agree"] = agree;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "scan: " << join(scan) << "\n";
    std::cout << "supercandidates: " << join(values) << "\n";
    std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
  }
  return agree ? kOk : kDisagree;
}

int cmd_gen_example2(const Config& cfg) {
  ResolutionData r = make_example2(cfg.d);
  std::string text = serialize(r);
  if (cfg.out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(cfg.out);
  if (!out) throw SchemaError("cannot write " + cfg.out);
  out << text;
  std::cout << "wrote " << cfg.out << " (Ep count " << r.prime("Ep").count << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jumping numbers of multiplier ideals from log-resolution lattice data"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "unloading mode")
        ->check(CLI::IsMember({"batch", "sequential"}));
    sub->add_option("--iter-cap", cfg.iter_cap, "unloading sweep cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_flag("--skip-validation", cfg.skip_validation, "load the dataset without consistency checks");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a dataset");
  validate_cmd->add_option("path", cfg.path, "dataset")->required();

  auto* closure_cmd = app.add_subcommand("closure", "antieffective closure of a divisor");
  closure_cmd->add_option("path", cfg.path, "dataset")->required();
  closure_cmd->add_option("-d,--divisor", cfg.divisor, "divisor, e.g. \"E2:1,E4:1\"")->required();
  closure_cmd->add_flag("--trace", cfg.trace, "print unloading sweeps");
  add_common(closure_cmd);

  auto* jumping_cmd = app.add_subcommand("jumping", "supercandidates and certification");
  jumping_cmd->add_option("path", cfg.path, "dataset")->required();
  jumping_cmd->add_option("--up-to", cfg.up_to, "bound p/q");
  jumping_cmd->add_flag("--certify", cfg.certify, "certify each supercandidate");
  jumping_cmd->add_option("--r6-cap", cfg.r6_cap, "component cap for subset enumeration")
      ->check(CLI::PositiveNumber);
  add_common(jumping_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "brute-force change-point scan");
  scan_cmd->add_option("path", cfg.path, "dataset")->required();
  scan_cmd->add_option("--up-to", cfg.up_to, "bound p/q");
  add_common(scan_cmd);

  auto* gen_cmd = app.add_subcommand("gen-example2", "write the degree-d cone example");
  gen_cmd->add_option("--d", cfg.d, "degree (>= 3)")->required();
  gen_cmd->add_option("--out", cfg.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg);
    if (*closure_cmd) return cmd_closure(cfg);
    if (*jumping_cmd) return cmd_jumping(cfg);
    if (*scan_cmd) return cmd_scan(cfg);
    if (*gen_cmd) return cmd_gen_example2(cfg);
  } catch (const UnknownEffectivity& e) {
    return report_unknown(e);
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
