#include "cli.hpp"

#include "latsurj/certifier.hpp"
#include "latsurj/ensembles.hpp"
#include "latsurj/exact_linalg.hpp"
#include "latsurj/experiments.hpp"
#include "latsurj/fq_fourier.hpp"
#include "latsurj/predictions.hpp"
#include "latsurj/serialization.hpp"
#include "latsurj/sweeps.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace latsurj::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string name;
  std::string fallback;  // empty: no default
  std::string help;
};

std::string env_name(const std::string& key) {
  std::string s = "LATSURJ_";
  for (char c : key) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string k) {
  k = trim(k);
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

/// One leaf command: its keys, the raw flag values and the resolution order
/// flags > environment > config file > default.
class Command {
 public:
  Command(CLI::App* app, std::vector<KeySpec> keys) : app_(app), keys_(std::move(keys)) {
    for (const auto& k : keys_) app_->add_option("--" + k.name, flags_[k.name], k.help);
    app_->add_option("--config", config_path_, "key=value file; flags and LATSURJ_* variables take precedence");
  }

  CLI::App* app() const { return app_; }

  void resolve(const Environment& env) {
    std::map<std::string, std::string> file;
    std::string path = config_path_;
    if (path.empty())
      if (auto v = env("LATSURJ_CONFIG")) path = *v;
    if (!path.empty()) file = read_config(path);
    for (const auto& k : keys_) {
      if (app_->count("--" + k.name) > 0) {
        values_[k.name] = flags_[k.name];
      } else if (auto v = env(env_name(k.name))) {
        values_[k.name] = *v;
      } else if (auto it = file.find(k.name); it != file.end()) {
        values_[k.name] = it->second;
      } else if (!k.fallback.empty()) {
        values_[k.name] = k.fallback;
      }
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw UsageError("missing required option --" + key);
    return *v;
  }

  std::string describe() const {
    std::string s;
    for (const auto& k : keys_) {
      if (!s.empty()) s += ' ';
      auto v = get(k.name);
      s += k.name + '=' + (v ? *v : "<unset>");
    }
    return s;
  }

 private:
  std::map<std::string, std::string> read_config(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
      const std::string key = normalize_key(line.substr(0, eq));
      const bool known = std::any_of(keys_.begin(), keys_.end(), [&](const KeySpec& k) { return k.name == key; });
      if (!known) throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      out[key] = trim(line.substr(eq + 1));
    }
    return out;
  }

  CLI::App* app_;
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, std::string> values_;
  std::string config_path_;
};

std::uint64_t to_uint(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  const auto t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw UsageError("--" + key + " expects a nonnegative integer, got '" + s + "'");
  return v;
}

double to_real(const std::string& key, const std::string& s) {
  const auto t = trim(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw UsageError("--" + key + " expects a number, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& s) {
  std::string t = trim(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw UsageError("--" + key + " expects true or false, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::vector<std::uint64_t> to_uint_list(const std::string& key, const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split_list(s)) out.push_back(to_uint(key, part));
  return out;
}

std::vector<double> to_real_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split_list(s)) out.push_back(to_real(key, part));
  return out;
}

std::string format_of(const Command& cmd, std::initializer_list<const char*> allowed) {
  const std::string f = cmd.require("format");
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("unsupported --format '" + f + "'");
}

std::string quote(const std::string& a) {
  if (!a.empty() && a.find_first_of(" \t\n'\"\\$`*?;&|<>()") == std::string::npos) return a;
  std::string s = "'";
  for (char c : a) s += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return s + "'";
}

std::string invocation_of(const std::vector<std::string>& args) {
  std::string s = "latsurj";
  for (const auto& a : args) s += ' ' + quote(a);
  return s;
}

/// Writes to --out when given, otherwise to `out`.
void emit(const Command& cmd, std::ostream& out, const std::string& text) {
  if (auto path = cmd.get("out"); path && *path != "-") {
    std::ofstream file(*path);
    if (!file) throw UsageError("cannot write " + *path);
    file << text;
    return;
  }
  out << text;
}

IntMatrix load_matrix(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_matrix(in);
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open matrix file " + path);
  return read_matrix(file);
}

std::string fixed(double v, int digits = 15) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

// --- subcommands -----------------------------------------------------------

int cmd_sample(const Command& cmd, std::ostream& out) {
  EnsembleSpec spec;
  spec.n = to_uint("n", cmd.require("n"));
  spec.dist = Distribution::parse(cmd.require("dist"));
  spec.seed = to_uint("seed", cmd.require("seed"));
  const std::size_t u = cmd.get("u") ? to_uint("u", *cmd.get("u")) : 0;
  const std::string kind = cmd.require("kind");
  if (kind == "iid") {
    spec.kind = EnsembleKind::iid_rect;
    spec.m = cmd.get("m") ? to_uint("m", *cmd.get("m")) : spec.n + u;
  } else if (kind == "symmetric") {
    if (cmd.get("m")) throw UsageError("--m applies to the iid ensemble; use --u for symmetric");
    spec.kind = EnsembleKind::symmetric_plus;
    spec.u = u;
  } else {
    throw UsageError("--kind must be iid or symmetric");
  }
  if (spec.n == 0 || spec.total_columns() == 0) throw UsageError("matrix dimensions must be positive");
  std::ostringstream s;
  write_matrix(s, sample_matrix(spec));
  emit(cmd, out, s.str());
  return kOk;
}

int cmd_certify(const Command& cmd, const std::string& file, bool timing, std::istream& in, std::ostream& out) {
  const IntMatrix m = load_matrix(file, in);
  const Certificate cert = is_surjective(m);
  const bool verified = verify_certificate(m, cert);
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  const Json body = to_json(cert, timing);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["verified"] = verified;
  emit(cmd, out, j.dump(2) + "\n");
  return verified ? kOk : kCheckFailed;
}

int cmd_snf(const Command& cmd, const std::string& file, std::istream& in, std::ostream& out) {
  const IntMatrix m = load_matrix(file, in);
  const auto diag = smith_diagonal(m);
  const auto cok = cokernel(m);
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json d = Json::array();
  for (const auto& x : diag) d.push_back(to_string(x));
  j["diagonal"] = d;
  Json inv = Json::array();
  for (const auto& x : cok.invariant_factors) inv.push_back(to_string(x));
  j["invariant_factors"] = inv;
  j["free_rank"] = cok.free_rank;
  j["trivial"] = cok.trivial();
  emit(cmd, out, j.dump(2) + "\n");
  return kOk;
}

int print_prediction(const Command& cmd, const Prediction& p, std::ostream& out) {
  if (format_of(cmd, {"text", "json"}) == "json") {
    emit(cmd, out, to_json(p).dump(2) + "\n");
  } else {
    std::string line = fixed(p.value) + " (tail bound " + fixed(p.truncation_bound, 3) + ", " +
                       std::to_string(p.terms_used) + " terms)";
    if (!p.note.empty()) line += " " + p.note;
    emit(cmd, out, line + "\n");
  }
  return kOk;
}

int cmd_predict_corank(const Command& cmd, std::ostream& out) {
  const auto q = to_uint("q", cmd.require("q"));
  const auto k = to_uint("k", cmd.require("k"));
  if (!is_prime_power(q)) throw UsageError("--q must be a prime power");
  return print_prediction(cmd, corank_prediction(q, static_cast<unsigned>(k)), out);
}

int cmd_predict_trivial(const Command& cmd, std::ostream& out) {
  const auto u = static_cast<unsigned>(to_uint("u", cmd.require("u")));
  if (auto primes = cmd.get("primes")) {
    const auto list = to_uint_list("primes", *primes);
    for (auto p : list)
      if (!is_probable_prime(from_u64(p))) throw UsageError("--primes contains non-prime " + std::to_string(p));
    return print_prediction(cmd, trivial_cokernel_prediction(list, u), out);
  }
  return print_prediction(cmd, trivial_cokernel_all_primes(u), out);
}

int cmd_experiment(const Command& cmd, const std::string& kind, const std::string& invocation, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.kind = parse_experiment_kind(kind);
  cfg.invocation = invocation;
  cfg.n = to_uint("n", cmd.require("n"));
  if (auto v = cmd.get("u")) cfg.u = to_uint("u", *v);
  cfg.dist = cmd.require("dist");
  cfg.trials = to_uint("trials", cmd.require("trials"));
  cfg.master_seed = to_uint("seed", cmd.require("seed"));
  cfg.p = to_uint("p", cmd.require("p"));
  if (auto v = cmd.get("primes")) cfg.primes = to_uint_list("primes", *v);
  cfg.B = to_real("B", cmd.require("B"));
  cfg.confidence = to_real("confidence", cmd.require("confidence"));
  cfg.threads = static_cast<unsigned>(to_uint("threads", cmd.require("threads")));
  if (auto v = cmd.get("tol")) cfg.tolerance = to_real("tol", *v);
  if (auto v = cmd.get("max-freq")) cfg.max_freq = to_real("max-freq", *v);
  if (auto v = cmd.get("max-count")) cfg.max_count = to_uint("max-count", *v);
  if (auto v = cmd.get("min-freq")) cfg.min_freq = to_real("min-freq", *v);
  if (auto v = cmd.get("c")) cfg.c_grid = to_real_list("c", *v);
  if (auto v = cmd.get("cap")) cfg.cap = to_uint("cap", *v);
  cfg.control = to_bool("control", cmd.require("control"));
  const std::string mode = cmd.require("mode");
  if (mode == "mod_p" || mode == "modp")
    cfg.singular_mode = SingularityMode::mod_p;
  else if (mode == "integer")
    cfg.singular_mode = SingularityMode::integer;
  else
    throw UsageError("--mode must be mod_p or integer");
  const std::string format = format_of(cmd, {"json", "csv"});

  const ExperimentReport report = run_experiment(cfg);
  emit(cmd, out, format == "json" ? to_json(report).dump(2) + "\n" : to_csv(report));
  return report.passed ? kOk : kCheckFailed;
}

std::vector<Element> parse_elements(const std::string& key, const std::string& s, const FieldTable& field) {
  std::vector<Element> out;
  for (auto v : to_uint_list(key, s)) {
    if (v >= field.q()) throw UsageError("--" + key + " element " + std::to_string(v) + " is not below q");
    out.push_back(static_cast<Element>(v));
  }
  return out;
}

int cmd_fourier_check(const Command& cmd, std::ostream& out) {
  const auto q = to_uint("q", cmd.require("q"));
  if (!is_prime_power(q) || q > FieldTable::kMaxOrder) throw UsageError("--q must be a prime power <= 4096");
  const auto field = FieldTable::of_order(static_cast<std::uint32_t>(q));
  const auto mu = FqDistribution::parse(field, cmd.require("mu"));
  const auto w = parse_elements("w", cmd.require("w"), *field);
  if (std::all_of(w.begin(), w.end(), [](Element x) { return x == 0; }))
    throw UsageError("--w needs a nonzero coefficient");
  std::vector<Element> targets;
  if (auto r = cmd.get("r")) {
    targets = parse_elements("r", *r, *field);
  } else {
    for (Element x = 0; x < field->q(); ++x) targets.push_back(x);
  }
  const bool json = format_of(cmd, {"text", "json"}) == "json";

  bool ok = true;
  Json j;
  std::ostringstream text;
  const Rational alpha = subgroup_alpha(mu);
  j["q"] = q;
  j["mu"] = mu.to_string();
  j["alpha"] = to_string(alpha);
  text << "field F_" << q << " (p=" << field->p() << ", f=" << field->f() << ")\n";
  text << "mu = " << mu.to_string() << "\n";
  text << "alpha = " << to_string(alpha) << " (" << fixed(to_double(alpha), 6) << ")\n";

  Json lo = Json::array();
  for (Element r : targets) {
    const LoCheck c = lo_bound_check(mu, w, r);
    ok = ok && c.holds;
    lo.push_back({{"r", r},
                  {"probability", to_string(c.probability)},
                  {"m", c.m},
                  {"lhs", c.lhs},
                  {"rhs", c.degenerate ? Json(nullptr) : Json(c.rhs)},
                  {"degenerate", c.degenerate},
                  {"holds", c.holds}});
    text << "LO r=" << r << ": |P - 1/q| = " << fixed(c.lhs, 6) << " <= 2/sqrt(alpha m) = "
         << (c.degenerate ? std::string("inf") : fixed(c.rhs, 6)) << " (m=" << c.m << "): "
         << (c.degenerate ? "vacuous, alpha = 0" : c.holds ? "holds" : "VIOLATED") << "\n";
  }
  j["lo"] = lo;

  if (field->f() <= 3) {
    const auto s = spectrum_subgroup_check(mu);
    ok = ok && (!s.hypothesis_holds || s.holds);
    j["spectrum"] = {{"hypothesis_holds", s.hypothesis_holds}, {"holds", s.holds}};
    text << "spectrum: no nonzero subgroup inside Spec_{1-alpha/2}: ";
    if (!s.hypothesis_holds)
      text << "vacuous, alpha = 0\n";
    else
      text << (s.holds ? "holds" : "VIOLATED") << "\n";
  }

  if (auto v = cmd.get("v")) {
    const double level = to_real("v", *v);
    const auto k = static_cast<unsigned>(to_uint("k", cmd.require("k")));
    const auto level_set = psi_level_set(mu, w, level);
    const bool nested = check_level_set_nesting(mu, w, level, k);
    ok = ok && nested;
    j["level_set"] = {{"v", level}, {"k", k}, {"size", level_set.size()}, {"holds", nested}};
    text << "level set: |T(" << fixed(level, 6) << ")| = " << level_set.size() << ", " << k << "T(v) in T("
         << k << "^2 v): " << (nested ? "holds" : "VIOLATED") << "\n";
  }
  j["passed"] = ok;
  emit(cmd, out, json ? j.dump(2) + "\n" : text.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_fourier_sweep(const Command& cmd, std::ostream& out) {
  const auto seed = to_uint("seed", cmd.require("seed"));
  const auto threads = static_cast<unsigned>(to_uint("threads", cmd.require("threads")));
  const bool json = format_of(cmd, {"text", "json"}) == "json";
  const auto results = run_fourier_sweeps(seed, threads);
  bool ok = true;
  Json arr = Json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    ok = ok && r.passed();
    arr.push_back(to_json(r));
    text << r.name << ": " << r.cases << " cases, " << r.violations << " violations";
    if (r.vacuous) text << ", " << r.vacuous << " vacuous";
    if (!r.first_violation.empty()) text << " (first: " << r.first_violation << ")";
    text << "\n";
  }
  Json j;
  j["sweeps"] = arr;
  j["passed"] = ok;
  emit(cmd, out, json ? j.dump(2) + "\n" : text.str());
  return ok ? kOk : kCheckFailed;
}

std::vector<KeySpec> experiment_keys() {
  return {{"n", "50", "matrix size"},
          {"u", "", "extra columns (kind default when unset)"},
          {"dist", "uniform01", "entry law, e.g. 0:9/10,1:1/10 or bernoulli(1/10)"},
          {"trials", "1000", "number of trials or runs"},
          {"seed", "1", "master seed"},
          {"p", "2", "prime for corank and mod-p singularity"},
          {"primes", "", "finite prime set, comma separated"},
          {"B", "1", "constant of the column budget"},
          {"confidence", "0.95", "Wilson interval level"},
          {"threads", "0", "worker threads (0 = all cores)"},
          {"tol", "", "override the tolerance"},
          {"max-freq", "", "upper bound on the main frequency"},
          {"max-count", "", "upper bound on the singular count"},
          {"min-freq", "", "lower bound on the main frequency"},
          {"c", "", "constants c for the exp(-c alpha n) reference curves"},
          {"cap", "", "extra-column cap for exposure runs"},
          {"mode", "mod_p", "singularity test: mod_p or integer"},
          {"control", "true", "run the u=0 control for the symmetric model"},
          {"format", "json", "json or csv"},
          {"out", "", "output file (default stdout)"}};
}

}  // namespace

Environment process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const Environment& env) {
  CLI::App app{"Surjectivity certificates and random integer matrix experiments", "latsurj"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "latsurj 0.1.0");

  auto* sample = app.add_subcommand("sample", "Sample a matrix in the text format");
  Command c_sample(sample, {{"n", "", "rows"},
                            {"m", "", "columns of the iid ensemble (default n+u)"},
                            {"u", "", "extra columns"},
                            {"dist", "uniform01", "entry law"},
                            {"seed", "1", "seed"},
                            {"kind", "iid", "iid or symmetric"},
                            {"out", "", "output file"}});

  std::string matrix_file;
  bool timing = false;
  auto* certify = app.add_subcommand("certify", "Decide surjectivity onto Z^rows and print a certificate");
  Command c_certify(certify, {{"out", "", "output file"}});
  certify->add_option("matrix", matrix_file, "matrix file, - for stdin");
  certify->add_flag("--timing", timing, "include elapsed time");

  auto* snf = app.add_subcommand("snf", "Smith normal form diagonal and cokernel");
  Command c_snf(snf, {{"out", "", "output file"}});
  snf->add_option("matrix", matrix_file, "matrix file, - for stdin");

  auto* predict = app.add_subcommand("predict", "Limiting probabilities");
  predict->require_subcommand(1);
  Command c_corank(predict->add_subcommand("corank", "P(corank = k) over F_q"),
                   {{"q", "", "prime power"}, {"k", "", "corank"}, {"format", "text", "text or json"},
                    {"out", "", "output file"}});
  Command c_trivial(predict->add_subcommand("trivial", "P(cokernel trivial) with u extra columns"),
                    {{"u", "", "extra columns"}, {"primes", "", "finite prime set (default all primes)"},
                     {"format", "text", "text or json"}, {"out", "", "output file"}});

  std::string kind;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment with a JSON or CSV report");
  Command c_experiment(experiment, experiment_keys());
  experiment->add_option("kind", kind, "corank | trivial | square | singularity | exposure | symmetric")->required();

  auto* fourier = app.add_subcommand("fourier", "Exact anti-concentration checks over F_q");
  fourier->require_subcommand(1);
  Command c_check(fourier->add_subcommand("check", "Check one law and coefficient vector"),
                  {{"q", "", "field order"},
                   {"mu", "", "law on element codes, x:w,... or uniform"},
                   {"w", "", "coefficients, comma separated codes"},
                   {"r", "", "targets (default all)"},
                   {"v", "", "level for the level-set nesting check"},
                   {"k", "2", "sumset multiplicity"},
                   {"format", "text", "text or json"},
                   {"out", "", "output file"}});
  Command c_sweep(fourier->add_subcommand("sweep", "Run the exhaustive and randomized grids"),
                  {{"seed", "1", "seed of the randomized sweeps"},
                   {"threads", "0", "worker threads (0 = all cores)"},
                   {"format", "text", "text or json"},
                   {"out", "", "output file"}});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsage;
  }

  const std::array<Command*, 8> commands{&c_sample, &c_certify, &c_snf, &c_corank,
                                         &c_trivial, &c_experiment, &c_check, &c_sweep};
  Command* chosen = nullptr;
  for (auto* c : commands)
    if (c->app()->parsed()) chosen = c;
  if (!chosen) {
    err << app.help();
    return kUsage;
  }

  try {
    chosen->resolve(env);
    std::string name = chosen->app()->get_name();
    if (chosen->app()->get_parent() != &app) name = chosen->app()->get_parent()->get_name() + " " + name;
    if (chosen == &c_experiment) name += " " + kind;
    err << "latsurj " << name << ": " << chosen->describe() << "\n";

    if (chosen == &c_sample) return cmd_sample(*chosen, out);
    if (chosen == &c_certify) return cmd_certify(*chosen, matrix_file, timing, in, out);
    if (chosen == &c_snf) return cmd_snf(*chosen, matrix_file, in, out);
    if (chosen == &c_corank) return cmd_predict_corank(*chosen, out);
    if (chosen == &c_trivial) return cmd_predict_trivial(*chosen, out);
    if (chosen == &c_experiment) return cmd_experiment(*chosen, kind, invocation_of(args), out);
    if (chosen == &c_check) return cmd_fourier_check(*chosen, out);
    return cmd_fourier_sweep(*chosen, out);
  } catch (const UsageError& e) {
    err << "latsurj: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "latsurj: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "latsurj: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace latsurj::cli
