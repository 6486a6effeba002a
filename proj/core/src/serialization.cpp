#include "latsurj/serialization.hpp"

#include <sstream>

namespace latsurj {

namespace {

Json integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const Certificate& c, bool include_timing) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  Json w;
  std::visit(
      [&](const auto& x) {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, SurjectiveWitness>) {
          w["kind"] = "minors";
          w["columns"] = x.columns;
          w["determinant"] = to_string(x.determinant);
          if (x.second_columns) {
            w["second_columns"] = *x.second_columns;
            w["second_determinant"] = to_string(*x.second_determinant);
          }
          w["gcd"] = to_string(x.gcd);
          Json f = Json::array();
          for (const auto& pp : x.factorization) f.push_back({{"prime", to_string(pp.prime)}, {"exponent", pp.exponent}});
          w["factorization"] = f;
          w["confirmed_primes"] = integers(x.confirmed_primes);
        } else if constexpr (std::is_same_v<W, AnnihilatorWitness>) {
          w["kind"] = "annihilator";
          w["modulus"] = to_string(x.modulus);
          w["prime_modulus"] = x.prime_modulus;
          w["vector"] = integers(x.vector);
        } else if constexpr (std::is_same_v<W, RankDeficiencyWitness>) {
          w["kind"] = "rank_deficiency";
          w["rational_rank"] = x.rational_rank;
        } else {
          w["kind"] = "cokernel";
          w["invariant_factors"] = integers(x.cokernel.invariant_factors);
          w["free_rank"] = x.cokernel.free_rank;
        }
      },
      c.witness);
  j["witness"] = w;
  if (include_timing) j["elapsed_ms"] = c.elapsed_ms;
  return j;
}

Json to_json(const Prediction& p) {
  Json j;
  j["value"] = p.value;
  j["truncation_bound"] = p.truncation_bound;
  j["terms_used"] = p.terms_used;
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

Json to_json(const ExperimentConfig& cfg) {
  Json j;
  j["experiment"] = to_string(cfg.kind);
  j["n"] = cfg.n;
  j["u"] = resolved_u(cfg);
  j["dist"] = cfg.dist;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["p"] = cfg.p;
  j["primes"] = cfg.primes;
  j["B"] = cfg.B;
  j["confidence"] = cfg.confidence;
  j["tolerance"] = optional_number(cfg.tolerance);
  j["max_freq"] = optional_number(cfg.max_freq);
  j["max_count"] = cfg.max_count ? Json(*cfg.max_count) : Json(nullptr);
  j["min_freq"] = optional_number(cfg.min_freq);
  j["c_grid"] = cfg.c_grid;
  j["control"] = cfg.control;
  j["singular_mode"] = cfg.singular_mode == SingularityMode::mod_p ? "mod_p" : "integer";
  j["cap"] = cfg.cap ? Json(*cfg.cap) : Json(nullptr);
  return j;
}

Json to_json(const SweepResult& r) {
  Json j;
  j["name"] = r.name;
  j["cases"] = r.cases;
  j["violations"] = r.violations;
  j["vacuous"] = r.vacuous;
  j["passed"] = r.passed();
  if (!r.first_violation.empty()) j["first_violation"] = r.first_violation;
  return j;
}

Json to_json(const ExposureTrace& t) {
  Json j;
  j["alpha"] = to_string(t.alpha);
  j["primes"] = integers(t.primes);
  j["coranks"] = t.coranks;
  if (t.cofactor != 1) {
    j["cofactor"] = to_string(t.cofactor);
    j["cofactor_coranks"] = t.cofactor_coranks;
  }
  j["batches"] = t.batches;
  j["drivers"] = t.drivers;
  j["total_extra_columns"] = t.total_extra_columns;
  j["cap"] = t.cap;
  j["achieved"] = t.achieved;
  return j;
}

Json to_json(const ExperimentReport& r, bool include_runtime) {
  Json j;
  j["config"] = to_json(r.config);
  j["seed"] = r.config.master_seed;
  j["trials"] = r.trials;
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    Json x;
    x["label"] = o.label;
    x["count"] = o.count;
    x["total"] = o.total;
    x["freq"] = o.freq;
    x["ci_lo"] = o.ci_lo;
    x["ci_hi"] = o.ci_hi;
    x["prediction"] = optional_number(o.prediction);
    x["tail_bound"] = optional_number(o.tail_bound);
    x["check"] = to_string(o.check);
    x["threshold"] = o.threshold;
    x["pass"] = o.pass;
    outcomes.push_back(x);
  }
  j["outcomes"] = outcomes;
  if (!r.runs.empty()) {
    Json runs = Json::array();
    for (const auto& row : r.runs) {
      runs.push_back({{"seed", row.seed},
                      {"primes", row.primes},
                      {"initial_coranks", row.initial_coranks},
                      {"batches", row.batches},
                      {"total_extra_columns", row.total_extra_columns},
                      {"achieved", row.achieved},
                      {"monotone", row.monotone},
                      {"certified", row.certified}});
    }
    j["runs"] = runs;
  }
  j["notes"] = r.notes;
  j["passed"] = r.passed;
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  j["invocation"] = r.config.invocation;
  return j;
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  if (r.config.kind == ExperimentKind::exposure) {
    out << "seed,primes,initial_coranks,batches,total_extra_columns,achieved\n";
    for (const auto& row : r.runs) {
      std::string primes, coranks;
      for (std::size_t k = 0; k < row.primes.size(); ++k) {
        primes += (k ? ";" : "") + row.primes[k];
        coranks += (k ? ";" : "") + std::to_string(row.initial_coranks[k]);
      }
      out << row.seed << ',' << csv_escape(primes) << ',' << coranks << ',' << row.batches << ','
          << row.total_extra_columns << ',' << (row.achieved ? 1 : 0) << '\n';
    }
    return out.str();
  }
  out << "label,count,total,freq,ci_lo,ci_hi,prediction,tail_bound,check,threshold,pass\n";
  out.precision(10);
  for (const auto& o : r.outcomes) {
    out << csv_escape(o.label) << ',' << o.count << ',' << o.total << ',' << o.freq << ',' << o.ci_lo << ',' << o.ci_hi
        << ',';
    if (o.prediction) out << *o.prediction;
    out << ',';
    if (o.tail_bound) out << *o.tail_bound;
    out << ',' << to_string(o.check) << ',' << o.threshold << ',' << (o.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace latsurj
