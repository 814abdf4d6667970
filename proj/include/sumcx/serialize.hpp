// JSON and CSV encodings of reports, batches and verification results.
#pragma once

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sumcx/experiments.hpp"
#include "sumcx/spectra.hpp"
#include "sumcx/sum_complex.hpp"
#include "sumcx/verify.hpp"

namespace sumcx {

using json = nlohmann::ordered_json;

inline json to_json(const SpectralReport& r) {
  json j;
  j["mu"] = r.mu;
  j["homology_dim"] = r.homology_dim;
  j["fourier_lower_bound"] = r.fourier_lower_bound;
  j["degree_upper_bound"] = r.degree_upper_bound;
  j["vacuous"] = r.vacuous;
  j["solver"] = to_string(r.solver);
  if (r.spectrum) j["spectrum"] = *r.spectrum;
  return j;
}

inline json face_counts_json(const SumComplex& X) {
  json counts = json::array();
  for (int d = -1; d <= X.k; ++d) counts.push_back(face_count(X, d));
  json j;
  j["group"] = X.spec.to_string();
  j["n"] = X.n();
  j["k"] = X.k;
  j["A"] = X.A.elements();
  j["m"] = X.m();
  j["face_counts"] = counts;  // f_{-1}, f_0, ..., f_k
  j["top_faces"] = face_count(X, X.k);
  return j;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json to_json(const TrialBatch& b) {
  json config;
  config["group"] = b.group;
  config["n"] = b.n;
  config["k"] = b.k;
  config["m"] = b.m;
  config["m_auto"] = b.m_auto;
  config["epsilon"] = b.epsilon;
  config["trials"] = b.trials;
  config["seed"] = b.seed;
  config["compute_mu"] = b.compute_mu;

  json agg;
  agg["char_sum_threshold"] = b.char_sum_threshold;
  agg["pr_char_sum_exceeds"] = b.pr_char_sum_exceeds;
  agg["char_sum_mean"] = b.char_sum_mean;
  agg["char_sum_max"] = b.char_sum_max;
  agg["lower_bound_min"] = b.lower_bound_min;
  agg["mu_threshold"] = b.mu_threshold;
  agg["pr_mu_below"] = optional_json(b.pr_mu_below);
  agg["mu_min"] = optional_json(b.mu_min);
  agg["mu_mean"] = optional_json(b.mu_mean);
  agg["mu_max"] = optional_json(b.mu_max);
  agg["sandwich_violations"] = b.sandwich_violations;
  agg["predicted_homology_dim"] = optional_json(b.predicted_homology_dim);
  agg["homology_mismatches"] = b.homology_mismatches;

  json j;
  j["config"] = config;
  j["aggregates"] = agg;
  j["theorem_regime"] = b.theorem_regime;
  j["theorem_probability_bound"] = b.theorem_probability_bound;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

// Columns: trial,m,max_char_sum,lower_bound,mu,upper_bound,homology_dim
inline void write_trials_csv(std::ostream& out, const TrialBatch& b) {
  out << "trial,m,max_char_sum,lower_bound,mu,upper_bound,homology_dim\n";
  for (const auto& r : b.records) {
    out << r.trial << ',' << r.A.size() << ',' << format_double(r.max_char_sum) << ','
        << format_double(r.lower_bound) << ',' << (r.mu ? format_double(*r.mu) : "") << ','
        << format_double(r.upper_bound) << ',' << (r.homology_dim ? std::to_string(*r.homology_dim) : "")
        << '\n';
  }
}

inline json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["instances"] = c.instances;
    item["max_error"] = c.max_error;
    item["tolerance"] = c.tolerance;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  json j;
  j["max_n"] = r.options.max_n;
  j["max_k"] = r.options.max_k;
  j["seed"] = r.options.seed;
  j["passed"] = r.passed();
  j["checks"] = checks;
  return j;
}

}  // namespace sumcx
