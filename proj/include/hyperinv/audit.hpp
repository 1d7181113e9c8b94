// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_AUDIT_HPP
#define HYPERINV_AUDIT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hyperinv/invariants.hpp"
#include "hyperinv/sampling.hpp"

namespace hyperinv {

enum class AuditGroup { LocalUnitary, Slocc, BasisRotation, Identity };

inline const char* to_string(AuditGroup g) {
  switch (g) {
    case AuditGroup::LocalUnitary: return "LU";
    case AuditGroup::Slocc: return "SLOCC";
    case AuditGroup::BasisRotation: return "BASIS_ROTATION";
    case AuditGroup::Identity: return "IDENTITY";
  }
  return "?";
}

enum class AuditVerdict { Invariant, NotInvariant, Inconclusive };

inline const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Invariant: return "INVARIANT";
    case AuditVerdict::NotInvariant: return "NOT_INVARIANT";
    case AuditVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct AuditConfig {
  AuditGroup group = AuditGroup::Slocc;
  std::size_t trials = 20;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  double cond_cap = kDefaultConditionCap;
  unsigned threads = 1;
  FingerprintOptions fingerprint;
  /// Restrict to these invariant names; empty audits every non-constant entry.
  std::vector<std::string> invariants;
  /// Also audit the Bloch (or amplitude) entry at index (0, ..., 0, 1), which is not invariant.
  bool include_probe = false;
};

struct AuditReport {
  std::string invariant;
  AuditGroup group = AuditGroup::Slocc;
  std::size_t trials = 0;
  double max_relative_deviation = 0.0;
  double median_relative_deviation = 0.0;
  AuditVerdict verdict = AuditVerdict::Inconclusive;
  std::uint64_t seed = 0;
  double cond_cap = kDefaultConditionCap;
  double tol = 0.0;
};

inline constexpr double kDeviationFloor = 1e-12;
inline constexpr const char* kProbeName = "probe.a0..01";

/// |v' - v| / |v|, or |v' - v| when |v| is below the 1e-12 floor.
inline double relative_deviation(Complex reference, Complex value) {
  const double diff = std::abs(value - reference);
  const double mag = std::abs(reference);
  return mag < kDeviationFloor ? diff : diff / mag;
}

inline AuditVerdict audit_verdict(double max_dev, double median_dev, double tol) {
  if (max_dev < tol) return AuditVerdict::Invariant;
  if (median_dev > 100.0 * tol) return AuditVerdict::NotInvariant;
  return AuditVerdict::Inconclusive;
}

namespace detail {

using AuditState = std::variant<DensityState, PureState>;

inline Complex probe_entry(const HyperMatrix& a) {
  std::vector<std::size_t> index(a.order(), 0);
  index.back() = 1;
  return a.at(index);
}

struct Observation {
  std::vector<std::string> names;
  std::vector<Complex> values;
};

inline Observation observe(const AuditState& state, const FingerprintOptions& options, bool probe) {
  Observation obs;
  InvariantFingerprint fp;
  HyperMatrix tensor;
  if (const auto* rho = std::get_if<DensityState>(&state)) {
    fp = fingerprint(*rho, options);
    if (probe) tensor = represent(*rho, resolve_bases(rho->dims(), options));
  } else {
    const auto& phi = std::get<PureState>(state);
    fp = fingerprint(phi);
    if (probe) tensor = phi.amplitudes();
  }
  for (const auto& e : fp.entries) {
    if (e.constant) continue;
    obs.names.push_back(e.name);
    obs.values.push_back(e.value);
  }
  if (probe) {
    obs.names.push_back(kProbeName);
    obs.values.push_back(probe_entry(tensor));
  }
  return obs;
}

inline Observation observe_trial(const AuditState& state, const AuditConfig& config, std::size_t trial) {
  Rng rng = make_rng(config.seed, trial);
  const Dims dims = std::visit([](const auto& s) { return s.dims(); }, state);
  switch (config.group) {
    case AuditGroup::Identity:
      return observe(state, config.fingerprint, config.include_probe);
    case AuditGroup::BasisRotation: {
      require(std::holds_alternative<DensityState>(state), "audit: basis rotations apply to density states only");
      // One rotation per local dimension, shared by all parties of that dimension.
      std::map<std::size_t, BlochBasis> rotated;
      for (std::size_t d : dims)
        if (!rotated.count(d)) rotated.emplace(d, rotate_basis(gell_mann_basis(d), random_rotation_fixing_identity(d * d, rng)));
      FingerprintOptions options = config.fingerprint;
      options.bases.clear();
      for (std::size_t d : dims) options.bases.push_back(rotated.at(d));
      return observe(state, options, config.include_probe);
    }
    case AuditGroup::LocalUnitary:
    case AuditGroup::Slocc: {
      const GroupTag tag = config.group == AuditGroup::Slocc ? GroupTag::SpecialLinear : GroupTag::Unitary;
      const LocalOperatorChain g = random_chain(dims, tag, rng, config.cond_cap);
      const AuditState moved = std::visit([&](const auto& s) -> AuditState { return apply_local(s, g); }, state);
      return observe(moved, config.fingerprint, config.include_probe);
    }
  }
  return {};
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline std::vector<AuditReport> run_audit(const AuditState& state, const AuditConfig& config) {
  require(config.trials >= 1, "audit: need at least one trial");
  const Observation reference = observe(state, config.fingerprint, config.include_probe);

  std::vector<Observation> trials(config.trials);
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
  auto worker = [&](unsigned w) {
    for (std::size_t t = w; t < config.trials; t += threads) trials[t] = observe_trial(state, config, t);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  std::vector<AuditReport> reports;
  for (std::size_t i = 0; i < reference.names.size(); ++i) {
    const std::string& name = reference.names[i];
    if (!config.invariants.empty() &&
        std::find(config.invariants.begin(), config.invariants.end(), name) == config.invariants.end())
      continue;
    std::vector<double> devs;
    for (const auto& obs : trials) devs.push_back(relative_deviation(reference.values[i], obs.values[i]));
    AuditReport r;
    r.invariant = name;
    r.group = config.group;
    r.trials = config.trials;
    r.max_relative_deviation = *std::max_element(devs.begin(), devs.end());
    r.median_relative_deviation = median(devs);
    r.verdict = audit_verdict(r.max_relative_deviation, r.median_relative_deviation, config.tol);
    r.seed = config.seed;
    r.cond_cap = config.cond_cap;
    r.tol = config.tol;
    reports.push_back(std::move(r));
  }
  for (const auto& wanted : config.invariants)
    require(std::any_of(reports.begin(), reports.end(), [&](const auto& r) { return r.invariant == wanted; }),
            "audit: state has no invariant named " + wanted);
  return reports;
}

}  // namespace detail

/**
 * Samples `trials` local transformations from the configured group, each from
 * its own generator make_rng(seed, trial), and reports per-invariant relative
 * deviations against the untransformed state.
 */
inline std::vector<AuditReport> audit(const DensityState& rho, const AuditConfig& config) {
  return detail::run_audit(rho, config);
}

inline std::vector<AuditReport> audit(const PureState& phi, const AuditConfig& config) {
  return detail::run_audit(phi, config);
}

/// One table of the standing experiment on characteristic-polynomial claims.
struct ClaimsTable {
  std::string claim;
  std::string state;
  std::vector<AuditReport> reports;
};

/**
 * Audits the middle characteristic-polynomial coefficients that are not
 * guaranteed: bipartite F_1..F_{d^2-1} under local unitaries, and 4-qubit
 * hyper-characteristic c_1..c_{N-1} under SLOCC. Output is documentation.
 */
inline std::vector<ClaimsTable> standing_claims_experiment(std::uint64_t seed, std::size_t trials, unsigned threads = 1,
                                                           const HdetOptions& hdet_options = {}) {
  std::vector<ClaimsTable> tables;
  {
    const DensityState rho = random_density({2, 2}, 4, seed);
    AuditConfig cfg;
    cfg.group = AuditGroup::LocalUnitary;
    cfg.trials = trials;
    cfg.tol = 1e-8;
    cfg.seed = seed;
    cfg.threads = threads;
    tables.push_back({"bipartite charpoly coefficients F_i are LU-invariant", "random 2-qubit rank-4", audit(rho, cfg)});
  }
  {
    const DensityState rho = random_density({2, 2, 2, 2}, 3, seed + 1);
    AuditConfig cfg;
    cfg.group = AuditGroup::Slocc;
    cfg.trials = trials;
    cfg.tol = 1e-6;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.fingerprint.hdet = hdet_options;
    tables.push_back({"hyper-characteristic coefficients are SLOCC-invariant", "random 4-qubit rank-3", audit(rho, cfg)});
  }
  return tables;
}

}  // namespace hyperinv

#endif  // HYPERINV_AUDIT_HPP
