// SPDX-License-Identifier: Apache-2.0
//
// hyperinv: Bloch representations, hyperdeterminant invariants, fingerprint
// comparison and invariance audits of multipartite quantum states.
//
// Exit codes: 0 success, 1 golden mismatch or internal failure,
// 2 validation error, 3 budget error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperinv/hyperinv.hpp"
#include "hyperinv/io.hpp"

namespace {

using namespace hyperinv;

constexpr int kExitMismatch = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

HdetOptions hdet_options(unsigned threads) {
  HdetOptions opts;
  opts.threads = threads;
  if (const char* env = std::getenv("HYPERINV_BUDGET")) {
    char* end = nullptr;
    const double budget = std::strtod(env, &end);
    detail::require(end != env && *end == '\0' && budget > 0.0, "HYPERINV_BUDGET must be a positive number");
    opts.budget = budget;
  }
  return opts;
}

Dims parse_dims_arg(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      detail::require(pos == item.size() && v >= 1, "");
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValidationError("--dims must be a comma-separated list of positive integers");
    }
  }
  detail::require_dims(dims);
  return dims;
}

/// Tensor used by hdet/charpoly: the Bloch tensor of a density state, the amplitudes of a pure state.
HyperMatrix working_tensor(const io::State& state) {
  if (const auto* rho = std::get_if<DensityState>(&state)) return represent(*rho);
  return std::get<PureState>(state).amplitudes();
}

InvariantFingerprint fingerprint_of(const io::State& state, const HdetOptions& opts) {
  if (const auto* rho = std::get_if<DensityState>(&state)) {
    FingerprintOptions fo;
    fo.hdet = opts;
    return fingerprint(*rho, fo);
  }
  return fingerprint(std::get<PureState>(state));
}

void print_tensor(const HyperMatrix& a, std::ostream& out) {
  out << "format:";
  for (std::size_t k = 0; k < a.order(); ++k) out << (k ? "x" : " ") << a.format()[k];
  out << "\n";
  std::size_t nonzero = 0;
  for (const auto& e : a.entries()) nonzero += e != Complex{};
  out << "nonzero: " << nonzero << "\n";
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    const Complex e = a.entries()[flat];
    if (e == Complex{}) continue;
    for (std::size_t i : a.unravel(flat)) out << i << " ";
    out << io::scalar(e) << "\n";
  }
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial SLOCC/LU invariants of multipartite quantum states"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for hyperdeterminant and audit loops")
      ->check(CLI::Range(1u, 256u));

  std::string state_path;

  auto* repr = app.add_subcommand("repr", "Print the Bloch hypermatrix (or amplitude tensor) of a state");
  repr->add_option("state", state_path, "State file")->required();

  std::string out_format = "json";
  std::string bless_path, check_path;
  auto* fp_cmd = app.add_subcommand("fingerprint", "Compute the invariant fingerprint of a state");
  fp_cmd->add_option("state", state_path, "State file")->required();
  fp_cmd->add_option("--out", out_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  fp_cmd->add_option("--bless", bless_path, "Write the JSON fingerprint to this golden file");
  fp_cmd->add_option("--check", check_path, "Compare the JSON fingerprint byte-for-byte with this golden file");

  auto* hdet_cmd = app.add_subcommand("hdet", "First hyperdeterminant of the state tensor");
  hdet_cmd->add_option("state", state_path, "State file")->required();

  auto* det222_cmd = app.add_subcommand("det222", "Second hyperdeterminant of a three-qubit pure state");
  det222_cmd->add_option("state", state_path, "State file")->required();

  bool charpoly_check = false;
  auto* charpoly_cmd = app.add_subcommand("charpoly", "Hyper-characteristic polynomial coefficients c_0..c_N");
  charpoly_cmd->add_option("state", state_path, "State file")->required();
  charpoly_cmd->add_flag("--check", charpoly_check, "Also print the interpolation cross-check");

  std::string other_path;
  double tol = 1e-8;
  std::string scope = "all";
  auto* compare_cmd = app.add_subcommand("compare", "Necessary-condition comparison of two states");
  compare_cmd->add_option("first", state_path, "State file")->required();
  compare_cmd->add_option("second", other_path, "State file")->required();
  compare_cmd->add_option("--tol", tol, "Relative tolerance");
  compare_cmd->add_option("--scope", scope, "Compare only invariants guaranteed under this group")
      ->check(CLI::IsMember({"all", "basis", "lu", "slocc"}));

  std::string group = "slocc";
  std::size_t trials = 20;
  std::optional<std::uint64_t> seed;
  std::string claims;
  bool probe = false;
  std::vector<std::string> only;
  double audit_tol = 1e-8;
  double cond_cap = kDefaultConditionCap;
  std::string audit_out = "text";
  auto* audit_cmd = app.add_subcommand("audit", "Empirical invariance audit under random local operations");
  audit_cmd->add_option("state", state_path, "State file");
  audit_cmd->add_option("--group", group, "Sampled group")->check(CLI::IsMember({"lu", "slocc", "basis", "identity"}));
  audit_cmd->add_option("--trials", trials, "Number of random trials")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--tol", audit_tol, "Verdict tolerance");
  audit_cmd->add_option("--seed", seed, "Random seed (required)");
  audit_cmd->add_option("--cond-cap", cond_cap, "Condition-number cap for SL samples");
  audit_cmd->add_option("--claims", claims, "Run a standing experiment instead of a single audit")
      ->check(CLI::IsMember({"paper"}));
  audit_cmd->add_flag("--probe", probe, "Also audit a non-invariant Bloch entry");
  audit_cmd->add_option("--invariant", only, "Restrict to named invariants");
  audit_cmd->add_option("--out", audit_out, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string kind;
  std::string dims_text;
  std::size_t rank = 1;
  std::string sample_out;
  auto* sample_cmd = app.add_subcommand("sample", "Write a seeded random state or local operator file");
  sample_cmd->add_option("--kind", kind, "What to sample")
      ->required()
      ->check(CLI::IsMember({"density", "pure", "unitary", "sl"}));
  sample_cmd->add_option("--dims", dims_text, "Comma-separated local dimensions")->required();
  sample_cmd->add_option("--rank", rank, "Rank of a sampled density state")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "Random seed (required)");
  sample_cmd->add_option("--out", sample_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const HdetOptions opts = hdet_options(threads);

    if (repr->parsed()) {
      print_tensor(working_tensor(io::load_state(state_path)), std::cout);
    } else if (fp_cmd->parsed()) {
      const InvariantFingerprint fp = fingerprint_of(io::load_state(state_path), opts);
      const std::string json = io::fingerprint_json(fp);
      if (!bless_path.empty()) {
        if (!write_file(bless_path, json)) {
          std::cerr << "error: cannot write " << bless_path << "\n";
          return kExitMismatch;
        }
        std::cerr << "blessed " << bless_path << "\n";
      }
      if (!check_path.empty() && io::read_file(check_path) != json) {
        std::cerr << "golden mismatch: " << check_path << "\n";
        std::cout << json;
        return kExitMismatch;
      }
      std::cout << (out_format == "csv" ? io::fingerprint_csv(fp) : json);
    } else if (hdet_cmd->parsed()) {
      std::cout << io::scalar(hdet(working_tensor(io::load_state(state_path)), opts)) << "\n";
    } else if (det222_cmd->parsed()) {
      const io::State state = io::load_state(state_path);
      detail::require(std::holds_alternative<PureState>(state), "det222: needs a three-qubit pure state");
      std::cout << io::scalar(det222(std::get<PureState>(state).amplitudes())) << "\n";
    } else if (charpoly_cmd->parsed()) {
      const HyperMatrix a = working_tensor(io::load_state(state_path));
      const LambdaPolynomial p = hyper_charpoly(a, opts);
      const std::size_t side = a.format()[0];
      for (std::size_t k = 0; k <= side; ++k) std::cout << "c" << k << " " << io::scalar(p.coefficient(k)) << "\n";
      if (charpoly_check) {
        const LambdaPolynomial q = hyper_charpoly_by_interpolation(a, opts);
        for (std::size_t k = 0; k <= side; ++k)
          std::cout << "interp.c" << k << " " << io::scalar(q.coefficient(k)) << "\n";
      }
    } else if (compare_cmd->parsed()) {
      const InvariantFingerprint a = fingerprint_of(io::load_state(state_path), opts);
      const InvariantFingerprint b = fingerprint_of(io::load_state(other_path), opts);
      std::optional<Invariance> group_scope;
      if (scope == "basis") group_scope = Invariance::BasisChange;
      if (scope == "lu") group_scope = Invariance::LocalUnitary;
      if (scope == "slocc") group_scope = Invariance::Slocc;
      const Comparison c = compare_fingerprints(a, b, tol, group_scope);
      std::cout << to_string(c.verdict) << "\n";
      for (const auto& name : c.differing)
        std::cout << "differs " << name << " " << io::scalar(a.value(name)) << " | " << io::scalar(b.value(name)) << "\n";
    } else if (audit_cmd->parsed()) {
      detail::require(seed.has_value(), "audit: --seed is required");
      if (!claims.empty()) {
        for (const auto& table : standing_claims_experiment(*seed, trials, threads, opts)) {
          std::cout << "# claim: " << table.claim << "\n# state: " << table.state << "\n";
          std::cout << (audit_out == "json" ? io::report_json(table.reports) : io::report_table(table.reports)) << "\n";
        }
      } else {
        detail::require(!state_path.empty(), "audit: a state file is required unless --claims is given");
        AuditConfig cfg;
        cfg.trials = trials;
        cfg.tol = audit_tol;
        cfg.seed = *seed;
        cfg.cond_cap = cond_cap;
        cfg.threads = threads;
        cfg.fingerprint.hdet = opts;
        cfg.invariants = only;
        cfg.include_probe = probe;
        if (group == "lu") cfg.group = AuditGroup::LocalUnitary;
        if (group == "slocc") cfg.group = AuditGroup::Slocc;
        if (group == "basis") cfg.group = AuditGroup::BasisRotation;
        if (group == "identity") cfg.group = AuditGroup::Identity;
        const io::State state = io::load_state(state_path);
        const auto reports = std::visit([&](const auto& s) { return audit(s, cfg); }, state);
        std::cout << (audit_out == "json" ? io::report_json(reports) : io::report_table(reports));
      }
    } else if (sample_cmd->parsed()) {
      detail::require(seed.has_value(), "sample: --seed is required");
      const Dims dims = parse_dims_arg(dims_text);
      Rng rng = make_rng(*seed);
      std::string text;
      if (kind == "density") text = io::state_json(random_density(dims, rank, rng));
      if (kind == "pure") text = io::state_json(random_pure(dims, rng));
      if (kind == "unitary") text = io::operator_json(random_chain(dims, GroupTag::Unitary, rng));
      if (kind == "sl") text = io::operator_json(random_chain(dims, GroupTag::SpecialLinear, rng));
      if (sample_out.empty()) {
        std::cout << text;
      } else if (!write_file(sample_out, text)) {
        std::cerr << "error: cannot write " << sample_out << "\n";
        return kExitMismatch;
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
