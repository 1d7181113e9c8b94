// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_INVARIANTS_HPP
#define HYPERINV_INVARIANTS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hyperinv/bloch.hpp"
#include "hyperinv/hyperdet.hpp"

namespace hyperinv {

/// Strongest group under which an invariant is mathematically guaranteed.
/// Ordered: an Slocc guarantee implies the other two.
enum class Invariance { BasisChange = 0, LocalUnitary = 1, Slocc = 2 };

inline const char* to_string(Invariance g) {
  switch (g) {
    case Invariance::BasisChange: return "basis";
    case Invariance::LocalUnitary: return "lu";
    case Invariance::Slocc: return "slocc";
  }
  return "?";
}

enum class StateKind { Density, Pure };

inline const char* to_string(StateKind k) { return k == StateKind::Density ? "density" : "pure"; }

inline constexpr const char* kConvention = "gell-mann;tr(s_i s_j)=d*delta_ij;order=sym,antisym,diag;v1";

struct InvariantEntry {
  std::string name;
  Complex value;
  Invariance guaranteed = Invariance::BasisChange;
  /// State-independent (e.g. the leading coefficient of a characteristic polynomial).
  bool constant = false;
};

struct InvariantFingerprint {
  StateKind kind = StateKind::Density;
  Dims dims;
  std::string family;
  std::string convention = kConvention;
  std::vector<InvariantEntry> entries;

  const InvariantEntry* find(const std::string& name) const {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
    return it == entries.end() ? nullptr : &*it;
  }

  Complex value(const std::string& name) const {
    const InvariantEntry* e = find(name);
    detail::require(e != nullptr, "fingerprint has no invariant named " + name);
    return e->value;
  }
};

struct FingerprintOptions {
  HdetOptions hdet;
  /// One basis per party; empty selects the Gell-Mann basis for every party.
  std::vector<BlochBasis> bases;
};

namespace detail {

inline std::vector<BlochBasis> resolve_bases(const Dims& dims, const FingerprintOptions& options) {
  return options.bases.empty() ? default_bases(dims) : options.bases;
}

inline std::string versioned(const std::string& base) { return base + "@v1"; }

}  // namespace detail

/**
 * Bipartite state with d_1 = d_2 = d: coefficients F_1..F_{d^2} of
 * det(lambda I - A) = sum_i lambda^{d^2 - i} F_i for the Bloch matrix A, and
 * for d = 2 the principal-minor sums Tr, S_2, S_3, det.
 *
 * Only det(A) is guaranteed beyond basis changes: under local operations A
 * transforms as B_1 A B_2^t with independent B_1, B_2.
 */
inline InvariantFingerprint bipartite_fingerprint(const DensityState& rho, const FingerprintOptions& options = {}) {
  detail::require(rho.parties() == 2 && rho.dims()[0] == rho.dims()[1],
                  "bipartite_fingerprint: needs two parties of equal dimension");
  const Matrix a = represent(rho, detail::resolve_bases(rho.dims(), options)).to_matrix();
  const LambdaPolynomial p = charpoly_coeffs(a);
  const std::size_t n = static_cast<std::size_t>(a.rows());

  InvariantFingerprint fp{StateKind::Density, rho.dims(), "bipartite", kConvention, {}};
  for (std::size_t i = 1; i <= n; ++i)
    fp.entries.push_back({detail::versioned("charpoly.F" + std::to_string(i)), p.coefficient(n - i),
                          i == n ? Invariance::Slocc : Invariance::BasisChange, false});
  if (rho.dims()[0] == 2) {
    fp.entries.push_back({detail::versioned("ex1.trace"), principal_minor_sum(a, 1), Invariance::BasisChange, false});
    fp.entries.push_back({detail::versioned("ex1.minors2"), principal_minor_sum(a, 2), Invariance::BasisChange, false});
    fp.entries.push_back({detail::versioned("ex1.minors3"), principal_minor_sum(a, 3), Invariance::BasisChange, false});
    fp.entries.push_back({detail::versioned("ex1.det"), principal_minor_sum(a, 4), Invariance::Slocc, false});
  }
  return fp;
}

/// Bipartite state with d_1 != d_2: det(A A^t) and det(A^t A) of the Bloch matrix.
inline InvariantFingerprint rectangular_fingerprint(const DensityState& rho, const FingerprintOptions& options = {}) {
  detail::require(rho.parties() == 2, "rectangular_fingerprint: needs a bipartite state");
  const Matrix a = represent(rho, detail::resolve_bases(rho.dims(), options)).to_matrix();
  InvariantFingerprint fp{StateKind::Density, rho.dims(), "rectangular", kConvention, {}};
  fp.entries.push_back({detail::versioned("rect.det_AAt"), (a * a.transpose()).determinant(), Invariance::LocalUnitary,
                        false});
  fp.entries.push_back({detail::versioned("rect.det_AtA"), (a.transpose() * a).determinant(), Invariance::LocalUnitary,
                        false});
  return fp;
}

/**
 * State on (C^d)^{(x)2n}: coefficients c_0..c_N (N = d^2) of the
 * hyper-characteristic polynomial hdet(lambda I - [rho]). c_0 = (-1)^N hdet([rho])
 * is guaranteed under SLOCC; c_N = hdet(I) is state independent.
 */
inline InvariantFingerprint even_partite_fingerprint(const DensityState& rho, const FingerprintOptions& options = {}) {
  const Dims& dims = rho.dims();
  detail::require(dims.size() % 2 == 0, "even_partite_fingerprint: needs an even number of parties");
  detail::require(std::all_of(dims.begin(), dims.end(), [&](std::size_t d) { return d == dims[0]; }),
                  "even_partite_fingerprint: all local dimensions must be equal");
  const HyperMatrix a = represent(rho, detail::resolve_bases(dims, options));
  const LambdaPolynomial p = hyper_charpoly(a, options.hdet);
  const std::size_t side = a.format()[0];

  InvariantFingerprint fp{StateKind::Density, dims, "even-partite", kConvention, {}};
  for (std::size_t k = 0; k <= side; ++k)
    fp.entries.push_back({detail::versioned("hdet.c" + std::to_string(k)), p.coefficient(k),
                          k == 0 ? Invariance::Slocc : Invariance::BasisChange, k == side});
  return fp;
}

/// det of the d x d amplitude matrix of a bipartite pure state.
inline Complex pure_bipartite_det(const PureState& phi) {
  detail::require(phi.parties() == 2 && phi.dims()[0] == phi.dims()[1],
                  "pure_bipartite_det: amplitude matrix must be square");
  return phi.amplitudes().to_matrix().determinant();
}

struct ThreeQubitDet {
  Complex det;
  /// 4 |Det|.
  double tangle;
};

inline ThreeQubitDet pure_three_qubit_det(const PureState& phi) {
  const Complex det = det222(phi.amplitudes());
  return {det, 4.0 * std::abs(det)};
}

/// Density states dispatch on shape: equal-dimension bipartite, rectangular bipartite, even-partite.
inline InvariantFingerprint fingerprint(const DensityState& rho, const FingerprintOptions& options = {}) {
  const Dims& dims = rho.dims();
  if (dims.size() == 2) {
    return dims[0] == dims[1] ? bipartite_fingerprint(rho, options) : rectangular_fingerprint(rho, options);
  }
  detail::require(dims.size() % 2 == 0 && std::all_of(dims.begin(), dims.end(), [&](auto d) { return d == dims[0]; }),
                  "fingerprint: density states need 2 parties or an even number of equal-dimension parties");
  return even_partite_fingerprint(rho, options);
}

inline InvariantFingerprint fingerprint(const PureState& phi) {
  const Dims& dims = phi.dims();
  if (dims.size() == 2 && dims[0] == dims[1]) {
    InvariantFingerprint fp{StateKind::Pure, dims, "pure-bipartite", kConvention, {}};
    fp.entries.push_back({detail::versioned("pure.det"), pure_bipartite_det(phi), Invariance::Slocc, false});
    return fp;
  }
  detail::require(dims == Dims{2, 2, 2}, "fingerprint: pure states must be square bipartite or three qubits");
  const ThreeQubitDet r = pure_three_qubit_det(phi);
  InvariantFingerprint fp{StateKind::Pure, dims, "pure-three-qubit", kConvention, {}};
  fp.entries.push_back({detail::versioned("det222"), r.det, Invariance::Slocc, false});
  fp.entries.push_back({detail::versioned("tangle3"), Complex{r.tangle, 0.0}, Invariance::Slocc, false});
  return fp;
}

enum class Verdict { NecessarilyInequivalent, Consistent };

inline const char* to_string(Verdict v) {
  return v == Verdict::Consistent ? "CONSISTENT" : "NECESSARILY_INEQUIVALENT";
}

struct Comparison {
  Verdict verdict = Verdict::Consistent;
  std::vector<std::string> differing;
};

/**
 * Necessary-condition test: NECESSARILY_INEQUIVALENT iff a shared invariant
 * differs by more than max(tol * max(|a|, |b|), 1e-12). When `scope` is set,
 * only invariants guaranteed under that group (or a larger one) are compared.
 * Never asserts equivalence.
 */
inline Comparison compare_fingerprints(const InvariantFingerprint& a, const InvariantFingerprint& b, double tol,
                                       std::optional<Invariance> scope = std::nullopt) {
  detail::require(a.kind == b.kind && a.dims == b.dims && a.family == b.family && a.convention == b.convention,
                  "compare_fingerprints: fingerprints have different shapes or conventions");
  Comparison out;
  for (const auto& ea : a.entries) {
    if (scope && static_cast<int>(ea.guaranteed) < static_cast<int>(*scope)) continue;
    const InvariantEntry* eb = b.find(ea.name);
    if (eb == nullptr) continue;
    const double threshold = std::max(tol * std::max(std::abs(ea.value), std::abs(eb->value)), 1e-12);
    if (std::abs(ea.value - eb->value) > threshold) out.differing.push_back(ea.name);
  }
  if (!out.differing.empty()) out.verdict = Verdict::NecessarilyInequivalent;
  return out;
}

}  // namespace hyperinv

#endif  // HYPERINV_INVARIANTS_HPP
