#pragma once

// Exact identity suites shared by `algebra check`, `radial check` and the
// acceptance run. Each returns pass/fail plus a JSON detail block.

#include "n32/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace n32::suites {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double seconds = 0;
  Json detail = Json::object();
};

Json to_json(const SuiteResult& r);

/// [X_i, X_{i+1}] = Y_{i+2}, [X_i, Y_j] = [Y_i, Y_j] = 0, the rotation
/// brackets (computed sign reported), [L, theta_i] = [L, Xhat_i] = 0, [L, D] = L.
SuiteResult bracket_table();
/// L and Gamma on r1, r2, z.
SuiteResult radial_tables();
/// Commutant dimension and span against {Xhat_i, theta_i, Y_i} per degree.
SuiteResult commutant(const std::vector<int>& degrees);
/// Curvature-dimension gap >= 0 on random (f, lambda, point) triples.
SuiteResult cd_gap(int triples, std::uint64_t seed);

/// Formal jet identities: definitional minus expanded, r1 (SOS - expanded).
SuiteResult formal_identities();
/// Full-space Gamma2 = reduced on random (radial polynomial, rational point).
SuiteResult reduction_consistency(int pairs, std::uint64_t seed);
/// First-proof certificate residual and closed forms on nondegenerate pairs.
SuiteResult first_proof(int pairs, std::uint64_t seed);
/// Twelve constraint/radial equations on random pairs.
SuiteResult nine_equations(int pairs, std::uint64_t seed);
/// Gamma2(lift f) >= 0 at random radial inputs, exact.
SuiteResult gamma2_nonnegative(int inputs, std::uint64_t seed);

} // namespace n32::suites
