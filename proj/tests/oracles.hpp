#pragma once

// Test-only oracles, deliberately independent of the library's fast paths.

#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "qdc/green_spectrum.hpp"

namespace qdc::oracle {

struct ParameterSet {
  const char* name;
  SystemParams params;
  Emitter emitter;
};

// omega_x = 1000 meV in every set; omega_a = omega_x - delta.
inline SystemParams weak_coupling() { return {1000.0, 2.0, 1.0, 0.2, 0.005, 0.3}; }
inline SystemParams strong_coupling() { return {1000.0, 0.0, 1.0, 2.0, 0.005, 0.005}; }
inline SystemParams lossy_cavity_dot() { return {1000.0, 5.0, 1.0, 5.0, 0.1, 1.0}; }

/// All (row, col) basis index pairs with exc(col) - exc(row) == offset, by exhaustive scan.
inline std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(const Basis& b, int offset) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      if (excitation_number(b[j]) - excitation_number(b[i]) == offset) out.emplace_back(i, j);
    }
  }
  return out;
}

inline CMatrix random_density_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = {normal(rng), normal(rng)};
  }
  CMatrix rho = A * A.adjoint();
  rho /= rho.trace();
  return rho;
}

inline CMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = {normal(rng), normal(rng)};
  }
  return A;
}

/// Spectrum from the full d^2 x d^2 resolvent: X = (i omega - L)^-1 vec(B rho),
/// S = Re Tr[B^dagger X] / (pi n). No sector reduction, no library weights.
inline std::vector<double> full_resolvent_spectrum(const SystemParams& p, int n_exc, Emitter emitter,
                                                   const std::vector<double>& grid) {
  const Basis b = build_basis(n_exc);
  const Liouvillian L = build_liouvillian(p, b);
  const CMatrix rho = steady_state(L).rho.matrix;
  const CMatrix B = emitter == Emitter::cavity ? photon_annihilation(b).matrix : exciton_lowering(b).matrix;
  const double n = (B.adjoint() * B * rho).trace().real();
  const CVector g0 = L.vectorize(B * rho);
  const CMatrix dense = CMatrix(L.matrix());
  std::vector<double> out;
  for (double w : grid) {
    CMatrix M = -dense;
    M.diagonal().array() += Complex{0.0, w};
    const CMatrix X = L.unvectorize(M.partialPivLu().solve(g0));
    out.push_back((B.adjoint() * X).trace().real() / (std::numbers::pi * n));
  }
  return out;
}

inline double lorentzian(double omega, double center, double half_width) {
  const double x = omega - center;
  return half_width / (std::numbers::pi * (x * x + half_width * half_width));
}

}  // namespace qdc::oracle
