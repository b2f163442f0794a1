#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qdc/basis.hpp"

namespace qdc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Physical parameters of the pumped dot-cavity model, all energies in meV (hbar = 1).
struct SystemParams {
  double omega_x = 1000.0;  ///< exciton energy
  double delta = 0.0;       ///< detuning omega_x - omega_a
  double g = 1.0;           ///< light-matter coupling
  double kappa = 2.0;       ///< cavity loss rate
  double gamma = 0.005;     ///< spontaneous emission rate
  double pump = 0.005;      ///< incoherent exciton pumping rate

  double omega_a() const { return omega_x - delta; }

  /// Throws std::invalid_argument on negative rates or non-finite values.
  void validate() const;
};

/// Dense operator on a truncated basis.
struct OperatorMatrix {
  Basis basis;
  CMatrix matrix;

  std::size_t dim() const { return basis.dimension(); }
  Complex element(BareState bra, BareState ket) const;
};

/// Cavity annihilation operator a. Matrix elements that would leave the basis are dropped.
OperatorMatrix photon_annihilation(const Basis& b);

/// Exciton lowering operator sigma = |G><X|.
OperatorMatrix exciton_lowering(const Basis& b);

/// Jaynes-Cummings Hamiltonian, built element by element on the excitation-ordered basis.
OperatorMatrix hamiltonian(const SystemParams& p, const Basis& b);

/// N = a^dagger a + sigma^dagger sigma (diagonal).
OperatorMatrix excitation_operator(const Basis& b);

}  // namespace qdc
