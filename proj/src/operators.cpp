#include "qdc/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdc {

void SystemParams::validate() const {
  const double all[] = {omega_x, delta, g, kappa, gamma, pump};
  for (double v : all) {
    if (!std::isfinite(v)) throw std::invalid_argument("parameters must be finite");
  }
  if (g < 0 || kappa < 0 || gamma < 0 || pump < 0) {
    throw std::invalid_argument("g, kappa, gamma and pump must be non-negative");
  }
}

Complex OperatorMatrix::element(BareState bra, BareState ket) const {
  const auto i = basis.index_of(bra);
  const auto j = basis.index_of(ket);
  if (!i || !j) return {0.0, 0.0};
  return matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

namespace {

OperatorMatrix zero_operator(const Basis& b) {
  const auto d = static_cast<Eigen::Index>(b.dimension());
  return {b, CMatrix::Zero(d, d)};
}

}  // namespace

OperatorMatrix photon_annihilation(const Basis& b) {
  auto op = zero_operator(b);
  for (std::size_t col = 0; col < b.dimension(); ++col) {
    const BareState s = b[col];
    if (s.photons == 0) continue;
    const auto row = b.index_of({s.matter, s.photons - 1});
    op.matrix(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) =
        std::sqrt(static_cast<double>(s.photons));
  }
  return op;
}

OperatorMatrix exciton_lowering(const Basis& b) {
  auto op = zero_operator(b);
  for (std::size_t col = 0; col < b.dimension(); ++col) {
    const BareState s = b[col];
    if (s.matter != Matter::X) continue;
    const auto row = b.index_of({Matter::G, s.photons});
    op.matrix(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return op;
}

OperatorMatrix hamiltonian(const SystemParams& p, const Basis& b) {
  auto op = zero_operator(b);
  const double omega_a = p.omega_a();
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const BareState s = b[i];
    const auto ii = static_cast<Eigen::Index>(i);
    op.matrix(ii, ii) = s.photons * omega_a + (s.matter == Matter::X ? p.omega_x : 0.0);
    // g (sigma a^dagger + a sigma^dagger) couples |X,n> and |G,n+1> inside one manifold.
    if (s.matter == Matter::X) {
      if (const auto j = b.index_of({Matter::G, s.photons + 1})) {
        const auto jj = static_cast<Eigen::Index>(*j);
        const double c = p.g * std::sqrt(static_cast<double>(s.photons + 1));
        op.matrix(ii, jj) = c;
        op.matrix(jj, ii) = c;
      }
    }
  }
  return op;
}

OperatorMatrix excitation_operator(const Basis& b) {
  auto op = zero_operator(b);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    op.matrix(ii, ii) = excitation_number(b[i]);
  }
  return op;
}

}  // namespace qdc
