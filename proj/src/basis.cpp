#include "qdc/basis.hpp"

#include <stdexcept>
#include <string>

namespace qdc {

int excitation_number(BareState s) {
  return s.photons + (s.matter == Matter::X ? 1 : 0);
}

Basis::Basis(int n_exc) : n_exc_(n_exc) {
  if (n_exc < 0) {
    throw std::invalid_argument("basis: n_exc must be non-negative, got " +
                                std::to_string(n_exc));
  }
  states_.reserve(2 * static_cast<std::size_t>(n_exc) + 1);
  states_.push_back({Matter::G, 0});
  for (int k = 1; k <= n_exc; ++k) {
    states_.push_back({Matter::G, k});
    states_.push_back({Matter::X, k - 1});
  }
}

std::optional<std::size_t> Basis::index_of(BareState s) const {
  if (s.photons < 0) return std::nullopt;
  const int k = excitation_number(s);
  if (k > n_exc_) return std::nullopt;
  if (k == 0) return 0;
  const auto base = 2 * static_cast<std::size_t>(k) - 1;
  return s.matter == Matter::G ? base : base + 1;
}

Basis build_basis(int n_exc) { return Basis(n_exc); }

const char* to_string(Matter m) { return m == Matter::G ? "G" : "X"; }

}  // namespace qdc
