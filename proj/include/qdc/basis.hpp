#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qdc {

enum class Matter { G, X };

/// Product state |matter> (x) |photons> of the two-level dot and the cavity mode.
struct BareState {
  Matter matter = Matter::G;
  int photons = 0;

  friend auto operator<=>(const BareState&, const BareState&) = default;
};

int excitation_number(BareState s);

/// Truncated bare-state ladder holding every state with excitation <= n_exc.
///
/// States are ordered by ascending excitation; inside a manifold |G,k> comes
/// before |X,k-1>. Manifold 0 holds only |G,0>, every other manifold holds two
/// states, so dimension() == 2 * n_exc + 1.
class Basis {
 public:
  explicit Basis(int n_exc);

  int n_exc() const { return n_exc_; }
  std::size_t dimension() const { return states_.size(); }
  std::span<const BareState> states() const { return states_; }
  const BareState& operator[](std::size_t i) const { return states_[i]; }

  /// Position of `s` in states(), or nullopt when `s` lies outside the truncation.
  std::optional<std::size_t> index_of(BareState s) const;

  bool operator==(const Basis& other) const { return n_exc_ == other.n_exc_; }

 private:
  int n_exc_;
  std::vector<BareState> states_;
};

Basis build_basis(int n_exc);

const char* to_string(Matter m);

}  // namespace qdc
