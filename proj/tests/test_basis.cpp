#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdc/basis.hpp"

using qdc::BareState;
using qdc::Matter;

TEST_CASE("build_basis dimensions and ordering") {
  const auto b1 = qdc::build_basis(1);
  REQUIRE(b1.dimension() == 3);
  CHECK(b1[0] == BareState{Matter::G, 0});
  CHECK(b1[1] == BareState{Matter::G, 1});
  CHECK(b1[2] == BareState{Matter::X, 0});

  CHECK(qdc::build_basis(10).dimension() == 21);

  const auto b0 = qdc::build_basis(0);
  REQUIRE(b0.dimension() == 1);
  CHECK(b0[0] == BareState{Matter::G, 0});

  CHECK_THROWS_AS(qdc::build_basis(-1), std::invalid_argument);
}

TEST_CASE("excitation_number") {
  CHECK(qdc::excitation_number({Matter::G, 3}) == 3);
  CHECK(qdc::excitation_number({Matter::X, 2}) == 3);
  CHECK(qdc::excitation_number({Matter::G, 0}) == 0);
}

TEST_CASE("index_of") {
  const auto b = qdc::build_basis(1);
  CHECK(b.index_of({Matter::G, 0}) == 0u);
  CHECK(b.index_of({Matter::X, 0}) == 2u);
  CHECK_FALSE(b.index_of({Matter::X, 1}).has_value());
  CHECK_FALSE(b.index_of({Matter::G, -1}).has_value());
}

TEST_CASE("manifold sizes, ordering and index round trip for n_exc up to 25") {
  for (int n = 0; n <= 25; ++n) {
    const auto b = qdc::build_basis(n);
    CHECK(b.dimension() == static_cast<std::size_t>(2 * n + 1));
    std::vector<int> per_manifold(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < b.dimension(); ++i) {
      const int k = qdc::excitation_number(b[i]);
      REQUIRE(k <= n);
      ++per_manifold[static_cast<std::size_t>(k)];
      CHECK(b.index_of(b[i]) == i);
      if (i > 0) {
        const int prev = qdc::excitation_number(b[i - 1]);
        CHECK((prev < k || (prev == k && b[i - 1].matter == Matter::G && b[i].matter == Matter::X)));
      }
    }
    CHECK(per_manifold[0] == 1);
    for (int k = 1; k <= n; ++k) CHECK(per_manifold[static_cast<std::size_t>(k)] == 2);
    CHECK_FALSE(b.index_of({Matter::G, n + 1}).has_value());
    CHECK_FALSE(b.index_of({Matter::X, n}).has_value());
  }
}
