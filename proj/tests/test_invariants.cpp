// Linked against the engine built with KPLEX_CHECK_INVARIANTS, which
// recomputes every degree counter on each search call and throws on drift.

#include "doctest.h"
#include "kplex/oracle.hpp"
#include "support/graphs.hpp"

using namespace kplex;
using namespace std::chrono_literals;

TEST_CASE("counters stay consistent under every switch combination") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = kplex::testing::erdos_renyi(18, 0.45 + 0.1 * static_cast<double>(seed % 3), seed);
    for (int k = 1; k <= 3; ++k) {
      const int q = std::min(2 * k - 1 + static_cast<int>(seed % 4), 8);
      const PlexSet expected = enumerate_naive(g, k, q);
      for (auto o : kplex::testing::all_switches()) {
        o.timeout = (seed % 2) ? std::optional<std::chrono::nanoseconds>{1us} : std::nullopt;
        CHECK_NOTHROW(CHECK(kplex::testing::engine(g, k, q, o) == expected));
      }
    }
  }
}
