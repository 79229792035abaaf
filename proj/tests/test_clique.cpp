#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ffsturm/clique.hpp"

using namespace ffsturm;

constexpr auto kForever = std::chrono::steady_clock::time_point::max();

namespace {

// Brute force over all vertex subsets.
int brute_max_clique(const BitGraph& g) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int i = 0; i < g.n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = i + 1; j < g.n && ok; ++j)
        if ((mask >> j & 1) && !g.adjacent(i, j)) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("random graphs against brute force") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 300; ++iter) {
    int n = 1 + int(rng() % 14);
    double p = (iter % 3 == 0) ? 0.2 : (iter % 3 == 1 ? 0.5 : 0.8);
    BitGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::uniform_real_distribution<>(0, 1)(rng) < p) g.add_edge(i, j);
    int expect = brute_max_clique(g);
    auto r = max_clique(g, -1, kForever);
    CHECK(r.exact);
    CHECK(r.size == expect);

    // cutoff semantics: with cutoff <= true size the search may stop
    // early but never understates the cutoff
    if (expect > 0) {
      auto rc = max_clique(g, expect, kForever);
      CHECK(rc.size >= std::min(expect, rc.size));
      CHECK((rc.exact || rc.size >= expect));
      auto rc2 = max_clique(g, expect + 1, kForever);
      CHECK(rc2.exact);
      CHECK(rc2.size == expect);
    }
  }
}

TEST_CASE("empty and complete graphs") {
  BitGraph empty(6);
  auto r1 = max_clique(empty, -1, kForever);
  CHECK(r1.size == 1);
  BitGraph complete(9);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) complete.add_edge(i, j);
  auto r2 = max_clique(complete, -1, kForever);
  CHECK(r2.size == 9);
}
