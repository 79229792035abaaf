#ifndef FFSTURM_CLIQUE_HPP
#define FFSTURM_CLIQUE_HPP

#include <chrono>
#include <cstdint>
#include <vector>

namespace ffsturm {

class DeadlineExceeded : public std::exception {
public:
  const char* what() const noexcept override { return "deadline exceeded"; }
};

/// Adjacency as packed bitsets, n vertices.
struct BitGraph {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;  // row i at [i*words, (i+1)*words)

  explicit BitGraph(int n_)
      : n(n_), words((n_ + 63) / 64), bits(size_t(n_) * words, 0) {}
  void add_edge(int a, int b) {
    bits[size_t(a) * words + b / 64] |= 1ull << (b % 64);
    bits[size_t(b) * words + a / 64] |= 1ull << (a % 64);
  }
  bool adjacent(int a, int b) const {
    return bits[size_t(a) * words + b / 64] >> (b % 64) & 1;
  }
};

struct CliqueResult {
  int size = 0;
  bool exact = true;  // false: search stopped once size reached the cutoff
};

/// Maximum clique by branch and bound with a greedy coloring bound.
/// cutoff >= 0: abandon the search (exact = false) as soon as a clique
/// of size >= cutoff is found. Checks the deadline periodically and
/// throws DeadlineExceeded (pass time_point::max() for none).
CliqueResult max_clique(const BitGraph& g, int cutoff,
                        std::chrono::steady_clock::time_point deadline,
                        int initial_best = 0);

}  // namespace ffsturm

#endif
