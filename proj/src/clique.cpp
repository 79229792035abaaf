#include "ffsturm/clique.hpp"

#include <algorithm>
#include <numeric>

namespace ffsturm {

namespace {

struct Searcher {
  const BitGraph& g;
  int cutoff;
  std::chrono::steady_clock::time_point deadline;
  int best = 0;
  bool stopped = false;  // cutoff reached
  long long ticks = 0;
  std::vector<int> order;  // vertices by descending degree

  using Words = std::vector<std::uint64_t>;

  bool done() const { return stopped; }

  void tick() {
    if (++ticks % 2048 == 0 && std::chrono::steady_clock::now() > deadline)
      throw DeadlineExceeded();
  }

  // candidates: vertex list; colors them greedily and expands in reverse
  // color order (Tomita-style bound).
  void expand(std::vector<int>& r, std::vector<int> cand) {
    tick();
    if (cand.empty()) {
      if (int(r.size()) > best) {
        best = int(r.size());
        if (cutoff >= 0 && best >= cutoff) stopped = true;
      }
      return;
    }
    // greedy coloring in static order; candidates arrive ordered
    std::vector<int> color(cand.size());
    std::vector<Words> classes;
    for (size_t i = 0; i < cand.size(); ++i) {
      int v = cand[i];
      size_t k = 0;
      for (; k < classes.size(); ++k) {
        const Words& w = classes[k];
        if (!(w[v / 64] >> (v % 64) & 1)) break;  // no neighbor in class k
      }
      if (k == classes.size()) classes.emplace_back(g.words, 0);
      // mark neighbors of v as blocked for class k
      for (int j = 0; j < g.words; ++j)
        classes[k][j] |= g.bits[size_t(v) * g.words + j];
      color[i] = int(k) + 1;
    }
    // expand candidates from the highest color down
    std::vector<size_t> idx(cand.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return color[a] < color[b]; });
    std::vector<char> removed(cand.size(), 0);
    for (size_t t = idx.size(); t-- > 0;) {
      size_t i = idx[t];
      if (int(r.size()) + color[i] <= best) return;  // bound
      int v = cand[i];
      removed[i] = 1;
      std::vector<int> next;
      for (size_t j = 0; j < cand.size(); ++j)
        if (!removed[j] && g.adjacent(v, cand[j])) next.push_back(cand[j]);
      r.push_back(v);
      expand(r, std::move(next));
      r.pop_back();
      if (stopped) return;
    }
  }
};

}  // namespace

CliqueResult max_clique(const BitGraph& g, int cutoff,
                        std::chrono::steady_clock::time_point deadline,
                        int initial_best) {
  Searcher s{g, cutoff, deadline};
  s.best = initial_best;
  if (cutoff >= 0 && s.best >= cutoff) return {s.best, false};
  std::vector<int> degree(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int w = 0; w < g.words; ++w)
      degree[v] += __builtin_popcountll(g.bits[size_t(v) * g.words + w]);
  std::vector<int> cand(g.n);
  std::iota(cand.begin(), cand.end(), 0);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](int a, int b) { return degree[a] > degree[b]; });
  std::vector<int> r;
  s.expand(r, std::move(cand));
  return {s.best, !s.stopped};
}

}  // namespace ffsturm
