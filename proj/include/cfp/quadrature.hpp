#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cfp {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// n in {4, 8, 16}
const GaussRule& gauss_rule(int n);

// Appends the mapped rule on [lo, hi] to (xs, ws).
void append_panel(const GaussRule& r, double lo, double hi, std::vector<double>& xs,
                  std::vector<double>& ws);

// Panels on [lo, hi] shrinking geometrically (ratio 1/2) towards `toward`, which must
// be lo or hi. `levels` halvings, the innermost remainder is one plain panel.
void append_graded(const GaussRule& r, double lo, double hi, double toward, int levels,
                   std::vector<double>& xs, std::vector<double>& ws);

// Number of worker threads: CARLEMAN_FP_THREADS if set, else hardware concurrency.
unsigned worker_threads();

// Runs body(i) for i in [0, n). Each index is processed exactly once, so results
// written by index are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cfp
