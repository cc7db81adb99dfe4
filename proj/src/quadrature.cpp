#include "cfp/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

namespace cfp {

namespace {

template <int N>
GaussRule make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    GaussRule r;
    // boost stores the nonnegative half; N even here so no zero node
    for (std::size_t i = ab.size(); i-- > 0;) {
        r.x.push_back(-ab[i]);
        r.w.push_back(wt[i]);
    }
    for (std::size_t i = 0; i < ab.size(); ++i) {
        r.x.push_back(ab[i]);
        r.w.push_back(wt[i]);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    static const GaussRule r4 = make_rule<4>();
    static const GaussRule r8 = make_rule<8>();
    static const GaussRule r16 = make_rule<16>();
    switch (n) {
        case 4: return r4;
        case 8: return r8;
        case 16: return r16;
        default: throw std::invalid_argument("gauss_rule: unsupported order");
    }
}

void append_panel(const GaussRule& r, double lo, double hi, std::vector<double>& xs,
                  std::vector<double>& ws) {
    const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < r.size(); ++i) {
        xs.push_back(m + h * r.x[i]);
        ws.push_back(h * r.w[i]);
    }
}

void append_graded(const GaussRule& r, double lo, double hi, double toward, int levels,
                   std::vector<double>& xs, std::vector<double>& ws) {
    if (toward == lo) {
        double edge = hi;
        for (int k = 0; k < levels; ++k) {
            double mid = lo + 0.5 * (edge - lo);
            append_panel(r, mid, edge, xs, ws);
            edge = mid;
        }
        append_panel(r, lo, edge, xs, ws);
    } else {
        double edge = lo;
        for (int k = 0; k < levels; ++k) {
            double mid = hi - 0.5 * (hi - edge);
            append_panel(r, edge, mid, xs, ws);
            edge = mid;
        }
        append_panel(r, edge, hi, xs, ws);
    }
}

unsigned worker_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CARLEMAN_FP_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<unsigned>(unsigned(v), hw * 4);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned nt = std::min<std::size_t>(worker_threads(), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cfp
