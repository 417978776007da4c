#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

// Small timing helpers shared by the bench command and the scaling tests.

namespace cab {

/// Per-call seconds for fn, looping until the wall clock rises above jitter.
template <typename Fn>
double time_once(Fn&& fn, double min_elapsed = 0.02) {
    using clock = std::chrono::steady_clock;
    for (size_t iters = 1;; iters *= 2) {
        const auto t0 = clock::now();
        for (size_t t = 0; t < iters; ++t) fn();
        const double s =
            std::chrono::duration<double>(clock::now() - t0).count();
        if (s >= min_elapsed || iters >= (size_t{1} << 24))
            return s / static_cast<double>(iters);
    }
}

/// Median of reps measurements after one discarded warm-up call.
template <typename Fn>
double time_median(Fn&& fn, int reps = 5) {
    fn();
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(reps));
    for (int r = 0; r < reps; ++r) samples.push_back(time_once(fn));
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

/// Least squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
    const double n = static_cast<double>(xy.size());
    double su = 0, sv = 0;
    for (const auto& [x, y] : xy) {
        su += std::log(x);
        sv += std::log(y);
    }
    const double mu = su / n, mv = sv / n;
    double num = 0, den = 0;
    for (const auto& [x, y] : xy) {
        const double u = std::log(x) - mu;
        num += u * (std::log(y) - mv);
        den += u * u;
    }
    return num / den;
}

}  // namespace cab
