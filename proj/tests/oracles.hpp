// Independent reference implementations used only by tests. Each oracle
// computes the same quantity as the library by a structurally different
// route (exhaustive enumeration or full re-sorting), so agreement is
// evidence rather than tautology.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace oracles {

// Euclidean projection of z onto the probability simplex by brute force:
// try every nonempty support S, solve the equality-constrained projection
// restricted to S, keep the feasible candidate with the smallest distance.
inline std::vector<double> sparsemax_bruteforce(const std::vector<double>& z) {
    const std::size_t k = z.size();
    std::vector<double> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        double sum = 0.0;
        std::size_t s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) { sum += z[i]; ++s; }
        const double tau = (sum - 1.0) / static_cast<double>(s);
        std::vector<double> p(k, 0.0);
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::size_t{1} << i)) {
                p[i] = z[i] - tau;
                if (p[i] < 0.0) { feasible = false; break; }
            }
        }
        if (!feasible) continue;
        double dist = 0.0;
        for (std::size_t i = 0; i < k; ++i) dist += (p[i] - z[i]) * (p[i] - z[i]);
        if (dist < best_dist) { best_dist = dist; best = std::move(p); }
    }
    return best;
}

// Rank of the mate column under descending score, ties broken by ascending
// column index, via a full stable sort of all columns (1-based rank).
inline std::size_t mate_rank_fullsort(const std::vector<double>& row, std::size_t mate_col) {
    std::vector<std::size_t> order(row.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (row[a] != row[b]) return row[a] > row[b];
        return a < b;
    });
    for (std::size_t r = 0; r < order.size(); ++r)
        if (order[r] == mate_col) return r + 1;
    return 0;
}

// CMC curve from per-probe score rows by full sorting.
inline std::vector<double> cmc_fullsort(const std::vector<std::vector<double>>& rows,
                                        const std::vector<std::size_t>& mate_cols) {
    const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    std::vector<double> curve(ncols, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t rank = mate_rank_fullsort(rows[i], mate_cols[i]);
        for (std::size_t r = rank - 1; r < ncols; ++r) curve[r] += 1.0;
    }
    for (double& v : curve) v /= static_cast<double>(rows.size());
    return curve;
}

struct OpenSetOracle {
    double threshold;
    double fnir;
};

// Threshold scan over every candidate value: all observed non-mated top-1
// scores, the cosine floor -1, and one value just above the maximum.
// Chooses the smallest candidate whose FPIR is <= target.
inline OpenSetOracle open_set_scan(const std::vector<double>& nonmated_top,
                                   const std::vector<std::vector<double>>& mated_rows,
                                   const std::vector<std::size_t>& mate_cols,
                                   double fpir_target) {
    std::vector<double> cands = nonmated_top;
    cands.push_back(-1.0);
    const double top_max = *std::max_element(nonmated_top.begin(), nonmated_top.end());
    cands.push_back(std::nextafter(top_max, std::numeric_limits<double>::infinity()));
    std::sort(cands.begin(), cands.end());

    double threshold = std::numeric_limits<double>::quiet_NaN();
    for (double t : cands) {
        std::size_t fp = 0;
        for (double v : nonmated_top)
            if (v >= t) ++fp;
        if (static_cast<double>(fp) / nonmated_top.size() <= fpir_target) { threshold = t; break; }
    }

    std::size_t fail = 0;
    for (std::size_t i = 0; i < mated_rows.size(); ++i) {
        const auto& row = mated_rows[i];
        std::size_t top = 0;
        for (std::size_t j = 1; j < row.size(); ++j)
            if (row[j] > row[top]) top = j;
        const bool wrong_id = top != mate_cols[i];
        const bool rejected = row[mate_cols[i]] < threshold;
        if (wrong_id || rejected) ++fail;
    }
    return {threshold, static_cast<double>(fail) / mated_rows.size()};
}

// Nearest prototype by cosine, ties to the lowest index.
inline std::size_t nearest_prototype(const std::vector<double>& probe,
                                     const std::vector<std::vector<double>>& protos) {
    auto cosine = [](const std::vector<double>& a, const std::vector<double>& b) {
        double dot = 0, na = 0, nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        return dot / (std::sqrt(na) * std::sqrt(nb));
    };
    std::size_t best = 0;
    double best_score = -2.0;
    for (std::size_t j = 0; j < protos.size(); ++j) {
        const double sc = cosine(probe, protos[j]);
        if (sc > best_score) { best_score = sc; best = j; }
    }
    return best;
}

}  // namespace oracles
