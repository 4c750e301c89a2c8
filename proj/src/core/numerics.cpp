#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace facepool::numerics {

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        raise(ErrorCode::DimMismatch, "cosine_similarity: dims " + std::to_string(a.size()) +
                                          " vs " + std::to_string(b.size()));
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0)
        raise(ErrorCode::ZeroNormInput, "cosine_similarity: zero-norm input");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

Vec weighted_combine(const std::vector<Vec>& features, std::span<const double> weights) {
    if (features.empty()) raise(ErrorCode::EmptyTemplate, "weighted_combine: no features");
    if (features.size() != weights.size())
        raise(ErrorCode::LengthMismatch, "weighted_combine: feature/weight count mismatch");
    const std::size_t dim = features[0].size();
    Vec out(dim, 0.0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != dim)
            raise(ErrorCode::DimMismatch, "weighted_combine: inconsistent dims");
        const double w = weights[i];
        for (std::size_t d = 0; d < dim; ++d) out[d] += w * features[i][d];
    }
    return out;
}

Vec softmax(std::span<const double> z) {
    if (z.empty()) raise(ErrorCode::EmptyTemplate, "softmax: empty input");
    const double zmax = *std::max_element(z.begin(), z.end());
    Vec out(z.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = std::exp(z[i] - zmax);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

Vec sparsemax(std::span<const double> z) {
    if (z.empty()) raise(ErrorCode::EmptyTemplate, "sparsemax: empty input");
    const std::size_t k = z.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (z[a] != z[b]) return z[a] > z[b];
        return a < b;
    });
    double cumsum = 0.0;
    double tau = 0.0;
    std::size_t support = 0;
    double support_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double zj = z[order[j]];
        cumsum += zj;
        if (1.0 + static_cast<double>(j + 1) * zj > cumsum) {
            support = j + 1;
            support_sum = cumsum;
        }
    }
    tau = (support_sum - 1.0) / static_cast<double>(support);
    Vec out(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) out[i] = std::max(z[i] - tau, 0.0);
    return out;
}

Vec max_normalize_norms(std::span<const double> norms) {
    if (norms.empty()) raise(ErrorCode::EmptyTemplate, "max_normalize_norms: empty input");
    double mx = 0.0;
    for (double n : norms) {
        if (n <= 0.0) raise(ErrorCode::ZeroNormInput, "max_normalize_norms: nonpositive norm");
        mx = std::max(mx, n);
    }
    Vec out(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) out[i] = norms[i] / mx;
    return out;
}

Vec min_max_normalize_norms(std::span<const double> norms) {
    if (norms.empty()) raise(ErrorCode::EmptyTemplate, "min_max_normalize_norms: empty input");
    double mn = norms[0], mx = norms[0];
    for (double n : norms) {
        if (n <= 0.0)
            raise(ErrorCode::ZeroNormInput, "min_max_normalize_norms: nonpositive norm");
        mn = std::min(mn, n);
        mx = std::max(mx, n);
    }
    Vec out(norms.size(), 0.0);
    if (mx - mn < 1e-12) return out;  // degenerate: uniform after softmax
    for (std::size_t i = 0; i < norms.size(); ++i) out[i] = (norms[i] - mn) / (mx - mn);
    return out;
}

double sparsity(std::span<const double> weights) {
    if (weights.empty()) return 0.0;
    std::size_t zeros = 0;
    for (double w : weights)
        if (w == 0.0) ++zeros;
    return static_cast<double>(zeros) / static_cast<double>(weights.size());
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        raise(ErrorCode::LengthMismatch, "pearson_correlation: length mismatch");
    if (x.size() < 2)
        raise(ErrorCode::LengthMismatch, "pearson_correlation: need at least 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        raise(ErrorCode::ConstantSeries, "pearson_correlation: constant series");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace facepool::numerics
