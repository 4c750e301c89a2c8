#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace facepool::numerics {

using Vec = std::vector<double>;

double l2_norm(std::span<const double> v);

// Cosine of the angle between a and b, clamped to [-1, 1].
// Throws DimMismatch / ZeroNormInput.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// r = sum_i weights[i] * features[i], accumulated in ascending index order.
Vec weighted_combine(const std::vector<Vec>& features, std::span<const double> weights);

// Max-subtracted softmax; strictly positive output summing to 1.
Vec softmax(std::span<const double> z);

// Euclidean projection onto the probability simplex (sort-based closed form).
// Ties sort by descending value then ascending index. May contain exact zeros.
Vec sparsemax(std::span<const double> z);

// norms / max(norms); max entry exactly 1. Throws ZeroNormInput on any <= 0.
Vec max_normalize_norms(std::span<const double> norms);

// (x - min)/(max - min); all zeros when max - min < 1e-12 so that a
// downstream softmax degrades to uniform weights.
Vec min_max_normalize_norms(std::span<const double> norms);

// Fraction of weights exactly equal to zero.
double sparsity(std::span<const double> weights);

// Sample Pearson coefficient. Throws LengthMismatch / ConstantSeries.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace facepool::numerics
