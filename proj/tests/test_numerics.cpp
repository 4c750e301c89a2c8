#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using facepool::Error;
using facepool::ErrorCode;
using facepool::Rng;
namespace num = facepool::numerics;

namespace {

void check_error(ErrorCode expected, const std::function<void()>& fn) {
    try {
        fn();
        FAIL("expected error ", facepool::error_code_name(expected));
    } catch (const Error& e) {
        CHECK(e.code() == expected);
    }
}

}  // namespace

TEST_CASE("l2_norm basics") {
    CHECK(num::l2_norm(std::vector<double>{3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(num::l2_norm(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(num::l2_norm(std::vector<double>{0, 1, 0, 0}) == 1.0);
}

TEST_CASE("cosine_similarity on hand cases") {
    CHECK(num::cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{1, 0}) == 1.0);
    CHECK(num::cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
    CHECK(num::cosine_similarity(std::vector<double>{1, 1}, std::vector<double>{2, 2}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(num::cosine_similarity(std::vector<double>{1, 2}, std::vector<double>{-1, -2}) ==
          doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("cosine_similarity stays clamped to [-1,1]") {
    Rng rng(17);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> a(8), b(8);
        for (auto& x : a) x = rng.normal() * 100;
        for (auto& x : b) x = rng.normal() * 100;
        const double c = num::cosine_similarity(a, b);
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("cosine_similarity error cases") {
    check_error(ErrorCode::DimMismatch, [] {
        num::cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{1, 0, 0});
    });
    check_error(ErrorCode::ZeroNormInput, [] {
        num::cosine_similarity(std::vector<double>{0, 0}, std::vector<double>{1, 0});
    });
    check_error(ErrorCode::ZeroNormInput, [] {
        num::cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 0});
    });
}

TEST_CASE("weighted_combine forced arithmetic") {
    const std::vector<num::Vec> f1{{7, 7}, {9, 9}};
    CHECK(num::weighted_combine(f1, std::vector<double>{1, 0}) == num::Vec{7, 7});

    const std::vector<num::Vec> f2{{1, 0}, {0, 1}};
    const auto r2 = num::weighted_combine(f2, std::vector<double>{0.5, 0.5});
    CHECK(r2[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r2[1] == doctest::Approx(0.5).epsilon(1e-15));

    const std::vector<num::Vec> f3{{4, 0}, {0, 4}};
    const auto r3 = num::weighted_combine(f3, std::vector<double>{0.25, 0.75});
    CHECK(r3[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r3[1] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("weighted_combine with uniform weights equals the mean") {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = 2 + rng.below(10);
        std::vector<num::Vec> features(k, num::Vec(6));
        for (auto& f : features)
            for (auto& x : f) x = rng.normal() * 10;
        const auto combined =
            num::weighted_combine(features, std::vector<double>(k, 1.0 / double(k)));
        for (std::size_t d = 0; d < 6; ++d) {
            double mean = 0.0;
            for (const auto& f : features) mean += f[d];
            mean /= double(k);
            CHECK(combined[d] == doctest::Approx(mean).epsilon(1e-12));
        }
    }
}

TEST_CASE("weighted_combine error cases") {
    check_error(ErrorCode::EmptyTemplate,
                [] { num::weighted_combine({}, std::vector<double>{}); });
    check_error(ErrorCode::LengthMismatch, [] {
        num::weighted_combine({{1, 0}, {0, 1}}, std::vector<double>{1.0});
    });
    check_error(ErrorCode::DimMismatch, [] {
        num::weighted_combine({{1, 0}, {0, 1, 2}}, std::vector<double>{0.5, 0.5});
    });
}

TEST_CASE("softmax hand cases") {
    const auto u = num::softmax(std::vector<double>{0, 0});
    CHECK(u[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-15));

    const auto v = num::softmax(std::vector<double>{std::log(2.0), 0.0});
    CHECK(v[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("softmax shift invariance and overflow safety") {
    const auto big = num::softmax(std::vector<double>{1001, 1000, 999});
    const auto small = num::softmax(std::vector<double>{1, 0, -1});
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(big[i] - small[i]) < 1e-12);

    const auto huge = num::softmax(std::vector<double>{1e6, 0.0});
    CHECK(std::isfinite(huge[0]));
    CHECK(huge[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax output is a strictly positive distribution") {
    Rng rng(29);
    for (int t = 0; t < 200; ++t) {
        const std::size_t k = 1 + rng.below(12);
        std::vector<double> z(k);
        for (auto& x : z) x = (rng.uniform01() - 0.5) * 20;
        const auto p = num::softmax(z);
        double sum = 0.0;
        for (double w : p) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("sparsemax hand cases") {
    for (const double c : {-3.0, 0.0, 2.5}) {
        for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{6}}) {
            const auto p = num::sparsemax(std::vector<double>(k, c));
            for (double w : p) CHECK(w == doctest::Approx(1.0 / double(k)).epsilon(1e-14));
        }
    }
    const auto one_hot = num::sparsemax(std::vector<double>{2, 0});
    CHECK(one_hot[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one_hot[1] == 0.0);

    const auto split = num::sparsemax(std::vector<double>{0.5, 0});
    CHECK(split[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(split[1] == doctest::Approx(0.25).epsilon(1e-15));

    const auto spiked = num::sparsemax(std::vector<double>{10, 0, 0});
    CHECK(spiked[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(num::sparsity(spiked) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("sparsemax agrees with the support-enumeration oracle") {
    Rng rng(31);
    for (int t = 0; t < 300; ++t) {
        const std::size_t k = 2 + rng.below(9);
        std::vector<double> z(k);
        for (auto& x : z) x = (rng.uniform01() * 6.0) - 3.0;
        const auto fast = num::sparsemax(z);
        const auto slow = oracles::sparsemax_bruteforce(z);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(fast[i] - slow[i]) <= 1e-9);
    }
}

TEST_CASE("sparsemax is a valid, order-preserving distribution") {
    Rng rng(37);
    for (int t = 0; t < 500; ++t) {
        const std::size_t k = 1 + rng.below(16);
        std::vector<double> z(k);
        for (auto& x : z) x = (rng.uniform01() - 0.5) * 8.0;
        const auto p = num::sparsemax(z);
        double sum = 0.0;
        for (double w : p) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (z[i] >= z[j]) CHECK(p[i] >= p[j] - 1e-15);
    }
}

TEST_CASE("sparsemax saturates to one-hot under large scale") {
    Rng rng(41);
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = 2 + rng.below(9);
        std::vector<double> z(k);
        for (auto& x : z) x = rng.uniform01();
        const std::size_t arg =
            std::max_element(z.begin(), z.end()) - z.begin();
        z[arg] = 1.0;  // unique max, gap at least 1e-3 below
        for (std::size_t i = 0; i < k; ++i)
            if (i != arg && z[i] > 1.0 - 1e-3) z[i] = 1.0 - 1e-3 - rng.uniform01() * 0.1;
        std::vector<double> scaled(k);
        for (std::size_t i = 0; i < k; ++i) scaled[i] = 1e6 * z[i];
        const auto p = num::sparsemax(scaled);
        CHECK(p[arg] >= 1.0 - 1e-6);
    }
}

TEST_CASE("max_normalize_norms") {
    CHECK(num::max_normalize_norms(std::vector<double>{10, 5}) == num::Vec{1.0, 0.5});
    CHECK(num::max_normalize_norms(std::vector<double>{7, 7, 7}) == num::Vec{1.0, 1.0, 1.0});
    CHECK(num::max_normalize_norms(std::vector<double>{1}) == num::Vec{1.0});
    check_error(ErrorCode::ZeroNormInput,
                [] { num::max_normalize_norms(std::vector<double>{1, 0}); });
    check_error(ErrorCode::ZeroNormInput,
                [] { num::max_normalize_norms(std::vector<double>{1, -2}); });
}

TEST_CASE("min_max_normalize_norms") {
    const auto a = num::min_max_normalize_norms(std::vector<double>{10, 5, 7.5});
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a[1] == 0.0);
    CHECK(a[2] == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(num::min_max_normalize_norms(std::vector<double>{4, 4}) == num::Vec{0.0, 0.0});

    const auto b = num::min_max_normalize_norms(std::vector<double>{0.8, 1.0});
    CHECK(b[0] == 0.0);
    CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-15));

    check_error(ErrorCode::ZeroNormInput,
                [] { num::min_max_normalize_norms(std::vector<double>{0, 1}); });
}

TEST_CASE("sparsity counts exact zeros") {
    CHECK(num::sparsity(std::vector<double>{0.5, 0.5}) == 0.0);
    CHECK(num::sparsity(std::vector<double>{1, 0, 0, 0}) == 0.75);
    CHECK(num::sparsity(std::vector<double>{1e-300, 0.0}) == 0.5);
}

TEST_CASE("pearson_correlation hand cases") {
    CHECK(num::pearson_correlation(std::vector<double>{1, 2, 3},
                                   std::vector<double>{2, 4, 6}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(num::pearson_correlation(std::vector<double>{1, 2, 3},
                                   std::vector<double>{6, 4, 2}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(num::pearson_correlation(std::vector<double>{1, 2, 3, 4},
                                   std::vector<double>{1, 3, 2, 4}) ==
          doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("pearson_correlation affine invariance") {
    Rng rng(43);
    std::vector<double> x(100), y(100);
    for (std::size_t i = 0; i < 100; ++i) {
        x[i] = rng.normal();
        y[i] = 0.6 * x[i] + rng.normal();
    }
    const double base = num::pearson_correlation(x, y);
    std::vector<double> xt(100), yt(100);
    for (std::size_t i = 0; i < 100; ++i) {
        xt[i] = 3.5 * x[i] + 11.0;
        yt[i] = 0.25 * y[i] - 2.0;
    }
    CHECK(std::abs(num::pearson_correlation(xt, yt) - base) <= 1e-9);
}

TEST_CASE("pearson_correlation error cases") {
    check_error(ErrorCode::LengthMismatch, [] {
        num::pearson_correlation(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3});
    });
    check_error(ErrorCode::ConstantSeries, [] {
        num::pearson_correlation(std::vector<double>{5, 5, 5}, std::vector<double>{1, 2, 3});
    });
    check_error(ErrorCode::ConstantSeries, [] {
        num::pearson_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{2, 2, 2});
    });
}
