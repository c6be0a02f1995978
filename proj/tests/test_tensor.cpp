#include "core/tensor.hpp"

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/gaussian.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace roughpath;

TEST_SUITE_BEGIN("tensor_algebra");

TEST_CASE("product with the unit is the identity") {
    TensorElement a = TensorElement::segment_exponential({0.3, -0.7}, 3);
    TensorElement e = TensorElement::unit(2, 3);
    CHECK(a.mul(e).max_abs_diff(a) == 0.0);
    CHECK(e.mul(a).max_abs_diff(a) == 0.0);
}

TEST_CASE("d=1 exponentials multiply by adding the exponent") {
    // (1, x, x^2/2) (1, y, y^2/2) = (1, x+y, (x+y)^2/2), expanded by hand
    const double x = 0.4, y = -1.1;
    TensorElement a = TensorElement::segment_exponential({x}, 2);
    TensorElement b = TensorElement::segment_exponential({y}, 2);
    TensorElement ab = a.mul(b);
    CHECK(ab.scalar() == doctest::Approx(1.0));
    CHECK(ab.block(1)[0] == doctest::Approx(x + y));
    CHECK(ab.block(2)[0] == doctest::Approx(0.5 * (x + y) * (x + y)));
}

TEST_CASE("level-2 block of a product carries the cross term") {
    TensorElement a = TensorElement::segment_exponential({1.0, 2.0}, 2);
    TensorElement b = TensorElement::segment_exponential({-0.5, 0.25}, 2);
    TensorElement ab = a.mul(b);
    const auto& a1 = a.block(1);
    const auto& b1 = b.block(1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double expected = a.block(2)[i * 2 + j] + b.block(2)[i * 2 + j] + a1[i] * b1[j];
            CHECK(ab.block(2)[i * 2 + j] == doctest::Approx(expected).epsilon(1e-14));
        }
}

TEST_CASE("segment exponential closed forms") {
    SUBCASE("zero vector gives the unit") {
        TensorElement z = TensorElement::segment_exponential({0.0, 0.0}, 3);
        CHECK(z.max_abs_diff(TensorElement::unit(2, 3)) == 0.0);
    }
    SUBCASE("d=2 level-2 block is v (x) v / 2") {
        TensorElement e = TensorElement::segment_exponential({1.0, 0.0}, 2);
        CHECK(e.block(1)[0] == 1.0);
        CHECK(e.block(1)[1] == 0.0);
        CHECK(e.block(2)[0] == doctest::Approx(0.5));
        CHECK(e.block(2)[1] == 0.0);
        CHECK(e.block(2)[2] == 0.0);
        CHECK(e.block(2)[3] == 0.0);
    }
    SUBCASE("d=1 powers 2^k/k!") {
        TensorElement e = TensorElement::segment_exponential({2.0}, 3);
        CHECK(e.scalar() == 1.0);
        CHECK(e.block(1)[0] == doctest::Approx(2.0));
        CHECK(e.block(2)[0] == doctest::Approx(2.0));
        CHECK(e.block(3)[0] == doctest::Approx(4.0 / 3.0));
    }
}

TEST_CASE("group inverse inverts") {
    TensorElement a = TensorElement::segment_exponential({0.7, -0.2}, 3);
    TensorElement b = TensorElement::segment_exponential({-0.1, 0.9}, 3);
    TensorElement prod = a.mul(b);
    CHECK(prod.mul(prod.group_inverse()).max_abs_diff(TensorElement::unit(2, 3)) < 1e-15);
}

TEST_CASE("dimension mismatch is rejected") {
    TensorElement a = TensorElement::unit(2, 2);
    TensorElement b = TensorElement::unit(3, 2);
    CHECK_THROWS_AS((void)a.mul(b), DimensionError);
    CHECK_THROWS_AS(TensorElement(2, 4), DimensionError);
}

namespace {

RoughPathGrid sample_lift(double hurst, int cells, int dim, int level, std::uint64_t seed) {
    FbmSampler sampler(hurst, uniform_grid(0.0, 1.0, cells), dim);
    return lift_path(sampler.sample(seed), level);
}

}  // namespace

TEST_CASE("query endpoints") {
    RoughPathGrid X = sample_lift(0.4, 16, 2, 3, 7);
    SUBCASE("empty interval is the unit") {
        CHECK(X.query(5, 5).max_abs_diff(TensorElement::unit(2, 3)) == 0.0);
    }
    SUBCASE("one cell returns the stored cell") {
        CHECK(X.query(3, 4).max_abs_diff(X.cell(3)) == 0.0);
    }
    SUBCASE("reversed interval is rejected") { CHECK_THROWS_AS((void)X.query(4, 2), IntervalError); }
}

TEST_CASE("two-cell query equals the signature of the concatenated segments") {
    FbmSampler sampler(0.4, uniform_grid(0.0, 1.0, 8), 2);
    PathSamples path = sampler.sample(21);
    RoughPathGrid X = lift_path(path, 3);
    TensorElement direct = testsupport::signature_of_polyline(
        {path.values[0], path.values[1], path.values[2]}, 3);
    CHECK(X.query(0, 2).max_abs_diff(direct) < 1e-15);
}

TEST_CASE("Chen multiplicativity on random triples") {
    std::mt19937_64 rng(99);
    for (double hurst : {0.3, 0.4}) {
        RoughPathGrid X = sample_lift(hurst, 64, 2, 3, rng());
        std::uniform_int_distribution<int> pick(0, X.points() - 1);
        for (int t = 0; t < 50; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            const TensorElement whole = X.query(a, c);
            const TensorElement split = X.query(a, b).mul(X.query(b, c));
            CHECK(whole.max_abs_diff(split) < 1e-12);
            CHECK(whole.scalar() == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("weak geometricity: symmetric part of level 2 is half the square of level 1") {
    RoughPathGrid X = sample_lift(0.35, 32, 2, 2, 5);
    for (auto [i, k] : {std::pair{0, 32}, {3, 17}, {10, 11}}) {
        const TensorElement inc = X.query(i, k);
        const auto& l1 = inc.block(1);
        const auto& l2 = inc.block(2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double sym = 0.5 * (l2[a * 2 + b] + l2[b * 2 + a]);
                CHECK(std::abs(sym - 0.5 * l1[a] * l1[b]) < 1e-10);
            }
    }
}

TEST_SUITE_END();
