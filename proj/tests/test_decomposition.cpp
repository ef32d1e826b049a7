#include <doctest.h>

#include <cmath>
#include <numeric>

#include "moead/decomposition.hpp"

using namespace moead;

namespace {

std::vector<std::vector<double>> random_weight_set(Rng& rng, int n, int m) {
    std::vector<std::vector<double>> w(n, std::vector<double>(m));
    for (auto& v : w) {
        double sum = 0.0;
        for (double& c : v) {
            c = rng.uniform();
            sum += c;
        }
        for (double& c : v) c /= sum;
    }
    return w;
}

}  // namespace

TEST_CASE("simplex lattice weights") {
    SUBCASE("m=2, H=4 enumerates the five lattice points") {
        auto w = generate_weights(2, {4});
        REQUIRE(w.size() == 5);
        CHECK(w[0] == std::vector<double>{0.0, 1.0});
        CHECK(w[1] == std::vector<double>{0.25, 0.75});
        CHECK(w[2] == std::vector<double>{0.5, 0.5});
        CHECK(w[3] == std::vector<double>{0.75, 0.25});
        CHECK(w[4] == std::vector<double>{1.0, 0.0});
    }

    SUBCASE("layer counts match C(H+m-1, m-1)") {
        CHECK(generate_weights(3, {12}).size() == 91);
        CHECK(generate_weights(5, {6}).size() == 210);
        CHECK(generate_weights(8, {3, 2}).size() == 156);
        CHECK(generate_weights(10, {3, 2}).size() == 275);
        CHECK(simplex_lattice_size(3, 12) == 91);
        CHECK(simplex_lattice_size(8, 3) == 120);
    }

    SUBCASE("every vector sums to one") {
        for (const auto& w : generate_weights(8, {3, 2})) {
            double sum = std::accumulate(w.begin(), w.end(), 0.0);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }

    SUBCASE("weights_for_population hits exact counts and pads otherwise") {
        Rng rng(1);
        CHECK(weights_for_population(2, 600, rng).size() == 600);
        CHECK(weights_for_population(3, 300, rng).size() == 300);
        CHECK(weights_for_population(3, 1000, rng).size() == 1000);
        auto padded = weights_for_population(3, 7, rng);
        REQUIRE(padded.size() == 7);
        for (const auto& w : padded) {
            double sum = std::accumulate(w.begin(), w.end(), 0.0);
            CHECK(std::abs(sum - 1.0) < 1e-12);
            for (double c : w) CHECK(c >= 0.0);
        }
    }
}

TEST_CASE("neighborhoods") {
    SUBCASE("T = N returns every index") {
        auto w = generate_weights(2, {3});
        auto nb = build_neighborhoods(w, 4);
        for (const auto& list : nb) {
            REQUIRE(list.size() == 4);
            auto sorted = list;
            std::sort(sorted.begin(), sorted.end());
            CHECK(sorted == std::vector<int>{0, 1, 2, 3});
        }
    }

    SUBCASE("nearest on the m=2 lattice") {
        auto w = generate_weights(2, {4});
        auto nb = build_neighborhoods(w, 2);
        CHECK(nb[0] == std::vector<int>{0, 1});
    }

    SUBCASE("matches a brute-force distance sort on random sets") {
        Rng rng(12);
        for (int trial = 0; trial < 100; ++trial) {
            int n = 3 + static_cast<int>(rng.uniform_index(10));
            int m = 2 + static_cast<int>(rng.uniform_index(3));
            int t = 1 + static_cast<int>(rng.uniform_index(n));
            auto w = random_weight_set(rng, n, m);
            auto nb = build_neighborhoods(w, t);
            for (int i = 0; i < n; ++i) {
                std::vector<std::pair<double, int>> all;
                for (int j = 0; j < n; ++j) {
                    double d2 = 0.0;
                    for (int k = 0; k < m; ++k) d2 += (w[i][k] - w[j][k]) * (w[i][k] - w[j][k]);
                    all.emplace_back(d2, j);
                }
                std::stable_sort(all.begin(), all.end());
                for (int j = 0; j < t; ++j) CHECK(nb[i][j] == all[j].second);
            }
        }
    }
}

TEST_CASE("inverted Tchebycheff aggregation") {
    std::vector<double> ideal{0.0, 0.0};

    CHECK(tch(std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, 0.5}, ideal) == 0.0);
    CHECK(tch(std::vector<double>{0.2, 0.4}, std::vector<double>{0.5, 0.5}, ideal) ==
          doctest::Approx(0.8).epsilon(1e-12));

    SUBCASE("zero weight component is floored at 1e-6") {
        double v = tch(std::vector<double>{0.5, 0.3}, std::vector<double>{1.0, 0.0}, ideal);
        CHECK(v == doctest::Approx(0.3 / 1e-6));
    }

    SUBCASE("positively homogeneous in f - z*") {
        Rng rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> d{rng.uniform(), rng.uniform()};
            std::vector<double> w{0.3, 0.7};
            double c = 0.1 + 5.0 * rng.uniform();
            std::vector<double> scaled{c * d[0], c * d[1]};
            CHECK(tch(scaled, w, ideal) ==
                  doctest::Approx(c * tch(d, w, ideal)).epsilon(1e-12));
        }
    }
}

TEST_CASE("perpendicular distance to a weight ray") {
    CHECK(perp_distance(std::vector<double>{0.3, 0.3}, std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(perp_distance(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}) ==
          doctest::Approx(1.0));
    CHECK(perp_distance(std::vector<double>{0.6, 0.2}, std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(0.2 * std::sqrt(2.0)).epsilon(1e-12));

    SUBCASE("invariant under positive rescaling of w") {
        Rng rng(6);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> f{rng.uniform(), rng.uniform(), rng.uniform()};
            std::vector<double> w{0.2, 0.5, 0.3};
            double c = 0.01 + 10.0 * rng.uniform();
            std::vector<double> ws{c * w[0], c * w[1], c * w[2]};
            CHECK(perp_distance(f, w) == doctest::Approx(perp_distance(f, ws)).epsilon(1e-10));
        }
    }
}

TEST_CASE("ideal point updates") {
    NormalizationContext ctx(2);
    CHECK(std::isinf(ctx.ideal[0]));

    update_ideal(ctx, std::vector<double>{1.0, 1.0});
    CHECK(ctx.ideal == std::vector<double>{1.0, 1.0});
    update_ideal(ctx, std::vector<double>{2.0, 0.5});
    CHECK(ctx.ideal == std::vector<double>{1.0, 0.5});

    SUBCASE("matches a fold over a random sequence") {
        Rng rng(9);
        NormalizationContext c2(3);
        std::vector<double> expect(3, std::numeric_limits<double>::infinity());
        for (int i = 0; i < 100; ++i) {
            std::vector<double> f{rng.uniform(), rng.uniform(), rng.uniform()};
            update_ideal(c2, f);
            for (int j = 0; j < 3; ++j) expect[j] = std::min(expect[j], f[j]);
        }
        CHECK(c2.ideal == expect);
    }
}

TEST_CASE("population normalization") {
    SUBCASE("unit axis extremes give identity normalization") {
        std::vector<std::vector<double>> pop{{1.0, 0.0}, {0.0, 1.0}, {0.4, 0.4}};
        NormalizationContext ctx(2);
        auto out = normalize(pop, ctx);
        CHECK(ctx.intercepts[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ctx.intercepts[1] == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int j = 0; j < 2; ++j) CHECK(out[i][j] == doctest::Approx(pop[i][j]).epsilon(1e-12));
    }

    SUBCASE("scaling one objective leaves normalized values unchanged") {
        Rng rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<double>> pop;
            pop.push_back({1.0 + rng.uniform(), 0.1 * rng.uniform(), 0.1 * rng.uniform()});
            pop.push_back({0.1 * rng.uniform(), 1.0 + rng.uniform(), 0.1 * rng.uniform()});
            pop.push_back({0.1 * rng.uniform(), 0.1 * rng.uniform(), 1.0 + rng.uniform()});
            for (int i = 0; i < 7; ++i)
                pop.push_back({rng.uniform(), rng.uniform(), rng.uniform()});

            auto scaled = pop;
            for (auto& f : scaled) f[0] *= 10.0;

            NormalizationContext a(3), b(3);
            auto na = normalize(pop, a);
            auto nb = normalize(scaled, b);
            for (std::size_t i = 0; i < na.size(); ++i)
                for (int j = 0; j < 3; ++j) CHECK(na[i][j] == doctest::Approx(nb[i][j]).epsilon(1e-9));
        }
    }

    SUBCASE("single point population falls back to floored ranges") {
        std::vector<std::vector<double>> pop{{2.0, 3.0}};
        NormalizationContext ctx(2);
        auto out = normalize(pop, ctx);
        CHECK(ctx.intercepts == std::vector<double>{1e-6, 1e-6});
        CHECK(out[0] == std::vector<double>{0.0, 0.0});
    }

    SUBCASE("idempotent on its own output") {
        Rng rng(17);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<double>> pop;
            pop.push_back({3.0, 0.02, 0.01});
            pop.push_back({0.03, 5.0, 0.02});
            pop.push_back({0.01, 0.04, 2.0});
            for (int i = 0; i < 10; ++i)
                pop.push_back({0.1 + 2.0 * rng.uniform(), 0.1 + 4.0 * rng.uniform(),
                               0.1 + 1.5 * rng.uniform()});
            NormalizationContext c1(3);
            auto once = normalize(pop, c1);
            NormalizationContext c2(3);
            auto twice = normalize(once, c2);
            for (std::size_t i = 0; i < once.size(); ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(twice[i][j] == doctest::Approx(once[i][j]).epsilon(1e-9));
        }
    }
}
