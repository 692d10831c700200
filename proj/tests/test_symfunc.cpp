#include "msh/cones.hpp"
#include "msh/symfunc.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace msh;
using msh::testing::brute_sigma;

namespace {

const Spectrum<Rational> kWitness = Spectrum<Rational>::blocks({{2, Rational(-1)}, {9, Rational(2)}});

}  // namespace

TEST_SUITE("symfunc") {
    TEST_CASE("sigma_all examples") {
        const auto ones = sigma_all(Spectrum<Rational>::of({1, 1, 1}));
        CHECK(ones.sigma == std::vector<Rational>{1, 3, 3, 1});
        CHECK(ones.normalized == std::vector<Rational>{1, 1, 1, 1});
        CHECK(ones.n() == 3);

        const auto w = sigma_all(kWitness);
        CHECK(w.sigma[0] == 1);
        CHECK(w.sigma[9] == 512);
        CHECK(w.sigma[8] == -1536);
        CHECK(w.normalized[9] == Rational(512, 55));

        const auto f = sigma_all(Spectrum<double>{1.0, 2.0, 3.0});
        CHECK(f.sigma[2] == doctest::Approx(11.0));
        CHECK(f.normalized[2] == doctest::Approx(11.0 / 3.0));
    }

    TEST_CASE("floating overflow is reported") {
        std::vector<double> big(40, 1e300);
        CHECK_THROWS_AS(sigma_all(Spectrum<double>(big)), std::overflow_error);
    }

    TEST_CASE("oracle: recurrence matches brute-force subset sums, n <= 8") {
        CounterRng rng(11, 0);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            const auto s = msh::testing::random_spectrum(rng, n);
            const auto expect = brute_sigma(msh::testing::values_of(s));
            CHECK(sigma_all(s).sigma == expect);

            const auto fs = to_float(s);
            const auto fexp = brute_sigma(msh::testing::values_of(fs));
            const auto fgot = sigma_all(fs).sigma;
            double mag = 0.0;
            for (double v : fs.values()) mag = std::max(mag, std::abs(v));
            for (int j = 0; j <= n; ++j) {
                // relative to the size of the terms, which bounds cancellation
                const double scale = static_cast<double>(binomial(n, j)) * std::pow(std::max(1.0, mag), j);
                CHECK(std::abs(fgot[static_cast<std::size_t>(j)] - fexp[static_cast<std::size_t>(j)]) <= 1e-12 * scale);
            }
        }
    }

    TEST_CASE("permutation invariance and homogeneity") {
        CounterRng rng(12, 0);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 9));
            const auto s = msh::testing::random_spectrum(rng, n);
            const auto v = msh::testing::values_of(s);
            const auto base = elementary_symmetric<Rational>(std::span<const Rational>(v));
            const auto perm = msh::testing::shuffled(v, rng);
            CHECK(elementary_symmetric<Rational>(std::span<const Rational>(perm)) == base);
            const Rational t = msh::testing::ratio(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
            const auto scaled = sigma_all(s.scaled(t)).sigma;
            for (int j = 0; j <= n; ++j) CHECK(scaled[static_cast<std::size_t>(j)] == pow(t, static_cast<unsigned long>(j)) * base[static_cast<std::size_t>(j)]);
        }
    }

    TEST_CASE("sigma_deflated examples and oracle") {
        const auto s = Spectrum<Rational>::of({-1, 2, 3});
        const std::size_t first[] = {0};
        CHECK(sigma_deflated(s, first, 1) == 5);
        CHECK(sigma_deflated(s, std::span<const std::size_t>{}, 2) == 1);
        const std::size_t last[] = {3};
        CHECK(sigma_deflated(Spectrum<Rational>::of({1, 2, 3, 4}), last, 3) == 6);
        const std::size_t bad[] = {3};
        CHECK_THROWS_AS(sigma_deflated(s, bad, 1), precondition_error);
        const std::size_t dup[] = {1, 1};
        CHECK_THROWS_AS(sigma_deflated(s, dup, 1), precondition_error);

        CounterRng rng(13, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(2, 7));
            const auto sp = msh::testing::random_spectrum(rng, n);
            const auto drop = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
            std::vector<Rational> rest;
            for (std::size_t i = 0; i < sp.size(); ++i) {
                if (i != drop) rest.push_back(sp[i]);
            }
            const auto expect = brute_sigma(rest);
            const std::size_t ex[] = {drop};
            for (int j = 0; j <= n - 1; ++j) CHECK(sigma_deflated(sp, ex, j) == expect[static_cast<std::size_t>(j)]);
        }
    }

    TEST_CASE("maclaurin examples") {
        CHECK_FALSE(maclaurin_violation(Spectrum<Rational>::of({1, 1, 1}), 3).has_value());
        CHECK_FALSE(maclaurin_violation(Spectrum<Rational>::of({3, 1, 2}), 2).has_value());
        CHECK_FALSE(maclaurin_violation(Spectrum<double>{1.0, 1.0, -0.5}, 1).has_value());
        CHECK_THROWS_AS(maclaurin_violation(Spectrum<Rational>::of({-3, 1, 1}), 2), precondition_error);
    }

    TEST_CASE("newton examples") {
        CHECK(newton_residual(Spectrum<Rational>::of({1, 1, 1}), 1) == 0);
        CHECK(newton_residual(kWitness, 8) >= 0);
        CHECK(newton_residual(Spectrum<Rational>::of({-5, 3, 7}), 2) >= 0);
        CHECK_THROWS_AS(newton_residual(Spectrum<Rational>::of({1, 2}), 2), precondition_error);
        CHECK(newton_constant(5, 2) == 2);  // (4 * 3) / (3 * 2)
        for (int n = 2; n <= 12; ++n) {
            for (int j = 1; j <= n - 1; ++j) CHECK(newton_constant(n, j) > 1);
        }
        CHECK_THROWS_AS(newton_constant(5, 5), precondition_error);
    }

    TEST_CASE("weak newton examples") {
        CHECK(weak_newton_residual(Spectrum<Rational>::of({1, 1, 1}), 1, 3) == 6);
        CHECK(weak_newton_residual(Spectrum<Rational>::of({2, 3, 4}), 2, 3) == 460);
        CHECK(weak_newton_residual(Spectrum<Rational>::of({0, 0, 1}), 1, 2) == 1);
        CHECK_THROWS_AS(weak_newton_residual(Spectrum<Rational>::of({-5, 1, 1}), 1, 2), precondition_error);
        CHECK_THROWS_AS(weak_newton_residual(Spectrum<Rational>::of({1, 1, 1}), 2, 2), precondition_error);
    }

    TEST_CASE("summation split examples") {
        auto [l1, r1] = summation_split(Spectrum<Rational>::of({1, 2, 3}), 1, 2);
        CHECK(l1 == 11);
        CHECK(r1 == 11);
        auto [l2, r2] = summation_split(kWitness, 2, 9);
        CHECK(l2 == 512);
        CHECK(r2 == 512);
        auto [l3, r3] = summation_split(Spectrum<Rational>::of({7}), 1, 0);
        CHECK(l3 == 1);
        CHECK(r3 == 1);
        CHECK_THROWS_AS(summation_split(kWitness, 12, 1), precondition_error);
    }

    TEST_CASE("property: newton residual is nonnegative on arbitrary rational spectra") {
        CounterRng rng(14, 0);
        for (int trial = 0; trial < 10000; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(2, 12));
            const auto s = msh::testing::random_spectrum(rng, n, 12, 5);
            for (int k = 1; k <= n - 1; ++k) {
                if (newton_residual(s, k) < 0) FAIL("negative Newton residual at k = " << k);
            }
        }
    }

    TEST_CASE("property: maclaurin and weak newton hold on cone members") {
        CounterRng rng(15, 0);
        int members = 0;
        for (int trial = 0; trial < 4000; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(2, 8));
            const int m = static_cast<int>(rng.uniform_int(1, n));
            // mostly positive entries so membership is common
            std::vector<Rational> v;
            for (int i = 0; i < n; ++i) {
                Rational q(rng.uniform_int(-4, 20), static_cast<unsigned long>(rng.uniform_int(1, 4)));
                q.canonicalize();
                v.push_back(q);
            }
            const Spectrum<Rational> s(std::move(v));
            if (!gamma_membership(s, m, ConeKind::closed).member) continue;
            ++members;
            CHECK_FALSE(maclaurin_violation(s, m).has_value());
            for (int j = 1; j < m; ++j) CHECK(weak_newton_residual(s, j, m) >= 0);
            const auto fs = to_float(s);
            CHECK_FALSE(maclaurin_violation(fs, m).has_value());
        }
        CHECK(members > 1000);
    }

    TEST_CASE("property: summation split is an identity") {
        CounterRng rng(16, 0);
        for (int trial = 0; trial < 500; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 9));
            const auto s = msh::testing::random_spectrum(rng, n);
            for (int p = 0; p <= n; ++p) {
                for (int j = 0; j <= n; ++j) {
                    auto [l, r] = summation_split(s, p, j);
                    if (l != r) FAIL("split mismatch at p = " << p << ", j = " << j);
                }
            }
        }
    }

    TEST_CASE("gamma cone check with tolerance") {
        const auto t = sigma_all(Spectrum<double>{-1e-12, 1.0, 1.0});
        CHECK(in_gamma_cone(t, 3, true, 1.0, 1e-9));
        CHECK_FALSE(in_gamma_cone(t, 3, true, 1.0, 1e-15));
        CHECK_FALSE(in_gamma_cone(t, 3, false, 1.0, 1e-9));
    }
}
