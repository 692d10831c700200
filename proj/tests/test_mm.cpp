#include "msh/cones.hpp"
#include "msh/mm_operator.hpp"
#include "msh/symfunc.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace msh;

TEST_SUITE("mm-operator") {
    TEST_CASE("mm_eval examples") {
        for (int n = 1; n <= 7; ++n) {
            for (int m = 1; m <= n; ++m) {
                const auto v = mm_eval(Spectrum<Rational>(std::vector<Rational>(static_cast<std::size_t>(n), 1)), m);
                CHECK(v.value == pow(Rational(m), binomial(n, m)));
                CHECK(v.subset_count == binomial(n, m));
            }
        }
        CHECK(mm_eval(Spectrum<Rational>::of({1, 2, 3}), 2).value == 60);
        const auto w = Spectrum<Rational>::blocks({{2, Rational(-1)}, {9, Rational(2)}});
        CHECK(mm_eval(w, 3).value == 0);
        CHECK_THROWS_AS(mm_eval(w, 12), precondition_error);
    }

    TEST_CASE("subset enumeration is lexicographic") {
        const auto sums = subset_sums(Spectrum<Rational>::of({1, 10, 100, 1000}), 2);
        CHECK(sums == std::vector<Rational>{11, 101, 1001, 110, 1010, 1100});
    }

    TEST_CASE("floating mode keeps a log value past the double range") {
        const auto big = mm_eval(Spectrum<double>(std::vector<double>(12, 1e10)), 6);
        CHECK(big.overflow);
        REQUIRE(big.log_value.has_value());
        CHECK(*big.log_value == doctest::Approx(924 * std::log(6e10)));
        const auto positive = mm_eval(Spectrum<double>{-1.0, 2.0, 3.0}, 2);
        REQUIRE(positive.log_value.has_value());
        CHECK(*positive.log_value == doctest::Approx(std::log(1.0 * 2.0 * 5.0)));
        // a negative factor leaves no log value
        const auto mixed = mm_eval(Spectrum<double>{-3.0, 1.0, 4.0}, 2);
        CHECK_FALSE(mixed.log_value.has_value());
        CHECK_FALSE(mixed.overflow);
        CHECK(mixed.value == doctest::Approx(-2.0 * 1.0 * 5.0));
    }

    TEST_CASE("oracle: mm_eval agrees with brute-force subset products") {
        CounterRng rng(41, 0);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            const int m = static_cast<int>(rng.uniform_int(1, n));
            const auto s = msh::testing::random_spectrum(rng, n, 9, 3);
            CHECK(mm_eval(s, m).value == msh::testing::brute_mm(msh::testing::values_of(s), m));
        }
    }

    TEST_CASE("mm_alpha") {
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= n; ++m) {
                const Spectrum<Rational> ones(std::vector<Rational>(static_cast<std::size_t>(n), 1));
                const Rational alpha(1, 2);
                const auto r = mm_alpha(ones, m, alpha);
                CHECK(r.value == doctest::Approx(std::pow(m, binomial(n, m) * 0.5)));
            }
        }
        const auto root60 = mm_alpha(Spectrum<Rational>::of({1, 2, 3}), 2, Rational(1, 2));
        CHECK(root60.value == doctest::Approx(std::sqrt(60.0)));
        CHECK_FALSE(root60.exact.has_value());

        const auto square = mm_alpha(Spectrum<Rational>::of({1, 3, 5}), 2, Rational(1, 3));  // 4 * 6 * 8 = 192
        CHECK(square.value == doctest::Approx(std::cbrt(192.0)));

        const auto cube = mm_alpha(Spectrum<Rational>::of({1, 1, 2}), 2, Rational(1, 2));  // 2 * 3 * 3 = 18
        CHECK_FALSE(cube.exact.has_value());
        const auto exact = mm_alpha(Spectrum<Rational>::of({0, 2, 2}), 2, Rational(1, 2));  // 2 * 2 * 4 = 16
        REQUIRE(exact.exact.has_value());
        CHECK(*exact.exact == 4);

        const auto zero_power = mm_alpha(Spectrum<Rational>::of({1, 2, 3}), 2, Rational(0));
        CHECK(zero_power.value == 1.0);
        CHECK(mm_alpha(Spectrum<Rational>::of({-1, 1, 2}), 2, Rational(1, 2)).value == 0.0);
        CHECK_THROWS_AS(mm_alpha(Spectrum<Rational>::of({-3, 1, 2}), 2, Rational(1, 2)), precondition_error);
        CHECK_THROWS_AS(mm_alpha(Spectrum<Rational>::of({1, 2, 3}), 2, Rational(-1)), precondition_error);
    }

    TEST_CASE("special identity examples") {
        const auto a = special_identity_check(Spectrum<Rational>::of({1, 2, 3}));
        CHECK(a.ok());
        CHECK(*a.m2 == 60);
        CHECK(*a.s1s2_minus_s3 == 60);
        const auto b = special_identity_check(Spectrum<Rational>::of({1, 1, 1}));
        CHECK(*b.m2 == 8);
        const auto c = special_identity_check(Spectrum<Rational>::of({0, 0, 1}));
        CHECK(*c.m2 == 0);
        CHECK(c.ok());
        CHECK_FALSE(special_identity_check(Spectrum<Rational>::of({1, 2, 3, 4})).m2.has_value());
    }

    TEST_CASE("property: endpoint identities, homogeneity, permutation invariance") {
        CounterRng rng(42, 0);
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 7));
            const auto s = msh::testing::random_spectrum(rng, n, 15, 4);
            CHECK(special_identity_check(s).ok());
            CHECK(special_identity_check(to_float(s)).ok());
            const int m = static_cast<int>(rng.uniform_int(1, n));
            const Rational t = msh::testing::ratio(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
            const auto base = mm_eval(s, m).value;
            CHECK(mm_eval(s.scaled(t), m).value == pow(t, binomial(n, m)) * base);
            const Spectrum<Rational> perm(msh::testing::shuffled(msh::testing::values_of(s), rng));
            CHECK(mm_eval(perm, m).value == base);
        }
    }

    TEST_CASE("property: monotone in each coordinate on m-psh spectra") {
        CounterRng rng(43, 0);
        int checked = 0;
        for (int trial = 0; trial < 3000; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(2, 7));
            const int m = static_cast<int>(rng.uniform_int(1, n));
            const auto s = msh::testing::random_spectrum(rng, n, 10, 3);
            if (ksubset_min_sum(s, m) < 0) continue;
            ++checked;
            auto v = msh::testing::values_of(s);
            const auto i = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
            v[i] += msh::testing::ratio(rng.uniform_int(1, 5), 2);
            CHECK(mm_eval(Spectrum<Rational>(v), m).value >= mm_eval(s, m).value);
            CHECK(mm_eval(s, m).value >= 0);
        }
        CHECK(checked > 300);
    }
}
