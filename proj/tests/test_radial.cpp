#include "msh/mm_operator.hpp"
#include "msh/quadrature.hpp"
#include "msh/radial.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace msh;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// At alpha = 1/C(n-1,m-1), with q = (n-m)/m, t^{n-1} M_m^alpha equals
// (m^{q+1}/n) d/dt [t^n chi'(t)^{q+1}], so the ball integral is
// (c_{2n-1}/2) m^{q+1} chi'(1)^{q+1} / n.
double boundary_value(const RadialProfile& p, int n, int m) {
    const double q = static_cast<double>(n - m) / m;
    return sphere_area(n) / 2.0 * std::pow(m, q + 1.0) / n * std::pow(p.dchi(1.0), q + 1.0);
}

}  // namespace

TEST_SUITE("radial-cp") {
    TEST_CASE("quadrature") {
        const auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
        CHECK(r.converged);
        CHECK(std::abs(r.value - (std::numbers::e - 1.0)) <= 1e-14);
        const auto s = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
        CHECK(s.converged);
        CHECK(std::abs(s.value - 2.0 / 3.0) <= 1e-10);
        const auto p = integrate([](double x) { return std::pow(x, 31); }, 0.0, 2.0);
        CHECK(rel(p.value, std::pow(2.0, 32) / 32.0) <= 1e-13);
        const auto bad = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 1e-16, 8);
        CHECK_FALSE(bad.converged);
    }

    TEST_CASE("sphere area and ball volume") {
        CHECK(sphere_area(1) == doctest::Approx(2 * std::numbers::pi));
        CHECK(sphere_area(2) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
        CHECK(sphere_area(3) == doctest::Approx(std::pow(std::numbers::pi, 3)));
        CHECK(ball_volume(2) == doctest::Approx(std::pow(std::numbers::pi, 2) / 2));
        for (int n = 1; n <= 8; ++n) CHECK(ball_volume(n) == doctest::Approx(sphere_area(n) / (2.0 * n)));
        CHECK_THROWS_AS(sphere_area(0), precondition_error);
    }

    TEST_CASE("profiles") {
        CHECK(derivatives_consistent(RadialProfile::identity()));
        CHECK(derivatives_consistent(RadialProfile::polynomial({-3.0, 1.0, 0.5, 1.5})));
        for (double A : {0.0, 0.5, 1.0, 10.0, 1e4}) {
            const auto p = ChiAFamily{A}.profile();
            CHECK(derivatives_consistent(p));
            CHECK(std::abs(p.chi(1.0)) <= 1e-15);
            CHECK(p.dchi(0.3) == doctest::Approx((0.3 + A) / (1 + A)));
            CHECK(p.d2chi(0.3) == doctest::Approx(1 / (1 + A)));
        }
        const auto chi0 = ChiAFamily{0.0}.profile();
        CHECK(chi0.chi(0.4) == doctest::Approx((0.16 - 1) / 2));
        REQUIRE(chi0.power_law.has_value());
        CHECK(chi0.power_law->exponent == 1.0);
        CHECK_FALSE(ChiAFamily{1.0}.profile().power_law.has_value());
        // pointwise non-increasing in A
        for (double t : {0.0, 0.25, 0.5, 0.9}) {
            double prev = ChiAFamily{0.0}.profile().chi(t);
            for (double A : {0.1, 1.0, 3.0, 10.0, 100.0}) {
                const double v = ChiAFamily{A}.profile().chi(t);
                CHECK(v <= prev);
                prev = v;
            }
        }
        RadialProfile broken = RadialProfile::identity();
        broken.dchi = [](double) { return 2.0; };
        CHECK_FALSE(derivatives_consistent(broken));
    }

    TEST_CASE("radial spectrum examples") {
        const auto one = radial_spectrum(RadialProfile::identity(), 0.7, 4);
        for (double v : one.values()) CHECK(v == 1.0);
        const auto chi0 = radial_spectrum(ChiAFamily{0.0}.profile(), 0.3, 4);
        CHECK(chi0[0] == doctest::Approx(0.3));
        CHECK(chi0[2] == doctest::Approx(0.3));
        CHECK(chi0[3] == doctest::Approx(0.6));
        const auto far = radial_spectrum(ChiAFamily{1e9}.profile(), 0.5, 3);
        for (double v : far.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
    }

    TEST_CASE("mm_radial examples and oracle") {
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= n; ++m) {
                CHECK(mm_radial(RadialProfile::identity(), 0.4, n, m) == doctest::Approx(std::pow(m, binomial(n, m))));
                const double t = 0.6;
                const double expect = std::pow(m * t, binomial(n - 1, m)) * std::pow((m + 1) * t, binomial(n - 1, m - 1));
                CHECK(rel(mm_radial(ChiAFamily{0.0}.profile(), t, n, m), expect) <= 1e-13);
            }
        }
        CounterRng rng(51, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            const int m = static_cast<int>(rng.uniform_int(1, n));
            const double t = rng.uniform(0.0, 1.0);
            const double A = std::exp(rng.uniform(-3.0, 5.0));
            const auto p = ChiAFamily{A}.profile();
            const double direct = mm_eval(radial_spectrum(p, t, n), m).value;
            CHECK(rel(mm_radial(p, t, n, m), direct) <= 1e-12);
        }
        // not m-psh: chi' < 0 at t = 0
        const auto bad = RadialProfile::polynomial({0.0, -1.0, 2.0});
        CHECK_THROWS_AS(mm_radial(bad, 0.0, 3, 2), precondition_error);
    }

    TEST_CASE("ball integral closed forms") {
        const auto chi0 = ChiAFamily{0.0}.profile();
        const auto id = RadialProfile::identity();
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= n; ++m) {
                for (const Rational& alpha : {Rational(1, 2), Rational(1), Rational(2)}) {
                    const double a = alpha.get_d();
                    const double c1 = static_cast<double>(binomial(n - 1, m));
                    const double c2 = static_cast<double>(binomial(n - 1, m - 1));
                    const double cn = static_cast<double>(binomial(n, m));
                    const double f0 = sphere_area(n) * std::pow(m, c1 * a) * std::pow(m + 1.0, c2 * a) / (2.0 * n + 2.0 * cn * a);
                    const double fi = sphere_area(n) * std::pow(m, cn * a) / (2.0 * n);
                    const auto q0 = ball_integral(chi0, n, m, alpha, IntegrationMethod::quadrature);
                    CHECK(q0.method == IntegrationMethod::quadrature);
                    CHECK(rel(ball_integral(chi0, n, m, alpha, IntegrationMethod::closed_form).value, f0) <= 1e-12);
                    CHECK(rel(q0.value, f0) <= 1e-9);
                    CHECK(rel(ball_integral(id, n, m, alpha, IntegrationMethod::closed_form).value, fi) <= 1e-12);
                    CHECK(rel(ball_integral(id, n, m, alpha, IntegrationMethod::quadrature).value, fi) <= 1e-9);
                }
            }
        }
        CHECK_THROWS_AS(ball_integral(ChiAFamily{1.0}.profile(), 3, 2, Rational(1), IntegrationMethod::closed_form),
                        precondition_error);
        const auto bad = RadialProfile::polynomial({1.0, -2.0, 1.0});  // chi' = 2t - 2 < 0
        CHECK_THROWS_AS(ball_integral(bad, 3, 2, Rational(1, 2), IntegrationMethod::quadrature), precondition_error);
    }

    TEST_CASE("chi_A integrals approach the linear-profile value") {
        // m in {1, n} at alpha = 1: the integral sees only chi'(1) = 1, so it is flat in A
        for (int n = 1; n <= 5; ++n) {
            for (int m : {1, n}) {
                const double flat = sphere_area(n) * std::pow(m, binomial(n, m)) / (2.0 * n);
                for (double A : {0.0, 1.0, 10.0, 100.0}) {
                    const double v = ball_integral(ChiAFamily{A}.profile(), n, m, Rational(1), IntegrationMethod::quadrature).value;
                    CHECK(rel(v, flat) <= 1e-10);
                }
            }
        }
        // (3, 2, 1): strictly decreasing in A towards the linear value
        const double limit = sphere_area(3) * std::pow(2, binomial(3, 2)) / 6.0;
        double prev = std::numeric_limits<double>::infinity();
        for (double A : {0.0, 1.0, 10.0, 100.0}) {
            const double v = ball_integral(ChiAFamily{A}.profile(), 3, 2, Rational(1), IntegrationMethod::quadrature).value;
            CHECK(v < prev);
            CHECK(v > limit);
            prev = v;
        }
        for (int n = 2; n <= 5; ++n) {
            for (int m = 1; m <= n; ++m) {
                const auto alpha = Rational(1);
                const double far =
                    ball_integral(ChiAFamily{1e4}.profile(), n, m, alpha, IntegrationMethod::quadrature).value;
                const double lim = sphere_area(n) * std::pow(m, binomial(n, m)) / (2.0 * n);
                CHECK(rel(far, lim) <= 0.01);
            }
        }
    }

    TEST_CASE("outcome inequality examples") {
        const auto a = outcome_inequality(3, 2, Rational(1));
        CHECK_FALSE(a.holds);
        CHECK(a.reduced_lhs == doctest::Approx(2.25));
        CHECK(a.reduced_rhs == doctest::Approx(2.0));
        CHECK(a.lhs > a.rhs);
        for (int n = 1; n <= 10; ++n) {
            for (int m : {1, n}) {
                const auto e = outcome_inequality(n, m, Rational(1));
                CHECK(e.equality);
                CHECK(e.holds);
            }
        }
        const auto b = outcome_inequality(3, 2, Rational(1, 2));
        CHECK(b.equality);
        CHECK(b.reduced_lhs == doctest::Approx(1.5));
        CHECK_THROWS_AS(outcome_inequality(3, 2, Rational(0)), precondition_error);
    }

    TEST_CASE("property: outcome inequality over n <= 10") {
        const std::vector<Rational> alphas{Rational(1, 20), Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(3, 4),
                                           Rational(1),     Rational(5, 4), Rational(2),    Rational(7, 2)};
        for (int n = 1; n <= 10; ++n) {
            for (int m = 1; m <= n; ++m) {
                const auto c = binomial(n - 1, m - 1);
                const Rational boundary(1, static_cast<unsigned long>(c));
                // the reduced pair is an equality exactly at the boundary exponent
                const auto at = outcome_inequality(n, m, boundary);
                CHECK(at.holds);
                CHECK(at.equality);
                for (const auto& alpha : alphas) {
                    const auto o = outcome_inequality(n, m, alpha);
                    if (alpha > boundary) CHECK_FALSE(o.holds);
                    if (alpha < boundary) {
                        CHECK(o.holds);
                        CHECK_FALSE(o.equality);
                    }
                    // the float sides (in logs past the double range) follow the exact verdict away from equality
                    if (!o.equality) {
                        INFO("n=", n, " m=", m, " alpha=", to_string(alpha));
                        REQUIRE(std::isfinite(o.log_lhs));
                        REQUIRE(std::isfinite(o.log_rhs));
                        CHECK((o.log_lhs <= o.log_rhs) == o.holds);
                        if (std::isfinite(o.lhs) && std::isfinite(o.rhs)) CHECK((o.lhs <= o.rhs) == o.holds);
                    }
                }
            }
        }
    }

    TEST_CASE("boundary-exponent oracle: comparison integral depends only on chi'(1)") {
        CounterRng rng(52, 0);
        for (auto [n, m] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}, std::pair{6, 2}}) {
            const Rational alpha(1, static_cast<unsigned long>(binomial(n - 1, m - 1)));
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> c{0.0};
                const int deg = static_cast<int>(rng.uniform_int(1, 4));
                double sum = 0.0;
                for (int i = 1; i <= deg; ++i) {
                    c.push_back(std::exp(rng.uniform(std::log(1e-2), std::log(10.0))));
                    sum += c.back();
                }
                c[0] = -sum;
                const auto p = RadialProfile::polynomial(c);
                const double v = ball_integral(p, n, m, alpha, IntegrationMethod::quadrature).value;
                CHECK(rel(v, boundary_value(p, n, m)) <= 1e-9);
            }
            CHECK(rel(ball_integral(ChiAFamily{0.0}.profile(), n, m, alpha, IntegrationMethod::closed_form).value,
                      boundary_value(ChiAFamily{0.0}.profile(), n, m)) <= 1e-12);
        }
    }

    TEST_CASE("radial comparison property") {
        for (auto [n, m] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}}) {
            const auto r = radial_comparison_property(n, m, 200, 9);
            CHECK(r.all_passed());
            CHECK(r.trials == 200);
            CHECK(r.worst_slack >= -1e-8);
            CHECK(r.alpha == Rational(1, static_cast<unsigned long>(binomial(n - 1, m - 1))));
        }
        // chi_0 against chi_A: chi_A'(1) = 1 = chi_0'(1), so the two integrals agree
        for (double A : {0.5, 3.0, 40.0}) {
            const Rational alpha(1, 2);
            const double u = ball_integral(ChiAFamily{0.0}.profile(), 3, 2, alpha, IntegrationMethod::quadrature).value;
            const double v = ball_integral(ChiAFamily{A}.profile(), 3, 2, alpha, IntegrationMethod::quadrature).value;
            CHECK(u <= v + 1e-8);
        }
        const auto same_seed = radial_comparison_property(4, 2, 50, 3);
        const auto again = radial_comparison_property(4, 2, 50, 3);
        CHECK(same_seed.worst_slack == again.worst_slack);
    }

    TEST_CASE("expansion experiment, reduced sample size") {
        ExpansionConfig cfg;
        cfg.alphas = {Rational(1, 2), Rational(1)};
        cfg.samples = 200000;
        cfg.seed = 4;
        const auto r = epsilon_expansion_experiment(cfg);
        REQUIRE(r.size() == 2);
        CHECK(std::abs(r[0].term2) <= 4 * r[0].term2_se);
        CHECK(r[0].eps2_coefficient < 0);
        CHECK(r[1].eps2_coefficient == 0.0);
        CHECK(r[0].curvature == doctest::Approx(r[0].eps2_coefficient).epsilon(0.05));
        CHECK(r[0].volume == doctest::Approx(ball_volume(3)));

        // deterministic whatever the thread count
        cfg.threads = 1;
        const auto one = epsilon_expansion_experiment(cfg);
        cfg.threads = 3;
        const auto three = epsilon_expansion_experiment(cfg);
        CHECK(one[0].term2 == three[0].term2);
        CHECK(one[0].rows.back().diff == three[0].rows.back().diff);

        cfg.samples = 10;
        CHECK_THROWS_AS(epsilon_expansion_experiment(cfg), precondition_error);
        cfg.samples = 10000;
        cfg.a = {1.0};
        CHECK_THROWS_AS(epsilon_expansion_experiment(cfg), precondition_error);
    }

    TEST_CASE("first-order moment identity") {
        // int_B |z_j|^2 = V/(n+1) and int_B s = nV/(n+1), so int_B 2m(1-s) - 2 sum_{j<=m}|z_j|^2 = 0
        for (int n = 1; n <= 6; ++n) {
            const double V = ball_volume(n);
            const auto s_int = integrate([&](double r) { return r * r * std::pow(r, 2 * n - 1); }, 0.0, 1.0).value * sphere_area(n);
            CHECK(s_int == doctest::Approx(n * V / (n + 1)));
            for (int m = 1; m <= n; ++m) CHECK(std::abs(2.0 * m * (V - s_int) - 2.0 * m * V / (n + 1)) <= 1e-12);
        }
    }
}
