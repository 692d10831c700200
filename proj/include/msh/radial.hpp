#pragma once

#include "msh/spectrum.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace msh {

/// chi'(t) = coef * t^exponent on [0, 1].
struct PowerLawDerivative {
    double coef = 1.0;
    double exponent = 0.0;
};

/// Rotation-invariant test function u(z) = chi(|z|^2), described by chi
/// and its first two derivatives on t in [0, 1].
struct RadialProfile {
    std::string name;
    std::function<double(double)> chi;
    std::function<double(double)> dchi;
    std::function<double(double)> d2chi;
    /// Present when chi' is a pure power; enables closed-form ball integrals.
    std::optional<PowerLawDerivative> power_law;

    /// chi(t) = t.
    static RadialProfile identity();
    /// chi(t) = sum_i coeffs[i] t^i.
    static RadialProfile polynomial(std::vector<double> coeffs, std::string name = "polynomial");
};

/// chi_A(t) = ((t + A)^2 / (1 + A) - (1 + A)) / 2, A >= 0.
///
/// Each member vanishes at t = 1, chi_0(t) = (t^2 - 1)/2, and the family
/// decreases pointwise in A towards t - 1.
struct ChiAFamily {
    double A = 0.0;

    RadialProfile profile() const;
};

/// Central-difference check of dchi and d2chi against chi on a probe grid.
bool derivatives_consistent(const RadialProfile& p, double tol = 1e-6);

/// (chi'(t) repeated n-1 times, chi'(t) + t chi''(t)), sorted.
Spectrum<double> radial_spectrum(const RadialProfile& p, double t, int n);

/// (m chi')^{C(n-1,m)} (m chi' + t chi'')^{C(n-1,m-1)}. Throws
/// precondition_error naming t when a factor is negative.
double mm_radial(const RadialProfile& p, double t, int n, int m);

/// M_m^alpha of the radial function at t, powered factor by factor.
double mm_radial_alpha(const RadialProfile& p, double t, int n, int m, double alpha);

/// Area of the unit sphere S^{2n-1} in C^n: 2 pi^n / (n-1)!.
double sphere_area(int n);

/// Volume of the unit ball in C^n: pi^n / n!.
double ball_volume(int n);

enum class IntegrationMethod { closed_form, quadrature };

struct BallIntegral {
    double value = 0.0;
    int n = 0;
    IntegrationMethod method = IntegrationMethod::quadrature;
    double estimated_error = 0.0;
};

/// Integral of M_m^alpha(u) over the unit ball of C^n for u = chi(|z|^2),
/// reduced to c_{2n-1} * int_0^1 M_m^alpha(r^2) r^{2n-1} dr. The closed
/// form needs a power-law chi'. Quadrature targets absolute error 1e-10
/// (relative 1e-13 for large values).
BallIntegral ball_integral(const RadialProfile& p, int n, int m, const Rational& alpha, IntegrationMethod method);

/// The two sides of the radial comparison between u_0 = chi_0(|z|^2) and the
/// A -> infinity limit of u_A, and its reduced form
/// (1 + 1/m)^{C(n-1,m-1) alpha} <= 1 + C(n-1,m-1) alpha / m.
struct OutcomeInequality {
    double lhs = 0.0;
    double rhs = 0.0;
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    double reduced_lhs = 0.0;
    double reduced_rhs = 0.0;
    /// Decided exactly on the reduced form.
    bool holds = false;
    bool equality = false;
};

OutcomeInequality outcome_inequality(int n, int m, const Rational& alpha);

/// Monte Carlo check of the epsilon-expansion of
/// int_B (sum a_j + eps sum_{k<=m} chi_{k kbar})^alpha against int_B (sum a_j)^alpha
/// for chi = -(1 - |z|^2)^2.
struct ExpansionConfig {
    int n = 3;
    int m = 2;
    std::vector<Rational> alphas;
    std::vector<double> eps{0.25, 0.5, 1.0};
    /// a_1..a_m; defaults to 4 * sup|chi_{k kbar}| = 8 each when empty.
    std::vector<double> a;
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 0;
    int chunks = 64;
    /// 0 picks std::thread::hardware_concurrency().
    int threads = 0;
};

struct ExpansionRow {
    double eps = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;     ///< rhs - lhs
    double diff_se = 0.0;
    bool fails = false;    ///< rhs < lhs beyond three standard errors
};

struct ExpansionReport {
    Rational alpha;
    double a_sum = 0.0;
    double volume = 0.0;
    std::uint64_t samples = 0;
    /// First-order term: int_B sum_{k<=m} chi_{k kbar}. Zero analytically.
    double term2 = 0.0;
    double term2_se = 0.0;
    /// Second-order coefficient alpha(alpha-1)/2 A^{alpha-2} int_B (sum chi_{k kbar})^2.
    double eps2_coefficient = 0.0;
    double eps2_coefficient_se = 0.0;
    /// Symmetric second difference at the smallest eps, an independent
    /// estimate of the same coefficient.
    double curvature = 0.0;
    double curvature_se = 0.0;
    std::vector<ExpansionRow> rows;
};

std::vector<ExpansionReport> epsilon_expansion_experiment(const ExpansionConfig& cfg);

struct ComparisonTrial {
    std::vector<double> u_coeffs;
    std::vector<double> v_coeffs;
    double integral_u = 0.0;
    double integral_v = 0.0;
    bool passed = false;
};

struct ComparisonReport {
    int n = 0;
    int m = 0;
    Rational alpha;
    int trials = 0;
    int passed = 0;
    /// min over trials of integral_v - integral_u
    double worst_slack = 0.0;
    std::vector<ComparisonTrial> failures;

    bool all_passed() const { return passed == trials; }
};

/// Random pairs of convex increasing polynomial profiles chi_u >= chi_v,
/// equal at t = 1, compared at alpha = 1 / C(n-1, m-1).
ComparisonReport radial_comparison_property(int n, int m, int trials, std::uint64_t seed, double tol = 1e-8);

}  // namespace msh
