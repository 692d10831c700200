#pragma once

#include "msh/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace msh {

/// Value of M_m, the product of all m-subset eigenvalue sums.
template <Scalar T>
struct MmValue {
    T value{};
    int m = 0;
    int n = 0;
    std::uint64_t subset_count = 0;
    /// Sum of log(factor), filled in floating mode when every factor is positive.
    std::optional<double> log_value;
    /// Floating product left the double range; `log_value` still holds.
    bool overflow = false;
};

/// All C(n,m) subset sums, subsets enumerated lexicographically over the
/// sorted coordinates.
template <Scalar T>
std::vector<T> subset_sums(const Spectrum<T>& s, int m);

template <Scalar T>
MmValue<T> mm_eval(const Spectrum<T>& s, int m);

/// M_m^alpha. `value` is the floating result; `exact` is set in exact mode
/// whenever the power is rational (integral alpha, or a product that is a
/// perfect power of alpha's denominator).
struct MmPower {
    double value = 0.0;
    std::optional<Rational> exact;
};

/// Requires every factor to be nonnegative (an m-psh spectrum) and
/// alpha >= 0. Throws precondition_error on a negative base.
template <Scalar T>
MmPower mm_alpha(const Spectrum<T>& s, int m, const Rational& alpha, double tol = kDefaultTolerance);

/// Low-order identities relating M_m to the elementary symmetric functions.
template <Scalar T>
struct IdentityReport {
    T m1;        ///< M_1
    T sigma_n;
    bool m1_ok = false;
    T mn;        ///< M_n
    T sigma_1;
    bool mn_ok = false;
    /// Only for n = 3: M_2 and sigma_1 sigma_2 - sigma_3.
    std::optional<T> m2;
    std::optional<T> s1s2_minus_s3;
    bool m2_ok = true;

    bool ok() const { return m1_ok && mn_ok && m2_ok; }
};

template <Scalar T>
IdentityReport<T> special_identity_check(const Spectrum<T>& s, double tol = kDefaultTolerance);

}  // namespace msh
