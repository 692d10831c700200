#pragma once

#include "msh/spectrum.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace msh {

/// sigma_0..sigma_n of a spectrum together with S_k = sigma_k / C(n,k).
template <Scalar T>
struct SigmaTable {
    std::vector<T> sigma;
    std::vector<T> normalized;

    int n() const noexcept { return static_cast<int>(sigma.size()) - 1; }
};

/// Coefficients of prod_i (1 + x_i t), i.e. e_0..e_len of an arbitrary
/// (possibly empty, unsorted) coordinate list. O(len^2).
template <Scalar T>
std::vector<T> elementary_symmetric(std::span<const T> values);

/// All elementary symmetric polynomials of `s`, plus the normalized table.
/// In floating mode throws std::overflow_error on a non-finite coefficient.
template <Scalar T>
SigmaTable<T> sigma_all(const Spectrum<T>& s);

/// sigma_j of the spectrum with the coordinates at `excluded` removed
/// (equivalently, replaced by zero). Indices refer to the sorted order.
template <Scalar T>
T sigma_deflated(const Spectrum<T>& s, std::span<const std::size_t> excluded, int j);

/// First pair j < i <= m found with S_j^(1/j) < S_i^(1/i).
struct MaclaurinGap {
    int j;
    int i;
    double gap;  ///< S_j^(1/j) - S_i^(1/i), negative for a violation
};

/// Maclaurin check on a member of the closed cone Gamma_m. Returns nothing
/// when every pair is ordered. Throws precondition_error if `s` is not in
/// the closed cone. Exact mode compares S_j^i against S_i^j.
template <Scalar T>
std::optional<MaclaurinGap> maclaurin_violation(const Spectrum<T>& s, int m, double tol = kDefaultTolerance);

/// S_k^2 - S_{k-1} S_{k+1}, for 1 <= k <= n-1. Nonnegative for every real
/// spectrum.
template <Scalar T>
T newton_residual(const Spectrum<T>& s, int k);

/// sigma_j^2 - sigma_{j-1} sigma_{j+1}. Requires `s` in the closed cone
/// Gamma_{cone_order} with j < cone_order.
template <Scalar T>
T weak_newton_residual(const Spectrum<T>& s, int j, int cone_order, double tol = kDefaultTolerance);

/// (n-j+1)(j+1) / ((n-j) j), the factor relating the unnormalized and
/// normalized Newton inequalities. Defined for 1 <= j <= n-1, where it
/// exceeds one.
Rational newton_constant(int n, int j);

/// Both sides of sigma_j(s) = sum_i sigma_i(first p) sigma_{j-i}(rest).
template <Scalar T>
std::pair<T, T> summation_split(const Spectrum<T>& s, int p, int j);

/// True when S_1..S_m are all >= 0 (closed) or > 0 (open). Degree-j checks
/// use slack tol * scale^j in floating mode.
template <Scalar T>
bool in_gamma_cone(const SigmaTable<T>& table, int m, bool closed, double scale, double tol);

}  // namespace msh
