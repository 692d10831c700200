#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msh {

/// Exact arbitrary-precision rational backend.
using Rational = mpq_class;

/// The two scalar backends every spectral routine is generic over.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// Relative tolerance applied to inequality checks in floating mode.
inline constexpr double kDefaultTolerance = 1e-9;

/// A caller broke an operation's documented precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An invariant the library guarantees was found broken. Always a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An iterative routine hit its iteration cap.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

template <Scalar T>
inline int sign(const T& x) {
    if constexpr (is_exact_v<T>) {
        return sgn(x);
    } else {
        return (x > 0) - (x < 0);
    }
}

/// Closed inequality `value >= 0`. In floating mode the slack is
/// `tol * scale`; exact mode ignores both.
template <Scalar T>
inline bool nonneg(const T& value, double scale, double tol) {
    if constexpr (is_exact_v<T>) {
        return sgn(value) >= 0;
    } else {
        return value >= -tol * scale;
    }
}

/// Strict inequality `value > 0`, with the same tolerance convention.
template <Scalar T>
inline bool positive(const T& value, double scale, double tol) {
    if constexpr (is_exact_v<T>) {
        return sgn(value) > 0;
    } else {
        return value > tol * scale;
    }
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
/// Throws std::overflow_error past 64 bits.
std::uint64_t binomial(int n, int k);

/// Exact binomial coefficient.
mpz_class binomial_exact(int n, int k);

/// Integer power of a rational.
Rational pow(const Rational& base, unsigned long exponent);

/// Parses "p/q", an integer, or a decimal literal ("0.25", "1e-3") exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& x);

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued-fraction convergents and semiconvergents.
Rational rationalize(double x, std::int64_t max_den);

/// Exact value of a finite double.
Rational exact_rational(double x);

/// If `x` is a perfect `root`-th power of a rational, returns the root.
bool exact_root(const Rational& x, unsigned long root, Rational& out);

}  // namespace msh
