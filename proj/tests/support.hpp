#pragma once

// Generators and brute-force oracles shared by the test binaries.

#include "msh/rng.hpp"
#include "msh/scalar.hpp"
#include "msh/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace msh::testing {

/// num/den in lowest terms; gmp arithmetic requires canonical operands.
inline Rational ratio(std::int64_t num, std::int64_t den) {
    Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

inline Rational random_rational(CounterRng& rng, long num_range, long max_den) {
    return ratio(rng.uniform_int(-num_range, num_range), rng.uniform_int(1, max_den));
}

inline Spectrum<Rational> random_spectrum(CounterRng& rng, int n, long num_range = 20, long max_den = 7) {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(random_rational(rng, num_range, max_den));
    return Spectrum<Rational>(std::move(v));
}

inline Spectrum<double> random_float_spectrum(CounterRng& rng, int n, double lo = -5.0, double hi = 5.0) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(rng.uniform(lo, hi));
    return Spectrum<double>(std::move(v));
}

/// sigma_0..sigma_n by summing the product of every subset (2^n terms).
template <class T>
std::vector<T> brute_sigma(const std::vector<T>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<T> out(static_cast<std::size_t>(n + 1), T(0));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        T prod(1);
        int bits = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                prod *= x[static_cast<std::size_t>(i)];
                ++bits;
            }
        }
        out[static_cast<std::size_t>(bits)] += prod;
    }
    return out;
}

/// Minimum over all k-subsets, by enumeration.
template <class T>
T brute_ksubset_min(const std::vector<T>& x, int k) {
    const int n = static_cast<int>(x.size());
    bool first = true;
    T best(0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        T sum(0);
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) sum += x[static_cast<std::size_t>(i)];
        }
        if (first || sum < best) best = sum;
        first = false;
    }
    return best;
}

/// Product of all m-subset sums, by enumeration.
template <class T>
T brute_mm(const std::vector<T>& x, int m) {
    const int n = static_cast<int>(x.size());
    T prod(1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != m) continue;
        T sum(0);
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) sum += x[static_cast<std::size_t>(i)];
        }
        prod *= sum;
    }
    return prod;
}

template <class T>
std::vector<T> values_of(const Spectrum<T>& s) {
    return {s.values().begin(), s.values().end()};
}

/// Shuffled copy (Fisher-Yates).
template <class T>
std::vector<T> shuffled(std::vector<T> v, CounterRng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
    return v;
}

}  // namespace msh::testing
