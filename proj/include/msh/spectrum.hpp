#pragma once

#include "msh/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace msh {

/// Real eigenvalue vector of a Hermitian form, kept in ascending order.
///
/// Every quantity in this library is a symmetric function of the
/// eigenvalues, so ordering carries no meaning beyond making "the k
/// smallest" a prefix.
template <Scalar T>
class Spectrum {
public:
    explicit Spectrum(std::vector<T> values) : values_(std::move(values)) {
        if (values_.empty()) throw precondition_error("spectrum must have dimension n >= 1");
        if constexpr (!is_exact_v<T>) {
            for (double v : values_) {
                if (!std::isfinite(v)) throw precondition_error("spectrum entries must be finite");
            }
        }
        std::sort(values_.begin(), values_.end());
    }

    Spectrum(std::initializer_list<T> values) : Spectrum(std::vector<T>(values)) {}

    /// Convenience for integer literals: `Spectrum<Rational>::of({-1, -1, 2})`.
    static Spectrum of(std::initializer_list<long> values) {
        std::vector<T> out;
        out.reserve(values.size());
        for (long v : values) out.push_back(T(v));
        return Spectrum(std::move(out));
    }

    /// `count` copies of `value` followed by the rest.
    static Spectrum blocks(std::initializer_list<std::pair<int, T>> parts) {
        std::vector<T> out;
        for (const auto& [count, value] : parts) out.insert(out.end(), static_cast<std::size_t>(count), value);
        return Spectrum(std::move(out));
    }

    int dim() const noexcept { return static_cast<int>(values_.size()); }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const T> values() const noexcept { return values_; }
    const T& operator[](std::size_t i) const { return values_[i]; }
    const T& front() const { return values_.front(); }
    const T& back() const { return values_.back(); }

    /// max(1, max |lambda_i|), the magnitude used to scale floating tolerances.
    double scale() const {
        double m = 1.0;
        for (const T& v : values_) m = std::max(m, std::abs(to_double(v)));
        return m;
    }

    /// Positive rescaling `t * s`.
    Spectrum scaled(const T& t) const {
        std::vector<T> out(values_);
        for (T& v : out) v *= t;
        return Spectrum(std::move(out));
    }

    friend bool operator==(const Spectrum& a, const Spectrum& b) { return a.values_ == b.values_; }

private:
    std::vector<T> values_;
};

inline Spectrum<double> to_float(const Spectrum<Rational>& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const Rational& v : s.values()) out.push_back(v.get_d());
    return Spectrum<double>(std::move(out));
}

/// Exact image of a floating spectrum (every double is a dyadic rational).
inline Spectrum<Rational> to_exact(const Spectrum<double>& s) {
    std::vector<Rational> out;
    out.reserve(s.size());
    for (double v : s.values()) out.push_back(exact_rational(v));
    return Spectrum<Rational>(std::move(out));
}

}  // namespace msh
