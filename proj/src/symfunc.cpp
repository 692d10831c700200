#include "msh/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace msh {

template <Scalar T>
std::vector<T> elementary_symmetric(std::span<const T> values) {
    std::vector<T> e(values.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        // descending so e[j-1] is still the previous pass's value
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += values[i] * e[j - 1];
    }
    return e;
}

template <Scalar T>
SigmaTable<T> sigma_all(const Spectrum<T>& s) {
    SigmaTable<T> table;
    table.sigma = elementary_symmetric<T>(s.values());
    const int n = s.dim();
    table.normalized.resize(table.sigma.size());
    for (int k = 0; k <= n; ++k) {
        if constexpr (is_exact_v<T>) {
            table.normalized[k] = table.sigma[k] / Rational(binomial_exact(n, k));
        } else {
            if (!std::isfinite(table.sigma[k])) {
                throw std::overflow_error("sigma_" + std::to_string(k) + " overflowed double range");
            }
            table.normalized[k] = table.sigma[k] / static_cast<double>(binomial(n, k));
        }
    }
    return table;
}

template <Scalar T>
T sigma_deflated(const Spectrum<T>& s, std::span<const std::size_t> excluded, int j) {
    std::vector<bool> drop(s.size(), false);
    for (std::size_t idx : excluded) {
        if (idx >= s.size()) throw precondition_error("excluded index out of range");
        if (drop[idx]) throw precondition_error("excluded indices must be distinct");
        drop[idx] = true;
    }
    if (j < 0 || j > s.dim()) throw precondition_error("degree out of range");
    std::vector<T> rest;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!drop[i]) rest.push_back(s[i]);
    }
    if (static_cast<std::size_t>(j) > rest.size()) return T(0);
    return elementary_symmetric<T>(rest)[static_cast<std::size_t>(j)];
}

template <Scalar T>
bool in_gamma_cone(const SigmaTable<T>& table, int m, bool closed, double scale, double tol) {
    for (int j = 1; j <= m; ++j) {
        const double slack_scale = std::pow(scale, j);
        const T& v = table.normalized[j];
        if (closed ? !nonneg(v, slack_scale, tol) : !positive(v, slack_scale, tol)) return false;
    }
    return true;
}

template <Scalar T>
std::optional<MaclaurinGap> maclaurin_violation(const Spectrum<T>& s, int m, double tol) {
    if (m < 1 || m > s.dim()) throw precondition_error("cone order out of range");
    const auto table = sigma_all(s);
    const double scale = s.scale();
    if (!in_gamma_cone(table, m, true, scale, tol)) {
        throw precondition_error("maclaurin_violation requires a member of the closed cone");
    }
    for (int i = 2; i <= m; ++i) {
        for (int j = 1; j < i; ++j) {
            const double lo = std::pow(std::max(0.0, to_double(table.normalized[j])), 1.0 / j);
            const double hi = std::pow(std::max(0.0, to_double(table.normalized[i])), 1.0 / i);
            bool violated;
            if constexpr (is_exact_v<T>) {
                // both sides nonnegative: S_j^(1/j) >= S_i^(1/i) <=> S_j^i >= S_i^j
                violated = pow(table.normalized[j], static_cast<unsigned long>(i)) <
                           pow(table.normalized[i], static_cast<unsigned long>(j));
            } else {
                violated = lo < hi - tol * std::max(1.0, hi);
            }
            if (violated) return MaclaurinGap{j, i, lo - hi};
        }
    }
    return std::nullopt;
}

template <Scalar T>
T newton_residual(const Spectrum<T>& s, int k) {
    if (k < 1 || k > s.dim() - 1) throw precondition_error("newton_residual needs 1 <= k <= n-1");
    const auto table = sigma_all(s);
    const auto& S = table.normalized;
    return T(S[k] * S[k] - S[k - 1] * S[k + 1]);
}

template <Scalar T>
T weak_newton_residual(const Spectrum<T>& s, int j, int cone_order, double tol) {
    if (cone_order < 1 || cone_order > s.dim()) throw precondition_error("cone order out of range");
    if (j < 1 || j >= cone_order) throw precondition_error("weak Newton needs 1 <= j < cone order");
    const auto table = sigma_all(s);
    if (!in_gamma_cone(table, cone_order, true, s.scale(), tol)) {
        throw precondition_error("weak_newton_residual requires a member of the closed cone");
    }
    const auto& sg = table.sigma;
    return T(sg[j] * sg[j] - sg[j - 1] * sg[j + 1]);
}

Rational newton_constant(int n, int j) {
    if (j < 1 || j > n - 1) throw precondition_error("newton_constant needs 1 <= j <= n-1");
    Rational out(static_cast<long>((n - j + 1) * (j + 1)), static_cast<long>((n - j) * j));
    out.canonicalize();
    return out;
}

template <Scalar T>
std::pair<T, T> summation_split(const Spectrum<T>& s, int p, int j) {
    if (p < 0 || p > s.dim()) throw precondition_error("split point out of range");
    if (j < 0 || j > s.dim()) throw precondition_error("degree out of range");
    const auto values = s.values();
    const auto head = elementary_symmetric<T>(values.subspan(0, static_cast<std::size_t>(p)));
    const auto tail = elementary_symmetric<T>(values.subspan(static_cast<std::size_t>(p)));
    T rhs(0);
    for (int i = 0; i <= j; ++i) {
        const int r = j - i;
        if (i < static_cast<int>(head.size()) && r < static_cast<int>(tail.size())) rhs += head[i] * tail[r];
    }
    return {sigma_all(s).sigma[j], rhs};
}

#define MSH_INSTANTIATE(T)                                                                            \
    template std::vector<T> elementary_symmetric<T>(std::span<const T>);                              \
    template SigmaTable<T> sigma_all<T>(const Spectrum<T>&);                                          \
    template T sigma_deflated<T>(const Spectrum<T>&, std::span<const std::size_t>, int);              \
    template bool in_gamma_cone<T>(const SigmaTable<T>&, int, bool, double, double);                  \
    template std::optional<MaclaurinGap> maclaurin_violation<T>(const Spectrum<T>&, int, double);     \
    template T newton_residual<T>(const Spectrum<T>&, int);                                           \
    template T weak_newton_residual<T>(const Spectrum<T>&, int, int, double);                         \
    template std::pair<T, T> summation_split<T>(const Spectrum<T>&, int, int);

MSH_INSTANTIATE(double)
MSH_INSTANTIATE(Rational)

#undef MSH_INSTANTIATE

}  // namespace msh
