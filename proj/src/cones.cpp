#include "msh/cones.hpp"

#include <cmath>

namespace msh {

template <Scalar T>
T ksubset_min_sum(const Spectrum<T>& s, int k) {
    if (k < 1 || k > s.dim()) throw precondition_error("subset size out of range");
    T sum(0);
    for (int i = 0; i < k; ++i) sum += s[static_cast<std::size_t>(i)];
    return sum;
}

template <Scalar T>
ConeVerdict<T> gamma_membership(const Spectrum<T>& s, int m, ConeKind kind, double tol) {
    if (m < 1 || m > s.dim()) throw precondition_error("cone order out of range");
    const auto table = sigma_all(s);
    ConeVerdict<T> verdict;
    verdict.margin = table.normalized[1];
    verdict.binding_degree = 1;
    for (int j = 2; j <= m; ++j) {
        if (table.normalized[j] < verdict.margin) {
            verdict.margin = table.normalized[j];
            verdict.binding_degree = j;
        }
    }
    verdict.binding = "sigma_" + std::to_string(verdict.binding_degree);
    verdict.member = in_gamma_cone(table, m, kind == ConeKind::closed, s.scale(), tol);
    return verdict;
}

template <Scalar T>
Classification classify(const Spectrum<T>& s, int k, double tol) {
    const int n = s.dim();
    if (k < 1 || k > n) throw precondition_error("plane dimension out of range");
    Classification c;
    c.k = k;
    c.n = n;
    if (sign(s.front()) >= 0) {
        // nonnegative spectra lie in every closed cone
        c.is_k_psh = c.is_A = c.is_B = true;
        return c;
    }
    const double scale = s.scale();
    const int top = n - k + 1;
    const auto table = sigma_all(s);
    c.is_k_psh = nonneg(ksubset_min_sum(s, k), k * scale, tol);
    c.is_A = c.is_k_psh &&
             nonneg(table.sigma[top], static_cast<double>(binomial(n, top)) * std::pow(scale, top), tol);
    c.is_B = in_gamma_cone(table, top, true, scale, tol);
    if (c.is_B && !c.is_A) {
        throw internal_error("classification broke the inclusion B => A");
    }
    return c;
}

template <Scalar T>
NegativeSplit<T> negative_split(const Spectrum<T>& s) {
    NegativeSplit<T> split;
    for (const T& v : s.values()) {
        if (sign(v) < 0) {
            split.alpha.push_back(v);
        } else {
            split.beta.push_back(v);
        }
    }
    split.p = static_cast<int>(split.alpha.size());
    return split;
}

Rational equivalence_ratio(int p, int k, int n) {
    if (p < 1 || p > k - 2 || k > n - 2) {
        throw precondition_error("ratio needs 1 <= p <= k-2 and k <= n-2");
    }
    Rational r(static_cast<long>((k - p) * (p + 1)), static_cast<long>((n - k) * (k - p - 1) * p));
    r.canonicalize();
    return r;
}

std::vector<SweepRow> equivalence_sweep(int n_max) {
    std::vector<SweepRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 3; k <= n - 2; ++k) {
            for (int p = 1; p <= k - 2; ++p) {
                SweepRow row{p, k, n, equivalence_ratio(p, k, n), false};
                row.passes = row.ratio >= 1;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

template <Scalar T>
bool sigma_chain_check(const Spectrum<T>& gamma, int k, double tol) {
    const int n = gamma.dim() + 1;
    if (k < 1 || k > n - 1) throw precondition_error("plane dimension out of range");
    const int order = n - k;
    const auto table = sigma_all(gamma);
    const double scale = gamma.scale();
    if (!in_gamma_cone(table, order, true, scale, tol)) {
        throw precondition_error("sigma_chain_check requires gamma in the closed cone Gamma_{n-k}");
    }
    for (int j = 1; j <= n - k - 1; ++j) {
        const T diff = table.sigma[j] - table.sigma[j - 1];
        const double slack = static_cast<double>(binomial(n - 1, j)) * std::pow(scale, j);
        if (!nonneg(diff, slack, tol)) return false;
    }
    return true;
}

#define MSH_INSTANTIATE(T)                                                               \
    template T ksubset_min_sum<T>(const Spectrum<T>&, int);                              \
    template ConeVerdict<T> gamma_membership<T>(const Spectrum<T>&, int, ConeKind, double); \
    template Classification classify<T>(const Spectrum<T>&, int, double);                \
    template NegativeSplit<T> negative_split<T>(const Spectrum<T>&);                     \
    template bool sigma_chain_check<T>(const Spectrum<T>&, int, double);

MSH_INSTANTIATE(double)
MSH_INSTANTIATE(Rational)

#undef MSH_INSTANTIATE

}  // namespace msh
