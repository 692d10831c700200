#include "msh/mm_operator.hpp"

#include "msh/symfunc.hpp"

#include <cmath>
#include <limits>

namespace msh {

template <Scalar T>
std::vector<T> subset_sums(const Spectrum<T>& s, int m) {
    const int n = s.dim();
    if (m < 1 || m > n) throw precondition_error("operator order out of range");
    std::vector<T> sums;
    sums.reserve(binomial(n, m));
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        T sum(0);
        for (int i : idx) sum += s[static_cast<std::size_t>(i)];
        sums.push_back(std::move(sum));
        int pos = m - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - m + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < m; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return sums;
}

template <Scalar T>
MmValue<T> mm_eval(const Spectrum<T>& s, int m) {
    const auto factors = subset_sums(s, m);
    MmValue<T> out;
    out.m = m;
    out.n = s.dim();
    out.subset_count = factors.size();
    T product(1);
    for (const T& f : factors) product *= f;
    out.value = product;
    if constexpr (!is_exact_v<T>) {
        bool all_positive = true;
        double log_sum = 0.0;
        for (double f : factors) {
            if (!(f > 0)) {
                all_positive = false;
                break;
            }
            log_sum += std::log(f);
        }
        if (all_positive) out.log_value = log_sum;
        out.overflow = !std::isfinite(product);
    }
    return out;
}

template <Scalar T>
MmPower mm_alpha(const Spectrum<T>& s, int m, const Rational& alpha, double tol) {
    if (sgn(alpha) < 0) throw precondition_error("exponent must be nonnegative");
    auto factors = subset_sums(s, m);
    const double slack = m * s.scale();
    bool any_zero = false;
    for (T& f : factors) {
        if (!nonneg(f, slack, tol)) {
            throw precondition_error("negative base: spectrum is not m-psh");
        }
        if (sign(f) <= 0) {
            f = T(0);
            any_zero = true;
        }
    }
    MmPower out;
    if (sgn(alpha) == 0) {
        out.value = 1.0;
        if constexpr (is_exact_v<T>) out.exact = Rational(1);
        return out;
    }
    if (any_zero) {
        out.value = 0.0;
        if constexpr (is_exact_v<T>) out.exact = Rational(0);
        return out;
    }

    const double a = alpha.get_d();
    double log_sum = 0.0;
    double product = 1.0;
    for (const T& f : factors) {
        const double fd = to_double(f);
        log_sum += std::log(fd);
        product *= fd;
    }

    if constexpr (is_exact_v<T>) {
        Rational exact_product(1);
        for (const Rational& f : factors) exact_product *= f;
        const unsigned long num = alpha.get_num().get_ui();
        const unsigned long den = alpha.get_den().get_ui();
        Rational root;
        if (alpha.get_num().fits_ulong_p() && alpha.get_den().fits_ulong_p() &&
            exact_root(exact_product, den, root)) {
            out.exact = pow(root, num);
            out.value = out.exact->get_d();
            return out;
        }
        product = exact_product.get_d();
    }

    if (std::isfinite(product) && product > 0) {
        out.value = std::pow(product, a);
    } else {
        out.value = std::exp(a * log_sum);
    }
    return out;
}

namespace {

template <Scalar T>
bool same(const T& a, const T& b, double tol) {
    if constexpr (is_exact_v<T>) {
        return a == b;
    } else {
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
    }
}

}  // namespace

template <Scalar T>
IdentityReport<T> special_identity_check(const Spectrum<T>& s, double tol) {
    const int n = s.dim();
    const auto sig = sigma_all(s).sigma;
    IdentityReport<T> r;
    r.m1 = mm_eval(s, 1).value;
    r.sigma_n = sig[static_cast<std::size_t>(n)];
    r.m1_ok = same(r.m1, r.sigma_n, tol);
    r.mn = mm_eval(s, n).value;
    r.sigma_1 = sig[1];
    r.mn_ok = same(r.mn, r.sigma_1, tol);
    if (n == 3) {
        r.m2 = mm_eval(s, 2).value;
        r.s1s2_minus_s3 = T(sig[1] * sig[2] - sig[3]);
        r.m2_ok = same(*r.m2, *r.s1s2_minus_s3, tol);
    }
    return r;
}

#define MSH_INSTANTIATE(T)                                                          \
    template std::vector<T> subset_sums<T>(const Spectrum<T>&, int);                \
    template MmValue<T> mm_eval<T>(const Spectrum<T>&, int);                        \
    template MmPower mm_alpha<T>(const Spectrum<T>&, int, const Rational&, double); \
    template IdentityReport<T> special_identity_check<T>(const Spectrum<T>&, double);

MSH_INSTANTIATE(double)
MSH_INSTANTIATE(Rational)

#undef MSH_INSTANTIATE

}  // namespace msh
