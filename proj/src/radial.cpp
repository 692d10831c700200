#include "msh/radial.hpp"

#include "msh/quadrature.hpp"
#include "msh/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace msh {

RadialProfile RadialProfile::identity() {
    return RadialProfile{"t", [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; },
                         PowerLawDerivative{1.0, 0.0}};
}

RadialProfile RadialProfile::polynomial(std::vector<double> coeffs, std::string name) {
    auto eval = [](const std::vector<double>& c, double t) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    std::vector<double> d1, d2;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d1.push_back(static_cast<double>(i) * coeffs[i]);
    for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(static_cast<double>(i) * d1[i]);

    RadialProfile p;
    p.name = std::move(name);
    p.chi = [c = coeffs, eval](double t) { return eval(c, t); };
    p.dchi = [c = d1, eval](double t) { return eval(c, t); };
    p.d2chi = [c = d2, eval](double t) { return eval(c, t); };
    // single nonzero derivative monomial c t^e
    int nonzero = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        if (d1[i] != 0.0) {
            ++nonzero;
            last = i;
        }
    }
    if (nonzero == 1) p.power_law = PowerLawDerivative{d1[last], static_cast<double>(last)};
    return p;
}

RadialProfile ChiAFamily::profile() const {
    if (!(A >= 0)) throw precondition_error("chi_A needs A >= 0");
    const double a = A;
    std::ostringstream name;
    name << "chi_A(A=" << a << ")";
    RadialProfile p;
    p.name = name.str();
    p.chi = [a](double t) { return 0.5 * ((t + a) * (t + a) / (1.0 + a) - (1.0 + a)); };
    p.dchi = [a](double t) { return (t + a) / (1.0 + a); };
    p.d2chi = [a](double) { return 1.0 / (1.0 + a); };
    if (a == 0.0) p.power_law = PowerLawDerivative{1.0, 1.0};
    return p;
}

bool derivatives_consistent(const RadialProfile& p, double tol) {
    const double h = 1e-4;
    for (int i = 1; i < 32; ++i) {
        const double t = h + (1.0 - 2.0 * h) * i / 32.0;
        const double fd1 = (p.chi(t + h) - p.chi(t - h)) / (2.0 * h);
        const double fd2 = (p.dchi(t + h) - p.dchi(t - h)) / (2.0 * h);
        const double d1 = p.dchi(t);
        const double d2 = p.d2chi(t);
        if (std::abs(fd1 - d1) > tol * std::max(1.0, std::abs(d1))) return false;
        if (std::abs(fd2 - d2) > tol * std::max(1.0, std::abs(d2))) return false;
    }
    return true;
}

Spectrum<double> radial_spectrum(const RadialProfile& p, double t, int n) {
    if (n < 1) throw precondition_error("dimension must be positive");
    if (!(t >= 0.0 && t <= 1.0)) throw precondition_error("radial parameter t must lie in [0, 1]");
    const double d1 = p.dchi(t);
    std::vector<double> v(static_cast<std::size_t>(n - 1), d1);
    v.push_back(d1 + t * p.d2chi(t));
    return Spectrum<double>(std::move(v));
}

namespace {

struct RadialFactors {
    double tangential;  // m chi'
    double normal;      // m chi' + t chi''
};

RadialFactors radial_factors(const RadialProfile& p, double t, int n, int m) {
    if (n < 1 || m < 1 || m > n) throw precondition_error("need 1 <= m <= n");
    const double d1 = p.dchi(t);
    const double d2 = p.d2chi(t);
    RadialFactors f{m * d1, m * d1 + t * d2};
    const double slack = 1e-12 * std::max({1.0, std::abs(m * d1), std::abs(t * d2)});
    const bool tangential_used = n - 1 >= m;
    if ((tangential_used && f.tangential < -slack) || f.normal < -slack) {
        std::ostringstream msg;
        msg << "profile " << p.name << " is not " << m << "-psh at t = " << t;
        throw precondition_error(msg.str());
    }
    f.tangential = std::max(0.0, f.tangential);
    f.normal = std::max(0.0, f.normal);
    return f;
}

}  // namespace

double mm_radial(const RadialProfile& p, double t, int n, int m) {
    const RadialFactors f = radial_factors(p, t, n, m);
    return std::pow(f.tangential, static_cast<double>(binomial(n - 1, m))) *
           std::pow(f.normal, static_cast<double>(binomial(n - 1, m - 1)));
}

double mm_radial_alpha(const RadialProfile& p, double t, int n, int m, double alpha) {
    const RadialFactors f = radial_factors(p, t, n, m);
    return std::pow(f.tangential, alpha * static_cast<double>(binomial(n - 1, m))) *
           std::pow(f.normal, alpha * static_cast<double>(binomial(n - 1, m - 1)));
}

double sphere_area(int n) {
    if (n < 1) throw precondition_error("sphere_area needs n >= 1");
    return 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n));
}

double ball_volume(int n) {
    if (n < 1) throw precondition_error("ball_volume needs n >= 1");
    return std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n) + 1.0);
}

BallIntegral ball_integral(const RadialProfile& p, int n, int m, const Rational& alpha, IntegrationMethod method) {
    if (n < 1 || m < 1 || m > n) throw precondition_error("need 1 <= m <= n");
    if (sgn(alpha) < 0) throw precondition_error("exponent must be nonnegative");
    const double a = alpha.get_d();
    const double area = sphere_area(n);
    BallIntegral out;
    out.n = n;
    out.method = method;
    if (method == IntegrationMethod::closed_form) {
        if (!p.power_law) throw precondition_error("closed form needs chi' to be a power of t");
        const auto [c, e] = *p.power_law;
        const double c1 = static_cast<double>(binomial(n - 1, m));
        const double c2 = static_cast<double>(binomial(n - 1, m - 1));
        const double cn = static_cast<double>(binomial(n, m));
        if (m * c < 0 || (m + e) * c < 0) {
            throw precondition_error("profile " + p.name + " is not m-psh");
        }
        const double k_alpha = std::pow(m * c, a * c1) * std::pow((m + e) * c, a * c2);
        out.value = area * k_alpha / (2.0 * n + 2.0 * e * cn * a);
        out.estimated_error = 0.0;
        return out;
    }
    auto integrand = [&](double r) {
        return mm_radial_alpha(p, r * r, n, m, a) * std::pow(r, 2 * n - 1);
    };
    const QuadratureResult q = integrate(integrand, 0.0, 1.0, 1e-10, 1e-13, 1 << 14);
    if (!q.converged) {
        throw convergence_error("ball integral quadrature did not reach tolerance", q.error_estimate);
    }
    out.value = area * q.value;
    out.estimated_error = area * q.error_estimate;
    return out;
}

OutcomeInequality outcome_inequality(int n, int m, const Rational& alpha) {
    if (n < 1 || m < 1 || m > n) throw precondition_error("need 1 <= m <= n");
    if (sgn(alpha) <= 0) throw precondition_error("exponent must be positive");
    const long c1 = static_cast<long>(binomial(n - 1, m));
    const long c2 = static_cast<long>(binomial(n - 1, m - 1));
    const long cn = static_cast<long>(binomial(n, m));
    const double a = alpha.get_d();
    const double log_area = std::log(sphere_area(n));

    OutcomeInequality out;
    out.log_lhs = log_area + c1 * a * std::log(m) + c2 * a * std::log(m + 1.0) - std::log(2.0 * n + 2.0 * cn * a);
    out.log_rhs = log_area + cn * a * std::log(m) - std::log(2.0 * n);
    out.lhs = std::exp(out.log_lhs);
    out.rhs = std::exp(out.log_rhs);

    // beta = C(n-1,m-1) alpha = num/den; compare ((m+1)/m)^num with (1 + num/(den m))^den
    Rational beta = alpha * Rational(c2);
    beta.canonicalize();
    out.reduced_lhs = std::pow(1.0 + 1.0 / m, beta.get_d());
    out.reduced_rhs = 1.0 + beta.get_d() / m;
    if (!beta.get_num().fits_ulong_p() || !beta.get_den().fits_ulong_p()) {
        throw precondition_error("exponent too large for exact comparison");
    }
    const unsigned long num = beta.get_num().get_ui();
    const unsigned long den = beta.get_den().get_ui();
    Rational base_lhs(m + 1, m);
    Rational base_rhs = Rational(1) + beta / Rational(m);
    base_lhs.canonicalize();
    base_rhs.canonicalize();
    const Rational lhs_pow = pow(base_lhs, num);
    const Rational rhs_pow = pow(base_rhs, den);
    out.holds = lhs_pow <= rhs_pow;
    out.equality = lhs_pow == rhs_pow;
    return out;
}

namespace {

// Per-chunk running sums, merged in chunk order.
struct ExpansionSums {
    double x = 0, x2 = 0, x4 = 0;
    // per alpha: per eps (d, d^2), then (curv, curv^2)
    std::vector<double> per_alpha;
};

}  // namespace

std::vector<ExpansionReport> epsilon_expansion_experiment(const ExpansionConfig& cfg) {
    const int n = cfg.n;
    const int m = cfg.m;
    if (n < 1 || m < 1 || m > n) throw precondition_error("need 1 <= m <= n");
    if (cfg.alphas.empty() || cfg.eps.empty()) throw precondition_error("need at least one alpha and one eps");
    if (cfg.samples < 1000) {
        throw precondition_error("sample budget below 1000 cannot give a meaningful standard error");
    }
    std::vector<double> a = cfg.a;
    if (a.empty()) a.assign(static_cast<std::size_t>(m), 8.0);
    if (static_cast<int>(a.size()) != m) throw precondition_error("need exactly m coefficients a_j");
    double a_sum = 0.0;
    for (double v : a) {
        if (!(v > 0)) throw precondition_error("coefficients a_j must be positive");
        a_sum += v;
    }
    const double eps_max = *std::max_element(cfg.eps.begin(), cfg.eps.end());
    const double eps_min = *std::min_element(cfg.eps.begin(), cfg.eps.end());
    if (!(eps_min > 0)) throw precondition_error("eps values must be positive");
    // |sum_{k<=m} chi_{k kbar}| <= 2m on the ball
    if (!(a_sum - eps_max * 2.0 * m > 0)) {
        throw precondition_error("coefficients too small: base must stay positive on the ball");
    }

    const std::size_t n_alpha = cfg.alphas.size();
    const std::size_t n_eps = cfg.eps.size();
    const std::size_t stride = 2 * n_eps + 2;
    std::vector<double> alpha_d;
    for (const auto& al : cfg.alphas) {
        if (sgn(al) <= 0) throw precondition_error("alpha must be positive");
        alpha_d.push_back(al.get_d());
    }

    const int chunks = std::max(1, cfg.chunks);
    std::vector<ExpansionSums> sums(static_cast<std::size_t>(chunks));
    std::atomic<int> next{0};
    auto worker = [&] {
        std::vector<double> x(static_cast<std::size_t>(2 * n));
        while (true) {
            const int c = next.fetch_add(1);
            if (c >= chunks) break;
            const std::uint64_t count = cfg.samples / static_cast<std::uint64_t>(chunks) +
                                        (static_cast<std::uint64_t>(c) < cfg.samples % static_cast<std::uint64_t>(chunks) ? 1 : 0);
            CounterRng rng(cfg.seed, static_cast<std::uint64_t>(c));
            ExpansionSums s;
            s.per_alpha.assign(n_alpha * stride, 0.0);
            std::vector<double> base_pow(n_alpha);
            for (std::size_t ia = 0; ia < n_alpha; ++ia) base_pow[ia] = std::pow(a_sum, alpha_d[ia]);
            for (std::uint64_t i = 0; i < count; ++i) {
                double norm2;
                do {
                    norm2 = 0.0;
                    for (double& xi : x) {
                        xi = rng.uniform(-1.0, 1.0);
                        norm2 += xi * xi;
                    }
                } while (norm2 > 1.0);
                double head = 0.0;
                for (int k = 0; k < m; ++k) head += x[2 * k] * x[2 * k] + x[2 * k + 1] * x[2 * k + 1];
                const double xv = 2.0 * m * (1.0 - norm2) - 2.0 * head;
                s.x += xv;
                s.x2 += xv * xv;
                s.x4 += xv * xv * xv * xv;
                for (std::size_t ia = 0; ia < n_alpha; ++ia) {
                    double* acc = &s.per_alpha[ia * stride];
                    for (std::size_t ie = 0; ie < n_eps; ++ie) {
                        const double d = std::pow(a_sum + cfg.eps[ie] * xv, alpha_d[ia]) - base_pow[ia];
                        acc[2 * ie] += d;
                        acc[2 * ie + 1] += d * d;
                    }
                    const double curv = (std::pow(a_sum + eps_min * xv, alpha_d[ia]) +
                                         std::pow(a_sum - eps_min * xv, alpha_d[ia]) - 2.0 * base_pow[ia]) /
                                        (2.0 * eps_min * eps_min);
                    acc[2 * n_eps] += curv;
                    acc[2 * n_eps + 1] += curv * curv;
                }
            }
            sums[static_cast<std::size_t>(c)] = std::move(s);
        }
    };
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, chunks);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ExpansionSums total;
    total.per_alpha.assign(n_alpha * stride, 0.0);
    for (const auto& s : sums) {
        total.x += s.x;
        total.x2 += s.x2;
        total.x4 += s.x4;
        for (std::size_t i = 0; i < total.per_alpha.size(); ++i) total.per_alpha[i] += s.per_alpha[i];
    }

    const double N = static_cast<double>(cfg.samples);
    const double volume = ball_volume(n);
    auto mean_se = [&](double sum, double sum2) {
        const double mean = sum / N;
        const double var = std::max(0.0, sum2 / N - mean * mean) * N / (N - 1.0);
        return std::pair{mean, std::sqrt(var / N)};
    };
    const auto [x_mean, x_se] = mean_se(total.x, total.x2);
    const auto [x2_mean, x2_se] = mean_se(total.x2, total.x4);

    std::vector<ExpansionReport> reports;
    for (std::size_t ia = 0; ia < n_alpha; ++ia) {
        const double al = alpha_d[ia];
        ExpansionReport r;
        r.alpha = cfg.alphas[ia];
        r.a_sum = a_sum;
        r.volume = volume;
        r.samples = cfg.samples;
        r.term2 = volume * x_mean;
        r.term2_se = volume * x_se;
        const double kappa = al * (al - 1.0) / 2.0 * std::pow(a_sum, al - 2.0);
        r.eps2_coefficient = volume * kappa * x2_mean;
        r.eps2_coefficient_se = volume * std::abs(kappa) * x2_se;
        const double* acc = &total.per_alpha[ia * stride];
        const auto [c_mean, c_se] = mean_se(acc[2 * n_eps], acc[2 * n_eps + 1]);
        r.curvature = volume * c_mean;
        r.curvature_se = volume * c_se;
        const double lhs = volume * std::pow(a_sum, al);
        for (std::size_t ie = 0; ie < n_eps; ++ie) {
            const auto [d_mean, d_se] = mean_se(acc[2 * ie], acc[2 * ie + 1]);
            ExpansionRow row;
            row.eps = cfg.eps[ie];
            row.lhs = lhs;
            row.diff = volume * d_mean;
            row.diff_se = volume * d_se;
            row.rhs = lhs + row.diff;
            row.fails = row.diff + 3.0 * row.diff_se < 0.0;
            r.rows.push_back(row);
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

ComparisonReport radial_comparison_property(int n, int m, int trials, std::uint64_t seed, double tol) {
    if (n < 1 || m < 1 || m > n) throw precondition_error("need 1 <= m <= n");
    if (trials < 0) throw precondition_error("trial count must be nonnegative");
    ComparisonReport report;
    report.n = n;
    report.m = m;
    report.alpha = Rational(1, static_cast<unsigned long>(binomial(n - 1, m - 1)));
    report.alpha.canonicalize();
    report.trials = trials;
    report.worst_slack = std::numeric_limits<double>::infinity();

    CounterRng rng(seed, 0x7261646961ULL);
    auto log_uniform = [&](double lo, double hi) { return std::exp(rng.uniform(std::log(lo), std::log(hi))); };

    for (int trial = 0; trial < trials; ++trial) {
        const int degree = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<double> cu(static_cast<std::size_t>(degree + 1), 0.0);
        for (int i = 1; i <= degree; ++i) cu[static_cast<std::size_t>(i)] = log_uniform(1e-2, 1e1);
        // nonpositive perturbation vanishing at t = 1: sum d_i (t^i - 1), d_i >= 0
        std::vector<double> cv = cu;
        const int pert_degree = static_cast<int>(rng.uniform_int(1, 4));
        if (cv.size() < static_cast<std::size_t>(pert_degree + 1)) cv.resize(static_cast<std::size_t>(pert_degree + 1), 0.0);
        // at least one term, so u and v differ
        const auto forced = rng.uniform_int(1, pert_degree);
        for (int i = 1; i <= pert_degree; ++i) {
            if (i == forced || rng.uniform() < 0.5) cv[static_cast<std::size_t>(i)] += log_uniform(1e-3, 1e1);
        }
        cu.resize(cv.size(), 0.0);
        double su = 0.0, sv = 0.0;
        for (std::size_t i = 1; i < cu.size(); ++i) {
            su += cu[i];
            sv += cv[i];
        }
        cu[0] = -su;
        cv[0] = -sv;

        ComparisonTrial t;
        t.u_coeffs = cu;
        t.v_coeffs = cv;
        try {
            t.integral_u = ball_integral(RadialProfile::polynomial(cu), n, m, report.alpha,
                                         IntegrationMethod::quadrature).value;
            t.integral_v = ball_integral(RadialProfile::polynomial(cv), n, m, report.alpha,
                                         IntegrationMethod::quadrature).value;
        } catch (const precondition_error& e) {
            throw internal_error(std::string("profile generator produced a non-m-psh profile: ") + e.what());
        }
        const double slack = t.integral_v - t.integral_u;
        report.worst_slack = std::min(report.worst_slack, slack);
        t.passed = slack >= -tol;
        if (t.passed) {
            ++report.passed;
        } else {
            report.failures.push_back(std::move(t));
        }
    }
    if (trials == 0) report.worst_slack = 0.0;
    return report;
}

}  // namespace msh
