#include "msh/witness.hpp"

#include "msh/rng.hpp"
#include "msh/symfunc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace msh {

template <Scalar T>
T two_block_sigma(int p, const T& b, int n, int j) {
    if (p < 0 || p >= n) throw precondition_error("two-block needs 0 <= p < n");
    if (j < 0 || j > n) throw precondition_error("degree out of range");
    T sum(0);
    for (int i = 0; i <= std::min(p, j); ++i) {
        if (j - i > n - p) continue;
        T term(1);
        for (int e = 0; e < j - i; ++e) term *= b;
        if constexpr (is_exact_v<T>) {
            term *= Rational(binomial_exact(p, i) * binomial_exact(n - p, j - i));
        } else {
            term *= static_cast<double>(binomial(p, i)) * static_cast<double>(binomial(n - p, j - i));
        }
        if (i % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

template double two_block_sigma<double>(int, const double&, int, int);
template Rational two_block_sigma<Rational>(int, const Rational&, int, int);

Spectrum<Rational> two_block_spectrum(int p, const Rational& b, int n) {
    if (p < 0 || p > n) throw precondition_error("two-block needs 0 <= p <= n");
    return Spectrum<Rational>::blocks({{p, Rational(-1)}, {n - p, b}});
}

std::vector<AnsatzCandidate> ansatz_scan(int n, int k, const AnsatzGrid& grid) {
    if (k < 1 || k > n) throw precondition_error("plane dimension out of range");
    if (grid.denominator < 1 || grid.b_max < 1) throw precondition_error("grid must be nonempty");
    std::vector<AnsatzCandidate> out;
    const int top = n - k + 1;
    for (int p = 1; p <= std::min(k - 1, n - 1); ++p) {
        for (long i = 1; i <= grid.b_max * grid.denominator; ++i) {
            Rational b(i, grid.denominator);
            b.canonicalize();
            // smallest k-subset: all p negatives plus k-p copies of b
            if (Rational(-p) + Rational(k - p) * b < 0) continue;
            if (two_block_sigma<Rational>(p, b, n, top) < 0) continue;
            for (int j = 1; j <= n - k; ++j) {
                if (two_block_sigma<Rational>(p, b, n, j) < 0) {
                    out.push_back(AnsatzCandidate{p, b, j});
                    break;
                }
            }
        }
    }
    return out;
}

std::optional<WitnessCertificate> WitnessCertificate::certify(Spectrum<Rational> spectrum, int k) {
    const int n = spectrum.dim();
    if (k < 1 || k > n) return std::nullopt;
    const int top = n - k + 1;
    const auto sigma = sigma_all(spectrum).sigma;
    const Rational kmin = ksubset_min_sum(spectrum, k);

    int violated = 0;
    for (int j = 1; j <= n - k; ++j) {
        if (sigma[static_cast<std::size_t>(j)] < 0) {
            violated = j;
            break;
        }
    }
    WitnessCertificate cert(std::move(spectrum), k);
    cert.checks_.push_back({"min " + std::to_string(k) + "-subset sum >= 0", kmin, sgn(kmin) >= 0});
    cert.checks_.push_back({"sigma_" + std::to_string(top) + " >= 0", sigma[static_cast<std::size_t>(top)],
                            sgn(sigma[static_cast<std::size_t>(top)]) >= 0});
    if (violated == 0) return std::nullopt;
    cert.violated_degree_ = violated;
    cert.checks_.push_back({"sigma_" + std::to_string(violated) + " < 0", sigma[static_cast<std::size_t>(violated)],
                            true});
    for (const auto& c : cert.checks_) {
        if (!c.verdict) return std::nullopt;
    }
    const Classification cls = classify(cert.spectrum_, k);
    if (!cls.is_A || cls.is_B) {
        throw internal_error("certificate checks disagree with classify");
    }
    return cert;
}

bool operator<(const WitnessCertificate& a, const WitnessCertificate& b) {
    const auto va = a.spectrum_.values();
    const auto vb = b.spectrum_.values();
    if (std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end())) return true;
    if (std::lexicographical_compare(vb.begin(), vb.end(), va.begin(), va.end())) return false;
    return a.k_ < b.k_;
}

void SearchConfig::validate() const {
    if (n < 1 || k < 1 || k > n) throw precondition_error("search needs 1 <= k <= n");
    if (budget == 0) throw precondition_error("search budget must be positive");
    if (evals_per_restart == 0) throw precondition_error("per-restart budget must be positive");
    if (!(refine.initial_step > 0) || !(refine.shrink > 0 && refine.shrink < 1) || !(refine.min_step > 0)) {
        throw precondition_error("invalid refinement schedule");
    }
    if (max_denominator < 1) throw precondition_error("denominator cap must be positive");
}

double violation_objective(std::span<const double> x, int k) {
    const int n = static_cast<int>(x.size());
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (!(scale > 0) || !std::isfinite(scale)) return -std::numeric_limits<double>::infinity();
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v /= scale;
    std::sort(y.begin(), y.end());
    double kmin = 0.0;
    for (int i = 0; i < k; ++i) kmin += y[static_cast<std::size_t>(i)];
    const auto sigma = elementary_symmetric<double>(y);
    const int top = n - k + 1;
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n - k; ++j) {
        worst = std::min(worst, sigma[static_cast<std::size_t>(j)] / static_cast<double>(binomial(n, j)));
    }
    if (n - k < 1) return -std::numeric_limits<double>::infinity();
    const double g1 = kmin / k;
    const double g2 = sigma[static_cast<std::size_t>(top)] / static_cast<double>(binomial(n, top));
    return std::min({g1, g2, -worst});
}

namespace {

struct RestartOutcome {
    std::optional<WitnessCertificate> certificate;
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t evals = 0;
};

constexpr double kRepairMargin = 1e-6;
constexpr double kInfeasible = -1e9;

// Normalizes x to max |x_i| = 1 and, when the k smallest entries sum below
// the margin, shifts every nonnegative entry up by a common amount so that
// they sum exactly to the margin. Returns false when k or more entries are
// negative (no shift of the rest can repair the k-subset sum).
bool repair(std::span<const double> x, int k, std::vector<double>& y) {
    y.assign(x.begin(), x.end());
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    if (!(scale > 0) || !std::isfinite(scale)) return false;
    for (double& v : y) v /= scale;
    std::sort(y.begin(), y.end());
    const int negatives = static_cast<int>(std::count_if(y.begin(), y.end(), [](double v) { return v < 0; }));
    if (negatives >= k) return false;
    double kmin = 0.0;
    for (int i = 0; i < k; ++i) kmin += y[static_cast<std::size_t>(i)];
    if (kmin < kRepairMargin) {
        const double shift = (kRepairMargin - kmin) / (k - negatives);
        for (double& v : y) {
            if (v >= 0) v += shift;
        }
    }
    return true;
}

// sigma_j(y) / sigma_j(|y|), the cancellation ratio in [-1, 1]; `fallback`
// when fewer than j entries are nonzero.
double cancellation(const std::vector<double>& sigma, const std::vector<double>& sigma_abs, int j, double fallback) {
    const auto i = static_cast<std::size_t>(j);
    return sigma_abs[i] > 0 ? sigma[i] / sigma_abs[i] : fallback;
}

// min(r_{n-k+1}, -min_{j<=n-k} r_j) at the repaired point, with r_j the
// cancellation ratio. Unlike sigma_j / M^j this does not reward collapsing
// all but one entry to zero.
double search_objective(std::span<const double> x, int k, std::vector<double>& y) {
    if (!repair(x, k, y)) return kInfeasible;
    const int n = static_cast<int>(y.size());
    std::vector<double> mags(y.size());
    std::transform(y.begin(), y.end(), mags.begin(), [](double v) { return std::abs(v); });
    const auto sigma = elementary_symmetric<double>(y);
    const auto sigma_abs = elementary_symmetric<double>(mags);
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n - k; ++j) worst = std::min(worst, cancellation(sigma, sigma_abs, j, 1.0));
    return std::min(cancellation(sigma, sigma_abs, n - k + 1, 0.0), -worst);
}

std::optional<WitnessCertificate> try_certify(const std::vector<double>& y, int k, std::int64_t max_den) {
    // small denominators first, for readable certificates
    for (std::int64_t den = std::min<std::int64_t>(10, max_den);; den = std::min(den * 10, max_den)) {
        std::vector<Rational> q;
        q.reserve(y.size());
        for (double v : y) q.push_back(rationalize(v, den));
        if (auto cert = WitnessCertificate::certify(Spectrum<Rational>(std::move(q)), k)) return cert;
        if (den >= max_den) return std::nullopt;
    }
}

RestartOutcome run_restart(const SearchConfig& cfg, std::uint64_t restart, std::uint64_t cap) {
    RestartOutcome out;
    CounterRng rng(cfg.seed, restart);
    const int n = cfg.n;
    const int k = cfg.k;
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y, y_best, y_cand;
    // a random number of negative entries, at most k-1 (k negatives break k-psh)
    const int negatives = static_cast<int>(rng.uniform_int(1, std::max(1, std::min(k - 1, n - 1))));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = i < negatives ? rng.uniform(-1.0, 0.0) : rng.uniform(0.0, 4.0);
    }
    double f = search_objective(x, k, y_best);
    out.evals = 1;
    out.best = f;
    double step = cfg.refine.initial_step;
    auto attempt = [&](const std::vector<double>& cand) {
        if (out.evals >= cap) return false;
        const double fc = search_objective(cand, k, y_cand);
        ++out.evals;
        if (fc > f) {
            x = cand;
            f = fc;
            std::swap(y_best, y_cand);
            out.best = std::max(out.best, f);
            return true;
        }
        return false;
    };
    while (out.evals < cap && step >= cfg.refine.min_step) {
        if (f > 0) {
            out.certificate = try_certify(y_best, k, cfg.max_denominator);
            if (out.certificate) return out;
        }
        double scale = 0.0;
        for (double v : x) scale = std::max(scale, std::abs(v));
        bool improved = false;
        for (int i = 0; i < n && out.evals < cap; ++i) {
            for (double dir : {1.0, -1.0}) {
                auto cand = x;
                cand[static_cast<std::size_t>(i)] += dir * step * scale;
                if (attempt(cand)) {
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            // a few random joint moves before shrinking, to leave kinks of the min
            for (int r = 0; r < 2 * n && !improved && out.evals < cap; ++r) {
                auto cand = x;
                for (double& v : cand) v += rng.uniform(-1.0, 1.0) * step * scale;
                improved = attempt(cand);
            }
        }
        if (!improved) step *= cfg.refine.shrink;
    }
    if (f > 0) out.certificate = try_certify(y_best, k, cfg.max_denominator);
    return out;
}

}  // namespace

SearchResult general_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchResult result;
    result.best_objective = -std::numeric_limits<double>::infinity();
    if (cfg.n - cfg.k < 1) return result;  // no degree left to violate

    constexpr std::uint64_t kBatch = 8;
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(kBatch));

    std::uint64_t restart = 0;
    while (result.evaluations < cfg.budget) {
        // caps depend only on evaluations already spent, so batches are reproducible
        std::uint64_t planned = result.evaluations;
        std::vector<std::uint64_t> caps;
        for (std::uint64_t i = 0; i < kBatch && planned < cfg.budget; ++i) {
            const std::uint64_t cap = std::min(cfg.evals_per_restart, cfg.budget - planned);
            caps.push_back(cap);
            planned += cap;
        }
        std::vector<RestartOutcome> outcomes(caps.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= caps.size()) break;
                outcomes[i] = run_restart(cfg, restart + i, caps[i]);
            }
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        }
        for (auto& o : outcomes) {
            result.trace.push_back(o.best);
            result.best_objective = std::max(result.best_objective, o.best);
            result.evaluations += o.evals;
            ++result.restarts;
            if (o.certificate && (!result.certificate || *o.certificate < *result.certificate)) {
                result.certificate = std::move(o.certificate);
            }
        }
        restart += caps.size();
        if (result.certificate) break;
    }
    return result;
}

std::vector<FrontierRow> frontier_report(int k, int n_lo, int n_hi, const SearchConfig& base) {
    std::vector<FrontierRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        FrontierRow row;
        row.n = n;
        const auto candidates = ansatz_scan(n, k, base.ansatz_grid);
        if (!candidates.empty()) {
            const auto& c = candidates.front();
            row.certificate = WitnessCertificate::certify(two_block_spectrum(c.p, c.b, n), k);
            if (!row.certificate) throw internal_error("ansatz candidate failed exact certification");
            row.witness_found = true;
            row.source = "ansatz";
            const auto x = to_float(row.certificate->spectrum());
            row.best_margin = violation_objective(x.values(), k);
        } else {
            SearchConfig cfg = base;
            cfg.n = n;
            cfg.k = k;
            const SearchResult r = general_search(cfg);
            row.source = "search";
            row.witness_found = r.certificate.has_value();
            row.certificate = r.certificate;
            row.best_margin = r.best_objective;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace msh
