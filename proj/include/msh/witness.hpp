#pragma once

#include "msh/cones.hpp"
#include "msh/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msh {

/// sigma_j of the two-block spectrum (-1 repeated p times, b repeated n-p
/// times) by the binomial convolution
///   sum_i C(p,i) (-1)^i C(n-p, j-i) b^(j-i).
/// Requires 0 <= p < n and 0 <= j <= n.
template <Scalar T>
T two_block_sigma(int p, const T& b, int n, int j);

/// The spectrum (-1 x p, b x (n-p)).
Spectrum<Rational> two_block_spectrum(int p, const Rational& b, int n);

/// b ranges over {1/denominator, 2/denominator, ..., b_max}.
struct AnsatzGrid {
    long denominator = 8;
    long b_max = 16;
};

struct AnsatzCandidate {
    int p = 0;
    Rational b;
    /// Smallest j <= n-k with sigma_j < 0.
    int violated_degree = 0;
};

/// Exhaustive exact scan of two-block spectra that are A- but not
/// B-subharmonic for plane dimension k. The count p of -1 entries runs over
/// 1..k-1; any k-subset containing k negative entries has negative sum.
/// Ordered by p, then b.
std::vector<AnsatzCandidate> ansatz_scan(int n, int k, const AnsatzGrid& grid = {});

/// One exactly evaluated inequality of a certificate.
struct CertificateCheck {
    std::string inequality;
    Rational value;
    bool verdict = false;
};

/// Exact-rational spectrum shown to be A- but not B-subharmonic for plane
/// dimension k. Only `certify` constructs one, and only after every check
/// passes in exact arithmetic.
class WitnessCertificate {
public:
    static std::optional<WitnessCertificate> certify(Spectrum<Rational> spectrum, int k);

    const Spectrum<Rational>& spectrum() const noexcept { return spectrum_; }
    int n() const noexcept { return spectrum_.dim(); }
    int k() const noexcept { return k_; }
    const std::vector<CertificateCheck>& checks() const noexcept { return checks_; }
    int violated_degree() const noexcept { return violated_degree_; }

    /// Lexicographic order on the coordinates, then k.
    friend bool operator<(const WitnessCertificate& a, const WitnessCertificate& b);

private:
    WitnessCertificate(Spectrum<Rational> s, int k) : spectrum_(std::move(s)), k_(k) {}

    Spectrum<Rational> spectrum_;
    int k_;
    int violated_degree_ = 0;
    std::vector<CertificateCheck> checks_;
};

/// Coordinate-descent step schedule, relative to max |x_i|.
struct RefineSchedule {
    double initial_step = 0.25;
    double shrink = 0.5;
    double min_step = 1e-7;
};

struct SearchConfig {
    int n = 0;
    int k = 0;
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    AnsatzGrid ansatz_grid;
    RefineSchedule refine;
    std::uint64_t evals_per_restart = 20'000;
    std::int64_t max_denominator = 1'000'000;
    /// 0 picks std::thread::hardware_concurrency().
    int threads = 0;

    void validate() const;
};

/// Scale-free violation margin of a float spectrum:
///   min( kmin/(k M), sigma_{n-k+1}/(C(n,n-k+1) M^{n-k+1}), -min_{j<=n-k} sigma_j/(C(n,j) M^j) )
/// with M = max |x_i|. Positive exactly on the interior of the set of
/// A-but-not-B spectra.
double violation_objective(std::span<const double> x, int k);

struct SearchResult {
    std::optional<WitnessCertificate> certificate;
    double best_objective = 0.0;
    /// Best objective reached by each restart, in restart order.
    std::vector<double> trace;
    std::uint64_t evaluations = 0;
    int restarts = 0;
};

/// Random restarts with coordinate descent. Each trial point is repaired
/// onto the k-psh side (the nonnegative entries are shifted up until the k
/// smallest sum to a small positive margin), then scored by
///   min( r_{n-k+1}, -min_{j<=n-k} r_j ),  r_j = sigma_j(x) / sigma_j(|x|).
/// Float hits are rationalized (denominators 10, 100, ... up to
/// `max_denominator`) and certified exactly; only exact successes are
/// returned. Identical configs give identical results. With k = n there is
/// no degree to violate and nothing is evaluated.
SearchResult general_search(const SearchConfig& cfg);

struct FrontierRow {
    int n = 0;
    bool witness_found = false;
    std::optional<WitnessCertificate> certificate;
    double best_margin = 0.0;
    std::string source;  ///< "ansatz" or "search"
};

/// For each n in [n_lo, n_hi]: the two-block scan, then the general search.
std::vector<FrontierRow> frontier_report(int k, int n_lo, int n_hi, const SearchConfig& base);

}  // namespace msh
