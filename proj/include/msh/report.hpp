#pragma once

#include "msh/cones.hpp"
#include "msh/hermitian.hpp"
#include "msh/radial.hpp"
#include "msh/witness.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace msh {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Format { json, csv, text };

Format parse_format(const std::string& name);

struct Tolerances {
    /// Relative tolerance for floating comparisons (quadrature agreement,
    /// limits, tolerant classification).
    double relative = kDefaultTolerance;
    /// Largest relative standard error a Monte Carlo claim may carry.
    double monte_carlo = 1e-3;
    /// Significance multiplier applied to standard errors.
    double sigmas = 3.0;
};

struct Claim {
    std::string id;
    std::string anchor;
    std::string expected;
    std::string computed;
    bool passed = false;
    std::optional<double> runtime_ms;
};

struct PaperReport {
    std::string version = kToolVersion;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::vector<Claim> claims;

    bool overall() const;
};

nlohmann::json to_json(const PaperReport& r);
/// Inverse of to_json. Throws precondition_error on a malformed document or
/// when the stored overall verdict disagrees with the claims.
PaperReport report_from_json(const nlohmann::json& j);

void write_report(std::ostream& os, const PaperReport& r, Format f);

struct VerifyOptions {
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::uint64_t mc_samples = 10'000'000;
    std::uint64_t search_budget = 1'000'000;
    /// Record wall-clock runtimes; off by default so reports are byte-stable.
    bool timings = false;
    int threads = 0;
};

/// Runs the shipped claim list. Claim ids are stable and new claims are
/// only ever appended.
PaperReport run_reference_claims(const VerifyOptions& opt);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

/// Shortest round-trippable decimal for a double.
std::string format_double(double x);

nlohmann::json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format f);

struct SearchOutcome {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::optional<WitnessCertificate> certificate;
    std::string source;  ///< "ansatz", "search" or empty
    double best_margin = 0.0;
    std::uint64_t evaluations = 0;
    int restarts = 0;
};

/// Two-block scan first, then the general search.
SearchOutcome run_search(const SearchConfig& cfg);

nlohmann::json to_json(const SearchOutcome& s);
/// Reads a certificate document back and re-certifies it exactly; nothing
/// for a no-witness summary. Throws precondition_error when the stored
/// spectrum fails certification.
std::optional<WitnessCertificate> certificate_from_json(const nlohmann::json& j);
void write_search(std::ostream& os, const SearchOutcome& s, Format f);

struct RadialTrajectoryPoint {
    double A = 0.0;
    double integral = 0.0;
};

struct RadialTable {
    int n = 0;
    int m = 0;
    Rational alpha;
    OutcomeInequality outcome;
    std::vector<RadialTrajectoryPoint> trajectory;
};

RadialTable run_radial(int n, int m, const Rational& alpha, const std::vector<double>& A_values);
void write_radial(std::ostream& os, const RadialTable& t, Format f);

struct PerturbTable {
    std::vector<double> a;
    std::vector<Complex> z;
    std::string chi;
    std::vector<PerturbationRow> rows;
    double rate_constant = 0.0;
};

void write_perturb(std::ostream& os, const PerturbTable& t, Format f);

}  // namespace msh
