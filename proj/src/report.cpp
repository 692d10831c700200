#include "msh/report.hpp"

#include "msh/mm_operator.hpp"
#include "msh/rng.hpp"
#include "msh/symfunc.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace msh {

using nlohmann::json;

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "text") return Format::text;
    throw precondition_error("unknown format '" + name + "' (json, csv, text)");
}

bool PaperReport::overall() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

json to_json(const PaperReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) {
        claims.push_back({{"id", c.id},
                          {"anchor", c.anchor},
                          {"expected", c.expected},
                          {"computed", c.computed},
                          {"verdict", c.passed ? "pass" : "fail"},
                          {"runtime_ms", c.runtime_ms ? json(*c.runtime_ms) : json(nullptr)}});
    }
    return {{"version", r.version},
            {"seed", r.seed},
            {"tolerances",
             {{"relative", r.tolerances.relative},
              {"monte_carlo", r.tolerances.monte_carlo},
              {"sigmas", r.tolerances.sigmas}}},
            {"claims", claims},
            {"overall", r.overall() ? "pass" : "fail"}};
}

PaperReport report_from_json(const json& j) {
    try {
        PaperReport r;
        r.version = j.at("version").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        const auto& t = j.at("tolerances");
        r.tolerances.relative = t.at("relative").get<double>();
        r.tolerances.monte_carlo = t.at("monte_carlo").get<double>();
        r.tolerances.sigmas = t.at("sigmas").get<double>();
        for (const auto& c : j.at("claims")) {
            Claim claim;
            claim.id = c.at("id").get<std::string>();
            claim.anchor = c.at("anchor").get<std::string>();
            claim.expected = c.at("expected").get<std::string>();
            claim.computed = c.at("computed").get<std::string>();
            const auto verdict = c.at("verdict").get<std::string>();
            if (verdict != "pass" && verdict != "fail") throw precondition_error("bad verdict '" + verdict + "'");
            claim.passed = verdict == "pass";
            if (!c.at("runtime_ms").is_null()) claim.runtime_ms = c.at("runtime_ms").get<double>();
            r.claims.push_back(std::move(claim));
        }
        const bool overall = j.at("overall").get<std::string>() == "pass";
        if (overall != r.overall()) throw precondition_error("overall verdict disagrees with claims");
        return r;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed report: ") + e.what());
    }
}

std::string format_double(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

void write_report(std::ostream& os, const PaperReport& r, Format f) {
    switch (f) {
        case Format::json:
            os << to_json(r).dump(2) << '\n';
            break;
        case Format::csv:
            write_csv_row(os, {"id", "anchor", "expected", "computed", "verdict", "runtime_ms"});
            for (const auto& c : r.claims) {
                write_csv_row(os, {c.id, c.anchor, c.expected, c.computed, c.passed ? "pass" : "fail",
                                   c.runtime_ms ? format_double(*c.runtime_ms) : ""});
            }
            break;
        case Format::text:
            for (const auto& c : r.claims) {
                os << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << " (" << c.anchor << ")\n"
                   << "       expected: " << c.expected << "\n"
                   << "       computed: " << c.computed << "\n";
                if (c.runtime_ms) os << "       runtime:  " << format_double(*c.runtime_ms) << " ms\n";
            }
            os << "overall: " << (r.overall() ? "pass" : "fail") << " (" << r.claims.size() << " claims, seed "
               << r.seed << ", version " << r.version << ")\n";
            break;
    }
}

namespace {

std::string fmt(double x, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

struct ClaimRunner {
    PaperReport& report;
    bool timings;

    void run(std::string id, std::string anchor, std::string expected,
             const std::function<std::pair<bool, std::string>()>& body) {
        Claim c{std::move(id), std::move(anchor), std::move(expected), "", false, std::nullopt};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto [ok, computed] = body();
            c.passed = ok;
            c.computed = std::move(computed);
        } catch (const precondition_error& e) {
            c.computed = std::string("error: ") + e.what();
        } catch (const convergence_error& e) {
            c.computed = std::string("no convergence: ") + e.what();
        }
        if (timings) {
            c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        report.claims.push_back(std::move(c));
    }
};

const Spectrum<Rational>& witness11() {
    static const Spectrum<Rational> s = Spectrum<Rational>::blocks({{2, Rational(-1)}, {9, Rational(2)}});
    return s;
}

double closed_form_chi0(int n, int m, double a) {
    const double c1 = static_cast<double>(binomial(n - 1, m));
    const double c2 = static_cast<double>(binomial(n - 1, m - 1));
    const double cn = static_cast<double>(binomial(n, m));
    return sphere_area(n) * std::pow(m, c1 * a) * std::pow(m + 1.0, c2 * a) / (2.0 * n + 2.0 * cn * a);
}

double closed_form_identity(int n, int m, double a) {
    const double cn = static_cast<double>(binomial(n, m));
    return sphere_area(n) * std::pow(m, cn * a) / (2.0 * n);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

PaperReport run_reference_claims(const VerifyOptions& opt) {
    PaperReport report;
    report.seed = opt.seed;
    report.tolerances = opt.tolerances;
    const Tolerances& tol = opt.tolerances;
    ClaimRunner runner{report, opt.timings};

    runner.run("sigma9_example", "n=11 counterexample, top coefficient", "sigma_9(-1,-1,2x9) = 512", [] {
        const auto s = sigma_all(witness11()).sigma;
        return std::pair{s[9] == 512, "sigma_9 = " + to_string(s[9])};
    });

    runner.run("sigma8_example", "n=11 counterexample, violated coefficient", "sigma_8(-1,-1,2x9) = -1536", [] {
        const auto s = sigma_all(witness11()).sigma;
        return std::pair{s[8] == -1536, "sigma_8 = " + to_string(s[8])};
    });

    runner.run("classify_witness", "n=11 counterexample, class membership", "is_A = true, is_B = false (k = 3)", [] {
        const auto c = classify(witness11(), 3);
        return std::pair{c.is_A && !c.is_B, std::string("is_k_psh = ") + (c.is_k_psh ? "true" : "false") +
                                                ", is_A = " + (c.is_A ? "true" : "false") +
                                                ", is_B = " + (c.is_B ? "true" : "false")};
    });

    runner.run("equivalence_sweep_n7", "A = B for n <= 7, ratio bound", "every admissible (p,k,n), n <= 7, has ratio >= 1",
               [] {
                   const auto rows = equivalence_sweep(7);
                   bool all = !rows.empty();
                   Rational worst = rows.empty() ? Rational(0) : rows.front().ratio;
                   for (const auto& r : rows) {
                       all = all && r.passes && r.ratio >= 1;
                       worst = std::min(worst, r.ratio);
                   }
                   return std::pair{all, std::to_string(rows.size()) + " triples, min ratio " + to_string(worst)};
               });

    runner.run("equivalence_sweep_n8", "ratio bound breaks at n = 8", "(p,k,n) = (1,3,8) has ratio 4/5 < 1", [] {
        const Rational r = equivalence_ratio(1, 3, 8);
        return std::pair{r == Rational(4, 5), "ratio " + to_string(r)};
    });

    runner.run("mm_identities", "M_1 = sigma_n, M_n = sigma_1, M_2 = s1 s2 - s3 (n=3)",
               "identities hold exactly on 500 random rational spectra", [&] {
                   CounterRng rng(opt.seed, 0x6964656e74ULL);
                   int ok = 0;
                   const int total = 500;
                   for (int i = 0; i < total; ++i) {
                       const int n = static_cast<int>(rng.uniform_int(1, 7));
                       std::vector<Rational> v;
                       for (int j = 0; j < n; ++j) {
                           Rational q(rng.uniform_int(-20, 20), static_cast<unsigned long>(rng.uniform_int(1, 6)));
                           q.canonicalize();
                           v.push_back(q);
                       }
                       if (special_identity_check(Spectrum<Rational>(std::move(v))).ok()) ++ok;
                   }
                   return std::pair{ok == total, std::to_string(ok) + "/" + std::to_string(total) + " exact"};
               });

    runner.run("radial_closed_forms", "ball integrals of M_m^alpha for chi_0 and chi(t) = t",
               "closed form, explicit formula and quadrature agree to relative " + fmt(tol.relative) +
                   " for n <= 6, m <= n, alpha in {1/2, 1, 2}",
               [&] {
                   double worst = 0.0;
                   std::string where;
                   const auto chi0 = ChiAFamily{0.0}.profile();
                   const auto id = RadialProfile::identity();
                   for (int n = 1; n <= 6; ++n) {
                       for (int m = 1; m <= n; ++m) {
                           for (const Rational& alpha : {Rational(1, 2), Rational(1), Rational(2)}) {
                               const double a = alpha.get_d();
                               const double f0 = closed_form_chi0(n, m, a);
                               const double fi = closed_form_identity(n, m, a);
                               const double d = std::max(
                                   {rel_diff(ball_integral(chi0, n, m, alpha, IntegrationMethod::closed_form).value, f0),
                                    rel_diff(ball_integral(chi0, n, m, alpha, IntegrationMethod::quadrature).value, f0),
                                    rel_diff(ball_integral(id, n, m, alpha, IntegrationMethod::closed_form).value, fi),
                                    rel_diff(ball_integral(id, n, m, alpha, IntegrationMethod::quadrature).value, fi)});
                               if (d > worst) {
                                   worst = d;
                                   where = " at (n,m,alpha) = (" + std::to_string(n) + "," + std::to_string(m) + "," +
                                           to_string(alpha) + ")";
                               }
                           }
                       }
                   }
                   return std::pair{worst <= tol.relative, "max relative difference " + fmt(worst, 3) + where};
               });

    // alpha samples for the outcome inequality
    const std::vector<Rational> alphas{Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                       Rational(2, 3), Rational(1),     Rational(3, 2), Rational(2),
                                       Rational(3)};

    runner.run("comparison_failure", "comparison inequality for M_m^alpha fails past 1/C(n-1,m-1)",
               "holds = false whenever C(n-1,m-1) > 1 and alpha > 1/C(n-1,m-1), n <= 10", [&] {
                   int checked = 0, bad = 0;
                   for (int n = 1; n <= 10; ++n) {
                       for (int m = 1; m <= n; ++m) {
                           const auto c = binomial(n - 1, m - 1);
                           if (c <= 1) continue;
                           for (const auto& alpha : alphas) {
                               if (alpha * Rational(static_cast<unsigned long>(c)) <= 1) continue;
                               ++checked;
                               if (outcome_inequality(n, m, alpha).holds) ++bad;
                           }
                       }
                   }
                   return std::pair{bad == 0 && checked > 0,
                                    std::to_string(checked) + " cases, " + std::to_string(bad) + " with holds = true"};
               });

    runner.run("comparison_equality", "equality exactly for alpha = 1 and m in {1, n}",
               "at alpha = 1, equality iff m = 1 or m = n (n <= 10)", [&] {
                   int mismatches = 0, equalities = 0;
                   for (int n = 1; n <= 10; ++n) {
                       for (int m = 1; m <= n; ++m) {
                           const auto o = outcome_inequality(n, m, Rational(1));
                           const bool expect = m == 1 || m == n;
                           if (o.equality) ++equalities;
                           if (o.equality != expect || (expect && !o.holds)) ++mismatches;
                       }
                   }
                   const auto boundary = outcome_inequality(3, 2, Rational(1, 2));
                   return std::pair{mismatches == 0 && boundary.equality,
                                    std::to_string(equalities) + " equality cases, " + std::to_string(mismatches) +
                                        " mismatches; (3,2,1/2) reduced form " +
                                        (boundary.equality ? "equal" : "not equal")};
               });

    runner.run("chi_a_limit", "chi_A trajectory between chi_0 and t - 1",
               "integral decreases in A from the chi_0 value to the linear-profile value (n=3, m=2, alpha=1)", [&] {
                   const auto t = run_radial(3, 2, Rational(1), {0.0, 1.0, 10.0, 100.0, 1e3, 1e4, 1e6});
                   bool monotone = true;
                   for (std::size_t i = 1; i < t.trajectory.size(); ++i) {
                       monotone = monotone && t.trajectory[i].integral <= t.trajectory[i - 1].integral * (1 + tol.relative);
                   }
                   const double start = rel_diff(t.trajectory.front().integral, t.outcome.lhs);
                   const double end = rel_diff(t.trajectory.back().integral, t.outcome.rhs);
                   // chi_A' differs from 1 by (1 - t)/(1 + A)
                   const bool ok = monotone && start <= tol.relative && end <= 1e-5;
                   return std::pair{ok, std::string(monotone ? "monotone" : "not monotone") + ", A=0 vs chi_0 " +
                                            fmt(start, 3) + ", A=1e6 vs linear " + fmt(end, 3) + " (relative)"};
               });

    std::vector<ExpansionReport> expansion;
    auto run_expansion = [&]() -> const std::vector<ExpansionReport>& {
        if (expansion.empty()) {
            ExpansionConfig cfg;
            cfg.alphas = {Rational(1, 4), Rational(1, 2), Rational(9, 10), Rational(1)};
            cfg.samples = opt.mc_samples;
            cfg.seed = opt.seed;
            cfg.threads = opt.threads;
            expansion = epsilon_expansion_experiment(cfg);
        }
        return expansion;
    };

    runner.run("expansion_first_order", "first-order term of the eps-expansion vanishes",
               "|term II| <= " + fmt(tol.sigmas) + " standard errors, relative standard error <= " + fmt(tol.monte_carlo),
               [&] {
                   const auto& r = run_expansion().back();
                   const double base = r.volume * std::pow(r.a_sum, r.alpha.get_d());
                   const double rel_se = r.term2_se / base;
                   const bool ok = std::abs(r.term2) <= tol.sigmas * r.term2_se && rel_se <= tol.monte_carlo;
                   return std::pair{ok, "term II = " + fmt(r.term2) + " +- " + fmt(r.term2_se) + " (relative se " +
                                            fmt(rel_se, 3) + ", " + std::to_string(r.samples) + " samples)"};
               });

    runner.run("expansion_second_order", "sign of the eps^2 coefficient",
               "negative for alpha in {1/4, 1/2, 9/10}, nonnegative for alpha = 1 (n=3, m=2)", [&] {
                   const auto& reps = run_expansion();
                   bool ok = true;
                   std::string computed;
                   for (const auto& r : reps) {
                       const double base = r.volume * std::pow(r.a_sum, r.alpha.get_d());
                       const double band = tol.sigmas * r.eps2_coefficient_se;
                       const bool want_negative = r.alpha < 1;
                       const bool sign_ok = want_negative ? r.eps2_coefficient + band < 0 : r.eps2_coefficient + band >= 0;
                       const bool precise = r.eps2_coefficient_se <= tol.monte_carlo * base;
                       ok = ok && sign_ok && precise;
                       if (!computed.empty()) computed += "; ";
                       computed += "alpha " + to_string(r.alpha) + ": " + fmt(r.eps2_coefficient) + " +- " +
                                   fmt(r.eps2_coefficient_se) + " (second difference " + fmt(r.curvature) + ")";
                   }
                   return std::pair{ok, computed};
               });

    runner.run("expansion_comparison_fails", "the perturbed integral drops below the unperturbed one",
               "rhs < lhs beyond the significance band at eps = 1 for alpha < 1", [&] {
                   bool ok = true;
                   std::string computed;
                   for (const auto& r : run_expansion()) {
                       if (!(r.alpha < 1)) continue;
                       const auto& row = r.rows.back();
                       ok = ok && row.diff + tol.sigmas * row.diff_se < 0;
                       if (!computed.empty()) computed += "; ";
                       computed += "alpha " + to_string(r.alpha) + ": rhs - lhs = " + fmt(row.diff) + " +- " +
                                   fmt(row.diff_se);
                   }
                   return std::pair{ok, computed};
               });

    runner.run("perturbation_decay", "eigenvalues of rho separate as a_n grows",
               "errors at a_n = 1e4 are at most 1/100 of errors at a_n = 1e2", [] {
                   const PerturbedQuadratic f{{1.0, 2.0, 0.0}, ChiField::bump()};
                   const std::vector<Complex> z{0.3, 0.2, 0.1};
                   const std::vector<double> seq{1e2, 1e4};
                   const auto rows = perturbation_experiment(f, z, seq);
                   const double r1 = rows[1].max_eigen_error / rows[0].max_eigen_error;
                   const double r2 = rows[1].lambda_n_error / rows[0].lambda_n_error;
                   return std::pair{r1 <= 0.01 && r2 <= 0.01,
                                    "ratio " + fmt(r1) + " (leading block), " + fmt(r2) + " (lambda_n)"};
               });

    runner.run("boundary_comparison", "radial comparison at alpha = 1/C(n-1,m-1)",
               "200 random radial pairs per (n,m) in {(3,2),(4,2),(5,3)} satisfy the comparison within 1e-8", [&] {
                   bool ok = true;
                   std::string computed;
                   for (auto [n, m] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}}) {
                       const auto r = radial_comparison_property(n, m, 200, opt.seed, 1e-8);
                       ok = ok && r.all_passed();
                       if (!computed.empty()) computed += "; ";
                       computed += "(" + std::to_string(n) + "," + std::to_string(m) + "): " + std::to_string(r.passed) +
                                   "/" + std::to_string(r.trials) + ", worst slack " + fmt(r.worst_slack, 3);
                   }
                   return std::pair{ok, computed};
               });

    runner.run("witness_ansatz", "two-block shape of the n=11 counterexample",
               "ansatz_scan(11, 3) contains (p, b) = (2, 2)", [] {
                   const auto c = ansatz_scan(11, 3);
                   const bool found = std::any_of(c.begin(), c.end(),
                                                  [](const AnsatzCandidate& a) { return a.p == 2 && a.b == 2; });
                   return std::pair{found, std::to_string(c.size()) + " candidates, (2,2) " +
                                               (found ? "present" : "absent")};
               });

    runner.run("witness_search", "counterexample search at n = 11 and none for n <= 7",
               "general_search(11, 3) certifies a witness; (n, 3) for n = 4..7 finds none", [&] {
                   SearchConfig cfg;
                   cfg.k = 3;
                   cfg.seed = opt.seed;
                   cfg.budget = opt.search_budget;
                   cfg.threads = opt.threads;
                   cfg.n = 11;
                   const auto hit = general_search(cfg);
                   bool none_small = true;
                   for (int n = 4; n <= 7; ++n) {
                       cfg.n = n;
                       none_small = none_small && !general_search(cfg).certificate;
                   }
                   std::string computed = hit.certificate ? "n=11 witness after " + std::to_string(hit.evaluations) +
                                                                " evaluations"
                                                          : "n=11 no witness in " + std::to_string(hit.evaluations) +
                                                                " evaluations";
                   computed += none_small ? "; none for n <= 7" : "; witness reported for n <= 7";
                   return std::pair{hit.certificate.has_value() && none_small, computed};
               });

    return report;
}

json rational_json(const Rational& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const json& j) {
    try {
        Rational q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
        if (q.get_den() == 0) throw precondition_error("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument& e) {
        throw precondition_error(std::string("malformed rational: ") + e.what());
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed rational: ") + e.what());
    }
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format f) {
    const bool all = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.passes; });
    switch (f) {
        case Format::json: {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"p", r.p}, {"k", r.k}, {"n", r.n}, {"ratio", to_string(r.ratio)}, {"passes", r.passes}});
            }
            os << json{{"rows", arr}, {"all_pass", all}}.dump(2) << '\n';
            break;
        }
        case Format::csv:
            write_csv_row(os, {"p", "k", "n", "ratio", "passes"});
            for (const auto& r : rows) {
                write_csv_row(os, {std::to_string(r.p), std::to_string(r.k), std::to_string(r.n), to_string(r.ratio),
                                   r.passes ? "true" : "false"});
            }
            break;
        case Format::text:
            os << std::setw(4) << "p" << std::setw(4) << "k" << std::setw(4) << "n" << std::setw(10) << "ratio"
               << "  passes\n";
            for (const auto& r : rows) {
                os << std::setw(4) << r.p << std::setw(4) << r.k << std::setw(4) << r.n << std::setw(10)
                   << to_string(r.ratio) << "  " << (r.passes ? "yes" : "NO") << '\n';
            }
            os << (all ? "all triples pass\n" : "failing triples present\n");
            break;
    }
}

SearchOutcome run_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchOutcome out;
    out.n = cfg.n;
    out.k = cfg.k;
    out.seed = cfg.seed;
    out.budget = cfg.budget;
    const auto candidates = ansatz_scan(cfg.n, cfg.k, cfg.ansatz_grid);
    if (!candidates.empty()) {
        const auto& c = candidates.front();
        out.certificate = WitnessCertificate::certify(two_block_spectrum(c.p, c.b, cfg.n), cfg.k);
        if (!out.certificate) throw internal_error("ansatz candidate failed exact certification");
        out.source = "ansatz";
        out.best_margin = violation_objective(to_float(out.certificate->spectrum()).values(), cfg.k);
        return out;
    }
    const auto r = general_search(cfg);
    out.evaluations = r.evaluations;
    out.restarts = r.restarts;
    out.best_margin = r.best_objective;
    if (r.certificate) {
        out.certificate = r.certificate;
        out.source = "search";
    }
    return out;
}

json to_json(const SearchOutcome& s) {
    json j{{"n", s.n},
           {"k", s.k},
           {"seed", s.seed},
           {"budget", s.budget},
           {"evaluations", s.evaluations},
           {"restarts", s.restarts},
           {"best_margin", s.best_margin}};
    if (!s.certificate) {
        j["witness"] = false;
        return j;
    }
    j["witness"] = true;
    j["source"] = s.source;
    json spectrum = json::array();
    for (const auto& v : s.certificate->spectrum().values()) spectrum.push_back(rational_json(v));
    j["spectrum"] = spectrum;
    j["violated_degree"] = s.certificate->violated_degree();
    json checks = json::array();
    for (const auto& c : s.certificate->checks()) {
        checks.push_back({{"inequality", c.inequality}, {"value", rational_json(c.value)}, {"verdict", c.verdict}});
    }
    j["checks"] = checks;
    return j;
}

std::optional<WitnessCertificate> certificate_from_json(const json& j) {
    try {
        if (!j.at("witness").get<bool>()) return std::nullopt;
        std::vector<Rational> v;
        for (const auto& q : j.at("spectrum")) v.push_back(rational_from_json(q));
        auto cert = WitnessCertificate::certify(Spectrum<Rational>(std::move(v)), j.at("k").get<int>());
        if (!cert) throw precondition_error("stored spectrum does not certify");
        return cert;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed certificate: ") + e.what());
    }
}

void write_search(std::ostream& os, const SearchOutcome& s, Format f) {
    switch (f) {
        case Format::json:
            os << to_json(s).dump(2) << '\n';
            break;
        case Format::csv:
            write_csv_row(os, {"index", "num", "den"});
            if (s.certificate) {
                const auto v = s.certificate->spectrum().values();
                for (std::size_t i = 0; i < v.size(); ++i) {
                    write_csv_row(os, {std::to_string(i), v[i].get_num().get_str(), v[i].get_den().get_str()});
                }
            }
            break;
        case Format::text:
            if (!s.certificate) {
                os << "no witness for (n, k) = (" << s.n << ", " << s.k << ") after " << s.evaluations
                   << " evaluations; best margin " << format_double(s.best_margin) << '\n';
                break;
            }
            os << "witness for (n, k) = (" << s.n << ", " << s.k << ") from " << s.source << ":\n  (";
            {
                const auto v = s.certificate->spectrum().values();
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
            }
            os << ")\n";
            for (const auto& c : s.certificate->checks()) {
                os << "  " << c.inequality << ": " << to_string(c.value) << (c.verdict ? "  ok" : "  FAILED") << '\n';
            }
            break;
    }
}

RadialTable run_radial(int n, int m, const Rational& alpha, const std::vector<double>& A_values) {
    RadialTable t;
    t.n = n;
    t.m = m;
    t.alpha = alpha;
    t.outcome = outcome_inequality(n, m, alpha);
    for (double A : A_values) {
        if (!(A >= 0)) throw precondition_error("A must be nonnegative");
        const auto p = ChiAFamily{A}.profile();
        t.trajectory.push_back({A, ball_integral(p, n, m, alpha, IntegrationMethod::quadrature).value});
    }
    return t;
}

void write_radial(std::ostream& os, const RadialTable& t, Format f) {
    const auto& o = t.outcome;
    switch (f) {
        case Format::json: {
            json traj = json::array();
            for (const auto& p : t.trajectory) traj.push_back({{"A", p.A}, {"integral", p.integral}});
            json j{{"n", t.n},
                   {"m", t.m},
                   {"alpha", to_string(t.alpha)},
                   {"lhs", o.lhs},
                   {"rhs", o.rhs},
                   {"reduced_lhs", o.reduced_lhs},
                   {"reduced_rhs", o.reduced_rhs},
                   {"holds", o.holds},
                   {"equality", o.equality},
                   {"trajectory", traj}};
            os << j.dump(2) << '\n';
            break;
        }
        case Format::csv:
            write_csv_row(os, {"row", "n", "m", "alpha", "A", "lhs", "rhs", "reduced_lhs", "reduced_rhs", "holds",
                               "equality", "integral"});
            write_csv_row(os, {"outcome", std::to_string(t.n), std::to_string(t.m), to_string(t.alpha), "",
                               format_double(o.lhs), format_double(o.rhs), format_double(o.reduced_lhs),
                               format_double(o.reduced_rhs), o.holds ? "true" : "false", o.equality ? "true" : "false",
                               ""});
            for (const auto& p : t.trajectory) {
                write_csv_row(os, {"trajectory", std::to_string(t.n), std::to_string(t.m), to_string(t.alpha),
                                   format_double(p.A), "", "", "", "", "", "", format_double(p.integral)});
            }
            break;
        case Format::text:
            os << "n = " << t.n << ", m = " << t.m << ", alpha = " << to_string(t.alpha) << '\n'
               << "  chi_0 side  " << format_double(o.lhs) << '\n'
               << "  linear side " << format_double(o.rhs) << '\n'
               << "  reduced     " << format_double(o.reduced_lhs) << " <= " << format_double(o.reduced_rhs) << ": "
               << (o.equality ? "equality" : o.holds ? "holds" : "fails") << '\n';
            for (const auto& p : t.trajectory) {
                os << "  A = " << std::setw(10) << format_double(p.A) << "  integral " << format_double(p.integral)
                   << '\n';
            }
            break;
    }
}

void write_perturb(std::ostream& os, const PerturbTable& t, Format f) {
    switch (f) {
        case Format::json: {
            json rows = json::array();
            for (const auto& r : t.rows) {
                rows.push_back({{"a_n", r.a_n},
                                {"eigen_errors", r.eigen_errors},
                                {"max_eigen_error", r.max_eigen_error},
                                {"lambda_n_error", r.lambda_n_error}});
            }
            json z = json::array();
            for (const auto& c : t.z) z.push_back({c.real(), c.imag()});
            os << json{{"chi", t.chi}, {"a", t.a}, {"z", z}, {"rows", rows}, {"rate_constant", t.rate_constant}}.dump(2)
               << '\n';
            break;
        }
        case Format::csv:
            write_csv_row(os, {"a_n", "max_eigen_error", "lambda_n_error"});
            for (const auto& r : t.rows) {
                write_csv_row(os, {format_double(r.a_n), format_double(r.max_eigen_error), format_double(r.lambda_n_error)});
            }
            break;
        case Format::text:
            os << std::setw(12) << "a_n" << std::setw(16) << "block error" << std::setw(16) << "lambda_n error\n";
            for (const auto& r : t.rows) {
                os << std::setw(12) << fmt(r.a_n) << std::setw(16) << fmt(r.max_eigen_error) << std::setw(16)
                   << fmt(r.lambda_n_error) << '\n';
            }
            os << "error * a_n <= " << fmt(t.rate_constant) << '\n';
            break;
    }
}

}  // namespace msh
