#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include "dist.hpp"

namespace mfb {

namespace {

constexpr int kDefaultBurn = 500;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

struct Rng {
    std::mt19937_64 eng;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::student_t_distribution<double> t5{5.0};
    std::uniform_real_distribution<double> unif{0.0, 1.0};

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double n() { return normal(eng); }
    double t() { return t5(eng); }
    double u() { return unif(eng); }
};

int burn_of(const DgpSpec& s) {
    if (s.burn_in >= 0) return s.burn_in;
    switch (s.id) {
        case DgpId::N1:
        case DgpId::N5:
        case DgpId::N6:
        case DgpId::N8:
        case DgpId::N9:
        case DgpId::A3:
        case DgpId::A4:
            return 0;
        default:
            return kDefaultBurn;
    }
}

std::vector<double> garch(Rng& rng, int n, double omega, double alpha, double beta,
                          double s2_0, bool t5, bool t5_std) {
    std::vector<double> y(n);
    double s2 = s2_0;
    const double scale = t5_std ? std::sqrt(3.0 / 5.0) : 1.0;
    for (int t = 0; t < n; ++t) {
        if (t > 0) s2 = omega + alpha * y[t - 1] * y[t - 1] + beta * s2;
        const double eps = t5 ? scale * rng.t() : rng.n();
        y[t] = std::sqrt(s2) * eps;
    }
    return y;
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t tag,
                               std::uint64_t rep) {
    std::uint64_t z = splitmix64(master + kGolden * (tag + 1));
    return splitmix64(z + kGolden * (rep + 1));
}

DgpId dgp_from_name(const std::string& s) {
    static const std::pair<const char*, DgpId> table[] = {
        {"N1", DgpId::N1},   {"N2", DgpId::N2},   {"N3", DgpId::N3},
        {"N4", DgpId::N4},   {"N5", DgpId::N5},   {"N6", DgpId::N6},
        {"N7", DgpId::N7},   {"N8", DgpId::N8},   {"N9", DgpId::N9},
        {"N10", DgpId::N10}, {"N11", DgpId::N11}, {"N12", DgpId::N12},
        {"A1", DgpId::A1},   {"A2", DgpId::A2},   {"A3", DgpId::A3},
        {"A4", DgpId::A4},   {"ARk", DgpId::ARk}, {"AR", DgpId::ARk},
    };
    for (const auto& [name, id] : table)
        if (s == name) return id;
    throw Error(Errc::config, "unknown model: " + s);
}

const char* dgp_name(DgpId id) {
    switch (id) {
        case DgpId::N1: return "N1";
        case DgpId::N2: return "N2";
        case DgpId::N3: return "N3";
        case DgpId::N4: return "N4";
        case DgpId::N5: return "N5";
        case DgpId::N6: return "N6";
        case DgpId::N7: return "N7";
        case DgpId::N8: return "N8";
        case DgpId::N9: return "N9";
        case DgpId::N10: return "N10";
        case DgpId::N11: return "N11";
        case DgpId::N12: return "N12";
        case DgpId::A1: return "A1";
        case DgpId::A2: return "A2";
        case DgpId::A3: return "A3";
        case DgpId::A4: return "A4";
        case DgpId::ARk: return "ARk";
    }
    return "?";
}

std::string DgpSpec::label() const {
    char buf[96];
    switch (id) {
        case DgpId::A1:
        case DgpId::A2:
        case DgpId::A3:
        case DgpId::A4:
            std::snprintf(buf, sizeof buf, "%s(b1=%g,b2=%g)", dgp_name(id), beta1, beta2);
            return buf;
        case DgpId::ARk:
            std::snprintf(buf, sizeof buf, "AR(k=%d,b=%g)", k, beta1);
            return buf;
        default:
            return dgp_name(id);
    }
}

Series simulate(const DgpSpec& spec, std::uint64_t seed) {
    if (spec.T < 2) throw Error(Errc::invalid_argument, "simulate: T must be >= 2");
    const int T = spec.T;
    const int burn = burn_of(spec);
    const int n = T + burn;
    Rng rng(seed);
    Series out;
    std::vector<double>& y = out.values;

    switch (spec.id) {
        case DgpId::N1: {
            y.resize(T);
            for (double& v : y) v = rng.n();
            return out;
        }
        case DgpId::N2:
        case DgpId::N3: {
            const bool t5 = spec.id == DgpId::N3;
            std::vector<double> full = garch(rng, n, 0.001, 0.05, 0.90,
                                             0.001 / (1.0 - 0.05 - 0.90), t5,
                                             spec.t5_standardized);
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::N4: {
            // log-variance recursion driven by the lagged innovation
            std::vector<double> full(n);
            double ls2 = 0.001 / (1.0 - 0.95);
            double prev_eps = 0.0;
            for (int t = 0; t < n; ++t) {
                if (t > 0)
                    ls2 = 0.001 + 0.5 * std::fabs(prev_eps) - 0.2 * prev_eps + 0.95 * ls2;
                const double eps = rng.n();
                full[t] = std::exp(0.5 * ls2) * eps;
                prev_eps = eps;
            }
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::N5: {
            y.resize(T);
            for (double& v : y) {
                const bool narrow = rng.u() < 0.5;
                const double z = rng.n();
                v = narrow ? z * std::sqrt(0.5) : z;
            }
            return out;
        }
        case DgpId::N6: {
            y.resize(T);
            for (int t = 0; t < T; ++t) y[t] = std::sqrt(t + 1.0) * rng.n();
            return out;
        }
        case DgpId::N7: {
            std::vector<double> u = garch(rng, n, 0.05, 0.05, 0.90,
                                          0.05 / (1.0 - 0.05 - 0.90), false, false);
            y.resize(T);
            for (int t = 0; t < T; ++t) {
                const double x = (t + 1.0) / T;
                y[t] = (x < 0.5 ? 1.0 : 2.0) * u[burn + t];
            }
            return out;
        }
        case DgpId::N8: {
            std::vector<double> full = garch(rng, n, 0.001, 0.1096508, 0.90, 0.001,
                                             false, false);
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::N9: {
            std::vector<double> full = garch(rng, n, 0.0, 0.1096508, 0.90, 1.0,
                                             false, false);
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::N10: {
            std::vector<double> full(n + 1, 0.0);
            double prev_eps = rng.n();
            for (int t = 1; t <= n; ++t) {
                const double eps = rng.n();
                full[t] = 0.8 * full[t - 1] + eps - (1.0 / 0.8) * prev_eps;
                prev_eps = eps;
            }
            y.assign(full.begin() + 1 + burn, full.end());
            return out;
        }
        case DgpId::N11: {
            std::vector<double> full(n);
            double e1 = 0.0;
            for (int t = 0; t < n; ++t) {
                const double eps = rng.n();
                full[t] = eps + (t >= 2 ? 0.5 * e1 * full[t - 2] : 0.0);
                e1 = eps;
            }
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::N12: {
            std::vector<double> full(n);
            double e1 = 0.0, e2 = 0.0;
            for (int t = 0; t < n; ++t) {
                const double eps = rng.n();
                full[t] = eps + (t >= 2 ? 0.5 * e1 * e2 : 0.0);
                e2 = e1;
                e1 = eps;
            }
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::A1:
        case DgpId::A2:
        case DgpId::A3:
        case DgpId::A4: {
            const bool het = spec.id == DgpId::A3 || spec.id == DgpId::A4;
            const int lag2 = (spec.id == DgpId::A2 || spec.id == DgpId::A4) ? 3 : 2;
            std::vector<double> full(n);
            for (int t = 0; t < n; ++t) {
                const double scale = het ? std::sqrt(t + 1.0) : 1.0;
                double v = scale * rng.n();
                if (t >= 1) v += spec.beta1 * full[t - 1];
                if (t >= lag2) v += spec.beta2 * full[t - lag2];
                full[t] = v;
            }
            y.assign(full.begin() + burn, full.end());
            return out;
        }
        case DgpId::ARk: {
            if (spec.k < 1) throw Error(Errc::invalid_argument, "simulate: AR lag k must be >= 1");
            std::vector<double> full(n);
            for (int t = 0; t < n; ++t) {
                double v = rng.n();
                if (t >= spec.k) v += spec.beta1 * full[t - spec.k];
                full[t] = v;
            }
            y.assign(full.begin() + burn, full.end());
            return out;
        }
    }
    throw Error(Errc::config, "unhandled model id");
}

int TestSpec::df() const {
    switch (test) {
        case TestKind::mfb: return (1 << m_or_K) - 1;
        case TestKind::gsm: return m_or_K;
        case TestKind::ljung_box: return m_or_K;
        case TestKind::aq: return 1;
    }
    return 1;
}

std::string TestSpec::label() const {
    std::string s = test_kind_name(test);
    if (test == TestKind::mfb || test == TestKind::gsm) {
        s += "_" + std::to_string(m_or_K) + "^" + variant_name(variant);
        if (wavelet != Wavelet::haar) s += std::string("(") + wavelet_name(wavelet) + ")";
    } else if (test == TestKind::ljung_box) {
        s += "_" + std::to_string(m_or_K);
    }
    return s;
}

double test_statistic(const TestSpec& ts, const Series& y, const HacConfig& hac) {
    switch (ts.test) {
        case TestKind::mfb:
            return mfb_test(y, ts.wavelet, ts.m_or_K, ts.variant, hac).statistic;
        case TestKind::gsm:
            return gsm_test(y, ts.wavelet, ts.m_or_K, ts.variant, hac).statistic;
        case TestKind::ljung_box:
            return ljung_box(y, ts.m_or_K).statistic;
        case TestKind::aq:
            return aq_test(y).statistic;
    }
    throw Error(Errc::config, "unhandled test kind");
}

namespace {

// Fills per-replication statistics for every test on a common stream of draws.
// Slot layout keeps results independent of the worker partition.
void replicate_statistics(const DgpSpec& dgp, const std::vector<TestSpec>& tests,
                          const StudyConfig& cfg, std::uint64_t tag, int reps,
                          std::vector<std::vector<double>>& stats,
                          std::vector<std::uint8_t>& errs) {
    const int ntests = static_cast<int>(tests.size());
    stats.assign(ntests, std::vector<double>(reps, 0.0));
    errs.assign(static_cast<std::size_t>(ntests) * reps, 0);

    // warm shared caches before spawning workers
    for (const auto& ts : tests) {
        if (ts.test == TestKind::mfb) {
            packet_filters_cached(ts.wavelet, ts.m_or_K);
            if (ts.variant != Variant::e) analytic_covariance_cached(ts.wavelet, ts.m_or_K);
        } else if (ts.test == TestKind::gsm) {
            for (int j = 1; j <= ts.m_or_K; ++j) pyramid_wavelet_filter_cached(ts.wavelet, j);
            if (ts.variant != Variant::e) pyramid_covariance_cached(ts.wavelet, ts.m_or_K);
        }
    }

    const int workers = std::max(1, cfg.workers);
    auto body = [&](int w) {
        DgpSpec local = dgp;
        local.T = cfg.T;
        for (int r = w; r < reps; r += workers) {
            Series y;
            try {
                y = simulate(local, replication_seed(cfg.master_seed, tag, r));
                if (cfg.demean) y = demeaned(y);
                for (int i = 0; i < ntests; ++i)
                    stats[i][r] = test_statistic(tests[i], y, cfg.hac);
            } catch (const Error&) {
                for (int i = 0; i < ntests; ++i) {
                    errs[std::size_t(i) * reps + r] = 1;
                    stats[i][r] = std::numeric_limits<double>::quiet_NaN();
                }
            }
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& th : pool) th.join();
    }
}

McResult summarize(const DgpSpec& dgp, const TestSpec& ts, const StudyConfig& cfg,
                   const std::vector<double>& stats,
                   const std::vector<std::uint8_t>& errs, std::size_t err_off,
                   double cv, bool size_adjusted) {
    McResult r;
    r.dgp = dgp;
    r.dgp.T = cfg.T;
    r.test = ts;
    r.size_adjusted = size_adjusted;
    r.critical_value_used = cv;
    r.master_seed = cfg.master_seed;
    int denom = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (errs[err_off + i]) {
            ++r.errors;
            if (cfg.skip_errors) continue;
            ++denom;
            continue;
        }
        ++denom;
        if (stats[i] > cv) ++r.rejections;
    }
    r.replications = denom;
    r.rejection_rate = denom > 0 ? static_cast<double>(r.rejections) / denom : 0.0;
    return r;
}

} // namespace

double empirical_quantile(std::vector<double> v, double q) {
    if (v.empty()) throw Error(Errc::invalid_argument, "empirical_quantile: empty");
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    if (lo == hi) return v[lo];
    const double w = pos - lo;
    return (1.0 - w) * v[lo] + w * v[hi];
}

std::vector<McResult> run_size_study(const std::vector<DgpSpec>& dgps,
                                     const std::vector<TestSpec>& tests,
                                     const StudyConfig& cfg) {
    if (cfg.reps < 1) throw Error(Errc::config, "run_size_study: reps must be >= 1");
    if (dgps.empty() || tests.empty())
        throw Error(Errc::config, "run_size_study: empty model or test list");

    std::vector<double> cvs(tests.size());
    for (std::size_t i = 0; i < tests.size(); ++i)
        cvs[i] = chi2_ppf_upper(0.05, tests[i].df());

    std::vector<McResult> out;
    for (std::size_t d = 0; d < dgps.size(); ++d) {
        std::vector<std::vector<double>> stats;
        std::vector<std::uint8_t> errs;
        replicate_statistics(dgps[d], tests, cfg, d, cfg.reps, stats, errs);
        for (std::size_t i = 0; i < tests.size(); ++i)
            out.push_back(summarize(dgps[d], tests[i], cfg, stats[i], errs,
                                    i * std::size_t(cfg.reps), cvs[i], false));
    }
    return out;
}

namespace {

DgpId null_for(DgpId alt) {
    switch (alt) {
        case DgpId::A1:
        case DgpId::A2:
        case DgpId::ARk:
            return DgpId::N1;
        case DgpId::A3:
        case DgpId::A4:
            return DgpId::N6;
        default:
            throw Error(Errc::config, "power study expects an alternative model");
    }
}

// tag stream 0 is reserved for the null replications
constexpr std::uint64_t kNullTag = 0;

std::vector<double> null_critical_values(DgpId alt, const std::vector<TestSpec>& tests,
                                         const StudyConfig& cfg, int null_reps) {
    if (null_reps < 2000)
        throw Error(Errc::config, "power study needs null_reps >= 2000");
    DgpSpec null_spec;
    null_spec.id = null_for(alt);
    null_spec.T = cfg.T;
    StudyConfig ncfg = cfg;
    ncfg.reps = null_reps;
    std::vector<std::vector<double>> stats;
    std::vector<std::uint8_t> errs;
    replicate_statistics(null_spec, tests, ncfg, kNullTag, null_reps, stats, errs);
    std::vector<double> cvs(tests.size());
    for (std::size_t i = 0; i < tests.size(); ++i) {
        std::vector<double> clean;
        clean.reserve(stats[i].size());
        for (std::size_t r = 0; r < stats[i].size(); ++r)
            if (!errs[i * std::size_t(null_reps) + r]) clean.push_back(stats[i][r]);
        if (clean.size() < 100)
            throw Error(Errc::config, "too few valid null replications");
        cvs[i] = empirical_quantile(std::move(clean), 0.95);
    }
    return cvs;
}

} // namespace

PowerStudyResult run_power_study(DgpId alt, const std::vector<double>& beta1_grid,
                                 const std::vector<double>& beta2_grid,
                                 const std::vector<TestSpec>& tests,
                                 const StudyConfig& cfg, int null_reps) {
    if (beta1_grid.empty() || beta2_grid.empty())
        throw Error(Errc::config, "run_power_study: empty grid");
    PowerStudyResult out;
    out.alt = alt;
    out.null_model = null_for(alt);
    out.tests = tests;
    out.beta1_grid = beta1_grid;
    out.beta2_grid = beta2_grid;
    out.critical_values = null_critical_values(alt, tests, cfg, null_reps);

    std::uint64_t tag = 1;
    for (double b1 : beta1_grid)
        for (double b2 : beta2_grid) {
            DgpSpec spec;
            spec.id = alt;
            spec.T = cfg.T;
            spec.beta1 = b1;
            spec.beta2 = b2;
            std::vector<std::vector<double>> stats;
            std::vector<std::uint8_t> errs;
            replicate_statistics(spec, tests, cfg, tag++, cfg.reps, stats, errs);
            PowerCell cell;
            cell.beta1 = b1;
            cell.beta2 = b2;
            for (std::size_t i = 0; i < tests.size(); ++i) {
                McResult r = summarize(spec, tests[i], cfg, stats[i], errs,
                                       i * std::size_t(cfg.reps),
                                       out.critical_values[i], true);
                cell.per_test.push_back(r);
            }
            out.cells.push_back(std::move(cell));
        }
    return out;
}

SweepResult run_scale_sweep(int k, const std::vector<double>& beta_grid,
                            int m_min, int m_max, Wavelet w,
                            const StudyConfig& cfg, int null_reps) {
    if (m_min < 1 || m_max < m_min)
        throw Error(Errc::config, "run_scale_sweep: bad scale range");
    std::vector<TestSpec> tests;
    for (int m = m_min; m <= m_max; ++m) {
        tests.push_back({TestKind::mfb, Variant::g, w, m});
        tests.push_back({TestKind::gsm, Variant::g, w, m});
    }
    const std::vector<double> cvs = [&] {
        StudyConfig ncfg = cfg;
        return null_critical_values(DgpId::ARk, tests, ncfg, null_reps);
    }();

    SweepResult out;
    out.k = k;
    out.curves.resize(tests.size());
    for (std::size_t i = 0; i < tests.size(); ++i) out.curves[i].test = tests[i];

    std::uint64_t tag = 1;
    for (double b : beta_grid) {
        DgpSpec spec;
        spec.id = DgpId::ARk;
        spec.T = cfg.T;
        spec.k = k;
        spec.beta1 = b;
        std::vector<std::vector<double>> stats;
        std::vector<std::uint8_t> errs;
        replicate_statistics(spec, tests, cfg, tag++, cfg.reps, stats, errs);
        for (std::size_t i = 0; i < tests.size(); ++i) {
            McResult r = summarize(spec, tests[i], cfg, stats[i], errs,
                                   i * std::size_t(cfg.reps), cvs[i], true);
            out.curves[i].beta.push_back(b);
            out.curves[i].power.push_back(r.rejection_rate);
        }
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_rate(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string size_study_csv(const std::vector<McResult>& results) {
    std::string s = "model,test,T,replications,errors,rejection_rate_pct,critical_value\n";
    for (const auto& r : results) {
        s += r.dgp.label();
        s += ',' + r.test.label();
        s += ',' + std::to_string(r.dgp.T);
        s += ',' + std::to_string(r.replications);
        s += ',' + std::to_string(r.errors);
        s += ',' + fmt_rate(100.0 * r.rejection_rate);
        s += ',' + fmt(r.critical_value_used);
        s += '\n';
    }
    return s;
}

std::string power_study_csv(const PowerStudyResult& r) {
    std::string s = "alt,null,beta1,beta2,test,T,replications,errors,critical_value,power_pct\n";
    for (const auto& cell : r.cells)
        for (const auto& res : cell.per_test) {
            s += dgp_name(r.alt);
            s += ',';
            s += dgp_name(r.null_model);
            s += ',' + fmt(cell.beta1);
            s += ',' + fmt(cell.beta2);
            s += ',' + res.test.label();
            s += ',' + std::to_string(res.dgp.T);
            s += ',' + std::to_string(res.replications);
            s += ',' + std::to_string(res.errors);
            s += ',' + fmt(res.critical_value_used);
            s += ',' + fmt_rate(100.0 * res.rejection_rate);
            s += '\n';
        }
    return s;
}

std::string power_relative_csv(const PowerStudyResult& r) {
    // ratio minus one for matched MFB/GSM pairs at the same scale and variant
    std::string s = "alt,beta1,beta2,mfb,gsm,relative\n";
    for (const auto& cell : r.cells)
        for (std::size_t i = 0; i < r.tests.size(); ++i) {
            if (r.tests[i].test != TestKind::mfb) continue;
            for (std::size_t j = 0; j < r.tests.size(); ++j) {
                if (r.tests[j].test != TestKind::gsm) continue;
                if (r.tests[j].m_or_K != r.tests[i].m_or_K) continue;
                if (r.tests[j].variant != r.tests[i].variant) continue;
                if (r.tests[j].wavelet != r.tests[i].wavelet) continue;
                const double pm = cell.per_test[i].rejection_rate;
                const double pg = cell.per_test[j].rejection_rate;
                s += dgp_name(r.alt);
                s += ',' + fmt(cell.beta1);
                s += ',' + fmt(cell.beta2);
                s += ',' + r.tests[i].label();
                s += ',' + r.tests[j].label();
                s += ',' + (pg > 0.0 ? fmt_rate(pm / pg - 1.0) : std::string("nan"));
                s += '\n';
            }
        }
    return s;
}

std::string sweep_csv(const SweepResult& r) {
    std::string s = "k,test,beta,power_pct\n";
    for (const auto& c : r.curves)
        for (std::size_t i = 0; i < c.beta.size(); ++i) {
            s += std::to_string(r.k);
            s += ',' + c.test.label();
            s += ',' + fmt(c.beta[i]);
            s += ',' + fmt_rate(100.0 * c.power[i]);
            s += '\n';
        }
    return s;
}

} // namespace mfb
