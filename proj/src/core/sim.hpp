#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wntest.hpp"

namespace mfb {

enum class DgpId {
    N1, N2, N3, N4, N5, N6, N7, N8, N9, N10, N11, N12,
    A1, A2, A3, A4,
    ARk,
};

DgpId dgp_from_name(const std::string& s);
const char* dgp_name(DgpId id);

struct DgpSpec {
    DgpId id = DgpId::N1;
    int T = 100;
    double beta1 = 0.0;   // A1..A4 lag-1 coefficient, ARk coefficient
    double beta2 = 0.0;   // A1..A4 second-lag coefficient
    int k = 1;            // ARk lag
    int burn_in = -1;     // negative selects the model default
    bool t5_standardized = false;

    std::string label() const;
};

// Deterministic given (spec, seed).
Series simulate(const DgpSpec& spec, std::uint64_t seed);

// Per-replication seed stream, pure in (master, tag, rep).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t replication_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t rep);

struct TestSpec {
    TestKind test = TestKind::mfb;
    Variant variant = Variant::g;
    Wavelet wavelet = Wavelet::haar;
    int m_or_K = 2;

    int df() const;
    std::string label() const;
};

double test_statistic(const TestSpec& ts, const Series& y, const HacConfig& hac);

struct StudyConfig {
    int T = 100;
    int reps = 2000;
    std::uint64_t master_seed = 1;
    int workers = 1;
    bool demean = false;
    bool skip_errors = false;
    HacConfig hac;
};

struct McResult {
    DgpSpec dgp;
    TestSpec test;
    int replications = 0;
    int rejections = 0;
    int errors = 0;
    double rejection_rate = 0.0;
    bool size_adjusted = false;
    double critical_value_used = 0.0;
    std::uint64_t master_seed = 0;
};

// Rejection rates at nominal chi-square critical values.
std::vector<McResult> run_size_study(const std::vector<DgpSpec>& dgps,
                                     const std::vector<TestSpec>& tests,
                                     const StudyConfig& cfg);

// Size-adjusted power over a (beta1, beta2) grid. Empirical 5% critical
// values come from the matching null: N1 for A1/A2, N6 for A3/A4.
struct PowerCell {
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::vector<McResult> per_test;
};

struct PowerStudyResult {
    DgpId alt = DgpId::A1;
    DgpId null_model = DgpId::N1;
    std::vector<TestSpec> tests;
    std::vector<double> critical_values;
    std::vector<double> beta1_grid;
    std::vector<double> beta2_grid;
    std::vector<PowerCell> cells;   // row major over (beta1, beta2)
};

PowerStudyResult run_power_study(DgpId alt, const std::vector<double>& beta1_grid,
                                 const std::vector<double>& beta2_grid,
                                 const std::vector<TestSpec>& tests,
                                 const StudyConfig& cfg, int null_reps);

// Size-adjusted power curves for the lag-k autoregression y_t = beta y_{t-k} + e_t
// across scales m_min..m_max, tests MFB^g and GSM^g per scale.
struct SweepCurve {
    TestSpec test;
    std::vector<double> beta;
    std::vector<double> power;
};

struct SweepResult {
    int k = 1;
    std::vector<SweepCurve> curves;
};

SweepResult run_scale_sweep(int k, const std::vector<double>& beta_grid,
                            int m_min, int m_max, Wavelet w,
                            const StudyConfig& cfg, int null_reps);

// Deterministic CSV renderings (pure functions of the results).
std::string size_study_csv(const std::vector<McResult>& results);
std::string power_study_csv(const PowerStudyResult& r);
std::string power_relative_csv(const PowerStudyResult& r);
std::string sweep_csv(const SweepResult& r);

// Empirical upper quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> v, double q);

} // namespace mfb
