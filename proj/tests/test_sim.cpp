#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/sim.hpp"

using namespace mfb;

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double var(const std::vector<double>& v) {
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / v.size();
}

double acf1(const std::vector<double>& v, int k) {
    const double mu = mean(v);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < v.size(); ++t) {
        den += (v[t] - mu) * (v[t] - mu);
        if (t >= static_cast<std::size_t>(k))
            num += (v[t] - mu) * (v[t - k] - mu);
    }
    return num / den;
}

} // namespace

TEST_CASE("seed mixer reference values") {
    CHECK(splitmix64(0) == 16294208416658607535ULL);
    CHECK(splitmix64(1) == 10451216379200822465ULL);
    CHECK(splitmix64(0x9E3779B97F4A7C15ULL) == 7960286522194355700ULL);
}

TEST_CASE("replication seeds form a pure stream") {
    CHECK(replication_seed(1, 0, 0) == 633295910745529047ULL);
    CHECK(replication_seed(1, 0, 1) == 847994190102014074ULL);
    CHECK(replication_seed(1, 1, 0) == 7876820519921869660ULL);
    // purity and distinctness over a small block
    for (int rep = 0; rep < 50; ++rep)
        CHECK(replication_seed(7, 3, rep) == replication_seed(7, 3, rep));
    std::vector<std::uint64_t> seen;
    for (int tag = 0; tag < 5; ++tag)
        for (int rep = 0; rep < 40; ++rep) seen.push_back(replication_seed(9, tag, rep));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("model name round trip") {
    for (const char* s : {"N1", "N4", "N7", "N12", "A1", "A4", "ARk"})
        CHECK(dgp_name(dgp_from_name(s)) == std::string(s));
    CHECK(dgp_from_name("AR") == DgpId::ARk);
    CHECK_THROWS_AS(dgp_from_name("Z9"), Error);
}

TEST_CASE("simulation is deterministic in the seed") {
    DgpSpec spec;
    spec.id = DgpId::N2;
    spec.T = 64;
    const Series a = simulate(spec, 1234);
    const Series b = simulate(spec, 1234);
    const Series c = simulate(spec, 1235);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.T() == 64);
}

TEST_CASE("iid gaussian moments") {
    DgpSpec spec;
    spec.id = DgpId::N1;
    spec.T = 100000;
    const Series y = simulate(spec, 11);
    CHECK(std::abs(mean(y.values)) < 0.02);
    CHECK(var(y.values) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(acf1(y.values, 1)) < 0.02);
}

TEST_CASE("volatility recursion hits its stationary variance") {
    DgpSpec spec;
    spec.id = DgpId::N2;
    spec.T = 200000;
    const Series y = simulate(spec, 5);
    // omega / (1 - alpha - beta) = 0.02
    CHECK(var(y.values) == doctest::Approx(0.02).epsilon(0.15));
    CHECK(std::abs(acf1(y.values, 1)) < 0.02);
    // squared values are persistent
    std::vector<double> sq(y.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = y.values[i] * y.values[i];
    CHECK(acf1(sq, 1) > 0.05);
}

TEST_CASE("heavy-tail variant has excess kurtosis") {
    DgpSpec spec;
    spec.id = DgpId::N3;
    spec.T = 100000;
    const Series y = simulate(spec, 9);
    const double v = var(y.values);
    double k4 = 0.0;
    const double mu = mean(y.values);
    for (double x : y.values) k4 += std::pow(x - mu, 4.0);
    k4 /= y.values.size() * v * v;
    CHECK(k4 > 5.0);
}

TEST_CASE("two-component mixture variance") {
    DgpSpec spec;
    spec.id = DgpId::N5;
    spec.T = 200000;
    const Series y = simulate(spec, 3);
    CHECK(var(y.values) == doctest::Approx(0.75).epsilon(0.05));
}

TEST_CASE("deterministic trend scaling") {
    DgpSpec spec;
    spec.id = DgpId::N6;
    spec.T = 50000;
    const Series y = simulate(spec, 21);
    double s = 0.0;
    for (int t = 0; t < y.T(); ++t) s += y.values[t] * y.values[t] / (t + 1.0);
    CHECK(s / y.T() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("late variance break doubles the scale") {
    DgpSpec spec;
    spec.id = DgpId::N7;
    spec.T = 100000;
    const Series y = simulate(spec, 17);
    const int half = y.T() / 2;
    double s1 = 0.0, s2 = 0.0;
    for (int t = 0; t < half; ++t) s1 += y.values[t] * y.values[t];
    for (int t = half; t < y.T(); ++t) s2 += y.values[t] * y.values[t];
    CHECK(s2 / s1 == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("all-pass filter output is serially uncorrelated but dependent") {
    DgpSpec spec;
    spec.id = DgpId::N10;
    spec.T = 200000;
    const Series y = simulate(spec, 29);
    CHECK(var(y.values) == doctest::Approx(1.5625).epsilon(0.1));
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(acf1(y.values, k)) < 0.02);
}

TEST_CASE("bilinear and nonlinear moving average models are white") {
    for (DgpId id : {DgpId::N11, DgpId::N12}) {
        DgpSpec spec;
        spec.id = id;
        spec.T = 200000;
        const Series y = simulate(spec, 31);
        CHECK(std::abs(mean(y.values)) < 0.02);
        for (int k = 1; k <= 2; ++k) CHECK(std::abs(acf1(y.values, k)) < 0.02);
    }
}

TEST_CASE("autoregressive alternatives show their lag signature") {
    DgpSpec a1;
    a1.id = DgpId::A1;
    a1.T = 100000;
    a1.beta1 = 0.5;
    const Series y1 = simulate(a1, 41);
    CHECK(acf1(y1.values, 1) == doctest::Approx(0.5).epsilon(0.06));

    DgpSpec a2;
    a2.id = DgpId::A2;
    a2.T = 100000;
    a2.beta2 = 0.4;
    const Series y2 = simulate(a2, 43);
    CHECK(std::abs(acf1(y2.values, 1)) < 0.03);
    CHECK(acf1(y2.values, 3) == doctest::Approx(0.4).epsilon(0.1));

    DgpSpec ar;
    ar.id = DgpId::ARk;
    ar.T = 100000;
    ar.k = 5;
    ar.beta1 = 0.5;
    const Series y5 = simulate(ar, 47);
    CHECK(std::abs(acf1(y5.values, 1)) < 0.03);
    CHECK(acf1(y5.values, 5) == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("trending-scale alternative grows like the trend") {
    DgpSpec a3;
    a3.id = DgpId::A3;
    a3.T = 100000;
    a3.beta1 = 0.0;
    const Series y = simulate(a3, 53);
    const int half = y.T() / 2;
    double s1 = 0.0, s2 = 0.0;
    for (int t = 0; t < half; ++t) s1 += y.values[t] * y.values[t];
    for (int t = half; t < y.T(); ++t) s2 += y.values[t] * y.values[t];
    // mean square ratio tracks the mean of t over each half
    CHECK(s2 / s1 == doctest::Approx(3.0).epsilon(0.15));
}

TEST_CASE("burn-in defaults") {
    // models without a recursion start hot
    DgpSpec n1;
    n1.id = DgpId::N1;
    n1.T = 32;
    DgpSpec n1_explicit = n1;
    n1_explicit.burn_in = 0;
    CHECK(simulate(n1, 77).values == simulate(n1_explicit, 77).values);

    // recursive models discard a transient by default
    DgpSpec n2;
    n2.id = DgpId::N2;
    n2.T = 32;
    DgpSpec n2_500 = n2;
    n2_500.burn_in = 500;
    DgpSpec n2_0 = n2;
    n2_0.burn_in = 0;
    CHECK(simulate(n2, 77).values == simulate(n2_500, 77).values);
    CHECK(simulate(n2, 77).values != simulate(n2_0, 77).values);
}

TEST_CASE("empirical quantile interpolates between order statistics") {
    std::vector<double> v{10, 1, 9, 2, 8, 3, 7, 4, 6, 5};
    CHECK(empirical_quantile(v, 0.95) == doctest::Approx(9.55).epsilon(1e-12));
    CHECK(empirical_quantile(v, 0.5) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(empirical_quantile(v, 0.0) == doctest::Approx(1.0));
    CHECK(empirical_quantile(v, 1.0) == doctest::Approx(10.0));
    CHECK(empirical_quantile({3.25}, 0.9) == doctest::Approx(3.25));
    CHECK_THROWS_AS(empirical_quantile({}, 0.5), Error);
}

TEST_CASE("size study runs and repeats exactly") {
    std::vector<DgpSpec> dgps(1);
    dgps[0].id = DgpId::N1;
    std::vector<TestSpec> tests{{TestKind::mfb, Variant::g, Wavelet::haar, 1},
                                {TestKind::ljung_box, Variant::none, Wavelet::haar, 5}};
    StudyConfig cfg;
    cfg.T = 100;
    cfg.reps = 300;
    cfg.master_seed = 99;

    const auto a = run_size_study(dgps, tests, cfg);
    REQUIRE(a.size() == 2);
    for (const auto& r : a) {
        CHECK(r.replications == 300);
        CHECK(r.errors == 0);
        CHECK(!r.size_adjusted);
        // nominal 5 percent level, generous band for 300 draws
        CHECK(r.rejection_rate > 0.005);
        CHECK(r.rejection_rate < 0.13);
    }
    const auto b = run_size_study(dgps, tests, cfg);
    CHECK(size_study_csv(a) == size_study_csv(b));
}

TEST_CASE("worker count does not change the results") {
    std::vector<DgpSpec> dgps(2);
    dgps[0].id = DgpId::N2;
    dgps[1].id = DgpId::N5;
    std::vector<TestSpec> tests{{TestKind::mfb, Variant::triangle, Wavelet::haar, 2},
                                {TestKind::aq, Variant::none, Wavelet::haar, 1}};
    StudyConfig one;
    one.T = 80;
    one.reps = 120;
    one.master_seed = 424242;
    one.workers = 1;
    StudyConfig four = one;
    four.workers = 4;

    const std::string csv1 = size_study_csv(run_size_study(dgps, tests, one));
    const std::string csv4 = size_study_csv(run_size_study(dgps, tests, four));
    CHECK(csv1 == csv4);
}

TEST_CASE("size study csv layout") {
    std::vector<DgpSpec> dgps(1);
    dgps[0].id = DgpId::N1;
    std::vector<TestSpec> tests{{TestKind::gsm, Variant::g, Wavelet::d4, 2}};
    StudyConfig cfg;
    cfg.T = 64;
    cfg.reps = 50;
    const std::string csv = size_study_csv(run_size_study(dgps, tests, cfg));
    CHECK(csv.find("model,test,T,replications,errors,rejection_rate_pct,critical_value\n") == 0);
    CHECK(csv.find("N1,GSM_2^g(d4),64,50,0,") != std::string::npos);
}

TEST_CASE("power study adjusts size against the matching null") {
    std::vector<TestSpec> tests{{TestKind::mfb, Variant::g, Wavelet::haar, 2},
                                {TestKind::gsm, Variant::g, Wavelet::haar, 2}};
    StudyConfig cfg;
    cfg.T = 100;
    cfg.reps = 300;
    cfg.master_seed = 7;
    const auto r = run_power_study(DgpId::A1, {0.3}, {0.0}, tests, cfg, 2000);
    CHECK(r.null_model == DgpId::N1);
    REQUIRE(r.cells.size() == 1);
    REQUIRE(r.cells[0].per_test.size() == 2);
    for (const auto& res : r.cells[0].per_test) {
        CHECK(res.size_adjusted);
        CHECK(res.critical_value_used > 0.0);
        CHECK(res.rejection_rate > 0.2);
    }
    const std::string rel = power_relative_csv(r);
    CHECK(rel.find("alt,beta1,beta2,mfb,gsm,relative\n") == 0);
    CHECK(rel.find("A1,0.3,0,MFB_2^g,GSM_2^g,") != std::string::npos);

    const std::string main_csv = power_study_csv(r);
    CHECK(main_csv.find("A1,N1,0.3,0,MFB_2^g,100,300,0,") != std::string::npos);
}

TEST_CASE("power study guards its null sample") {
    std::vector<TestSpec> tests{{TestKind::mfb, Variant::g, Wavelet::haar, 1}};
    StudyConfig cfg;
    cfg.T = 100;
    cfg.reps = 100;
    CHECK_THROWS_AS(run_power_study(DgpId::A1, {0.1}, {0.0}, tests, cfg, 500), Error);
    CHECK_THROWS_AS(run_power_study(DgpId::N1, {0.1}, {0.0}, tests, cfg, 2000), Error);
}

TEST_CASE("trending-scale alternatives use the trending null") {
    std::vector<TestSpec> tests{{TestKind::mfb, Variant::triangle, Wavelet::haar, 1}};
    StudyConfig cfg;
    cfg.T = 100;
    cfg.reps = 100;
    cfg.master_seed = 3;
    const auto r = run_power_study(DgpId::A3, {0.4}, {0.0}, tests, cfg, 2000);
    CHECK(r.null_model == DgpId::N6);
    CHECK(r.cells[0].per_test[0].rejection_rate > 0.2);
}

TEST_CASE("scale sweep produces one curve per test and scale") {
    StudyConfig cfg;
    cfg.T = 100;
    cfg.reps = 200;
    cfg.master_seed = 55;
    const auto r = run_scale_sweep(2, {0.0, 0.4}, 1, 2, Wavelet::haar, cfg, 2000);
    REQUIRE(r.curves.size() == 4);
    for (const auto& c : r.curves) {
        REQUIRE(c.power.size() == 2);
        // size-adjusted: close to level at beta 0
        CHECK(c.power[0] < 0.12);
    }
    // a scale that spans the lag picks the signal up
    bool some_power = false;
    for (const auto& c : r.curves)
        if (c.test.m_or_K == 2 && c.power[1] > 0.5) some_power = true;
    CHECK(some_power);
    const std::string csv = sweep_csv(r);
    CHECK(csv.find("k,test,beta,power_pct\n") == 0);
    CHECK(csv.find("2,MFB_2^g,0.4,") != std::string::npos);
}
