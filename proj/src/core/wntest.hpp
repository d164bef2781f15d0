#pragma once

#include <string>
#include <vector>

#include "wvr_stats.hpp"

namespace mfb {

enum class TestKind { mfb, gsm, ljung_box, aq };
enum class Variant { g, triangle, e, none };

const char* test_kind_name(TestKind k);
const char* variant_name(Variant v);
TestKind test_kind_from_name(const std::string& s);
Variant variant_from_name(const std::string& s);

struct TestReport {
    TestKind test = TestKind::mfb;
    Variant variant = Variant::none;
    bool has_wavelet = false;
    Wavelet wavelet = Wavelet::haar;
    int m_or_K = 1;
    double statistic = 0.0;
    int df = 1;
    double p_value = 1.0;
    std::vector<std::string> notes;

    bool reject_at_05() const { return p_value < 0.05; }
    std::string label() const;
};

// Joint multi-band statistic W' Sigma^{-1} W over bands 1..2^m-1,
// chi-square with 2^m-1 degrees of freedom under white noise.
TestReport mfb_test(const Series& y, Wavelet w, int m, Variant v,
                    const HacConfig& hac = HacConfig{});

// Pyramid counterpart over levels 1..m, chi-square with m degrees of freedom.
TestReport gsm_test(const Series& y, Wavelet w, int m, Variant v,
                    const HacConfig& hac = HacConfig{});

// Q_K = T(T+2) sum_{k<=K} rho_k^2/(T-k), demeaned, non-circular.
TestReport ljung_box(const Series& y, int K);

// Automatic portmanteau with heteroskedasticity-robust autocorrelations and
// data-driven lag selection; chi-square with 1 degree of freedom.
TestReport aq_test(const Series& y);

} // namespace mfb
