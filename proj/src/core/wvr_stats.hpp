#pragma once

#include <vector>

#include "linalg.hpp"
#include "longrun.hpp"
#include "transform.hpp"

namespace mfb {

enum class VarianceSource { analytic, newey_west };

// Share of total energy captured by each band: xi[n] = sum_t W[n,t]^2 / sum_t y_t^2.
std::vector<double> xi_hat(const PacketCoefficients& coeffs, const Series& y);

// Circular z sequence for one band:
// z_t = sum_{i<j} v~_i v~_j y_{(t-i) mod T} y_{(t-j) mod T}.
std::vector<double> z_sequence(const PacketFilterBank& bank, int n, const Series& y);

// Same quantity for an arbitrary filter (used by the pyramid statistics).
std::vector<double> z_sequence_filter(const std::vector<double>& f, const Series& y);

// Closed-form asymptotic scaling
// a(f1,f2) = 4 sum_s sum_{0<=i<j} f1_i f1_j f2_{i-s} f2_{j-s},
// evaluated through the cross-correlation identity
// a = 2 (sum_s c_s^2 - ||f1||^2 ||f2||^2), c_s = sum_i f1_i f2_{i-s}.
double analytic_a_filters(const std::vector<double>& f1, const std::vector<double>& f2);
double analytic_a(const PacketFilterBank& bank, int n1, int n2);

// a-matrix over bands 1..2^m-1 plus its correlation form A.
struct AnalyticCovariance {
    int m = 0;
    SymMatrix a_matrix;
    SymMatrix A;
};

AnalyticCovariance analytic_covariance(const PacketFilterBank& bank);

// Cached per (wavelet, scale); safe for concurrent readers.
const AnalyticCovariance& analytic_covariance_cached(Wavelet w, int m);
const PacketFilterBank& packet_filters_cached(Wavelet w, int m);

// Analytic counterpart across pyramid levels 1..m: entry (i,j) uses the
// level-(i+1) and level-(j+1) cascade wavelet filters.
const AnalyticCovariance& pyramid_covariance_cached(Wavelet w, int m);
const std::vector<double>& pyramid_wavelet_filter_cached(Wavelet w, int j);

// Standardized per-band statistics, centered at 2^-m.
std::vector<double> wv_analytic(const std::vector<double>& xi,
                                const std::vector<double>& a_diag, int T, int m);
std::vector<double> wv_estimated(const std::vector<double>& xi, double sigma2,
                                 const std::vector<double>& avar, int T, int m);

// Pyramid energy-share estimates per level (plus the smooth share at the back).
std::vector<double> xi_hat_levels(const ModwtCoefficients& coeffs, const Series& y);

struct GsResult {
    int m = 0;
    std::vector<double> xi_levels;
    std::vector<double> gs;
    VarianceSource source = VarianceSource::analytic;
};

GsResult gs_statistics_analytic(const ModwtCoefficients& coeffs, const Series& y,
                                const std::vector<double>& a_diag);
GsResult gs_statistics_estimated(const ModwtCoefficients& coeffs, const Series& y,
                                 double sigma2, const std::vector<double>& avar);

} // namespace mfb
