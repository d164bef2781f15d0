#include "longrun.hpp"

#include <cmath>

#include "errors.hpp"

namespace mfb {

namespace {

int resolve_bandwidth(int T, const HacConfig& cfg) {
    int b = cfg.bandwidth;
    if (b < 0) b = nw_auto_bandwidth(T);
    if (b >= T) throw Error(Errc::invalid_argument, "HAC bandwidth must be < T");
    return b;
}

double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Sample cross covariance at lag k >= 0, denominator T.
double cross_cov(const std::vector<double>& x, const std::vector<double>& y,
                 int k, double mx, double my) {
    const int T = static_cast<int>(x.size());
    double s = 0.0;
    for (int t = k; t < T; ++t) s += (x[t] - mx) * (y[t - k] - my);
    return s / static_cast<double>(T);
}

} // namespace

int nw_auto_bandwidth(int T) {
    return static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, 2.0 / 9.0)));
}

double nw_lrv(const std::vector<double>& x, const HacConfig& cfg, bool* floored) {
    if (x.size() < 2) throw Error(Errc::series_too_short, "nw_lrv: need T >= 2");
    const int B = resolve_bandwidth(static_cast<int>(x.size()), cfg);
    const double mu = cfg.center ? mean_of(x) : 0.0;

    const double g0 = cross_cov(x, x, 0, mu, mu);
    double v = g0;
    for (int k = 1; k <= B; ++k) {
        const double w = 1.0 - static_cast<double>(k) / (B + 1);
        v += 2.0 * w * cross_cov(x, x, k, mu, mu);
    }
    const double floor = 1e-12 * g0;
    bool hit = false;
    if (v < floor) {
        v = floor;
        hit = true;
    }
    if (v < 0.0) v = 0.0;
    if (floored) *floored = hit;
    return v;
}

double nw_lrcov(const std::vector<double>& x, const std::vector<double>& y,
                const HacConfig& cfg) {
    if (x.size() != y.size())
        throw Error(Errc::length_mismatch, "nw_lrcov: inputs differ in length");
    if (x.size() < 2) throw Error(Errc::series_too_short, "nw_lrcov: need T >= 2");
    const int B = resolve_bandwidth(static_cast<int>(x.size()), cfg);
    const double mx = cfg.center ? mean_of(x) : 0.0;
    const double my = cfg.center ? mean_of(y) : 0.0;

    double v = cross_cov(x, y, 0, mx, my);
    for (int k = 1; k <= B; ++k) {
        const double w = 1.0 - static_cast<double>(k) / (B + 1);
        v += w * (cross_cov(x, y, k, mx, my) + cross_cov(y, x, k, my, mx));
    }
    return v;
}

double sigma2_hat(const Series& y) {
    if (y.values.empty()) throw Error(Errc::empty_series, "sigma2_hat: empty series");
    double s = 0.0;
    for (double v : y.values) s += v * v;
    return s / y.T();
}

} // namespace mfb
