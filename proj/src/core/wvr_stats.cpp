#include "wvr_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace mfb {

namespace {

double energy(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

std::vector<double> squared(const std::vector<double>& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * x[i];
    return out;
}

// z_t = (U_t^2 - (f^2 * y^2)_t) / 2 where U = f filtered over y, both circular.
std::vector<double> z_from_filter(const std::vector<double>& f, const Series& y) {
    const std::vector<double> u = circular_filter(f, y.values);
    const std::vector<double> diag = circular_filter(squared(f), squared(y.values));
    std::vector<double> z(u.size());
    for (std::size_t t = 0; t < u.size(); ++t) z[t] = 0.5 * (u[t] * u[t] - diag[t]);
    return z;
}

} // namespace

std::vector<double> xi_hat(const PacketCoefficients& coeffs, const Series& y) {
    const double e = energy(y.values);
    if (e <= 0.0) throw Error(Errc::zero_energy, "xi_hat: series has zero energy");
    std::vector<double> xi(coeffs.W.size());
    for (std::size_t n = 0; n < coeffs.W.size(); ++n) xi[n] = energy(coeffs.W[n]) / e;
    return xi;
}

std::vector<double> z_sequence(const PacketFilterBank& bank, int n, const Series& y) {
    check_series(y);
    return z_from_filter(bank.row(n), y);
}

std::vector<double> z_sequence_filter(const std::vector<double>& f, const Series& y) {
    check_series(y);
    return z_from_filter(f, y);
}

double analytic_a_filters(const std::vector<double>& f1, const std::vector<double>& f2) {
    const int n1 = static_cast<int>(f1.size());
    const int n2 = static_cast<int>(f2.size());
    if (n1 == 0 || n2 == 0)
        throw Error(Errc::invalid_argument, "analytic_a: empty filter");
    double sum_c2 = 0.0;
    for (int s = -(n2 - 1); s <= n1 - 1; ++s) {
        double c = 0.0;
        const int ilo = std::max(0, s);
        const int ihi = std::min(n1 - 1, n2 - 1 + s);
        for (int i = ilo; i <= ihi; ++i) c += f1[i] * f2[i - s];
        sum_c2 += c * c;
    }
    return 2.0 * (sum_c2 - energy(f1) * energy(f2));
}

double analytic_a(const PacketFilterBank& bank, int n1, int n2) {
    if (n1 < 1 || n1 >= bank.rows() || n2 < 1 || n2 >= bank.rows())
        throw Error(Errc::band_index, "analytic_a: band index out of range");
    return analytic_a_filters(bank.row(n1), bank.row(n2));
}

AnalyticCovariance analytic_covariance(const PacketFilterBank& bank) {
    const int d = bank.rows() - 1;
    AnalyticCovariance out;
    out.m = bank.m;
    out.a_matrix = SymMatrix(d);
    out.A = SymMatrix(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = analytic_a(bank, i + 1, j + 1);
            out.a_matrix.at(i, j) = v;
            out.a_matrix.at(j, i) = v;
        }
    for (int i = 0; i < d; ++i) {
        const double di = out.a_matrix.at(i, i);
        if (di <= 0.0)
            throw Error(Errc::nonpositive_variance, "analytic variance not positive");
        for (int j = 0; j < d; ++j)
            out.A.at(i, j) = out.a_matrix.at(i, j) /
                             std::sqrt(di * out.a_matrix.at(j, j));
    }
    return out;
}

const PacketFilterBank& packet_filters_cached(Wavelet w, int m) {
    static std::map<std::pair<int, int>, PacketFilterBank> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(w), m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, packet_filters(get_filter(w), m)).first;
    return it->second;
}

const AnalyticCovariance& analytic_covariance_cached(Wavelet w, int m) {
    static std::map<std::pair<int, int>, AnalyticCovariance> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(w), m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, analytic_covariance(packet_filters_cached(w, m))).first;
    return it->second;
}

const std::vector<double>& pyramid_wavelet_filter_cached(Wavelet w, int j) {
    static std::map<std::pair<int, int>, std::vector<double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(w), j);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, modwt_wavelet_filter(get_filter(w), j)).first;
    return it->second;
}

const AnalyticCovariance& pyramid_covariance_cached(Wavelet w, int m) {
    static std::map<std::pair<int, int>, AnalyticCovariance> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(w), m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    AnalyticCovariance cov;
    cov.m = m;
    cov.a_matrix = SymMatrix(m);
    cov.A = SymMatrix(m);
    const FilterPair p = get_filter(w);
    std::vector<std::vector<double>> lev;
    for (int j = 1; j <= m; ++j) lev.push_back(modwt_wavelet_filter(p, j));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const double v = analytic_a_filters(lev[i], lev[j]);
            cov.a_matrix.at(i, j) = v;
            cov.a_matrix.at(j, i) = v;
        }
    for (int i = 0; i < m; ++i) {
        const double di = cov.a_matrix.at(i, i);
        if (di <= 0.0)
            throw Error(Errc::nonpositive_variance, "analytic variance not positive");
        for (int j = 0; j < m; ++j)
            cov.A.at(i, j) = cov.a_matrix.at(i, j) /
                             std::sqrt(di * cov.a_matrix.at(j, j));
    }
    return cache.emplace(key, std::move(cov)).first->second;
}

std::vector<double> wv_analytic(const std::vector<double>& xi,
                                const std::vector<double>& a_diag, int T, int m) {
    if (xi.size() != a_diag.size() + 1)
        throw Error(Errc::length_mismatch, "wv_analytic: band count mismatch");
    const double center = std::ldexp(1.0, -m);
    std::vector<double> wv(a_diag.size());
    for (std::size_t n = 0; n < a_diag.size(); ++n) {
        if (a_diag[n] <= 0.0)
            throw Error(Errc::nonpositive_variance, "wv_analytic: variance <= 0");
        wv[n] = std::sqrt(T / a_diag[n]) * (xi[n + 1] - center);
    }
    return wv;
}

std::vector<double> wv_estimated(const std::vector<double>& xi, double sigma2,
                                 const std::vector<double>& avar, int T, int m) {
    if (xi.size() != avar.size() + 1)
        throw Error(Errc::length_mismatch, "wv_estimated: band count mismatch");
    if (sigma2 <= 0.0) throw Error(Errc::zero_energy, "wv_estimated: sigma2 <= 0");
    const double center = std::ldexp(1.0, -m);
    std::vector<double> wv(avar.size());
    for (std::size_t n = 0; n < avar.size(); ++n) {
        if (avar[n] <= 0.0)
            throw Error(Errc::nonpositive_variance, "wv_estimated: variance <= 0");
        wv[n] = std::sqrt(T * sigma2 * sigma2 / (4.0 * avar[n])) * (xi[n + 1] - center);
    }
    return wv;
}

std::vector<double> xi_hat_levels(const ModwtCoefficients& coeffs, const Series& y) {
    const double e = energy(y.values);
    if (e <= 0.0) throw Error(Errc::zero_energy, "xi_hat_levels: zero energy");
    std::vector<double> xi;
    xi.reserve(coeffs.W_levels.size() + 1);
    for (const auto& w : coeffs.W_levels) xi.push_back(energy(w) / e);
    xi.push_back(energy(coeffs.V) / e);
    return xi;
}

GsResult gs_statistics_analytic(const ModwtCoefficients& coeffs, const Series& y,
                                const std::vector<double>& a_diag) {
    GsResult out;
    out.m = coeffs.m;
    out.source = VarianceSource::analytic;
    out.xi_levels = xi_hat_levels(coeffs, y);
    const int T = y.T();
    out.gs.resize(coeffs.m);
    for (int j = 1; j <= coeffs.m; ++j) {
        if (a_diag[j - 1] <= 0.0)
            throw Error(Errc::nonpositive_variance, "gs: variance <= 0");
        out.gs[j - 1] =
            std::sqrt(T / a_diag[j - 1]) * (out.xi_levels[j - 1] - std::ldexp(1.0, -j));
    }
    return out;
}

GsResult gs_statistics_estimated(const ModwtCoefficients& coeffs, const Series& y,
                                 double sigma2, const std::vector<double>& avar) {
    GsResult out;
    out.m = coeffs.m;
    out.source = VarianceSource::newey_west;
    out.xi_levels = xi_hat_levels(coeffs, y);
    if (sigma2 <= 0.0) throw Error(Errc::zero_energy, "gs: sigma2 <= 0");
    const int T = y.T();
    out.gs.resize(coeffs.m);
    for (int j = 1; j <= coeffs.m; ++j) {
        if (avar[j - 1] <= 0.0)
            throw Error(Errc::nonpositive_variance, "gs: variance <= 0");
        out.gs[j - 1] = std::sqrt(T * sigma2 * sigma2 / (4.0 * avar[j - 1])) *
                        (out.xi_levels[j - 1] - std::ldexp(1.0, -j));
    }
    return out;
}

} // namespace mfb
