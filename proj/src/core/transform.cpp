#include "transform.hpp"

#include <cmath>
#include <numeric>

namespace mfb {

namespace {

// Circular convolution with taps spaced `stride` apart.
std::vector<double> strided_circular(const std::vector<double>& taps, int stride,
                                     const std::vector<double>& x) {
    const int T = static_cast<int>(x.size());
    const int L = static_cast<int>(taps.size());
    const int step = stride % T;
    std::vector<double> out(T);
    for (int t = 0; t < T; ++t) {
        double acc = 0.0;
        int idx = t;
        for (int k = 0; k < L; ++k) {
            acc += taps[k] * x[idx];
            idx -= step;
            if (idx < 0) idx += T;
        }
        out[t] = acc;
    }
    return out;
}

} // namespace

void check_series(const Series& y) {
    if (y.values.empty()) throw Error(Errc::empty_series, "series is empty");
    if (y.T() < 2) throw Error(Errc::series_too_short, "series needs at least 2 values");
    for (double v : y.values)
        if (!std::isfinite(v))
            throw Error(Errc::invalid_argument, "series contains a nonfinite value");
}

double series_mean(const Series& y) {
    if (y.values.empty()) throw Error(Errc::empty_series, "series is empty");
    return std::accumulate(y.values.begin(), y.values.end(), 0.0) / y.T();
}

Series demeaned(const Series& y) {
    const double mu = series_mean(y);
    Series out = y;
    for (double& v : out.values) v -= mu;
    return out;
}

std::vector<double> circular_filter(const std::vector<double>& f,
                                    const std::vector<double>& y) {
    return strided_circular(f, 1, y);
}

PacketCoefficients modwpt(const Series& y, const PacketFilterBank& bank) {
    check_series(y);
    const auto& p = bank.base;

    // Cascade level by level; identical to direct convolution with the
    // bank's cascade filters but cheaper.
    std::vector<std::vector<double>> rows{circular_filter(p.g, y.values),
                                          circular_filter(p.h, y.values)};
    for (int j = 2; j <= bank.m; ++j) {
        const int stride = 1 << (j - 1);
        std::vector<std::vector<double>> next;
        next.reserve(std::size_t(1) << j);
        for (int n = 0; n < (1 << j); ++n) {
            const auto& u = (n % 4 == 0 || n % 4 == 3) ? p.g : p.h;
            next.push_back(strided_circular(u, stride, rows[n / 2]));
        }
        rows = std::move(next);
    }

    PacketCoefficients out;
    out.m = bank.m;
    out.T = y.T();
    out.W = std::move(rows);
    return out;
}

ModwtCoefficients modwt(const Series& y, const FilterPair& p, int m) {
    check_series(y);
    if (m < 1) throw Error(Errc::invalid_argument, "modwt: m must be >= 1");

    ModwtCoefficients out;
    out.m = m;
    out.T = y.T();
    std::vector<double> v = y.values;
    for (int j = 1; j <= m; ++j) {
        const int stride = 1 << (j - 1);
        out.W_levels.push_back(strided_circular(p.h, stride, v));
        v = strided_circular(p.g, stride, v);
    }
    out.V = std::move(v);
    return out;
}

double squared_gain(const PacketFilterBank& bank, int n, double f) {
    const auto& v = bank.row(n);
    if (f < 0.0 || f > 0.5)
        throw Error(Errc::invalid_argument, "squared_gain: f must lie in [0, 1/2]");
    double re = 0.0, im = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) {
        const double ang = 2.0 * M_PI * f * static_cast<double>(l);
        re += v[l] * std::cos(ang);
        im -= v[l] * std::sin(ang);
    }
    return re * re + im * im;
}

} // namespace mfb
