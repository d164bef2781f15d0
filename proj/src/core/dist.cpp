#include "dist.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace mfb {

namespace {

constexpr int kItMax = 500;
constexpr double kEps = 1e-16;
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

// Lower regularized incomplete gamma P(a,x) by its series expansion.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kItMax; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a,x) by modified Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kItMax; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw Error(Errc::invalid_argument, "incomplete gamma: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

} // namespace

double chi2_sf(double x, int df) {
    if (df < 1) throw Error(Errc::invalid_argument, "chi2_sf: df must be >= 1");
    if (x < 0.0) throw Error(Errc::invalid_argument, "chi2_sf: x must be >= 0");
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi2_ppf_upper(double upper_p, int df) {
    if (df < 1) throw Error(Errc::invalid_argument, "chi2_ppf_upper: df must be >= 1");
    if (upper_p <= 0.0 || upper_p >= 1.0)
        throw Error(Errc::invalid_argument, "chi2_ppf_upper: p must lie in (0,1)");
    double lo = 0.0, hi = 1.0;
    while (chi2_sf(hi, df) > upper_p) {
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_sf(mid, df) > upper_p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double normal_sf(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

} // namespace mfb
