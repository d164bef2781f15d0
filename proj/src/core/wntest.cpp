#include "wntest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dist.hpp"

namespace mfb {

namespace {

std::vector<double> diag_of(const SymMatrix& s) {
    std::vector<double> d(s.n);
    for (int i = 0; i < s.n; ++i) d[i] = s.at(i, i);
    return d;
}

SymMatrix correlation_from_lrcov(const std::vector<std::vector<double>>& z,
                                 const HacConfig& hac,
                                 std::vector<double>* avar_out,
                                 std::vector<std::string>* notes) {
    const int d = static_cast<int>(z.size());
    std::vector<double> avar(d);
    for (int i = 0; i < d; ++i) {
        bool floored = false;
        avar[i] = nw_lrv(z[i], hac, &floored);
        if (floored && notes)
            notes->push_back("long-run variance floored for component " +
                             std::to_string(i + 1));
        if (avar[i] <= 0.0)
            throw Error(Errc::nonpositive_variance,
                        "long-run variance not positive for component " +
                            std::to_string(i + 1));
    }
    SymMatrix sig(d);
    for (int i = 0; i < d; ++i) {
        sig.at(i, i) = 1.0;
        for (int j = i + 1; j < d; ++j) {
            const double c = nw_lrcov(z[i], z[j], hac) / std::sqrt(avar[i] * avar[j]);
            sig.at(i, j) = c;
            sig.at(j, i) = c;
        }
    }
    if (avar_out) *avar_out = std::move(avar);
    return sig;
}

void warn_short(const Series& y, int L_m, std::vector<std::string>& notes) {
    if (y.T() < L_m)
        notes.push_back("series shorter than the cascade filter (T=" +
                        std::to_string(y.T()) + ", L_m=" + std::to_string(L_m) + ")");
}

} // namespace

const char* test_kind_name(TestKind k) {
    switch (k) {
        case TestKind::mfb: return "MFB";
        case TestKind::gsm: return "GSM";
        case TestKind::ljung_box: return "LB";
        case TestKind::aq: return "AQ";
    }
    return "?";
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::g: return "g";
        case Variant::triangle: return "triangle";
        case Variant::e: return "e";
        case Variant::none: return "none";
    }
    return "?";
}

TestKind test_kind_from_name(const std::string& s) {
    if (s == "MFB" || s == "mfb") return TestKind::mfb;
    if (s == "GSM" || s == "gsm") return TestKind::gsm;
    if (s == "LB" || s == "lb" || s == "ljung_box") return TestKind::ljung_box;
    if (s == "AQ" || s == "aq") return TestKind::aq;
    throw Error(Errc::config, "unknown test kind: " + s);
}

Variant variant_from_name(const std::string& s) {
    if (s == "g") return Variant::g;
    if (s == "triangle" || s == "tri") return Variant::triangle;
    if (s == "e") return Variant::e;
    if (s == "none" || s.empty()) return Variant::none;
    throw Error(Errc::config, "unknown variant: " + s);
}

std::string TestReport::label() const {
    std::string s = test_kind_name(test);
    if (test == TestKind::mfb || test == TestKind::gsm) {
        s += "_" + std::to_string(m_or_K) + "^" + variant_name(variant);
        s += "(";
        s += wavelet_name(wavelet);
        s += ")";
    } else if (test == TestKind::ljung_box) {
        s += "_" + std::to_string(m_or_K);
    }
    return s;
}

TestReport mfb_test(const Series& y, Wavelet w, int m, Variant v,
                    const HacConfig& hac) {
    check_series(y);
    if (m < 1) throw Error(Errc::invalid_argument, "mfb_test: m must be >= 1");
    if (v == Variant::none) throw Error(Errc::config, "mfb_test: pick variant g, triangle or e");

    TestReport rep;
    rep.test = TestKind::mfb;
    rep.variant = v;
    rep.has_wavelet = true;
    rep.wavelet = w;
    rep.m_or_K = m;
    rep.df = (1 << m) - 1;

    const PacketFilterBank& bank = packet_filters_cached(w, m);
    warn_short(y, bank.L_m, rep.notes);
    const PacketCoefficients coeffs = modwpt(y, bank);
    const std::vector<double> xi = xi_hat(coeffs, y);
    const int T = y.T();

    std::vector<double> wv;
    SymMatrix sigma;
    if (v == Variant::g) {
        const AnalyticCovariance& cov = analytic_covariance_cached(w, m);
        wv = wv_analytic(xi, diag_of(cov.a_matrix), T, m);
        sigma = cov.A;
    } else {
        std::vector<std::vector<double>> z;
        z.reserve(bank.rows() - 1);
        for (int n = 1; n < bank.rows(); ++n) z.push_back(z_sequence(bank, n, y));
        const double s2 = sigma2_hat(y);
        if (v == Variant::triangle) {
            std::vector<double> avar(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) {
                bool floored = false;
                avar[i] = nw_lrv(z[i], hac, &floored);
                if (floored)
                    rep.notes.push_back("long-run variance floored for band " +
                                        std::to_string(i + 1));
            }
            wv = wv_estimated(xi, s2, avar, T, m);
            sigma = analytic_covariance_cached(w, m).A;
        } else {
            std::vector<double> avar;
            sigma = correlation_from_lrcov(z, hac, &avar, &rep.notes);
            wv = wv_estimated(xi, s2, avar, T, m);
        }
    }

    rep.statistic = quad_form_inv(sigma, wv);
    rep.p_value = chi2_sf(rep.statistic, rep.df);
    return rep;
}

TestReport gsm_test(const Series& y, Wavelet w, int m, Variant v,
                    const HacConfig& hac) {
    check_series(y);
    if (m < 1) throw Error(Errc::invalid_argument, "gsm_test: m must be >= 1");
    if (v == Variant::none) throw Error(Errc::config, "gsm_test: pick variant g, triangle or e");

    TestReport rep;
    rep.test = TestKind::gsm;
    rep.variant = v;
    rep.has_wavelet = true;
    rep.wavelet = w;
    rep.m_or_K = m;
    rep.df = m;

    const FilterPair pair = get_filter(w);
    const ModwtCoefficients coeffs = modwt(y, pair, m);
    const int level_len = static_cast<int>(pyramid_wavelet_filter_cached(w, m).size());
    warn_short(y, level_len, rep.notes);

    std::vector<double> gs;
    SymMatrix sigma;
    if (v == Variant::g) {
        const AnalyticCovariance& cov = pyramid_covariance_cached(w, m);
        gs = gs_statistics_analytic(coeffs, y, diag_of(cov.a_matrix)).gs;
        sigma = cov.A;
    } else {
        std::vector<std::vector<double>> z;
        z.reserve(m);
        for (int j = 1; j <= m; ++j)
            z.push_back(z_sequence_filter(pyramid_wavelet_filter_cached(w, j), y));
        const double s2 = sigma2_hat(y);
        if (v == Variant::triangle) {
            std::vector<double> avar(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) {
                bool floored = false;
                avar[i] = nw_lrv(z[i], hac, &floored);
                if (floored)
                    rep.notes.push_back("long-run variance floored for level " +
                                        std::to_string(i + 1));
            }
            gs = gs_statistics_estimated(coeffs, y, s2, avar).gs;
            sigma = pyramid_covariance_cached(w, m).A;
        } else {
            std::vector<double> avar;
            sigma = correlation_from_lrcov(z, hac, &avar, &rep.notes);
            gs = gs_statistics_estimated(coeffs, y, s2, avar).gs;
        }
    }

    rep.statistic = quad_form_inv(sigma, gs);
    rep.p_value = chi2_sf(rep.statistic, rep.df);
    return rep;
}

TestReport ljung_box(const Series& y, int K) {
    check_series(y);
    const int T = y.T();
    if (K < 1 || K >= T)
        throw Error(Errc::invalid_argument, "ljung_box: K must satisfy 1 <= K < T");

    TestReport rep;
    rep.test = TestKind::ljung_box;
    rep.variant = Variant::none;
    rep.m_or_K = K;
    rep.df = K;

    const Series yc = demeaned(y);
    double g0 = 0.0;
    for (double v : yc.values) g0 += v * v;
    g0 /= T;
    if (g0 <= 0.0) throw Error(Errc::zero_energy, "ljung_box: zero variance");

    double q = 0.0;
    for (int k = 1; k <= K; ++k) {
        double gk = 0.0;
        for (int t = k; t < T; ++t) gk += yc.values[t] * yc.values[t - k];
        gk /= T;
        const double rho = gk / g0;
        q += rho * rho / (T - k);
    }
    rep.statistic = static_cast<double>(T) * (T + 2.0) * q;
    rep.p_value = chi2_sf(rep.statistic, rep.df);
    return rep;
}

TestReport aq_test(const Series& y) {
    check_series(y);
    const int T = y.T();
    if (T < 30) throw Error(Errc::series_too_short, "aq_test: need T >= 30");

    TestReport rep;
    rep.test = TestKind::aq;
    rep.variant = Variant::none;
    rep.df = 1;

    const double q_switch = 2.4;
    const int d = std::min(20, T / 4);
    const Series yc = demeaned(y);

    std::vector<double> rho2(d);
    double max_abs = 0.0;
    for (int k = 1; k <= d; ++k) {
        double gk = 0.0, tk = 0.0;
        for (int t = k; t < T; ++t) {
            gk += yc.values[t] * yc.values[t - k];
            tk += yc.values[t] * yc.values[t] * yc.values[t - k] * yc.values[t - k];
        }
        gk /= T;
        tk /= T;
        if (tk <= 0.0) throw Error(Errc::zero_energy, "aq_test: degenerate moments");
        rho2[k - 1] = gk * gk / tk;
        max_abs = std::max(max_abs, std::sqrt(T * rho2[k - 1]));
    }

    const bool bic = max_abs <= std::sqrt(q_switch * std::log(static_cast<double>(T)));
    double best_l = -std::numeric_limits<double>::infinity();
    double best_q = 0.0;
    int best_p = 1;
    double cum = 0.0;
    for (int p = 1; p <= d; ++p) {
        cum += rho2[p - 1];
        const double qp = T * cum;
        const double pen = bic ? p * std::log(static_cast<double>(T)) : 2.0 * p;
        if (qp - pen > best_l) {
            best_l = qp - pen;
            best_q = qp;
            best_p = p;
        }
    }
    rep.m_or_K = best_p;
    rep.statistic = best_q;
    rep.p_value = chi2_sf(rep.statistic, 1);
    rep.notes.push_back("selected lag " + std::to_string(best_p) +
                        (bic ? " (BIC penalty)" : " (AIC penalty)"));
    return rep;
}

} // namespace mfb
