#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "core/wvr_stats.hpp"

using namespace mfb;

namespace {

Series random_series(int T, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Series y;
    y.values.resize(T);
    for (double& v : y.values) v = nd(rng);
    return y;
}

// Direct four-index evaluation of the asymptotic scaling constant,
// 4 sum_s sum_{i<j} f1_i f1_j f2_{i-s} f2_{j-s}, zero padded.
double brute_a(const std::vector<double>& f1, const std::vector<double>& f2) {
    const int n1 = static_cast<int>(f1.size());
    const int n2 = static_cast<int>(f2.size());
    double tot = 0.0;
    for (int s = -(n1 + n2); s <= n1 + n2; ++s)
        for (int i = 0; i < n1; ++i)
            for (int j = i + 1; j < n1; ++j) {
                const double a = (i - s >= 0 && i - s < n2) ? f2[i - s] : 0.0;
                const double b = (j - s >= 0 && j - s < n2) ? f2[j - s] : 0.0;
                tot += f1[i] * f1[j] * a * b;
            }
    return 4.0 * tot;
}

} // namespace

TEST_CASE("energy shares sum to one") {
    const Series y = random_series(100, 31u);
    for (Wavelet w : all_wavelets()) {
        for (int m = 1; m <= 3; ++m) {
            const auto& bank = packet_filters_cached(w, m);
            const auto xi = xi_hat(modwpt(y, bank), y);
            const double s = std::accumulate(xi.begin(), xi.end(), 0.0);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
            for (double v : xi) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("unit-scale cross products match the lag-one product form") {
    const Series y = random_series(32, 8u);
    const auto& bank = packet_filters_cached(Wavelet::haar, 1);
    const auto z = z_sequence(bank, 1, y);
    for (int t = 0; t < 32; ++t) {
        const double prev = y.values[(t + 31) % 32];
        CHECK(z[t] == doctest::Approx(-0.25 * y.values[t] * prev).epsilon(1e-12));
    }
    // smooth band has the opposite sign
    const auto z0 = z_sequence(bank, 0, y);
    for (int t = 0; t < 32; ++t)
        CHECK(z0[t] == doctest::Approx(-z[t]).epsilon(1e-12));
}

TEST_CASE("energy share decomposes into center plus cross terms") {
    const Series y = random_series(90, 44u);
    const double ey = std::inner_product(y.values.begin(), y.values.end(),
                                         y.values.begin(), 0.0);
    for (Wavelet w : {Wavelet::haar, Wavelet::d4, Wavelet::d10}) {
        for (int m = 1; m <= 3; ++m) {
            const auto& bank = packet_filters_cached(w, m);
            const auto xi = xi_hat(modwpt(y, bank), y);
            for (int n = 0; n < bank.rows(); ++n) {
                const auto z = z_sequence(bank, n, y);
                const double sz = std::accumulate(z.begin(), z.end(), 0.0);
                const double want = std::ldexp(1.0, -m) + 2.0 * sz / ey;
                CHECK(xi[n] == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("scaling constant matches a direct four-index evaluation") {
    for (Wavelet w : {Wavelet::haar, Wavelet::d4}) {
        const auto& bank = packet_filters_cached(w, 2);
        for (int n1 = 1; n1 <= 3; ++n1)
            for (int n2 = 1; n2 <= 3; ++n2)
                CHECK(analytic_a(bank, n1, n2) ==
                      doctest::Approx(brute_a(bank.row(n1), bank.row(n2)))
                          .epsilon(1e-12));
    }
}

TEST_CASE("scaling constant is symmetric") {
    const auto& bank = packet_filters_cached(Wavelet::d6, 3);
    for (int i = 1; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            CHECK(analytic_a(bank, i, j) ==
                  doctest::Approx(analytic_a(bank, j, i)).epsilon(1e-12));
}

TEST_CASE("unit-scale variance constant is one quarter") {
    const auto& bank = packet_filters_cached(Wavelet::haar, 1);
    CHECK(analytic_a(bank, 1, 1) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("scale-two covariance matrix, frozen values") {
    const auto& cov = analytic_covariance_cached(Wavelet::haar, 2);
    REQUIRE(cov.a_matrix.n == 3);
    CHECK(cov.a_matrix.at(0, 0) == doctest::Approx(3.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(0, 1) == doctest::Approx(1.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(0, 2) == doctest::Approx(-3.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(1, 1) == doctest::Approx(3.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(1, 2) == doctest::Approx(-1.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(2, 2) == doctest::Approx(7.0 / 32).epsilon(1e-13));

    CHECK(cov.A.at(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cov.A.at(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(cov.A.at(0, 2) == doctest::Approx(-0.65465367070798).epsilon(1e-10));
    CHECK(cov.A.at(1, 2) == doctest::Approx(-0.21821789023599).epsilon(1e-10));
}

TEST_CASE("correlation matrices admit a Cholesky factor") {
    for (Wavelet w : all_wavelets()) {
        for (int m = 1; m <= 4; ++m) {
            CAPTURE(wavelet_name(w));
            CAPTURE(m);
            const auto& cov = analytic_covariance_cached(w, m);
            CHECK_NOTHROW(cholesky(cov.A));
            const auto& pyr = pyramid_covariance_cached(w, m);
            CHECK_NOTHROW(cholesky(pyr.A));
        }
    }
}

TEST_CASE("pyramid covariance across levels, frozen values") {
    const auto& cov = pyramid_covariance_cached(Wavelet::haar, 3);
    REQUIRE(cov.a_matrix.n == 3);
    CHECK(cov.a_matrix.at(0, 0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(cov.a_matrix.at(0, 1) == doctest::Approx(-0.0625).epsilon(1e-13));
    CHECK(cov.a_matrix.at(0, 2) == doctest::Approx(-5.0 / 64).epsilon(1e-13));
    CHECK(cov.a_matrix.at(1, 1) == doctest::Approx(3.0 / 32).epsilon(1e-13));
    CHECK(cov.a_matrix.at(1, 2) == doctest::Approx(1.0 / 128).epsilon(1e-13));
    CHECK(cov.a_matrix.at(2, 2) == doctest::Approx(15.0 / 256).epsilon(1e-13));
    CHECK(cov.A.at(0, 1) == doctest::Approx(-0.40824829046386).epsilon(1e-10));
    CHECK(cov.A.at(0, 2) == doctest::Approx(-0.64549722436790).epsilon(1e-10));
    CHECK(cov.A.at(1, 2) == doctest::Approx(0.10540925533895).epsilon(1e-10));
}

TEST_CASE("level-one pyramid variance equals the unit-scale band variance") {
    for (Wavelet w : all_wavelets()) {
        const auto& pyr = pyramid_covariance_cached(w, 1);
        const auto& bank = packet_filters_cached(w, 1);
        CHECK(pyr.a_matrix.at(0, 0) ==
              doctest::Approx(analytic_a(bank, 1, 1)).epsilon(1e-13));
    }
}

TEST_CASE("standardized band statistic formulas") {
    const std::vector<double> xi{0.52, 0.48};
    const std::vector<double> a{0.25};
    const auto wv = wv_analytic(xi, a, 100, 1);
    REQUIRE(wv.size() == 1);
    // sqrt(100 / 0.25) * (0.48 - 0.5)
    CHECK(wv[0] == doctest::Approx(-0.4).epsilon(1e-12));

    const auto we = wv_estimated(xi, 2.0, {0.09}, 100, 1);
    // sqrt(100 * 4 / 0.36) * (0.48 - 0.5)
    CHECK(we[0] == doctest::Approx(-std::sqrt(400.0 / 0.36) * 0.02).epsilon(1e-12));
}

TEST_CASE("level shares and the smooth close the energy budget") {
    const Series y = random_series(150, 2u);
    const auto c = modwt(y, get_filter(Wavelet::d4), 4);
    const auto xi = xi_hat_levels(c, y);
    REQUIRE(xi.size() == 5);
    const double s = std::accumulate(xi.begin(), xi.end(), 0.0);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("level statistics center each level at its own share") {
    // iid data keep standardized statistics at moderate size
    const Series y = random_series(4096, 77u);
    const auto& pyr = pyramid_covariance_cached(Wavelet::haar, 4);
    std::vector<double> a_diag(4);
    for (int i = 0; i < 4; ++i) a_diag[i] = pyr.a_matrix.at(i, i);
    const auto c = modwt(y, get_filter(Wavelet::haar), 4);
    const auto gs = gs_statistics_analytic(c, y, a_diag);
    REQUIRE(gs.gs.size() == 4);
    for (double v : gs.gs) CHECK(std::abs(v) < 6.0);

    // at the unit scale the level statistic equals the band statistic
    const auto c1 = modwt(y, get_filter(Wavelet::haar), 1);
    const auto gs1 = gs_statistics_analytic(c1, y, {0.25});
    const auto& bank = packet_filters_cached(Wavelet::haar, 1);
    const auto xi = xi_hat(modwpt(y, bank), y);
    const auto wv = wv_analytic(xi, {0.25}, y.T(), 1);
    CHECK(gs1.gs[0] == doctest::Approx(wv[0]).epsilon(1e-12));
}

TEST_CASE("cached objects are stable across calls") {
    const auto& b1 = packet_filters_cached(Wavelet::d8, 3);
    const auto& b2 = packet_filters_cached(Wavelet::d8, 3);
    CHECK(&b1 == &b2);
    const auto& c1 = analytic_covariance_cached(Wavelet::d8, 3);
    const auto& c2 = analytic_covariance_cached(Wavelet::d8, 3);
    CHECK(&c1 == &c2);
}
