#include <doctest.h>

#include <cmath>
#include <random>

#include "core/transform.hpp"

using namespace mfb;

namespace {

Series random_series(int T, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Series y;
    y.values.resize(T);
    for (double& v : y.values) v = nd(rng);
    return y;
}

double energy(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

} // namespace

TEST_CASE("check_series rejects bad input") {
    CHECK_THROWS_AS(check_series(Series{}), Error);
    CHECK_THROWS_AS(check_series(Series{{1.0}}), Error);
    CHECK_THROWS_AS(check_series(Series{{1.0, std::nan(""), 2.0}}), Error);
    CHECK_NOTHROW(check_series(Series{{1.0, 2.0}}));
}

TEST_CASE("demeaned subtracts the sample mean") {
    const Series y{{1.0, 2.0, 3.0, 6.0}};
    CHECK(series_mean(y) == doctest::Approx(3.0).epsilon(1e-15));
    const Series d = demeaned(y);
    CHECK(d.values[0] == doctest::Approx(-2.0));
    CHECK(d.values[3] == doctest::Approx(3.0));
    CHECK(std::abs(series_mean(d)) < 1e-14);
}

TEST_CASE("circular_filter tiny example") {
    const auto out = circular_filter({1.0, 2.0}, {1.0, 2.0, 3.0});
    REQUIRE(out.size() == 3);
    CHECK(out[0] == doctest::Approx(7.0));
    CHECK(out[1] == doctest::Approx(4.0));
    CHECK(out[2] == doctest::Approx(7.0));
}

TEST_CASE("haar level one on a short ramp") {
    const Series y{{1.0, 2.0, 3.0, 4.0}};
    const auto bank = packet_filters(get_filter(Wavelet::haar), 1);
    const auto c = modwpt(y, bank);
    REQUIRE(c.W.size() == 2);
    // smooth band: averages of adjacent pairs, circular
    CHECK(c.W[0][0] == doctest::Approx(2.5));
    CHECK(c.W[0][1] == doctest::Approx(1.5));
    CHECK(c.W[0][2] == doctest::Approx(2.5));
    CHECK(c.W[0][3] == doctest::Approx(3.5));
    // detail band: half-differences
    CHECK(c.W[1][0] == doctest::Approx(-1.5));
    CHECK(c.W[1][1] == doctest::Approx(0.5));
    CHECK(c.W[1][2] == doctest::Approx(0.5));
    CHECK(c.W[1][3] == doctest::Approx(0.5));
}

TEST_CASE("alternating series lands in the top sequency band") {
    const Series y{{1.0, -1.0, 1.0, -1.0}};
    const auto bank = packet_filters(get_filter(Wavelet::haar), 2);
    const auto c = modwpt(y, bank);
    for (int n = 0; n < 3; ++n)
        for (double v : c.W[n]) CHECK(std::abs(v) < 1e-14);
    CHECK(c.W[3][0] == doctest::Approx(1.0));
    CHECK(c.W[3][1] == doctest::Approx(-1.0));
    CHECK(c.W[3][2] == doctest::Approx(1.0));
    CHECK(c.W[3][3] == doctest::Approx(-1.0));
}

TEST_CASE("cascade recursion agrees with direct convolution by the bank rows") {
    const Series y = random_series(64, 11u);
    for (Wavelet w : all_wavelets()) {
        for (int m = 1; m <= 3; ++m) {
            const auto bank = packet_filters(get_filter(w), m);
            const auto c = modwpt(y, bank);
            for (int n = 0; n < bank.rows(); ++n) {
                const auto direct = circular_filter(bank.row(n), y.values);
                for (int t = 0; t < y.T(); ++t)
                    CHECK(c.W[n][t] == doctest::Approx(direct[t]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("transform conserves energy") {
    const Series y = random_series(128, 7u);
    const double ey = energy(y.values);
    for (Wavelet w : all_wavelets()) {
        for (int m = 1; m <= 4; ++m) {
            const auto c = modwpt(y, packet_filters(get_filter(w), m));
            double ew = 0.0;
            for (const auto& row : c.W) ew += energy(row);
            CAPTURE(wavelet_name(w));
            CAPTURE(m);
            CHECK(std::abs(ew - ey) < 1e-8 * ey);
        }
    }
}

TEST_CASE("transform is linear") {
    const Series y1 = random_series(50, 3u);
    const Series y2 = random_series(50, 4u);
    Series mix;
    mix.values.resize(50);
    for (int t = 0; t < 50; ++t)
        mix.values[t] = 2.0 * y1.values[t] - 0.5 * y2.values[t];

    const auto bank = packet_filters(get_filter(Wavelet::d4), 3);
    const auto a = modwpt(y1, bank);
    const auto b = modwpt(y2, bank);
    const auto c = modwpt(mix, bank);
    for (int n = 0; n < bank.rows(); ++n)
        for (int t = 0; t < 50; ++t)
            CHECK(c.W[n][t] ==
                  doctest::Approx(2.0 * a.W[n][t] - 0.5 * b.W[n][t]).epsilon(1e-10));
}

TEST_CASE("transform commutes with circular shifts") {
    const Series y = random_series(40, 9u);
    const int s = 13;
    Series ys;
    ys.values.resize(40);
    for (int t = 0; t < 40; ++t) ys.values[t] = y.values[((t - s) % 40 + 40) % 40];

    const auto bank = packet_filters(get_filter(Wavelet::d6), 2);
    const auto a = modwpt(y, bank);
    const auto b = modwpt(ys, bank);
    for (int n = 0; n < bank.rows(); ++n)
        for (int t = 0; t < 40; ++t)
            CHECK(b.W[n][t] == a.W[n][((t - s) % 40 + 40) % 40]);
}

TEST_CASE("pyramid levels match their cascade filters") {
    const Series y = random_series(96, 21u);
    for (Wavelet w : {Wavelet::haar, Wavelet::d8}) {
        const FilterPair p = get_filter(w);
        const int m = 4;
        const auto c = modwt(y, p, m);
        REQUIRE(static_cast<int>(c.W_levels.size()) == m);
        for (int j = 1; j <= m; ++j) {
            const auto direct = circular_filter(modwt_wavelet_filter(p, j), y.values);
            for (int t = 0; t < y.T(); ++t)
                CHECK(c.W_levels[j - 1][t] ==
                      doctest::Approx(direct[t]).epsilon(1e-10));
        }
        const auto smooth = circular_filter(modwt_scaling_filter(p, m), y.values);
        for (int t = 0; t < y.T(); ++t)
            CHECK(c.V[t] == doctest::Approx(smooth[t]).epsilon(1e-10));
    }
}

TEST_CASE("pyramid conserves energy") {
    const Series y = random_series(200, 17u);
    const double ey = energy(y.values);
    const auto c = modwt(y, get_filter(Wavelet::d4), 5);
    double e = energy(c.V);
    for (const auto& row : c.W_levels) e += energy(row);
    CHECK(std::abs(e - ey) < 1e-8 * ey);
}

TEST_CASE("squared gain endpoints and band sum") {
    for (Wavelet w : all_wavelets()) {
        for (int m = 1; m <= 3; ++m) {
            const auto bank = packet_filters(get_filter(w), m);
            CHECK(squared_gain(bank, 0, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
            for (int n = 1; n < bank.rows(); ++n)
                CHECK(std::abs(squared_gain(bank, n, 0.0)) < 1e-10);
            // bands tile the spectrum: gains add to one at every frequency
            for (double f : {0.0, 0.08, 0.17, 0.25, 0.33, 0.42, 0.5}) {
                double s = 0.0;
                for (int n = 0; n < bank.rows(); ++n) s += squared_gain(bank, n, f);
                CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
    // highest haar band passes the Nyquist frequency untouched
    const auto bank = packet_filters(get_filter(Wavelet::haar), 2);
    CHECK(squared_gain(bank, 3, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("squared gain integrates to the filter energy") {
    // rectangle rule over the full circle, exact for trig polynomials
    for (Wavelet w : {Wavelet::haar, Wavelet::d4}) {
        for (int m = 1; m <= 3; ++m) {
            const auto bank = packet_filters(get_filter(w), m);
            const int N = 4 * bank.L_m + 8;
            for (int n = 0; n < bank.rows(); ++n) {
                double acc = squared_gain(bank, n, 0.0) + squared_gain(bank, n, 0.5);
                for (int k = 1; 2 * k < N; ++k)
                    acc += 2.0 * squared_gain(bank, n, static_cast<double>(k) / N);
                const double integral = acc / N;
                CHECK(integral == doctest::Approx(std::ldexp(1.0, -m)).epsilon(1e-10));
            }
        }
    }
    const auto bank = packet_filters(get_filter(Wavelet::haar), 1);
    CHECK_THROWS_AS(squared_gain(bank, 0, 0.7), Error);
    CHECK_THROWS_AS(squared_gain(bank, 0, -0.1), Error);
}
