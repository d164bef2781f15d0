#pragma once

#include <vector>

#include "filters.hpp"

namespace mfb {

struct Series {
    std::vector<double> values;
    int T() const { return static_cast<int>(values.size()); }
};

// Throws on empty or nonfinite input.
void check_series(const Series& y);
double series_mean(const Series& y);
Series demeaned(const Series& y);

// Row n holds W_{m,n,t} = sum_l v~_{m,n,l} y_{(t-l) mod T}.
struct PacketCoefficients {
    int m = 0;
    int T = 0;
    std::vector<std::vector<double>> W;
};

PacketCoefficients modwpt(const Series& y, const PacketFilterBank& bank);

// Pyramid output: one wavelet row per level plus the final smooth.
struct ModwtCoefficients {
    int m = 0;
    int T = 0;
    std::vector<std::vector<double>> W_levels;
    std::vector<double> V;
};

ModwtCoefficients modwt(const Series& y, const FilterPair& p, int m);

// |sum_l v~_{m,n,l} e^{-i 2 pi f l}|^2 at frequency f in [0, 1/2].
double squared_gain(const PacketFilterBank& bank, int n, double f);

// Circular filtering of y with an arbitrary filter (stride-1 taps).
std::vector<double> circular_filter(const std::vector<double>& f,
                                    const std::vector<double>& y);

} // namespace mfb
