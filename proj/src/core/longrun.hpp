#pragma once

#include <vector>

#include "transform.hpp"

namespace mfb {

// Bartlett-kernel long-run variance settings. bandwidth < 0 selects the
// automatic rule floor(4 (T/100)^(2/9)).
struct HacConfig {
    int bandwidth = -1;
    bool center = true;
};

int nw_auto_bandwidth(int T);

// gamma0 + 2 sum_k (1 - k/(B+1)) gamma_k, truncated at zero from below and
// floored at 1e-12 * gamma0 before use as a denominator. `floored` reports
// whether the floor was applied.
double nw_lrv(const std::vector<double>& x, const HacConfig& cfg,
              bool* floored = nullptr);

// Symmetrized cross version: c0(x,y) + sum_k w_k (ck(x,y) + ck(y,x)).
double nw_lrcov(const std::vector<double>& x, const std::vector<double>& y,
                const HacConfig& cfg);

// Mean of squares, no demeaning.
double sigma2_hat(const Series& y);

} // namespace mfb
