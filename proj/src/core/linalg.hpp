#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mfb {

// Dense symmetric matrix, row major, small orders only.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int order) : n(order), a(std::size_t(order) * order, 0.0) {}
    double& at(int i, int j) { return a[std::size_t(i) * n + j]; }
    double at(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

// Cholesky factor (lower). Throws when the matrix is not positive definite,
// reporting a diagonal-based condition estimate.
inline SymMatrix cholesky(const SymMatrix& s) {
    SymMatrix l(s.n);
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = s.at(i, j);
            for (int k = 0; k < j; ++k) sum -= l.at(i, k) * l.at(j, k);
            if (i == j) {
                if (sum <= 0.0 || !std::isfinite(sum))
                    throw Error(Errc::singular_sigma,
                                "covariance matrix not positive definite at pivot " +
                                    std::to_string(i));
                l.at(i, i) = std::sqrt(sum);
                dmax = std::max(dmax, sum);
                dmin = std::min(dmin, sum);
            } else {
                l.at(i, j) = sum / l.at(j, j);
            }
        }
    }
    if (dmin <= 0.0 || dmax / dmin > 1e14)
        throw Error(Errc::singular_sigma,
                    "covariance matrix numerically singular, pivot ratio " +
                        std::to_string(dmax / dmin));
    return l;
}

// w' S^{-1} w via the Cholesky factor of S.
inline double quad_form_inv(const SymMatrix& s, const std::vector<double>& w) {
    if (static_cast<int>(w.size()) != s.n)
        throw Error(Errc::length_mismatch, "quad_form_inv: dimension mismatch");
    const SymMatrix l = cholesky(s);
    std::vector<double> x(w.size());
    for (int i = 0; i < s.n; ++i) {
        double sum = w[i];
        for (int k = 0; k < i; ++k) sum -= l.at(i, k) * x[k];
        x[i] = sum / l.at(i, i);
    }
    double q = 0.0;
    for (double v : x) q += v * v;
    return q;
}

} // namespace mfb
