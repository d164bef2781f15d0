#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mfb {

enum class Wavelet { haar, d4, d6, d8, d10 };

Wavelet wavelet_from_name(const std::string& name);
const char* wavelet_name(Wavelet w);
const std::vector<Wavelet>& all_wavelets();

// Unit-level filter pair. Convention: sum(h)=0, sum(g)=1, sum(h^2)=sum(g^2)=1/2,
// g_l = (-1)^(l+1) h_{L-1-l}.
struct FilterPair {
    Wavelet name = Wavelet::haar;
    std::vector<double> h;
    std::vector<double> g;
    int L() const { return static_cast<int>(g.size()); }
};

struct FilterViolation {
    std::string what;
    double residual = 0.0;
};

FilterPair get_filter(Wavelet name);
FilterPair get_filter(const std::string& name);

// Empty report iff all filter invariants hold within tol.
std::vector<FilterViolation> validate_filter(const FilterPair& p, double tol = 1e-12);

// Cascade filters v~_{m,n} for all bands n at scale m, sequency ordered.
struct PacketFilterBank {
    FilterPair base;
    int m = 0;
    int L_m = 0;
    std::vector<std::vector<double>> filters;

    int rows() const { return static_cast<int>(filters.size()); }
    const std::vector<double>& row(int n) const;
};

inline constexpr std::size_t kDefaultPacketBudget = std::size_t(1) << 24;

// Recursion: v~_{m,n,l} = sum_k u_{n,k} v~_{m-1,floor(n/2),l-2^(m-1)k},
// u_n = g if n mod 4 in {0,3} else h, base v~_{1,0}=g, v~_{1,1}=h.
PacketFilterBank packet_filters(const FilterPair& p, int m,
                                std::size_t budget = kDefaultPacketBudget);

// Pyramid cascade filters at level j (wavelet and scaling), circular use.
std::vector<double> modwt_wavelet_filter(const FilterPair& p, int j);
std::vector<double> modwt_scaling_filter(const FilterPair& p, int j);

} // namespace mfb
