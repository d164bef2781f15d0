#include "filters.hpp"

#include <cctype>
#include <cmath>

namespace mfb {

namespace {

const double kSq3 = std::sqrt(3.0);
const double kSq2 = std::sqrt(2.0);

// Scaling filters under the sum(g)=1, sum(g^2)=1/2 convention. The d6..d10
// entries are the orthonormal Daubechies extremal-phase coefficients divided
// by sqrt(2).
std::vector<double> scaling_coeffs(Wavelet w) {
    switch (w) {
        case Wavelet::haar:
            return {0.5, 0.5};
        case Wavelet::d4:
            return {(1.0 + kSq3) / 8.0, (3.0 + kSq3) / 8.0,
                    (3.0 - kSq3) / 8.0, (1.0 - kSq3) / 8.0};
        case Wavelet::d6:
            return {0.33267055295008261599851158914 / kSq2,
                    0.80689150931109257649449360409 / kSq2,
                    0.45987750211849157009515194215 / kSq2,
                    -0.13501102001025458869638990670 / kSq2,
                    -0.08544127388202666169281916918 / kSq2,
                    0.03522629188570953660274066472 / kSq2};
        case Wavelet::d8:
            return {0.23037781330889650086329118304 / kSq2,
                    0.71484657055291564708992195527 / kSq2,
                    0.63088076792985890788171633830 / kSq2,
                    -0.02798376941685985421141374718 / kSq2,
                    -0.18703481171909308407957067279 / kSq2,
                    0.03084138183556076362721936253 / kSq2,
                    0.03288301166688519973540751355 / kSq2,
                    -0.01059740178506903210488320852 / kSq2};
        case Wavelet::d10:
            return {0.16010239797419291448072374802 / kSq2,
                    0.60382926979718967054011930653 / kSq2,
                    0.72430852843777292772807124410 / kSq2,
                    0.13842814590132073150539714634 / kSq2,
                    -0.24229488706638203186257137947 / kSq2,
                    -0.03224486958463837464847975506 / kSq2,
                    0.07757149384004571352313048939 / kSq2,
                    -0.00624149021279827427419051911 / kSq2,
                    -0.01258075199908199946850973993 / kSq2,
                    0.00333572528547377127799818342 / kSq2};
    }
    throw Error(Errc::unknown_wavelet, "unknown wavelet id");
}

// Circular convolution of parent with u upsampled by `stride`.
std::vector<double> cascade_step(const std::vector<double>& u,
                                 const std::vector<double>& parent,
                                 int stride) {
    const int L = static_cast<int>(u.size());
    const int lp = static_cast<int>(parent.size());
    std::vector<double> out(static_cast<std::size_t>(stride) * (L - 1) + lp, 0.0);
    for (int k = 0; k < L; ++k) {
        const int off = stride * k;
        for (int l = 0; l < lp; ++l) out[off + l] += u[k] * parent[l];
    }
    return out;
}

} // namespace

Wavelet wavelet_from_name(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "haar" || s == "d2") return Wavelet::haar;
    if (s == "d4") return Wavelet::d4;
    if (s == "d6") return Wavelet::d6;
    if (s == "d8") return Wavelet::d8;
    if (s == "d10") return Wavelet::d10;
    throw Error(Errc::unknown_wavelet, "unknown wavelet: " + name);
}

const char* wavelet_name(Wavelet w) {
    switch (w) {
        case Wavelet::haar: return "haar";
        case Wavelet::d4: return "d4";
        case Wavelet::d6: return "d6";
        case Wavelet::d8: return "d8";
        case Wavelet::d10: return "d10";
    }
    return "?";
}

const std::vector<Wavelet>& all_wavelets() {
    static const std::vector<Wavelet> v{Wavelet::haar, Wavelet::d4, Wavelet::d6,
                                        Wavelet::d8, Wavelet::d10};
    return v;
}

FilterPair get_filter(Wavelet name) {
    FilterPair p;
    p.name = name;
    p.g = scaling_coeffs(name);
    const int L = static_cast<int>(p.g.size());
    p.h.resize(L);
    for (int l = 0; l < L; ++l) {
        const double v = p.g[L - 1 - l];
        p.h[l] = (l % 2 == 0) ? v : -v;
    }
    return p;
}

FilterPair get_filter(const std::string& name) {
    return get_filter(wavelet_from_name(name));
}

std::vector<FilterViolation> validate_filter(const FilterPair& p, double tol) {
    if (p.h.empty() || p.g.empty())
        throw Error(Errc::invalid_argument, "validate_filter: empty filter vector");
    if (p.h.size() != p.g.size())
        throw Error(Errc::invalid_argument, "validate_filter: h and g lengths differ");

    std::vector<FilterViolation> out;
    const int L = p.L();
    auto push = [&](const std::string& what, double residual) {
        if (std::abs(residual) > tol) out.push_back({what, std::abs(residual)});
    };

    double sh = 0.0, sg = 0.0, nh = 0.0, ng = 0.0;
    for (int l = 0; l < L; ++l) {
        sh += p.h[l];
        sg += p.g[l];
        nh += p.h[l] * p.h[l];
        ng += p.g[l] * p.g[l];
    }
    push("sum(h)=0", sh);
    push("sum(g)=1", sg - 1.0);
    push("sum(h^2)=1/2", nh - 0.5);
    push("sum(g^2)=1/2", ng - 0.5);

    for (int n = 1; 2 * n < L; ++n) {
        double hh = 0.0, gg = 0.0, gh = 0.0;
        for (int l = 0; l + 2 * n < L; ++l) {
            hh += p.h[l] * p.h[l + 2 * n];
            gg += p.g[l] * p.g[l + 2 * n];
            gh += p.g[l] * p.h[l + 2 * n];
        }
        // also the reversed cross pairing, h lagging g
        double hg = 0.0;
        for (int l = 0; l + 2 * n < L; ++l) hg += p.h[l] * p.g[l + 2 * n];
        push("even-shift orth h.h, shift " + std::to_string(2 * n), hh);
        push("even-shift orth g.g, shift " + std::to_string(2 * n), gg);
        push("even-shift orth g.h, shift " + std::to_string(2 * n), gh);
        push("even-shift orth h.g, shift " + std::to_string(2 * n), hg);
    }
    // zero-shift cross orthogonality
    double gh0 = 0.0;
    for (int l = 0; l < L; ++l) gh0 += p.g[l] * p.h[l];
    push("even-shift orth g.h, shift 0", gh0);

    for (int l = 0; l < L; ++l) {
        const double want = (l % 2 == 1) ? p.h[L - 1 - l] : -p.h[L - 1 - l];
        push("quadrature mirror at l=" + std::to_string(l), p.g[l] - want);
    }
    return out;
}

const std::vector<double>& PacketFilterBank::row(int n) const {
    if (n < 0 || n >= rows())
        throw Error(Errc::band_index, "band index out of range: " + std::to_string(n));
    return filters[static_cast<std::size_t>(n)];
}

PacketFilterBank packet_filters(const FilterPair& p, int m, std::size_t budget) {
    if (m < 1) throw Error(Errc::invalid_argument, "packet_filters: m must be >= 1");
    const int L = p.L();
    if (L < 2) throw Error(Errc::invalid_argument, "packet_filters: filter too short");

    const std::size_t lm = (std::size_t(1) << m) > 0
                               ? ((std::size_t(1) << m) - 1) * (L - 1) + 1
                               : 0;
    const std::size_t total = (std::size_t(1) << m) * lm;
    if (m >= 40 || total > budget)
        throw Error(Errc::scale_budget,
                    "packet_filters: scale " + std::to_string(m) +
                        " exceeds the memory budget");

    PacketFilterBank bank;
    bank.base = p;
    bank.m = m;
    bank.filters = {p.g, p.h};
    for (int j = 2; j <= m; ++j) {
        const int stride = 1 << (j - 1);
        std::vector<std::vector<double>> next;
        next.reserve(std::size_t(1) << j);
        for (int n = 0; n < (1 << j); ++n) {
            const auto& u = (n % 4 == 0 || n % 4 == 3) ? p.g : p.h;
            next.push_back(cascade_step(u, bank.filters[n / 2], stride));
        }
        bank.filters = std::move(next);
    }
    bank.L_m = static_cast<int>(bank.filters[0].size());
    return bank;
}

std::vector<double> modwt_scaling_filter(const FilterPair& p, int j) {
    if (j < 1) throw Error(Errc::invalid_argument, "modwt_scaling_filter: j must be >= 1");
    std::vector<double> a = p.g;
    for (int lev = 2; lev <= j; ++lev) a = cascade_step(p.g, a, 1 << (lev - 1));
    return a;
}

std::vector<double> modwt_wavelet_filter(const FilterPair& p, int j) {
    if (j < 1) throw Error(Errc::invalid_argument, "modwt_wavelet_filter: j must be >= 1");
    if (j == 1) return p.h;
    std::vector<double> a = modwt_scaling_filter(p, j - 1);
    return cascade_step(p.h, a, 1 << (j - 1));
}

} // namespace mfb
