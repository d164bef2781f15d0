#pragma once

#include <stdexcept>
#include <string>

namespace mfb {

enum class Errc {
    ok = 0,
    invalid_argument,
    unknown_wavelet,
    scale_budget,
    empty_series,
    zero_energy,
    band_index,
    length_mismatch,
    series_too_short,
    nonpositive_variance,
    singular_sigma,
    parse,
    config,
};

// Library-wide exception carrying a stable error code for the C boundary.
class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ok: return "ok";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::unknown_wavelet: return "unknown wavelet";
        case Errc::scale_budget: return "scale exceeds memory budget";
        case Errc::empty_series: return "empty series";
        case Errc::zero_energy: return "zero-energy series";
        case Errc::band_index: return "band index out of range";
        case Errc::length_mismatch: return "length mismatch";
        case Errc::series_too_short: return "series too short";
        case Errc::nonpositive_variance: return "nonpositive variance";
        case Errc::singular_sigma: return "singular covariance matrix";
        case Errc::parse: return "parse error";
        case Errc::config: return "configuration error";
    }
    return "unknown";
}

} // namespace mfb
