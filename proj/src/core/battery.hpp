#pragma once

#include <string>
#include <vector>

#include "wntest.hpp"

namespace mfb {

// One report per (test, wavelet, scale, variant) plus optional baselines.
// A failing cell is reported with a note instead of aborting the run.
struct BatteryConfig {
    std::vector<Wavelet> wavelets{Wavelet::haar};
    std::vector<int> m_values{1, 2, 3, 4, 5};
    std::vector<Variant> variants{Variant::g, Variant::triangle, Variant::e};
    bool with_gsm = true;
    bool with_ljung_box = true;
    std::vector<int> lb_lags{5, 10, 20};
    bool with_aq = true;
    HacConfig hac;
};

struct BatteryCell {
    TestReport report;
    bool failed = false;
    std::string error;
};

std::vector<BatteryCell> run_battery(const Series& y, const BatteryConfig& cfg);

std::string battery_to_json(const std::vector<BatteryCell>& cells);

// Text table rendering, a pure function of the JSON payload.
std::string render_table_from_json(const std::string& json_text);

std::string report_to_json(const TestReport& r);

} // namespace mfb
