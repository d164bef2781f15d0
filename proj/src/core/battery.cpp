#include "battery.hpp"

#include <cstdio>

#include <json.hpp>

namespace mfb {

namespace {

using nlohmann::json;

json cell_json(const BatteryCell& c) {
    json j;
    const TestReport& r = c.report;
    j["test"] = test_kind_name(r.test);
    j["variant"] = variant_name(r.variant);
    j["wavelet"] = r.has_wavelet ? wavelet_name(r.wavelet) : "none";
    j["m_or_K"] = r.m_or_K;
    if (c.failed) {
        j["statistic"] = nullptr;
        j["df"] = r.df;
        j["p_value"] = nullptr;
        j["reject_at_05"] = nullptr;
        json notes = json::array();
        notes.push_back(std::string("error: ") + c.error);
        for (const auto& n : r.notes) notes.push_back(n);
        j["notes"] = notes;
    } else {
        j["statistic"] = r.statistic;
        j["df"] = r.df;
        j["p_value"] = r.p_value;
        j["reject_at_05"] = r.reject_at_05();
        j["notes"] = r.notes;
    }
    return j;
}

std::string fixed(double v, int prec) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

} // namespace

std::vector<BatteryCell> run_battery(const Series& y, const BatteryConfig& cfg) {
    check_series(y);
    if (cfg.m_values.empty() && !cfg.with_ljung_box && !cfg.with_aq)
        throw Error(Errc::config, "battery: nothing to run");
    if (!cfg.m_values.empty() && cfg.variants.empty())
        throw Error(Errc::config, "battery: empty variant list");
    if (!cfg.m_values.empty() && cfg.wavelets.empty())
        throw Error(Errc::config, "battery: empty wavelet list");

    std::vector<BatteryCell> out;
    auto guarded = [&](TestKind kind, Variant v, Wavelet w, int mk, auto&& fn) {
        BatteryCell cell;
        cell.report.test = kind;
        cell.report.variant = v;
        cell.report.has_wavelet = (kind == TestKind::mfb || kind == TestKind::gsm);
        cell.report.wavelet = w;
        cell.report.m_or_K = mk;
        try {
            cell.report = fn();
        } catch (const Error& e) {
            cell.failed = true;
            cell.error = e.what();
        }
        out.push_back(std::move(cell));
    };

    for (Wavelet w : cfg.wavelets)
        for (int m : cfg.m_values)
            for (Variant v : cfg.variants) {
                guarded(TestKind::mfb, v, w, m,
                        [&] { return mfb_test(y, w, m, v, cfg.hac); });
                if (cfg.with_gsm)
                    guarded(TestKind::gsm, v, w, m,
                            [&] { return gsm_test(y, w, m, v, cfg.hac); });
            }
    if (cfg.with_ljung_box)
        for (int K : cfg.lb_lags)
            guarded(TestKind::ljung_box, Variant::none, Wavelet::haar, K,
                    [&] { return ljung_box(y, K); });
    if (cfg.with_aq)
        guarded(TestKind::aq, Variant::none, Wavelet::haar, 0,
                [&] { return aq_test(y); });
    return out;
}

std::string report_to_json(const TestReport& r) {
    BatteryCell c;
    c.report = r;
    return cell_json(c).dump(2);
}

std::string battery_to_json(const std::vector<BatteryCell>& cells) {
    json arr = json::array();
    for (const auto& c : cells) arr.push_back(cell_json(c));
    return arr.dump(2);
}

std::string render_table_from_json(const std::string& json_text) {
    json arr;
    try {
        arr = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("battery json: ") + e.what());
    }
    if (!arr.is_array()) throw Error(Errc::parse, "battery json: expected an array");

    const char* hdr = "test      wavelet  m/K  variant   statistic        df  p-value     ";
    std::string s;
    s += hdr;
    s += '\n';
    s += std::string(std::string(hdr).size(), '-');
    s += '\n';
    for (const auto& j : arr) {
        char line[160];
        const std::string test = j.at("test").get<std::string>();
        const std::string wavelet = j.at("wavelet").get<std::string>();
        const std::string variant = j.at("variant").get<std::string>();
        const int mk = j.at("m_or_K").get<int>();
        std::string stat = "-", pv = "-", mark;
        if (!j.at("statistic").is_null()) {
            stat = fixed(j.at("statistic").get<double>(), 4);
            const double p = j.at("p_value").get<double>();
            pv = fixed(p, 4);
            if (p < 0.05) mark = " *";
        }
        std::snprintf(line, sizeof line, "%-9s %-8s %3d  %-8s %12s  %4d  %-9s%s",
                      test.c_str(), wavelet.c_str(), mk, variant.c_str(),
                      stat.c_str(), j.at("df").get<int>(), pv.c_str(), mark.c_str());
        s += line;
        s += '\n';
        if (j.at("statistic").is_null()) {
            for (const auto& n : j.at("notes")) {
                s += "    note: ";
                s += n.get<std::string>();
                s += '\n';
            }
        }
    }
    s += "* marks p < 0.05\n";
    return s;
}

} // namespace mfb
