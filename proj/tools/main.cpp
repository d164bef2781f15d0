// Command line front end. Talks to the library through the C interface only.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfbwn.h"

namespace {

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { mfbwn_string_free(s); }
};

[[noreturn]] void die(const std::string& where, int code) {
    std::cerr << "error: " << where << ": " << mfbwn_strerror(code);
    const char* detail = mfbwn_last_error();
    if (detail && *detail) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    std::exit(2);
}

std::string join_quoted(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += '"' + xs[i] + '"';
    }
    return s;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(xs[i]);
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(2);
    }
    f << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-frequency-band white-noise tests"};
    app.require_subcommand(1);

    // test: ingest a CSV and run the battery
    auto* test_cmd = app.add_subcommand("test", "run the test battery on a CSV series");
    std::string input_path, format = "csv_single_column", transform = "none";
    std::string date_start, date_end;
    bool demean = true;
    std::vector<std::string> wavelets{"haar"};
    std::vector<int> scales{1, 2, 3, 4, 5};
    std::vector<std::string> variants{"g", "triangle", "e"};
    bool no_gsm = false, no_lb = false, no_aq = false;
    std::vector<int> lb_lags{5, 10, 20};
    int nw_bandwidth = -1;
    std::string nw_center = "on";
    std::string out_mode = "table";
    test_cmd->add_option("input", input_path, "CSV file")->required();
    test_cmd->add_option("--format", format, "csv_single_column|csv_date_value");
    test_cmd->add_option("--transform", transform, "none|log_return_100|diff");
    test_cmd->add_option("--from", date_start, "start date (ISO), needs date_value format");
    test_cmd->add_option("--to", date_end, "end date (ISO)");
    test_cmd->add_flag("--demean,!--no-demean", demean,
                       "subtract the sample mean before testing (default on)");
    test_cmd->add_option("--wavelet", wavelets, "wavelet names");
    test_cmd->add_option("--scale", scales, "scales m");
    test_cmd->add_option("--variant", variants, "g|triangle|e");
    test_cmd->add_flag("--no-gsm", no_gsm, "skip the pyramid tests");
    test_cmd->add_flag("--no-ljung-box", no_lb, "skip Ljung-Box rows");
    test_cmd->add_flag("--no-aq", no_aq, "skip the automatic portmanteau row");
    test_cmd->add_option("--lb-lags", lb_lags, "Ljung-Box lags");
    test_cmd->add_option("--nw-bandwidth", nw_bandwidth, "HAC bandwidth, negative = auto");
    test_cmd->add_option("--nw-center", nw_center, "on|off");
    test_cmd->add_option("--out", out_mode, "table|json|csv");

    // simulate: run a Monte Carlo study from a config file
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo study");
    std::string study_kind, config_path, out_dir = ".";
    long long seed_override = -1;
    int workers_override = -1;
    sim_cmd->add_option("--study", study_kind, "size|power|sweep (checked against config)");
    sim_cmd->add_option("--config", config_path, "JSON config file")->required();
    sim_cmd->add_option("--seed", seed_override, "override config seed");
    sim_cmd->add_option("--workers", workers_override, "override config workers");
    sim_cmd->add_option("--out-dir", out_dir, "directory for CSV and manifest output");

    // filters: dump a packet filter bank
    auto* filt_cmd = app.add_subcommand("filters", "dump cascade filters as CSV");
    std::string f_wavelet = "haar";
    int f_scale = 1;
    filt_cmd->add_option("--wavelet", f_wavelet, "wavelet name")->required();
    filt_cmd->add_option("--scale", f_scale, "scale m")->required();

    CLI11_PARSE(app, argc, argv);

    if (test_cmd->parsed()) {
        mfbwn_series* series = nullptr;
        int rc = mfbwn_series_from_csv(input_path.c_str(), format.c_str(),
                                       transform.c_str(), date_start.c_str(),
                                       date_end.c_str(), demean ? 1 : 0, &series);
        if (rc != MFBWN_OK) die("reading " + input_path, rc);
        std::unique_ptr<mfbwn_series, decltype(&mfbwn_series_free)> series_guard(
            series, &mfbwn_series_free);

        std::ostringstream cfg;
        cfg << "{\"wavelets\":[" << join_quoted(wavelets) << "],"
            << "\"m_values\":[" << join_ints(scales) << "],"
            << "\"variants\":[" << join_quoted(variants) << "],"
            << "\"gsm\":" << (no_gsm ? "false" : "true") << ','
            << "\"ljung_box\":" << (no_lb ? "false" : "true") << ','
            << "\"lb_lags\":[" << join_ints(lb_lags) << "],"
            << "\"aq\":" << (no_aq ? "false" : "true") << ','
            << "\"nw_bandwidth\":" << nw_bandwidth << ','
            << "\"nw_center\":" << (nw_center == "off" ? "false" : "true") << '}';

        mfbwn_reports* reports = nullptr;
        rc = mfbwn_run_battery(series, cfg.str().c_str(), &reports);
        if (rc != MFBWN_OK) die("battery", rc);
        std::unique_ptr<mfbwn_reports, decltype(&mfbwn_reports_free)> rep_guard(
            reports, &mfbwn_reports_free);

        StringGuard json;
        rc = mfbwn_reports_json(reports, &json.s);
        if (rc != MFBWN_OK) die("battery json", rc);

        if (out_mode == "json") {
            std::cout << json.s << "\n";
        } else if (out_mode == "csv") {
            int count = 0;
            mfbwn_reports_count(reports, &count);
            std::cout << "index,statistic,df,p_value\n";
            for (int i = 0; i < count; ++i) {
                double stat = 0, p = 0;
                int df = 0;
                if (mfbwn_reports_stat(reports, i, &stat, &df, &p) == MFBWN_OK)
                    std::printf("%d,%.10g,%d,%.10g\n", i, stat, df, p);
                else
                    std::printf("%d,,,\n", i);
            }
        } else {
            StringGuard table;
            rc = mfbwn_render_table(json.s, &table.s);
            if (rc != MFBWN_OK) die("rendering", rc);
            std::cout << table.s;
        }
        return 0;
    }

    if (sim_cmd->parsed()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot open " << config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << f.rdbuf();
        std::string cfg = ss.str();

        // apply command line overrides by rewriting the top level JSON keys
        if (seed_override >= 0 || workers_override >= 0 || !study_kind.empty()) {
            // light-touch: append/override via a wrapper object the library merges
            std::ostringstream patched;
            patched << cfg.substr(0, cfg.find_last_of('}'));
            if (!study_kind.empty()) patched << ",\"study\":\"" << study_kind << "\"";
            if (seed_override >= 0) patched << ",\"seed\":" << seed_override;
            if (workers_override >= 0) patched << ",\"workers\":" << workers_override;
            patched << "}";
            cfg = patched.str();
        }

        mfbwn_study* study = nullptr;
        int rc = mfbwn_study_run(cfg.c_str(), &study);
        if (rc != MFBWN_OK) die("study", rc);
        std::unique_ptr<mfbwn_study, decltype(&mfbwn_study_free)> study_guard(
            study, &mfbwn_study_free);

        StringGuard main_csv, manifest;
        rc = mfbwn_study_csv(study, "main", &main_csv.s);
        if (rc != MFBWN_OK) die("study csv", rc);
        rc = mfbwn_study_manifest(study, &manifest.s);
        if (rc != MFBWN_OK) die("study manifest", rc);

        write_file(out_dir + "/study.csv", main_csv.s);
        write_file(out_dir + "/manifest.json", manifest.s);
        StringGuard rel;
        if (mfbwn_study_csv(study, "relative", &rel.s) == MFBWN_OK)
            write_file(out_dir + "/relative.csv", rel.s);

        std::cout << main_csv.s;
        std::cerr << "wrote " << out_dir << "/study.csv and manifest.json\n";
        return 0;
    }

    if (filt_cmd->parsed()) {
        mfbwn_bank* bank = nullptr;
        int rc = mfbwn_bank_create(f_wavelet.c_str(), f_scale, &bank);
        if (rc != MFBWN_OK) die("filters", rc);
        StringGuard csv;
        rc = mfbwn_bank_csv(bank, &csv.s);
        mfbwn_bank_free(bank);
        if (rc != MFBWN_OK) die("filters csv", rc);
        std::cout << csv.s;
        return 0;
    }

    return 0;
}
