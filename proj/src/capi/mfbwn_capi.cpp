#include "mfbwn.h"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "core/battery.hpp"
#include "core/ingest.hpp"
#include "core/sim.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

int code_of(mfb::Errc c) {
    switch (c) {
        case mfb::Errc::ok: return MFBWN_OK;
        case mfb::Errc::invalid_argument: return MFBWN_EINVAL;
        case mfb::Errc::unknown_wavelet: return MFBWN_EWAVELET;
        case mfb::Errc::scale_budget: return MFBWN_EBUDGET;
        case mfb::Errc::empty_series: return MFBWN_EEMPTY;
        case mfb::Errc::zero_energy: return MFBWN_EZERO;
        case mfb::Errc::band_index: return MFBWN_EBAND;
        case mfb::Errc::length_mismatch: return MFBWN_ELENGTH;
        case mfb::Errc::series_too_short: return MFBWN_ESHORT;
        case mfb::Errc::nonpositive_variance: return MFBWN_EVARIANCE;
        case mfb::Errc::singular_sigma: return MFBWN_ESINGULAR;
        case mfb::Errc::parse: return MFBWN_EPARSE;
        case mfb::Errc::config: return MFBWN_ECONFIG;
    }
    return MFBWN_EUNKNOWN;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return MFBWN_OK;
    } catch (const mfb::Error& e) {
        g_last_error = e.what();
        return code_of(e.code());
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return MFBWN_EPARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return MFBWN_ENOMEM;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MFBWN_EUNKNOWN;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mfb::HacConfig hac_from(int bandwidth, int center) {
    mfb::HacConfig h;
    h.bandwidth = bandwidth;
    h.center = center != 0;
    return h;
}

} // namespace

struct mfbwn_series {
    mfb::Series s;
};

struct mfbwn_bank {
    mfb::PacketFilterBank b;
};

struct mfbwn_reports {
    std::vector<mfb::BatteryCell> cells;
};

struct mfbwn_study {
    std::string kind;
    std::string main_csv;
    std::string relative_csv;
    std::string manifest;
};

extern "C" {

const char* mfbwn_version(void) { return "1.0.0"; }

const char* mfbwn_strerror(int code) {
    switch (code) {
        case MFBWN_OK: return "ok";
        case MFBWN_EINVAL: return "invalid argument";
        case MFBWN_EWAVELET: return "unknown wavelet";
        case MFBWN_EBUDGET: return "scale exceeds memory budget";
        case MFBWN_EEMPTY: return "empty series";
        case MFBWN_EZERO: return "zero-energy series";
        case MFBWN_EBAND: return "band index out of range";
        case MFBWN_ELENGTH: return "length mismatch";
        case MFBWN_ESHORT: return "series too short";
        case MFBWN_EVARIANCE: return "nonpositive variance";
        case MFBWN_ESINGULAR: return "singular covariance matrix";
        case MFBWN_EPARSE: return "parse error";
        case MFBWN_ECONFIG: return "configuration error";
        case MFBWN_ENOMEM: return "out of memory";
        default: return "unknown error";
    }
}

const char* mfbwn_last_error(void) { return g_last_error.c_str(); }

void mfbwn_string_free(char* s) { delete[] s; }

int mfbwn_series_from_data(const double* data, int64_t n, mfbwn_series** out) {
    if (!data || !out || n < 1) {
        g_last_error = "series_from_data: bad arguments";
        return MFBWN_EINVAL;
    }
    return guarded([&] {
        auto* h = new mfbwn_series;
        h->s.values.assign(data, data + n);
        mfb::check_series(h->s);
        *out = h;
    });
}

int mfbwn_series_from_csv(const char* path, const char* format,
                          const char* transform, const char* date_start,
                          const char* date_end, int demean, mfbwn_series** out) {
    if (!path || !out) {
        g_last_error = "series_from_csv: bad arguments";
        return MFBWN_EINVAL;
    }
    return guarded([&] {
        mfb::IngestSpec spec;
        spec.path = path;
        spec.format = mfb::ingest_format_from_name(format ? format : "csv_single_column");
        spec.transform = mfb::ingest_transform_from_name(transform ? transform : "none");
        if (date_start && *date_start) spec.date_start = std::string(date_start);
        if (date_end && *date_end) spec.date_end = std::string(date_end);
        spec.demean = demean != 0;
        auto* h = new mfbwn_series{mfb::ingest(spec)};
        *out = h;
    });
}

int mfbwn_series_length(const mfbwn_series* s, int64_t* out) {
    if (!s || !out) return MFBWN_EINVAL;
    *out = s->s.T();
    return MFBWN_OK;
}

int mfbwn_series_values(const mfbwn_series* s, double* out, int64_t cap) {
    if (!s || !out) return MFBWN_EINVAL;
    if (cap < s->s.T()) {
        g_last_error = "series_values: buffer too small";
        return MFBWN_ELENGTH;
    }
    std::memcpy(out, s->s.values.data(), sizeof(double) * s->s.values.size());
    return MFBWN_OK;
}

int mfbwn_series_demean(mfbwn_series* s) {
    if (!s) return MFBWN_EINVAL;
    return guarded([&] { s->s = mfb::demeaned(s->s); });
}

void mfbwn_series_free(mfbwn_series* s) { delete s; }

int mfbwn_bank_create(const char* wavelet, int m, mfbwn_bank** out) {
    if (!wavelet || !out) return MFBWN_EINVAL;
    return guarded([&] {
        auto* h = new mfbwn_bank{mfb::packet_filters(mfb::get_filter(wavelet), m)};
        *out = h;
    });
}

int mfbwn_bank_rows(const mfbwn_bank* b, int* out) {
    if (!b || !out) return MFBWN_EINVAL;
    *out = b->b.rows();
    return MFBWN_OK;
}

int mfbwn_bank_filter_length(const mfbwn_bank* b, int* out) {
    if (!b || !out) return MFBWN_EINVAL;
    *out = b->b.L_m;
    return MFBWN_OK;
}

int mfbwn_bank_row(const mfbwn_bank* b, int n, double* out, int64_t cap) {
    if (!b || !out) return MFBWN_EINVAL;
    return guarded([&] {
        const auto& row = b->b.row(n);
        if (cap < static_cast<int64_t>(row.size()))
            throw mfb::Error(mfb::Errc::length_mismatch, "bank_row: buffer too small");
        std::memcpy(out, row.data(), sizeof(double) * row.size());
    });
}

int mfbwn_bank_csv(const mfbwn_bank* b, char** out) {
    if (!b || !out) return MFBWN_EINVAL;
    return guarded([&] {
        std::string s = "wavelet,m,n,coefficients...\n";
        char buf[40];
        for (int n = 0; n < b->b.rows(); ++n) {
            s += mfb::wavelet_name(b->b.base.name);
            s += ',' + std::to_string(b->b.m);
            s += ',' + std::to_string(n);
            for (double v : b->b.row(n)) {
                std::snprintf(buf, sizeof buf, ",%.17g", v);
                s += buf;
            }
            s += '\n';
        }
        *out = dup_string(s);
    });
}

void mfbwn_bank_free(mfbwn_bank* b) { delete b; }

int mfbwn_run_test(const mfbwn_series* y, const char* test, const char* variant,
                   const char* wavelet, int m_or_K, int nw_bandwidth,
                   int nw_center, mfbwn_reports** out) {
    if (!y || !test || !out) return MFBWN_EINVAL;
    return guarded([&] {
        const mfb::TestKind kind = mfb::test_kind_from_name(test);
        const mfb::HacConfig hac = hac_from(nw_bandwidth, nw_center);
        mfb::TestReport rep;
        switch (kind) {
            case mfb::TestKind::mfb:
                rep = mfb::mfb_test(y->s, mfb::wavelet_from_name(wavelet ? wavelet : "haar"),
                                    m_or_K, mfb::variant_from_name(variant ? variant : "g"),
                                    hac);
                break;
            case mfb::TestKind::gsm:
                rep = mfb::gsm_test(y->s, mfb::wavelet_from_name(wavelet ? wavelet : "haar"),
                                    m_or_K, mfb::variant_from_name(variant ? variant : "g"),
                                    hac);
                break;
            case mfb::TestKind::ljung_box:
                rep = mfb::ljung_box(y->s, m_or_K);
                break;
            case mfb::TestKind::aq:
                rep = mfb::aq_test(y->s);
                break;
        }
        auto* h = new mfbwn_reports;
        mfb::BatteryCell cell;
        cell.report = rep;
        h->cells.push_back(std::move(cell));
        *out = h;
    });
}

int mfbwn_run_battery(const mfbwn_series* y, const char* config_json,
                      mfbwn_reports** out) {
    if (!y || !out) return MFBWN_EINVAL;
    return guarded([&] {
        mfb::BatteryConfig cfg;
        if (config_json && *config_json) {
            const json j = json::parse(config_json);
            if (j.contains("wavelets")) {
                cfg.wavelets.clear();
                for (const auto& w : j.at("wavelets"))
                    cfg.wavelets.push_back(mfb::wavelet_from_name(w.get<std::string>()));
            }
            if (j.contains("m_values"))
                cfg.m_values = j.at("m_values").get<std::vector<int>>();
            if (j.contains("variants")) {
                cfg.variants.clear();
                for (const auto& v : j.at("variants"))
                    cfg.variants.push_back(mfb::variant_from_name(v.get<std::string>()));
            }
            if (j.contains("gsm")) cfg.with_gsm = j.at("gsm").get<bool>();
            if (j.contains("ljung_box")) cfg.with_ljung_box = j.at("ljung_box").get<bool>();
            if (j.contains("lb_lags")) cfg.lb_lags = j.at("lb_lags").get<std::vector<int>>();
            if (j.contains("aq")) cfg.with_aq = j.at("aq").get<bool>();
            if (j.contains("nw_bandwidth") && !j.at("nw_bandwidth").is_string())
                cfg.hac.bandwidth = j.at("nw_bandwidth").get<int>();
            if (j.contains("nw_center")) cfg.hac.center = j.at("nw_center").get<bool>();
        }
        auto* h = new mfbwn_reports{mfb::run_battery(y->s, cfg)};
        *out = h;
    });
}

int mfbwn_reports_count(const mfbwn_reports* r, int* out) {
    if (!r || !out) return MFBWN_EINVAL;
    *out = static_cast<int>(r->cells.size());
    return MFBWN_OK;
}

int mfbwn_reports_stat(const mfbwn_reports* r, int i, double* statistic, int* df,
                       double* p_value) {
    if (!r) return MFBWN_EINVAL;
    if (i < 0 || i >= static_cast<int>(r->cells.size())) {
        g_last_error = "reports_stat: index out of range";
        return MFBWN_EINVAL;
    }
    const mfb::BatteryCell& c = r->cells[static_cast<std::size_t>(i)];
    if (c.failed) {
        g_last_error = c.error;
        return MFBWN_EUNKNOWN;
    }
    if (statistic) *statistic = c.report.statistic;
    if (df) *df = c.report.df;
    if (p_value) *p_value = c.report.p_value;
    return MFBWN_OK;
}

int mfbwn_reports_json(const mfbwn_reports* r, char** out) {
    if (!r || !out) return MFBWN_EINVAL;
    return guarded([&] { *out = dup_string(mfb::battery_to_json(r->cells)); });
}

void mfbwn_reports_free(mfbwn_reports* r) { delete r; }

int mfbwn_render_table(const char* battery_json, char** out) {
    if (!battery_json || !out) return MFBWN_EINVAL;
    return guarded([&] { *out = dup_string(mfb::render_table_from_json(battery_json)); });
}

int mfbwn_study_run(const char* config_json, mfbwn_study** out) {
    if (!config_json || !out) return MFBWN_EINVAL;
    return guarded([&] {
        const auto t0 = std::chrono::steady_clock::now();
        const json j = json::parse(config_json);
        const std::string study = j.at("study").get<std::string>();

        mfb::StudyConfig cfg;
        cfg.T = j.value("T", 100);
        cfg.reps = j.value("reps", 2000);
        cfg.master_seed = j.value("seed", std::uint64_t(1));
        cfg.workers = j.value("workers", 1);
        cfg.demean = j.value("demean", false);
        cfg.skip_errors = j.value("skip_errors", false);
        if (j.contains("nw_bandwidth") && !j.at("nw_bandwidth").is_string())
            cfg.hac.bandwidth = j.at("nw_bandwidth").get<int>();
        cfg.hac.center = j.value("nw_center", true);

        auto parse_tests = [&](const json& arr) {
            std::vector<mfb::TestSpec> tests;
            for (const auto& t : arr) {
                mfb::TestSpec ts;
                ts.test = mfb::test_kind_from_name(t.at("test").get<std::string>());
                if (ts.test == mfb::TestKind::mfb || ts.test == mfb::TestKind::gsm) {
                    ts.variant = mfb::variant_from_name(t.value("variant", "g"));
                    ts.wavelet = mfb::wavelet_from_name(t.value("wavelet", "haar"));
                    ts.m_or_K = t.value("m", 2);
                } else if (ts.test == mfb::TestKind::ljung_box) {
                    ts.variant = mfb::Variant::none;
                    ts.m_or_K = t.value("K", 5);
                } else {
                    ts.variant = mfb::Variant::none;
                    ts.m_or_K = 0;
                }
                tests.push_back(ts);
            }
            if (tests.empty())
                throw mfb::Error(mfb::Errc::config, "study: empty test list");
            return tests;
        };

        auto h = std::make_unique<mfbwn_study>();
        h->kind = study;
        json manifest;
        manifest["study"] = study;
        manifest["seed"] = cfg.master_seed;
        manifest["workers"] = cfg.workers;
        manifest["T"] = cfg.T;
        manifest["reps"] = cfg.reps;
        manifest["version"] = mfbwn_version();
        manifest["rng"] = "splitmix64-seeded mt19937_64, one stream per replication";

        if (study == "size") {
            std::vector<mfb::DgpSpec> dgps;
            for (const auto& mname : j.at("models")) {
                mfb::DgpSpec d;
                d.id = mfb::dgp_from_name(mname.get<std::string>());
                d.T = cfg.T;
                dgps.push_back(d);
            }
            const auto tests = parse_tests(j.at("tests"));
            h->main_csv = mfb::size_study_csv(mfb::run_size_study(dgps, tests, cfg));
        } else if (study == "power") {
            const auto alt = mfb::dgp_from_name(j.at("alt").get<std::string>());
            const auto b1 = j.at("beta1").get<std::vector<double>>();
            const auto b2 = j.at("beta2").get<std::vector<double>>();
            const int null_reps = j.value("null_reps", 5000);
            const auto tests = parse_tests(j.at("tests"));
            const auto res = mfb::run_power_study(alt, b1, b2, tests, cfg, null_reps);
            h->main_csv = mfb::power_study_csv(res);
            h->relative_csv = mfb::power_relative_csv(res);
            manifest["null_reps"] = null_reps;
            manifest["null_model"] = mfb::dgp_name(res.null_model);
        } else if (study == "sweep") {
            const int k = j.value("k", 1);
            const auto beta = j.at("beta").get<std::vector<double>>();
            const int m_min = j.value("m_min", 1);
            const int m_max = j.value("m_max", 5);
            const auto w = mfb::wavelet_from_name(j.value("wavelet", "haar"));
            const int null_reps = j.value("null_reps", 5000);
            h->main_csv = mfb::sweep_csv(
                mfb::run_scale_sweep(k, beta, m_min, m_max, w, cfg, null_reps));
            manifest["null_reps"] = null_reps;
            manifest["k"] = k;
        } else {
            throw mfb::Error(mfb::Errc::config, "study must be size, power or sweep");
        }

        const auto t1 = std::chrono::steady_clock::now();
        manifest["runtime_seconds"] =
            std::chrono::duration<double>(t1 - t0).count();
        h->manifest = manifest.dump(2);
        *out = h.release();
    });
}

int mfbwn_study_csv(const mfbwn_study* s, const char* name, char** out) {
    if (!s || !out) return MFBWN_EINVAL;
    const std::string which = name ? name : "main";
    if (which == "main") {
        *out = dup_string(s->main_csv);
        return MFBWN_OK;
    }
    if (which == "relative") {
        if (s->relative_csv.empty()) {
            g_last_error = "no relative table for this study";
            return MFBWN_ECONFIG;
        }
        *out = dup_string(s->relative_csv);
        return MFBWN_OK;
    }
    g_last_error = "unknown table name: " + which;
    return MFBWN_EINVAL;
}

int mfbwn_study_manifest(const mfbwn_study* s, char** out) {
    if (!s || !out) return MFBWN_EINVAL;
    *out = dup_string(s->manifest);
    return MFBWN_OK;
}

void mfbwn_study_free(mfbwn_study* s) { delete s; }

} // extern "C"
