#include "ingest.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mfb {

namespace {

bool parse_number(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

IngestFormat ingest_format_from_name(const std::string& s) {
    if (s == "csv_single_column" || s == "single" || s == "value") return IngestFormat::csv_single_column;
    if (s == "csv_date_value" || s == "date_value") return IngestFormat::csv_date_value;
    throw Error(Errc::config, "unknown input format: " + s);
}

IngestTransform ingest_transform_from_name(const std::string& s) {
    if (s == "none") return IngestTransform::none;
    if (s == "log_return_100" || s == "log-return-100") return IngestTransform::log_return_100;
    if (s == "diff") return IngestTransform::diff;
    throw Error(Errc::config, "unknown transform: " + s);
}

Series ingest_text(const std::string& csv_text, const IngestSpec& spec) {
    std::istringstream in(csv_text);
    std::string line;
    int lineno = 0;
    bool first_content = true;
    std::vector<std::pair<std::string, double>> rows;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty()) continue;

        std::string date, valstr;
        if (spec.format == IngestFormat::csv_date_value) {
            const std::size_t comma = t.find(',');
            if (comma == std::string::npos) {
                if (first_content) { first_content = false; continue; }
                throw Error(Errc::parse, "line " + std::to_string(lineno) +
                                             ": expected date,value");
            }
            date = trim(t.substr(0, comma));
            valstr = trim(t.substr(comma + 1));
        } else {
            valstr = t;
            const std::size_t comma = t.find(',');
            if (comma != std::string::npos) valstr = trim(t.substr(0, comma));
        }

        double v = 0.0;
        if (!parse_number(valstr, v)) {
            // a single leading unparsable row is a header
            if (first_content) { first_content = false; continue; }
            throw Error(Errc::parse,
                        "line " + std::to_string(lineno) + ": not a number: " + valstr);
        }
        first_content = false;
        rows.emplace_back(date, v);
    }

    if (spec.date_start || spec.date_end) {
        if (spec.format != IngestFormat::csv_date_value)
            throw Error(Errc::config, "date range needs the date,value format");
        std::vector<std::pair<std::string, double>> kept;
        for (const auto& r : rows) {
            if (spec.date_start && r.first < *spec.date_start) continue;
            if (spec.date_end && r.first > *spec.date_end) continue;
            kept.push_back(r);
        }
        if (kept.empty())
            throw Error(Errc::empty_series, "no rows left after date slicing");
        rows = std::move(kept);
    }
    if (rows.empty()) throw Error(Errc::empty_series, "no data rows in input");

    Series y;
    switch (spec.transform) {
        case IngestTransform::none:
            for (const auto& r : rows) y.values.push_back(r.second);
            break;
        case IngestTransform::log_return_100:
            for (const auto& r : rows)
                if (r.second <= 0.0)
                    throw Error(Errc::invalid_argument,
                                "log_return_100 needs strictly positive prices");
            for (std::size_t i = 1; i < rows.size(); ++i)
                y.values.push_back(100.0 * std::log(rows[i].second / rows[i - 1].second));
            break;
        case IngestTransform::diff:
            for (std::size_t i = 1; i < rows.size(); ++i)
                y.values.push_back(rows[i].second - rows[i - 1].second);
            break;
    }

    if (y.T() < 30)
        throw Error(Errc::series_too_short,
                    "series has " + std::to_string(y.T()) +
                        " values after transform, need at least 30");
    if (spec.demean) y = demeaned(y);
    return y;
}

Series ingest(const IngestSpec& spec) {
    std::ifstream f(spec.path);
    if (!f) throw Error(Errc::parse, "cannot open " + spec.path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ingest_text(ss.str(), spec);
}

} // namespace mfb
