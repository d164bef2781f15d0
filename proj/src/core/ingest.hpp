#pragma once

#include <optional>
#include <string>

#include "transform.hpp"

namespace mfb {

enum class IngestFormat { csv_single_column, csv_date_value };
enum class IngestTransform { none, log_return_100, diff };

IngestFormat ingest_format_from_name(const std::string& s);
IngestTransform ingest_transform_from_name(const std::string& s);

// Comma-separated values, dot decimal, optional header (auto-detected),
// ISO-8601 dates in the date column.
struct IngestSpec {
    std::string path;
    IngestFormat format = IngestFormat::csv_single_column;
    IngestTransform transform = IngestTransform::none;
    std::optional<std::string> date_start;
    std::optional<std::string> date_end;
    bool demean = true;
};

Series ingest(const IngestSpec& spec);

// Same pipeline on in-memory text, for tests and the library boundary.
Series ingest_text(const std::string& csv_text, const IngestSpec& spec);

} // namespace mfb
