#include "cosserat/csv.hpp"

#include <charconv>
#include <cmath>

#include "cosserat/errors.hpp"

namespace cosserat {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), columns_(header.size()) {
    if (!out_) throw ConfigurationError(path.string() + ": cannot open for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) throw UsageError("csv row has the wrong number of fields");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_.put(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            out_ << f;
            continue;
        }
        out_.put('"');
        for (char c : f) {
            if (c == '"') out_.put('"');
            out_.put(c);
        }
        out_.put('"');
    }
    out_.put('\n');
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw ConfigurationError(path_.string() + ": write failed");
}

}  // namespace cosserat
