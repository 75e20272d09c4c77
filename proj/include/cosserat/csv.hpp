#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cosserat {

/// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Comma-separated file with LF line endings; fields containing commas,
/// quotes or newlines are double-quoted.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t columns_;
};

}  // namespace cosserat
