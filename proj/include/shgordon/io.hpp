#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shgordon::io {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to the identical double. Two runs
// over the same data produce byte-identical files.
std::string format_double(double v);

// Rectangular CSV accumulator. Cells are emitted verbatim: callers only pass
// format_double output and identifier-like tags, so no quoting layer exists.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void row(const std::vector<std::string>& cells);
    std::size_t rows() const { return rows_; }
    const std::string& str() const { return buf_; }

private:
    std::size_t width_;
    std::size_t rows_ = 0;
    std::string buf_;
};

// Writes content to a sibling temp file, then renames it over path; readers
// never observe a partially written file under the final name.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Flat run configuration; absent fields fall back to built-in defaults and
// command-line flags override whatever the file says.
struct RunConfig {
    std::optional<double> dim, radius, gamma, a0, eps;
    std::optional<int> mesh_n;
    std::optional<std::string> grading;

    // file fields lose against set fields of other
    RunConfig overridden_by(const RunConfig& other) const;
};

// Parses a flat JSON object with keys from {N, R, gamma, a0, eps, mesh_n,
// grading}. Unknown keys, nested values and wrong types are ConfigErrors,
// not warnings: a typo in a config must not silently fall back to defaults.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "config");

}  // namespace shgordon::io
