#include "shgordon/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "json.hpp"

namespace shgordon::io {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
    if (width_ == 0) throw std::invalid_argument("CsvTable: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += header[i];
    }
    buf_ += '\n';
}

void CsvTable::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
        throw std::invalid_argument("CsvTable: row width " + std::to_string(cells.size()) +
                                    " does not match header width " + std::to_string(width_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
    ++rows_;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("write_file_atomic: rename to " + path.string() + " failed: " +
                                 ec.message());
    }
}

RunConfig RunConfig::overridden_by(const RunConfig& other) const {
    RunConfig merged = *this;
    if (other.dim) merged.dim = other.dim;
    if (other.radius) merged.radius = other.radius;
    if (other.gamma) merged.gamma = other.gamma;
    if (other.a0) merged.a0 = other.a0;
    if (other.eps) merged.eps = other.eps;
    if (other.mesh_n) merged.mesh_n = other.mesh_n;
    if (other.grading) merged.grading = other.grading;
    return merged;
}

namespace {

double as_number(const nlohmann::json& v, const std::string& key, const std::string& origin) {
    if (!v.is_number())
        throw ConfigError(origin + ": key \"" + key + "\" must be a number");
    return v.get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(origin + ": top level must be a flat object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "N") {
            cfg.dim = as_number(value, key, origin);
        } else if (key == "R") {
            cfg.radius = as_number(value, key, origin);
        } else if (key == "gamma") {
            cfg.gamma = as_number(value, key, origin);
        } else if (key == "a0") {
            cfg.a0 = as_number(value, key, origin);
        } else if (key == "eps") {
            cfg.eps = as_number(value, key, origin);
        } else if (key == "mesh_n") {
            if (!value.is_number_integer() || value.get<long long>() <= 0)
                throw ConfigError(origin + ": key \"mesh_n\" must be a positive integer");
            cfg.mesh_n = value.get<int>();
        } else if (key == "grading") {
            if (!value.is_string())
                throw ConfigError(origin + ": key \"grading\" must be a string");
            const std::string g = value.get<std::string>();
            if (g != "uniform" && g != "geometric")
                throw ConfigError(origin + ": grading must be \"uniform\" or \"geometric\", got \"" +
                                  g + "\"");
            cfg.grading = g;
        } else {
            throw ConfigError(origin + ": unknown key \"" + key + "\"");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, path.string());
}

}  // namespace shgordon::io
