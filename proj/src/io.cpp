#include "angclust/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string_view>
#include <utility>

#include "angclust/error.hpp"

namespace angclust::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    // strtod accepts forms from_chars may not on older toolchains ("+1", "inf").
    const std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size()) return std::nullopt;
    return v;
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        // Accept integral values written as reals, e.g. "3.0".
        const auto d = parse_double(s);
        if (!d || *d != static_cast<double>(static_cast<int>(*d))) return std::nullopt;
        return static_cast<int>(*d);
    }
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

}  // namespace

DataSet read_points_csv(const std::filesystem::path& path, bool labeled) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string raw;
    std::size_t line_no = 0, width = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (skippable(line)) continue;
        const bool header_slot = std::exchange(first, false);
        const auto fields = split(line);
        const std::size_t coords = labeled ? fields.size() - 1 : fields.size();
        std::vector<double> row;
        row.reserve(coords);
        bool ok = !labeled || fields.size() >= 2;
        for (std::size_t f = 0; ok && f < coords; ++f) {
            const auto v = parse_double(fields[f]);
            if (!v) ok = false;
            else row.push_back(*v);
        }
        std::optional<int> label;
        if (ok && labeled) {
            label = parse_int(fields.back());
            ok = label.has_value();
        }
        if (!ok) {
            if (header_slot) continue;
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": cannot parse row");
        }
        if (rows.empty()) width = row.size();
        if (row.size() != width) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                          " coordinates, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
        if (labeled) labels.push_back(*label);
    }
    if (rows.empty()) throw IoError(path.string() + ": no data rows");

    DataSet data;
    data.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) data.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    if (labeled) data.labels = std::move(labels);
    return data;
}

void write_points_csv(const std::filesystem::path& path, const DataSet& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    char buf[32];
    for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data.points(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        if (data.labels) out << ',' << (*data.labels)[static_cast<std::size_t>(i)];
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<int> labels;
    std::string raw;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (skippable(line)) continue;
        const bool header_slot = std::exchange(first, false);
        const auto label = parse_int(split(line).back());
        if (!label) {
            if (header_slot) continue;
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": cannot parse label");
        }
        labels.push_back(*label);
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, std::span<const int> labels) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (const int l : labels) out << l << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace angclust::io
