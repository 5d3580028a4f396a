#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "angclust/geometry.hpp"

namespace angclust::io {

/// One point per row, comma-separated reals. With `labeled`, the final column is an
/// integer ground-truth label. Blank lines and lines starting with '#' are skipped,
/// as is a non-numeric first line (header).
DataSet read_points_csv(const std::filesystem::path& path, bool labeled);

/// Writes points with `%.17g` precision and a trailing label column when labels exist.
void write_points_csv(const std::filesystem::path& path, const DataSet& data);

/// Reads one label per line, taking the last comma-separated field of each row.
std::vector<int> read_labels(const std::filesystem::path& path);

void write_labels(const std::filesystem::path& path, std::span<const int> labels);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace angclust::io
