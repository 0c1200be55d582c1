#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chancomp/channel.hpp"

namespace chancomp {

using Json = nlohmann::json;

// Wire format: a complex scalar is [re, im]; a matrix is a row-major nested
// array of scalars. NaN/Inf entries are rejected on parse.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Channel file: {"d_in": n, "d_out": m, "kraus": [matrix, ...]} plus an
// optional free-form "metadata" object.
Json channel_to_json(const KrausMap& phi, const Json& metadata = Json());
KrausMap channel_from_json(const Json& j, Json* metadata = nullptr);

// File I/O with write-then-rename (no partial files on failure).
void write_channel_file(const std::filesystem::path& path, const KrausMap& phi,
                        const Json& metadata = Json());
KrausMap read_channel_file(const std::filesystem::path& path,
                           Json* metadata = nullptr);

void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

// FNV-1a digest of a file's bytes, for report input provenance.
std::string file_digest(const std::filesystem::path& path);

}  // namespace chancomp
