#include "chancomp/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

namespace chancomp {

namespace {

Complex scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("channel file: complex scalar must be [re, im]");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw ValidationError("channel file: NaN/Inf entry rejected");
  return {re, im};
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ValidationError("channel file: matrix must be a nonempty nested array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ValidationError("channel file: ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
  }
  return m;
}

Json channel_to_json(const KrausMap& phi, const Json& metadata) {
  Json j;
  j["d_in"] = phi.d_in;
  j["d_out"] = phi.d_out;
  Json kraus = Json::array();
  for (const auto& v : phi.kraus) kraus.push_back(matrix_to_json(v));
  j["kraus"] = std::move(kraus);
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

KrausMap channel_from_json(const Json& j, Json* metadata) {
  if (!j.is_object() || !j.contains("d_in") || !j.contains("d_out") || !j.contains("kraus"))
    throw ValidationError("channel file: expected d_in, d_out and kraus fields");
  const int d_in = j["d_in"].get<int>();
  const int d_out = j["d_out"].get<int>();
  if (!j["kraus"].is_array() || j["kraus"].empty())
    throw ValidationError("channel file: kraus must be a nonempty array");
  std::vector<Matrix> ops;
  ops.reserve(j["kraus"].size());
  for (const auto& mj : j["kraus"]) {
    Matrix m = matrix_from_json(mj);
    if (m.rows() != d_out || m.cols() != d_in)
      throw ValidationError("channel file: operator shape disagrees with d_in/d_out");
    ops.push_back(std::move(m));
  }
  if (metadata) *metadata = j.value("metadata", Json());
  return KrausMap(std::move(ops));
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IOError("cannot open " + tmp.string() + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IOError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IOError("cannot rename into " + path.string());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ValidationError("invalid JSON in " + path.string());
  return j;
}

void write_channel_file(const std::filesystem::path& path, const KrausMap& phi,
                        const Json& metadata) {
  write_json_file(path, channel_to_json(phi, metadata));
}

KrausMap read_channel_file(const std::filesystem::path& path, Json* metadata) {
  return channel_from_json(read_json_file(path), metadata);
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace chancomp
