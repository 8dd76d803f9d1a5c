#include "thermogas/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

namespace thermogas {

namespace {

constexpr std::string_view kMagic = "THGSNAP1";
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8;

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get_le(const unsigned char* p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void save_snapshot(const RealField& field, double time, const std::filesystem::path& path) {
  const Grid& g = field.grid();
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderBytes + 8 * field.size());
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim()));
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n()));
  put_le<double>(buf, g.length());
  put_le<double>(buf, time);
  for (double v : field.values()) put_le<double>(buf, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("failed writing snapshot: " + path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < kMagic.size() ||
      std::string_view(reinterpret_cast<const char*>(buf.data()), kMagic.size()) != kMagic) {
    throw SnapshotFormatError("not a snapshot file (expected magic \"THGSNAP1\"): " + path.string());
  }
  if (buf.size() < kHeaderBytes) {
    throw SnapshotFormatError("snapshot header truncated: " + path.string());
  }
  const auto* p = buf.data() + kMagic.size();
  const auto d = get_le<std::uint32_t>(p);
  const auto n = get_le<std::uint32_t>(p + 4);
  const auto length = get_le<double>(p + 8);
  const auto time = get_le<double>(p + 16);

  Grid grid;
  try {
    grid = make_grid(static_cast<int>(d), static_cast<int>(n), length);
  } catch (const std::invalid_argument& e) {
    throw SnapshotFormatError(std::string("snapshot header describes an invalid grid: ") + e.what());
  }
  const std::size_t expected = kHeaderBytes + 8 * grid.size();
  if (buf.size() != expected) {
    throw SnapshotFormatError("snapshot size mismatch: header implies " + std::to_string(expected) +
                              " bytes, file has " + std::to_string(buf.size()));
  }
  std::vector<double> values(grid.size());
  const auto* data = buf.data() + kHeaderBytes;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le<double>(data + 8 * i);
  return {RealField(grid, std::move(values)), time};
}

}  // namespace thermogas
