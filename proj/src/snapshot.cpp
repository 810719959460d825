#include "vortex/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace vortex {

namespace {

constexpr char kMagic[4] = {'V', 'X', 'F', '1'};
constexpr std::size_t kHeaderSize = 36;

template <typename T>
T to_little_endian(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little_endian(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError("truncated snapshot file");
  return to_little_endian(v);
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open snapshot for writing: " + path.string());
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid().size()));
  put<std::uint32_t>(out, field.zero_mean() ? 1u : 0u);
  put<double>(out, time);
  put<double>(out, -kPi);
  put<double>(out, kTwoPi);
  for (double v : field.values()) put<double>(out, v);
  if (!out) throw ConfigError("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ConfigError("not a VXF1 snapshot: " + path.string());
  }
  const auto n = get<std::uint32_t>(in);
  const auto flags = get<std::uint32_t>(in);
  const double time = get<double>(in);
  const double origin = get<double>(in);
  const double period = get<double>(in);
  if (std::abs(origin + kPi) > 1e-12 || std::abs(period - kTwoPi) > 1e-12) {
    throw ConfigError("snapshot domain is not [-pi, pi)^2");
  }
  GridSpec grid(static_cast<int>(n));
  std::vector<double> values(grid.points());
  for (double& v : values) v = get<double>(in);
  static_assert(kHeaderSize == 4 + 4 + 4 + 8 + 8 + 8);
  return {SpectralField::from_values(grid, std::move(values), (flags & 1u) != 0), time};
}

void write_coefficient_csv(const std::filesystem::path& path, const SpectralField& field) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open coefficient csv: " + path.string());
  const GridSpec& grid = field.grid();
  out << "k1,k2,abs\n";
  out.precision(17);
  for (int i1 = 0; i1 < grid.size(); ++i1) {
    for (int i2 = 0; i2 < grid.half(); ++i2) {
      out << grid.wavenumber(i1) << ',' << grid.half_wavenumber(i2) << ','
          << std::abs(field.coeffs()[grid.spectral_index(i1, i2)]) << '\n';
    }
  }
}

}  // namespace vortex
