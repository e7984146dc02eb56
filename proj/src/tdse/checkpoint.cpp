#include "oamion/tdse/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace oamion::tdse {
namespace {

template <class T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

template <class T>
void put(std::ostream& os, T value) {
  const T le = to_little(value);
  os.write(reinterpret_cast<const char*>(&le), sizeof(T));
}

template <class T>
T get(std::istream& is, const std::filesystem::path& path) {
  T raw{};
  is.read(reinterpret_cast<char*>(&raw), sizeof(T));
  if (!is) throw std::runtime_error("truncated checkpoint header in " + path.string());
  return to_little(raw);
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
  const GridSpec& g = cp.psi.grid();
  os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  put<std::uint32_t>(os, kCheckpointVersion);
  for (int a = 0; a < 3; ++a) put<std::int32_t>(os, g.n[static_cast<std::size_t>(a)]);
  put<double>(os, g.h);
  put<double>(os, g.center.x);
  put<double>(os, g.center.y);
  put<double>(os, g.center.z);
  put<double>(os, cp.t);
  put<std::int64_t>(os, cp.step);
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(cp.psi.data().data()),
             static_cast<std::streamsize>(cp.psi.data().size() * sizeof(Complex)));
  } else {
    for (const Complex& c : cp.psi.data()) {
      put<double>(os, c.real());
      put<double>(os, c.imag());
    }
  }
  os.flush();
  if (!os) throw std::runtime_error("failed writing checkpoint " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path.string());
  char magic[sizeof(kCheckpointMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a wavefunction checkpoint: " + path.string());
  }
  const auto version = get<std::uint32_t>(is, path);
  if (version != kCheckpointVersion) {
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version) + " in " + path.string());
  }
  GridSpec g;
  for (int a = 0; a < 3; ++a) g.n[static_cast<std::size_t>(a)] = get<std::int32_t>(is, path);
  g.h = get<double>(is, path);
  g.center.x = get<double>(is, path);
  g.center.y = get<double>(is, path);
  g.center.z = get<double>(is, path);
  g.validate();
  Checkpoint cp;
  cp.t = get<double>(is, path);
  cp.step = get<std::int64_t>(is, path);
  cp.psi = Wavefunction(g);
  auto& d = cp.psi.data();
  if constexpr (std::endian::native == std::endian::little) {
    is.read(reinterpret_cast<char*>(d.data()), static_cast<std::streamsize>(d.size() * sizeof(Complex)));
    if (!is) throw std::runtime_error("truncated checkpoint data in " + path.string());
  } else {
    for (auto& c : d) {
      const double re = get<double>(is, path);
      const double im = get<double>(is, path);
      c = {re, im};
    }
  }
  return cp;
}

}  // namespace oamion::tdse
