#include "csw/embeddings.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "csw/errors.hpp"

namespace csw {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

float f32_from_le(const unsigned char* p) {
  std::uint32_t bits = read_u32_le(p);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

void write_f32_le(std::ofstream& out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  write_u32_le(out, bits);
}

}  // namespace

EmbeddingMatrix read_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file: " + path);

  unsigned char header[12];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (in.gcount() != sizeof(header) ||
      std::memcmp(header, kMagic, 4) != 0) {
    throw FormatError(path + ": bad magic, expected \"EMB1\"");
  }
  EmbeddingMatrix m;
  m.n = read_u32_le(header + 4);
  m.d = read_u32_le(header + 8);
  if (m.n < 1 || m.d < 1) {
    throw FormatError(path + ": n and d must both be >= 1");
  }

  const std::size_t values = static_cast<std::size_t>(m.n) * m.d;
  m.data.resize(values);
  std::vector<unsigned char> buf(values * 4);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
    throw FormatError(path + ": truncated payload, expected " +
                      std::to_string(values) + " floats");
  }
  for (std::size_t i = 0; i < values; ++i) {
    const float f = f32_from_le(buf.data() + i * 4);
    if (!std::isfinite(f)) {
      throw FormatError(path + ": non-finite value at row " +
                        std::to_string(i / m.d) + ", col " +
                        std::to_string(i % m.d));
    }
    m.data[i] = f;
  }
  return m;
}

void write_embeddings(const EmbeddingMatrix& m, const std::string& path) {
  if (m.n < 1 || m.d < 1 ||
      m.data.size() != static_cast<std::size_t>(m.n) * m.d) {
    throw ConfigError("embedding matrix shape mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out.write(kMagic, 4);
  write_u32_le(out, m.n);
  write_u32_le(out, m.d);
  for (float f : m.data) write_f32_le(out, f);
  out.close();
  if (out.fail()) throw IoError("write failure on " + path);
}

}  // namespace csw
