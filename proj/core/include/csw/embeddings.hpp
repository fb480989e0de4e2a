#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace csw {

/// Row-major n x d matrix of sentence embeddings. Row i of two paired
/// matrices refers to the same parallel sentence pair.
struct EmbeddingMatrix {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<float> data;

  std::span<const float> row(std::uint32_t i) const {
    return {data.data() + static_cast<std::size_t>(i) * d, d};
  }
  float& at(std::uint32_t i, std::uint32_t j) {
    return data[static_cast<std::size_t>(i) * d + j];
  }
  float at(std::uint32_t i, std::uint32_t j) const {
    return data[static_cast<std::size_t>(i) * d + j];
  }
};

/// Binary format: magic "EMB1", u32-LE n, u32-LE d, then n*d f32-LE values
/// row-major. Non-finite values are rejected with their row/column index.
EmbeddingMatrix read_embeddings(const std::string& path);
void write_embeddings(const EmbeddingMatrix& m, const std::string& path);

}  // namespace csw
