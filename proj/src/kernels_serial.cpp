#include "arcforge/kernels.hpp"

#include <utility>

namespace arcforge::kernels::reference {

std::vector<int> count_members(std::span<const std::uint32_t> flat_lines, std::size_t line_len,
                               std::span<const std::uint8_t> member) {
  const std::size_t n = line_len ? flat_lines.size() / line_len : 0;
  std::vector<int> out(n, 0);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < line_len; ++k)
      if (member[flat_lines[l * line_len + k]]) ++out[l];
  return out;
}

std::vector<int> incidence_counts(const Field& f, std::span<const Elem> lines3, std::span<const Elem> points3) {
  const std::size_t nl = lines3.size() / 3, np = points3.size() / 3;
  std::vector<int> out(nl, 0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t p = 0; p < np; ++p) {
      const Elem s = f.mul(lines3[3 * l], points3[3 * p]) ^ f.mul(lines3[3 * l + 1], points3[3 * p + 1]) ^
                     f.mul(lines3[3 * l + 2], points3[3 * p + 2]);
      if (s == 0) ++out[l];
    }
  }
  return out;
}

std::vector<std::size_t> reduce_rows(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && data[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(data[p * cols + j], data[r * cols + j]);
    const Elem s = f.inv(data[r * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) data[r * cols + j] = f.mul(s, data[r * cols + j]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = data[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) data[i * cols + j] ^= f.mul(factor, data[r * cols + j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::uint8_t> grid_zeros(const Field& f, std::span<const Term> terms) {
  const auto n = static_cast<Elem>(f.order());
  std::vector<std::uint8_t> out(std::size_t{n} * n, 0);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem s = 0;
      for (const Term& t : terms)
        s ^= f.mul(t.c, f.mul(f.pow(x, static_cast<std::uint64_t>(t.i)), f.pow(y, static_cast<std::uint64_t>(t.j))));
      out[std::size_t{x} * n + y] = s == 0;
    }
  }
  return out;
}

}  // namespace arcforge::kernels::reference
