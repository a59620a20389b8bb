#include "arcforge/kernels.hpp"

#include <algorithm>
#include <utility>

#include "arcforge/parallel.hpp"

namespace arcforge::kernels {

std::vector<int> count_members(std::span<const std::uint32_t> flat_lines, std::size_t line_len,
                               std::span<const std::uint8_t> member) {
  const auto n = static_cast<std::int64_t>(line_len ? flat_lines.size() / line_len : 0);
  std::vector<int> out(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::int64_t l = 0; l < n; ++l) {
    const std::uint32_t* line = flat_lines.data() + l * static_cast<std::int64_t>(line_len);
    int c = 0;
    for (std::size_t k = 0; k < line_len; ++k) c += member[line[k]] != 0;
    out[static_cast<std::size_t>(l)] = c;
  }
  return out;
}

std::vector<int> incidence_counts(const Field& f, std::span<const Elem> lines3, std::span<const Elem> points3) {
  const auto nl = static_cast<std::int64_t>(lines3.size() / 3);
  const std::size_t np = points3.size() / 3;
  std::vector<int> out(static_cast<std::size_t>(nl), 0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::int64_t l = 0; l < nl; ++l) {
    const Elem a = lines3[3 * l], b = lines3[3 * l + 1], c = lines3[3 * l + 2];
    int hits = 0;
    for (std::size_t p = 0; p < np; ++p) {
      const Elem* pt = points3.data() + 3 * p;
      hits += (f.mul(a, pt[0]) ^ f.mul(b, pt[1]) ^ f.mul(c, pt[2])) == 0;
    }
    out[static_cast<std::size_t>(l)] = hits;
  }
  return out;
}

std::vector<std::size_t> reduce_rows(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const int workers = worker_count();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && data[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) std::swap_ranges(data.begin() + p * cols, data.begin() + (p + 1) * cols, data.begin() + r * cols);
    const Elem s = f.inv(data[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) data[r * cols + j] = f.mul(s, data[r * cols + j]);
    // columns left of c are already zero in the pivot row
    const std::span<const Elem> pivot_row = data.subspan(r * cols + c, cols - c);
    const auto nrows = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t i = 0; i < nrows; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (ui == r) continue;
      const Elem factor = data[ui * cols + c];
      if (factor != 0) f.axpy(factor, pivot_row, data.subspan(ui * cols + c, cols - c));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::uint8_t> grid_zeros(const Field& f, std::span<const Term> terms) {
  const auto n = static_cast<Elem>(f.order());
  int dx = 0, dy = 0;
  for (const Term& t : terms) {
    dx = std::max(dx, t.i);
    dy = std::max(dy, t.j);
  }
  std::vector<std::uint8_t> out(std::size_t{n} * n, 0);
  const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(worker_count())
  {
    std::vector<Elem> xpow(static_cast<std::size_t>(dx) + 1);
    std::vector<Elem> coef(static_cast<std::size_t>(dy) + 1);
#pragma omp for schedule(static)
    for (std::int64_t xi = 0; xi < nn; ++xi) {
      const auto x = static_cast<Elem>(xi);
      xpow[0] = 1;
      for (int i = 1; i <= dx; ++i) xpow[i] = f.mul(xpow[i - 1], x);
      // f(x, y) = sum_j coef[j] y^j
      std::fill(coef.begin(), coef.end(), 0);
      for (const Term& t : terms) coef[t.j] ^= f.mul(t.c, xpow[t.i]);
      for (Elem y = 0; y < n; ++y) {
        Elem s = 0;
        for (int j = dy; j >= 0; --j) s = f.mul(s, y) ^ coef[j];
        out[std::size_t{x} * n + y] = s == 0;
      }
    }
  }
  return out;
}

}  // namespace arcforge::kernels
