#pragma once

// Data-parallel inner loops shared by the geometry and curve modules.
//
// Every kernel in `arcforge::kernels` is OpenMP-parallel and honours
// worker_count(); its twin in `arcforge::kernels::reference` is a plain serial
// loop kept as the test oracle and benchmark baseline. Both return identical
// results for every worker count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arcforge/gf.hpp"

namespace arcforge {

/// One term c * x^i * y^j of a bivariate polynomial.
struct Term {
  int i = 0;
  int j = 0;
  Elem c = 0;
};

namespace kernels {

/// For each fixed-length line in `flat_lines`, the number of its points p with member[p] != 0.
std::vector<int> count_members(std::span<const std::uint32_t> flat_lines, std::size_t line_len,
                               std::span<const std::uint8_t> member);

/// For each line with dual coordinates (a, b, c), the number of points (x, y, z) in
/// `points3` with a*x + b*y + c*z = 0. Both spans hold coordinate triples.
std::vector<int> incidence_counts(const Field& f, std::span<const Elem> lines3, std::span<const Elem> points3);

/// In-place reduced row echelon form of a row-major rows x cols matrix. Pivots are
/// chosen as the first nonzero entry of each column in row order. Returns the pivot
/// columns in increasing order.
std::vector<std::size_t> reduce_rows(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols);

/// Zero mask of a polynomial over the affine plane: entry x * |F| + y is 1 iff f(x, y) = 0.
std::vector<std::uint8_t> grid_zeros(const Field& f, std::span<const Term> terms);

namespace reference {

std::vector<int> count_members(std::span<const std::uint32_t> flat_lines, std::size_t line_len,
                               std::span<const std::uint8_t> member);
std::vector<int> incidence_counts(const Field& f, std::span<const Elem> lines3, std::span<const Elem> points3);
std::vector<std::size_t> reduce_rows(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols);
std::vector<std::uint8_t> grid_zeros(const Field& f, std::span<const Term> terms);

}  // namespace reference
}  // namespace kernels
}  // namespace arcforge
