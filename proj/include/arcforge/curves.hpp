#pragma once

// Minimum-degree affine curves through a point set of AG(2, F): monomial
// evaluation matrices, exact rank and nullspace, degree bisection, and peeling of
// linear factors off the fitted polynomial.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcforge/gf.hpp"
#include "arcforge/kernels.hpp"
#include "arcforge/projgeom.hpp"

namespace arcforge {

/// x^x * y^y. Ordered graded-lexicographically: total degree first, then the power of x.
struct Monomial {
  int x = 0;
  int y = 0;
  int total() const { return x + y; }
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return a.x <=> b.x;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// All (a, b) with a + b <= i, ordered by a and then b.
std::vector<Monomial> monomials_upto(int i);

class BivariatePoly {
 public:
  BivariatePoly() = default;

  /// Adds c * m; terms that cancel are dropped.
  void add_term(Monomial m, Elem c);
  Elem coeff(Monomial m) const;
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  std::vector<Term> term_list() const;
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }
  Elem evaluate(const Field& f, Elem x, Elem y) const;

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  std::map<Monomial, Elem> terms_;
};

BivariatePoly multiply(const BivariatePoly& a, const BivariatePoly& b, const Field& f);

/// Terms in decreasing graded-lex order; coefficients other than 1 as powers of
/// the field generator, e.g. "x^2*y + g^5*x + 1".
std::string to_string(const BivariatePoly& p, const Field& f);

class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> data() { return data_; }
  std::span<const Elem> data() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

/// Row P = (1, px, py) holds px^a py^b for each monomial of monomials_upto(i).
/// Throws std::invalid_argument for a point off the affine plane z = 1.
Matrix eval_matrix(std::span<const ProjPoint> points, int i, const Field& f);

std::size_t matrix_rank(const Matrix& m, const Field& f);

struct DegreeProbe {
  int degree = 0;
  std::size_t rank = 0;
  std::size_t monomials = 0;
  friend bool operator==(const DegreeProbe&, const DegreeProbe&) = default;
};

struct MinDegree {
  std::optional<int> degree;  // std::nullopt: full rank up to max_i
  std::vector<DegreeProbe> probes;  // in evaluation order
};

/// Smallest i in [1, max_i] whose evaluation matrix is column-rank deficient,
/// found by bisection on rank - #monomials (non-increasing in i).
MinDegree min_cover_degree(std::span<const ProjPoint> points, int max_i, const Field& f);

struct Nullspace {
  std::vector<Elem> vector;
  std::size_t rank = 0;
  std::size_t nullity = 0;
};

/// Nonzero v with M v = 0: 1 at the first free column, the pivot variables solved
/// from the reduced echelon form, 0 elsewhere. Throws std::invalid_argument if M
/// has full column rank.
Nullspace nullspace_vector(const Matrix& m, const Field& f);

/// sum_k v[k] * monomials_upto(i)[k]. Throws on a length mismatch.
BivariatePoly vector_to_poly(std::span<const Elem> v, int i);
std::vector<Elem> poly_to_vector(const BivariatePoly& p, int i);

struct CurvePoints {
  std::vector<std::pair<Elem, Elem>> zeros;  // affine (x, y), sorted
  std::size_t on_set = 0;                    // how many of the supplied points are zeros
};

/// Affine zero set of f over the whole plane. Throws std::invalid_argument for f = 0.
CurvePoints curve_points(const BivariatePoly& p, const Field& f, std::span<const ProjPoint> set = {});

/// y + a x + b, or x + b when `vertical`.
struct LinearForm {
  bool vertical = false;
  Elem a = 0;
  Elem b = 0;
  BivariatePoly poly() const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

std::string to_string(const LinearForm& l, const Field& f);

struct LinearFactor {
  LinearForm form;
  int multiplicity = 0;
};

struct LinearSplit {
  std::vector<LinearFactor> factors;
  BivariatePoly residual;
};

bool divides(const LinearForm& l, const BivariatePoly& p, const Field& f);
/// Exact quotient; throws std::invalid_argument if l does not divide p.
BivariatePoly divide(const BivariatePoly& p, const LinearForm& l, const Field& f);

/// Divides out every linear form (y-forms by (a, b), then x-forms by b, in
/// encoding order), with multiplicity. Throws std::invalid_argument for p = 0.
LinearSplit extract_linear_factors(const BivariatePoly& p, const Field& f);

}  // namespace arcforge
