#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfmmp/rational.hpp"

namespace surfmmp {

// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_symmetric() const;
  RatMatrix transpose() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Numerical divisor class: coordinates in the lattice basis.
struct DivisorClass {
  std::vector<Rational> coords;

  DivisorClass() = default;
  explicit DivisorClass(std::size_t rank) : coords(rank) {}
  explicit DivisorClass(std::vector<Rational> c) : coords(std::move(c)) {}
  DivisorClass(std::initializer_list<Rational> c) : coords(c) {}

  static DivisorClass basis_vector(std::size_t rank, std::size_t index);

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& scale);
  DivisorClass operator-() const;

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) = default;
};

class IntersectionLattice {
 public:
  IntersectionLattice() = default;
  // Throws InvariantViolation if gram is not square/symmetric or names do not match.
  IntersectionLattice(std::vector<std::string> basis_names, RatMatrix gram);

  std::size_t rank() const { return names_.size(); }
  const RatMatrix& gram() const { return gram_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  std::optional<std::size_t> basis_index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  RatMatrix gram_;
};

struct NegDefCertificate {
  std::vector<std::size_t> curve_indices;
  std::vector<int> minor_signs;  // sign of the k-th leading principal minor, k = 1..

  // Valid iff every k-th minor has sign (-1)^k and all minors are present.
  bool valid() const;
};

struct NegDefResult {
  bool negative_definite = false;
  NegDefCertificate certificate;
};

Rational intersect(const IntersectionLattice& lattice, const DivisorClass& a, const DivisorClass& b);

// Pairwise intersection matrix of the given classes.
RatMatrix gram_of(const IntersectionLattice& lattice, std::span<const DivisorClass> classes);

// Leading principal minors on the given ordering. The empty matrix is negative definite.
NegDefResult negative_definite_certificate(const RatMatrix& gram, std::vector<std::size_t> labels = {});

// `indices` label the classes in the certificate (typically tracked-curve indices).
NegDefResult is_negative_definite(const IntersectionLattice& lattice, std::span<const DivisorClass> classes,
                                  std::vector<std::size_t> indices = {});

// Solves gram * x = rhs exactly. Throws Singular.
std::vector<Rational> solve_linear(RatMatrix gram, std::vector<Rational> rhs);

// Coefficients x with (sum_i x_i support_i) . support_j = targets[j] for every j.
std::vector<Rational> solve_on_support(const IntersectionLattice& lattice, std::span<const DivisorClass> support,
                                       std::span<const Rational> targets);

// Solves a x = rhs for a full-column-rank (possibly tall) matrix when the system is
// consistent. Throws Singular on rank deficiency or inconsistency.
std::vector<Rational> solve_full_column_rank(const RatMatrix& a, std::span<const Rational> rhs);

// Rank of a matrix over Q.
std::size_t matrix_rank(RatMatrix m);

}  // namespace surfmmp
