#include "surfmmp/lattice.hpp"

#include <algorithm>
#include <utility>

#include "surfmmp/error.hpp"

namespace surfmmp {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw SurfaceError(ErrorKind::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw SurfaceError(ErrorKind::DimensionMismatch, "matrix product");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DivisorClass DivisorClass::basis_vector(std::size_t rank, std::size_t index) {
  DivisorClass d(rank);
  d.coords.at(index) = 1;
  return d;
}

bool DivisorClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.size() != size()) throw SurfaceError(ErrorKind::DimensionMismatch, "class addition");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += other.coords[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  if (other.size() != size()) throw SurfaceError(ErrorKind::DimensionMismatch, "class subtraction");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= other.coords[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& scale) {
  for (auto& x : coords) x *= scale;
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass d = *this;
  for (auto& x : d.coords) x = -x;
  return d;
}

IntersectionLattice::IntersectionLattice(std::vector<std::string> basis_names, RatMatrix gram)
    : names_(std::move(basis_names)), gram_(std::move(gram)) {
  if (gram_.rows() != names_.size() || gram_.cols() != names_.size()) {
    throw SurfaceError(ErrorKind::InvariantViolation, "gram dimension differs from the number of basis names");
  }
  if (!gram_.is_symmetric()) throw SurfaceError(ErrorKind::InvariantViolation, "gram matrix is not symmetric");
}

std::optional<std::size_t> IntersectionLattice::basis_index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool NegDefCertificate::valid() const {
  if (minor_signs.size() != curve_indices.size()) return false;
  for (std::size_t k = 0; k < minor_signs.size(); ++k) {
    const int expected = (k % 2 == 0) ? -1 : 1;  // minor of order k+1
    if (minor_signs[k] != expected) return false;
  }
  return true;
}

Rational intersect(const IntersectionLattice& lattice, const DivisorClass& a, const DivisorClass& b) {
  const std::size_t n = lattice.rank();
  if (a.size() != n || b.size() != n) {
    throw SurfaceError(ErrorKind::DimensionMismatch, "class length differs from lattice rank");
  }
  const RatMatrix& g = lattice.gram();
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coords[j] != 0) row += g(i, j) * b.coords[j];
    }
    total += a.coords[i] * row;
  }
  return total;
}

RatMatrix gram_of(const IntersectionLattice& lattice, std::span<const DivisorClass> classes) {
  RatMatrix m(classes.size(), classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i; j < classes.size(); ++j) {
      m(i, j) = intersect(lattice, classes[i], classes[j]);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

NegDefResult negative_definite_certificate(const RatMatrix& gram, std::vector<std::size_t> labels) {
  const std::size_t n = gram.rows();
  if (labels.empty()) {
    labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  }
  NegDefResult result;
  result.certificate.curve_indices = std::move(labels);

  // Elimination without pivoting: the k-th leading minor is the product of the first k pivots.
  RatMatrix a = gram;
  Rational minor = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = a(k, k);
    minor *= pivot;
    result.certificate.minor_signs.push_back(sgn(minor));
    if (pivot == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  result.negative_definite = result.certificate.valid();
  return result;
}

NegDefResult is_negative_definite(const IntersectionLattice& lattice, std::span<const DivisorClass> classes,
                                  std::vector<std::size_t> indices) {
  return negative_definite_certificate(gram_of(lattice, classes), std::move(indices));
}

std::vector<Rational> solve_linear(RatMatrix a, std::vector<Rational> rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) throw SurfaceError(ErrorKind::DimensionMismatch, "linear solve");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw SurfaceError(ErrorKind::Singular, "singular Gram submatrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

std::vector<Rational> solve_on_support(const IntersectionLattice& lattice, std::span<const DivisorClass> support,
                                       std::span<const Rational> targets) {
  if (support.size() != targets.size()) throw SurfaceError(ErrorKind::DimensionMismatch, "support/targets");
  return solve_linear(gram_of(lattice, support), std::vector<Rational>(targets.begin(), targets.end()));
}

std::vector<Rational> solve_full_column_rank(const RatMatrix& a, std::span<const Rational> rhs) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (rhs.size() != m) throw SurfaceError(ErrorKind::DimensionMismatch, "tall solve");
  RatMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = rhs[i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col, ++row) {
    std::size_t p = row;
    while (p < m && aug(p, col) == 0) ++p;
    if (p == m) throw SurfaceError(ErrorKind::Singular, "rank-deficient system");
    if (p != row) {
      for (std::size_t j = 0; j <= n; ++j) std::swap(aug(row, j), aug(p, j));
    }
    const Rational pivot = aug(row, col);
    for (std::size_t j = col; j <= n; ++j) aug(row, j) /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      const Rational f = aug(i, col);
      for (std::size_t j = col; j <= n; ++j) aug(i, j) -= f * aug(row, j);
    }
  }
  for (std::size_t i = n; i < m; ++i) {
    if (aug(i, n) != 0) throw SurfaceError(ErrorKind::Singular, "inconsistent system");
  }
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = aug(j, n);
  return x;
}

std::size_t matrix_rank(RatMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(p, j));
    }
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      const Rational f = m(i, col) / m(rank, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace surfmmp
