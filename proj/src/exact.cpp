#include "pw/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pw {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_bits(const BitMatrix& b) {
  IntMatrix m(b.size(), b.size());
  m.add_scaled(b, 1);
  return m;
}

void IntMatrix::add_scaled(const BitMatrix& b, std::int64_t s) {
  if (b.size() != rows_ || b.size() != cols_) throw std::invalid_argument("shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i)
    for (auto j : b.row(i).indices()) data_[i * cols_ + j] += s;
}

void IntMatrix::add_scaled(const IntMatrix& b, std::int64_t s) {
  if (b.rows_ != rows_ || b.cols_ != cols_) throw std::invalid_argument("shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * b.data_[k];
}

IntMatrix IntMatrix::scaled(std::int64_t s) const {
  IntMatrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool IntMatrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t* out = c.row_ptr(i);
    const std::int64_t* arow = a.row_ptr(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t s = arow[k];
      if (s == 0) continue;
      const std::int64_t* brow = b.row_ptr(k);
      for (std::size_t j = 0; j < n; ++j) out[j] += s * brow[j];
    }
  }
  return c;
}

IntMatrix multiply(const BitMatrix& a, const IntMatrix& b) {
  if (a.size() != b.rows()) throw std::invalid_argument("shape mismatch");
  IntMatrix c(a.size(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t* out = c.row_ptr(i);
    for (auto k : a.row(i).indices()) {
      const std::int64_t* brow = b.row_ptr(k);
      for (std::size_t j = 0; j < n; ++j) out[j] += brow[j];
    }
  }
  return c;
}

std::size_t exact_rank(const IntMatrix& m) {
  using boost::multiprecision::cpp_int;
  // Row-by-row elimination over Z: row_i <- a*row_i - b*row_r, then divide by
  // the row content.  Rows with a zero in the pivot column are left untouched.
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);

  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    std::vector<std::size_t> support;
    for (std::size_t j = col; j < cols; ++j)
      if (a[r][j] != 0) support.push_back(j);
    const cpp_int pivot = a[r][col];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      const cpp_int g = gcd(pivot, a[i][col]);
      const cpp_int s = pivot / g, t = a[i][col] / g;
      if (s != 1)
        for (std::size_t j = col; j < cols; ++j)
          if (a[i][j] != 0) a[i][j] *= s;
      for (auto j : support) a[i][j] -= t * a[r][j];
      cpp_int content = 0;
      for (std::size_t j = col + 1; j < cols && content != 1; ++j)
        if (a[i][j] != 0) content = gcd(content, a[i][j]);
      if (content > 1)
        for (std::size_t j = col + 1; j < cols; ++j)
          if (a[i][j] != 0) a[i][j] /= content;
    }
    ++r;
  }
  return r;
}

}  // namespace pw
