#pragma once

// Dense exact linear algebra over PrimeField or ExtField.
//
// Vectors are rows. rref() pivots on the first nonzero entry in column
// order and scales every pivot to 1, so echelon forms, spans and kernel
// bases are canonical and reproducible.

#include <cassert>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace thinlie::linalg {

template <class F>
concept Field = requires(const F& f, typename F::Elem a) {
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.add(a, a) } -> std::same_as<typename F::Elem>;
  { f.sub(a, a) } -> std::same_as<typename F::Elem>;
  { f.mul(a, a) } -> std::same_as<typename F::Elem>;
  { f.neg(a) } -> std::same_as<typename F::Elem>;
  { f.inv(a) } -> std::same_as<typename F::Elem>;
  { f.is_zero(a) } -> std::same_as<bool>;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    assert(values.size() == cols_);
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  // Keeps the first n rows.
  void truncate_rows(std::size_t n) {
    if (n >= rows_) return;
    rows_ = n;
    data_.resize(rows_ * cols_);
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Field F>
using Mat = Matrix<typename F::Elem>;

template <Field F>
using Vec = std::vector<typename F::Elem>;

template <Field F>
Mat<F> zeros(const F& f, std::size_t rows, std::size_t cols) {
  return Mat<F>(rows, cols, f.zero());
}

template <Field F>
Mat<F> identity(const F& f, std::size_t n) {
  Mat<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <Field F>
Mat<F> from_rows(const F& f, std::size_t cols, const std::vector<Vec<F>>& rows) {
  Mat<F> m(0, cols, f.zero());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

template <Field F>
bool is_zero(const F& f, std::span<const typename F::Elem> v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <Field F>
bool is_zero(const F& f, const Mat<F>& m) {
  return is_zero(f, std::span<const typename F::Elem>(m.data()));
}

template <Field F>
Mat<F> multiply(const F& f, const Mat<F>& a, const Mat<F>& b) {
  assert(a.cols() == b.rows());
  Mat<F> c(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& bkj = b(k, j);
        if (!f.is_zero(bkj)) c(i, j) = f.add(c(i, j), f.mul(aik, bkj));
      }
    }
  return c;
}

template <Field F>
Mat<F> subtract(const F& f, const Mat<F>& a, const Mat<F>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Mat<F> c(a.rows(), a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.sub(a(i, j), b(i, j));
  return c;
}

template <Field F>
Mat<F> add(const F& f, const Mat<F>& a, const Mat<F>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Mat<F> c(a.rows(), a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

template <Field F>
Mat<F> scaled(const F& f, const typename F::Elem& s, const Mat<F>& a) {
  Mat<F> c(a.rows(), a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.mul(s, a(i, j));
  return c;
}

template <Field F>
Mat<F> transpose(const F& f, const Mat<F>& a) {
  Mat<F> t(a.cols(), a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// m * v, v a column given as a vector.
template <Field F>
Vec<F> apply(const F& f, const Mat<F>& m, std::span<const typename F::Elem> v) {
  assert(m.cols() == v.size());
  Vec<F> out(m.rows(), f.zero());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (f.is_zero(v[j])) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!f.is_zero(m(i, j))) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  }
  return out;
}

template <Field F>
Vec<F> axpy(const F& f, const typename F::Elem& a, std::span<const typename F::Elem> x,
            std::span<const typename F::Elem> y) {
  assert(x.size() == y.size());
  Vec<F> out(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.add(out[i], f.mul(a, x[i]));
  return out;
}

template <Field F>
struct Echelon {
  Mat<F> reduced;                   // rank rows, reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
  Mat<F> kernel;                    // rows span {v : m v^T = 0}, one per free column; empty unless requested

  std::size_t rank() const noexcept { return pivots.size(); }
};

template <Field F>
Echelon<F> rref(const F& f, Mat<F> m, bool with_kernel = true) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!f.is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(inv, m(r, j));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);

  Mat<F> kernel(0, cols, f.zero());
  if (!with_kernel) return {std::move(m), std::move(pivots), std::move(kernel)};
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> k(cols, f.zero());
    k[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = f.neg(m(i, free));
    kernel.append_row(k);
  }
  return {std::move(m), std::move(pivots), std::move(kernel)};
}

template <Field F>
std::size_t rank(const F& f, const Mat<F>& m) {
  return rref(f, m, false).rank();
}

// Canonical basis (rref rows) of the row span.
template <Field F>
Mat<F> span(const F& f, const Mat<F>& m) {
  return rref(f, m, false).reduced;
}

template <Field F>
Mat<F> stack(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> out = a;
  if (out.rows() == 0 && out.cols() == 0) return b;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

// Coordinates of v with respect to a basis in reduced row-echelon form,
// or nullopt when v is not in the span.
template <Field F>
std::optional<Vec<F>> coordinates_in_echelon(const F& f, const Echelon<F>& e,
                                             std::span<const typename F::Elem> v) {
  Vec<F> c(e.rank(), f.zero());
  Vec<F> residual(v.begin(), v.end());
  for (std::size_t i = 0; i < e.rank(); ++i) {
    c[i] = residual[e.pivots[i]];
    if (!f.is_zero(c[i])) residual = axpy(f, f.neg(c[i]), e.reduced.row(i), residual);
  }
  if (!is_zero(f, std::span<const typename F::Elem>(residual))) return std::nullopt;
  return c;
}

// Solves x * a = b for a row vector x (b is a combination of the rows of a).
template <Field F>
std::optional<Vec<F>> solve_left(const F& f, const Mat<F>& a, std::span<const typename F::Elem> b) {
  // Work on the transposed system a^T x^T = b^T via the augmented matrix.
  const std::size_t n = a.rows(), m = a.cols();
  Mat<F> aug(m, n + 1, f.zero());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(j, i);
    aug(i, n) = b[i];
  }
  auto e = rref(f, std::move(aug), false);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vec<F> x(n, f.zero());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, n);
  return x;
}

template <Field F>
std::optional<Mat<F>> inverse(const F& f, const Mat<F>& a) {
  const std::size_t n = a.rows();
  assert(a.cols() == n);
  Mat<F> aug(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto e = rref(f, std::move(aug), false);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Mat<F> inv(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <Field F>
typename F::Elem determinant(const F& f, Mat<F> m) {
  const std::size_t n = m.rows();
  assert(m.cols() == n);
  auto det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (!f.is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == n) return f.zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    auto inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(m(i, c))) continue;
      auto factor = f.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

// Row spaces equal.
template <Field F>
bool same_span(const F& f, const Mat<F>& a, const Mat<F>& b) {
  return span(f, a) == span(f, b);
}

}  // namespace thinlie::linalg
