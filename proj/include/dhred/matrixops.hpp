#pragma once

#include "dhred/number.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dhred {

/// Dense square-capable matrix over any field-like scalar (Rational, Quad,
/// double). Row-major.
template <class T>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool square() const { return rows == cols; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }
};

using RatMat = Mat<Rational>;
using QuadMat = Mat<Quad>;

template <class T>
Mat<T> matmul(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
  Mat<T> r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const T& v = x.at(i, k);
      if (v == T(0)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

template <class T>
T trace(const Mat<T>& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix not square");
  T t(0);
  for (std::size_t i = 0; i < m.rows; ++i) t += m.at(i, i);
  return t;
}

/// Sums of principal minors M_0..M_m via the Faddeev-LeVerrier recurrence
/// (exact in rational arithmetic). M_0 = 1, M_1 = trace, M_m = det.
template <class T>
std::vector<T> minor_sums(const Mat<T>& m) {
  if (!m.square()) throw std::invalid_argument("minor_sums: matrix not square");
  const std::size_t n = m.rows;
  std::vector<T> out;
  out.reserve(n + 1);
  out.push_back(T(1));
  if (n == 0) return out;
  Mat<T> b = m;
  T c = trace(b);
  out.push_back(c);
  for (std::size_t k = 2; k <= n; ++k) {
    Mat<T> shifted = b;
    for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= c;
    b = matmul(m, shifted);
    c = trace(b) / T(static_cast<long>(k));
    // the recurrence yields (-1)^(k-1) M_k
    out.push_back(k % 2 == 1 ? c : -c);
  }
  return out;
}

namespace detail {

template <class T>
T det_expand(const Mat<T>& m, std::vector<std::size_t> idx) {
  const std::size_t k = idx.size();
  if (k == 0) return T(1);
  if (k == 1) return m.at(idx[0], idx[0]);
  T acc(0);
  std::vector<std::size_t> rest(idx.begin() + 1, idx.end());
  for (std::size_t j = 0; j < k; ++j) {
    // expand along the first row of the submatrix
    std::vector<std::size_t> cols;
    cols.reserve(k - 1);
    for (std::size_t c = 0; c < k; ++c)
      if (c != j) cols.push_back(idx[c]);
    // minor of rows rest x cols
    Mat<T> sub(k - 1, k - 1);
    for (std::size_t r = 0; r < k - 1; ++r)
      for (std::size_t c = 0; c < k - 1; ++c) sub.at(r, c) = m.at(rest[r], cols[c]);
    std::vector<std::size_t> sidx(k - 1);
    for (std::size_t i = 0; i < k - 1; ++i) sidx[i] = i;
    T cof = det_expand(sub, sidx);
    T term = m.at(idx[0], idx[j]) * cof;
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

template <class T>
void combinations(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t start,
                  const Mat<T>& m, T& acc) {
  if (cur.size() == k) {
    acc += det_expand(m, cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, cur, i + 1, m, acc);
    cur.pop_back();
  }
}

}  // namespace detail

/// Independent oracle for minor_sums: enumerates all C(m,k) principal minors
/// with direct cofactor expansion. Dimension must be <= 6.
template <class T>
std::vector<T> minor_sums_bruteforce(const Mat<T>& m) {
  if (!m.square()) throw std::invalid_argument("minor_sums_bruteforce: matrix not square");
  if (m.rows > 6) throw std::invalid_argument("minor_sums_bruteforce: dimension too large");
  std::vector<T> out;
  out.push_back(T(1));
  for (std::size_t k = 1; k <= m.rows; ++k) {
    T acc(0);
    std::vector<std::size_t> cur;
    detail::combinations(m.rows, k, cur, 0, m, acc);
    out.push_back(acc);
  }
  return out;
}

template <class T>
T det(const Mat<T>& m) {
  return minor_sums(m).back();
}

/// Max |entry| of sum_{k=0..m} (-1)^k M_k H^(m-k); zero in exact arithmetic
/// by the Cayley-Hamilton theorem.
template <class T>
T cayley_hamilton_residual(const Mat<T>& m) {
  if (!m.square()) throw std::invalid_argument("cayley_hamilton_residual: matrix not square");
  std::vector<T> ms = minor_sums(m);
  const std::size_t n = m.rows;
  Mat<T> r = Mat<T>::identity(n);  // Horner: r <- r*H + (-1)^k M_k I
  for (std::size_t k = 1; k <= n; ++k) {
    r = matmul(r, m);
    T coeff = (k % 2 == 0) ? ms[k] : -ms[k];
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) += coeff;
  }
  using std::abs;
  T worst(0);
  for (const T& v : r.a) {
    T av = abs(v);
    if (av > worst) worst = av;
  }
  return worst;
}

/// tr(H^k) for k = 1..kmax.
template <class T>
std::vector<T> power_traces(const Mat<T>& m, int kmax) {
  if (!m.square()) throw std::invalid_argument("power_traces: matrix not square");
  if (kmax < 1) throw std::invalid_argument("power_traces: kmax must be >= 1");
  std::vector<T> out;
  out.reserve(kmax);
  Mat<T> b = Mat<T>::identity(m.rows);
  for (int k = 1; k <= kmax; ++k) {
    b = matmul(b, m);
    out.push_back(trace(b));
  }
  return out;
}

/// Newton-identity residual p_k - sum_{i=1..k-1} (-1)^(i-1) M_i p_{k-i}
/// - (-1)^(k-1) k M_k, using M_k = 0 for k > dimension.
template <class T>
T newton_identity_residual(const std::vector<T>& minors, const std::vector<T>& traces,
                           std::size_t k) {
  auto minor_at = [&](std::size_t i) { return i < minors.size() ? minors[i] : T(0); };
  T acc = traces.at(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    T term = minor_at(i) * traces.at(k - i - 1);
    if (i % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  T last = T(static_cast<long>(k)) * minor_at(k);
  if (k % 2 == 1)
    acc -= last;
  else
    acc += last;
  return acc;
}

}  // namespace dhred
