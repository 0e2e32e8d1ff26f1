#include "bickley/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace bickley::linalg {

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_symmetric() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = r + 1; c < n_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::minor_matrix(std::size_t r, std::size_t c) const {
  Matrix out(n_ - 1);
  for (std::size_t i = 0, oi = 0; i < n_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, oj = 0; j < n_; ++j) {
      if (j == c) continue;
      out(oi, oj++) = (*this)(i, j);
    }
    ++oi;
  }
  return out;
}

Matrix Matrix::leading(std::size_t k) const {
  Matrix out(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) out(r, c) = (*this)(r, c);
  return out;
}

double determinant(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

Matrix cofactors(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix out(n);
  if (n == 1) {
    out(0, 0) = 1.0;
    return out;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
      out(r, c) = sign * determinant(m.minor_matrix(r, c));
    }
  return out;
}

std::vector<double> leading_minors(const Matrix& m) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= m.size(); ++k) out.push_back(determinant(m.leading(k)));
  return out;
}

EigenResult symmetric_eigenvalues(const Matrix& m, int max_sweeps) {
  const std::size_t n = m.size();
  Matrix a = m;
  EigenResult res;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += a(r, c) * a(r, c);
    return s;
  };
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale += m(r, c) * m(r, c);
  const double stop = std::numeric_limits<double>::epsilon() *
                      std::numeric_limits<double>::epsilon() * scale;

  for (; res.sweeps < max_sweeps; ++res.sweeps) {
    if (off_norm() <= stop) {
      res.converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (!res.converged && off_norm() <= stop) res.converged = true;
  for (std::size_t i = 0; i < n; ++i) res.values.push_back(a(i, i));
  std::sort(res.values.begin(), res.values.end());
  return res;
}

}  // namespace bickley::linalg
