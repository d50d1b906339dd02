// Copyright 2026 The cvbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "cvb/fock.hpp"
#include "cvb/kernels.hpp"

namespace cvb::fock {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument(fmt::format("negative matrix shape {}x{}", rows, cols));
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx{});
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

CMatrix CMatrix::block(int row0, int col0, int rows, int cols) const {
  if (row0 < 0 || col0 < 0 || row0 + rows > rows_ || col0 + cols > cols_) {
    throw std::out_of_range(fmt::format("block ({},{})+{}x{} outside {}x{}", row0, col0, rows, cols, rows_, cols_));
  }
  CMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(row0 + i) * cols_ + col0, cols,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i) * cols);
  }
  return out;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::norm1() const {
  std::vector<double> col(static_cast<std::size_t>(cols_), 0.0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) col[static_cast<std::size_t>(j)] += std::abs((*this)(i, j));
  }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw std::invalid_argument(fmt::format("product of {}x{} and {}x{}", rows_, cols_, rhs.rows_, rhs.cols_));
  }
  CMatrix out(rows_, rhs.cols_);
  kernels::zgemm(rows_, rhs.cols_, cols_, data(), rhs.data(), out.data());
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  CMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  CMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

CMatrix CMatrix::operator*(cplx s) const {
  CMatrix out = *this;
  for (auto& v : out.data_) v *= s;
  return out;
}

CMatrix solve(CMatrix A, CMatrix B) {
  const int n = A.rows();
  if (A.cols() != n || B.rows() != n) {
    throw std::invalid_argument("solve: shape mismatch");
  }
  const int m = B.cols();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(A(i, col)) > std::abs(A(piv, col))) piv = i;
    }
    if (std::abs(A(piv, col)) == 0.0) throw std::domain_error("solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
      for (int j = 0; j < m; ++j) std::swap(B(col, j), B(piv, j));
    }
    const cplx inv = 1.0 / A(col, col);
    for (int i = col + 1; i < n; ++i) {
      const cplx f = A(i, col) * inv;
      if (f == cplx{}) continue;
      for (int j = col; j < n; ++j) A(i, j) -= f * A(col, j);
      for (int j = 0; j < m; ++j) B(i, j) -= f * B(col, j);
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < m; ++j) {
      cplx acc = B(i, j);
      for (int k = i + 1; k < n; ++k) acc -= A(i, k) * B(k, j);
      B(i, j) = acc / A(i, i);
    }
  }
  return B;
}

CMatrix expm(const CMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("expm needs a square matrix");
  const int n = A.rows();
  if (n == 0) return A;
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double norm = A.norm1();
  int s = 0;
  if (norm > theta13) s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const CMatrix X = A * cplx(std::ldexp(1.0, -s));
  const CMatrix I = CMatrix::identity(n);
  const CMatrix X2 = X * X;
  const CMatrix X4 = X2 * X2;
  const CMatrix X6 = X4 * X2;
  const CMatrix U = X * (X6 * (X6 * b[13] + X4 * b[11] + X2 * b[9]) + X6 * b[7] + X4 * b[5] + X2 * b[3] + I * b[1]);
  const CMatrix V = X6 * (X6 * b[12] + X4 * b[10] + X2 * b[8]) + X6 * b[6] + X4 * b[4] + X2 * b[2] + I * b[0];
  CMatrix R = solve(V - U, V + U);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

CMatrix build_ladder(int n) {
  CMatrix a(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

}  // namespace cvb::fock
