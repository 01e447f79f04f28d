#include "modlie/fplinalg.hpp"

#include <atomic>
#include <stdexcept>

namespace modlie::fp {

namespace {

std::atomic<bool> g_parallel{true};

// Below this many output entries the OpenMP fork is not worth it.
constexpr std::size_t kParallelThreshold = 96 * 96;

void check_prime_range(std::int64_t p) {
  if (p < 2 || p >= kMaxPrime) {
    throw std::invalid_argument("modulus out of supported range");
  }
}

}  // namespace

std::int64_t normalize(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p) {
  std::int64_t base = normalize(a, p);
  std::int64_t acc = 1 % p;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a = normalize(a, p);
  if (a == 0) throw std::domain_error("division by zero mod p");
  return pow_mod(a, static_cast<std::uint64_t>(p - 2), p);
}

FpMatrix::FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  check_prime_range(p);
}

FpMatrix FpMatrix::identity(std::int64_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(std::int64_t p,
                             const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return FpMatrix(p, 0, 0);
  FpMatrix m(p, rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  data_[r * cols_ + c] = normalize(v, p_);
}

std::vector<std::int64_t> FpMatrix::row(std::size_t r) const {
  return std::vector<std::int64_t>(data_.begin() + r * cols_,
                                   data_.begin() + (r + 1) * cols_);
}

namespace kernels {

namespace {

inline void mul_row_range(const FpMatrix& a, const FpMatrix& b, FpMatrix& out,
                          std::size_t r0, std::size_t r1) {
  const std::int64_t p = a.p();
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  const std::int64_t* ad = a.data().data();
  const std::int64_t* bd = b.data().data();
  for (std::size_t i = r0; i < r1; ++i) {
    std::vector<std::int64_t> acc(m, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = ad[i * n + k];
      if (aik == 0) continue;
      const std::int64_t* brow = bd + k * m;
      for (std::size_t j = 0; j < m; ++j) acc[j] += aik * brow[j];
    }
    for (std::size_t j = 0; j < m; ++j) out.set(i, j, acc[j] % p);
  }
}

}  // namespace

void mul_serial(const FpMatrix& a, const FpMatrix& b, FpMatrix& out) {
  mul_row_range(a, b, out, 0, a.rows());
}

void mul_omp(const FpMatrix& a, const FpMatrix& b, FpMatrix& out) {
  const std::size_t rows = a.rows();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < rows; ++i) {
    mul_row_range(a, b, out, i, i + 1);
  }
}

namespace {

template <bool Parallel>
std::vector<std::size_t> rref_impl(FpMatrix& m) {
  const std::int64_t p = m.p();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::int64_t t = m.at(r, j);
        m.set(r, j, m.at(pivot, j));
        m.set(pivot, j, t);
      }
    }
    const std::int64_t inv = inv_mod(m.at(r, c), p);
    for (std::size_t j = c; j < cols; ++j) m.set(r, j, m.at(r, j) * inv % p);
    // Eliminate the pivot column everywhere else; rows are independent.
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::int64_t f = m.at(i, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        m.set(i, j, m.at(i, j) - f * m.at(r, j) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::size_t> rref_serial(FpMatrix& m) { return rref_impl<false>(m); }
std::vector<std::size_t> rref_omp(FpMatrix& m) { return rref_impl<true>(m); }

}  // namespace kernels

void set_parallel_enabled(bool enabled) { g_parallel.store(enabled); }
bool parallel_enabled() { return g_parallel.load(); }

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
  if (p_ != rhs.p_) throw std::invalid_argument("modulus mismatch");
  if (cols_ != rhs.rows_) throw std::invalid_argument("shape mismatch");
  FpMatrix out(p_, rows_, rhs.cols_);
  if (parallel_enabled() && rows_ * rhs.cols_ >= kParallelThreshold) {
    kernels::mul_omp(*this, rhs, out);
  } else {
    kernels::mul_serial(*this, rhs, out);
  }
  return out;
}

FpMatrix FpMatrix::add(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("shape/modulus mismatch");
  }
  FpMatrix out(p_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = (data_[i] + rhs.data_[i]) % p_;
  }
  return out;
}

FpMatrix FpMatrix::sub(const FpMatrix& rhs) const {
  return add(rhs.scale(p_ - 1));
}

FpMatrix FpMatrix::scale(std::int64_t c) const {
  FpMatrix out(p_, rows_, cols_);
  c = normalize(c, p_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = data_[i] * c % p_;
  }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  }
  return out;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("pow of non-square matrix");
  FpMatrix acc = identity(p_, rows_);
  FpMatrix base = *this;
  while (e) {
    if (e & 1) acc = acc.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return acc;
}

bool FpMatrix::is_zero() const {
  for (std::int64_t v : data_) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> FpMatrix::apply(
    const std::vector<std::int64_t>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * x[c];
    y[r] = normalize(acc, p_);
  }
  return y;
}

Echelon echelon(const FpMatrix& m) {
  FpMatrix work = m;
  std::vector<std::size_t> pivots;
  if (parallel_enabled() && m.rows() * m.cols() >= 96 * 96) {
    pivots = kernels::rref_omp(work);
  } else {
    pivots = kernels::rref_serial(work);
  }
  Echelon e;
  e.rank = pivots.size();
  e.pivots = std::move(pivots);
  e.mat = FpMatrix(m.p(), e.rank, m.cols());
  for (std::size_t r = 0; r < e.rank; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) e.mat.set(r, c, work.at(r, c));
  }
  return e;
}

std::size_t rank(const FpMatrix& m) { return echelon(m).rank; }

FpMatrix nullspace(const FpMatrix& m) {
  Echelon e = echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FpMatrix basis(m.p(), free_cols.size(), cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis.set(k, f, 1);
    for (std::size_t r = 0; r < e.rank; ++r) {
      basis.set(k, e.pivots[r], -e.mat.at(r, f));
    }
  }
  return basis;
}

std::pair<std::size_t, FpMatrix> rank_nullspace(const FpMatrix& m) {
  FpMatrix ns = nullspace(m);
  return {m.cols() - ns.rows(), ns};
}

FpMatrix generalized_eigenspace(const FpMatrix& op, std::int64_t c) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("operator must be square");
  }
  FpMatrix shifted = op.sub(FpMatrix::identity(op.p(), op.rows()).scale(c));
  std::uint64_t e = 1;
  while (e < op.rows()) e <<= 1;
  return nullspace(shifted.pow(e));
}

std::vector<std::int64_t> reduce_against(const Echelon& basis,
                                         const std::vector<std::int64_t>& v) {
  const std::int64_t p = basis.mat.p();
  std::vector<std::int64_t> t = v;
  for (std::size_t r = 0; r < basis.rank; ++r) {
    const std::int64_t f = t[basis.pivots[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < t.size(); ++c) {
      t[c] = normalize(t[c] - f * basis.mat.at(r, c), p);
    }
  }
  return t;
}

std::vector<std::int64_t> coordinates(const Echelon& basis,
                                      const std::vector<std::int64_t>& v) {
  const std::int64_t p = basis.mat.p();
  std::vector<std::int64_t> t = v;
  std::vector<std::int64_t> coeff(basis.rank, 0);
  for (std::size_t r = 0; r < basis.rank; ++r) {
    const std::int64_t f = t[basis.pivots[r]];
    coeff[r] = f;
    if (f == 0) continue;
    for (std::size_t c = 0; c < t.size(); ++c) {
      t[c] = normalize(t[c] - f * basis.mat.at(r, c), p);
    }
  }
  for (std::int64_t x : t) {
    if (x != 0) throw std::domain_error("vector not in span of basis");
  }
  return coeff;
}

}  // namespace modlie::fp
