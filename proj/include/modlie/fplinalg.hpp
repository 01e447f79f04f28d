#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace modlie::fp {

// Products are accumulated in 64-bit integers; a row of length up to ~2^34
// stays below 2^64 as long as p < 2^15, which is far beyond every workload
// here (desk-scale primes, dense dimensions <= ~4000).
inline constexpr std::int64_t kMaxPrime = 1 << 15;

std::int64_t normalize(std::int64_t v, std::int64_t p);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p);

/// Dense matrix over F_p with exact arithmetic.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(std::int64_t p, std::size_t n);
  static FpMatrix from_rows(std::int64_t p,
                            const std::vector<std::vector<std::int64_t>>& rows);

  std::int64_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  const std::vector<std::int64_t>& data() const { return data_; }

  std::vector<std::int64_t> row(std::size_t r) const;

  FpMatrix mul(const FpMatrix& rhs) const;
  FpMatrix add(const FpMatrix& rhs) const;
  FpMatrix sub(const FpMatrix& rhs) const;
  FpMatrix scale(std::int64_t c) const;
  FpMatrix transpose() const;
  FpMatrix pow(std::uint64_t e) const;
  bool is_zero() const;

  bool operator==(const FpMatrix& rhs) const = default;

  /// y = this * x  (column-vector action).
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;

 private:
  std::int64_t p_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Hot kernels exist in two variants: a plain serial reference and an
// OpenMP-parallel version. They must produce identical results (exact
// arithmetic); the test suite compares them and tools/bench_fplinalg
// measures them against each other. Public entry points dispatch by size.
namespace kernels {

void mul_serial(const FpMatrix& a, const FpMatrix& b, FpMatrix& out);
void mul_omp(const FpMatrix& a, const FpMatrix& b, FpMatrix& out);

// In-place reduction to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_serial(FpMatrix& m);
std::vector<std::size_t> rref_omp(FpMatrix& m);

}  // namespace kernels

/// When true (default), large operands are routed to the OpenMP kernels.
void set_parallel_enabled(bool enabled);
bool parallel_enabled();

struct Echelon {
  FpMatrix mat;                      // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per retained row
  std::size_t rank = 0;
};

Echelon echelon(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

/// Right kernel {v : m v = 0}; rows of the result are a basis.
FpMatrix nullspace(const FpMatrix& m);

std::pair<std::size_t, FpMatrix> rank_nullspace(const FpMatrix& m);

/// Basis of ker (op - c)^dim, as rows. op must be square.
FpMatrix generalized_eigenspace(const FpMatrix& op, std::int64_t c);

/// Coordinates of v in the row space of an echelonized basis; throws if v
/// lies outside it.
std::vector<std::int64_t> coordinates(const Echelon& basis,
                                      const std::vector<std::int64_t>& v);

/// Reduce v against an echelonized basis (returns the residue).
std::vector<std::int64_t> reduce_against(const Echelon& basis,
                                         const std::vector<std::int64_t>& v);

}  // namespace modlie::fp
