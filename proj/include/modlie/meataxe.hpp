#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modlie/fplinalg.hpp"

namespace modlie::fp {

/// A finite-dimensional module over an algebra presented by named square
/// generator matrices, all over the same F_p.
struct AlgebraModule {
  std::int64_t p = 0;
  std::size_t dim = 0;
  std::vector<std::string> names;
  std::vector<FpMatrix> gens;

  void check() const;  // square, equal size, consistent p
};

AlgebraModule transposed(const AlgebraModule& m);

/// Restriction of the action to a generator-stable subspace (rows of `basis`
/// in reduced echelon form).
AlgebraModule submodule(const AlgebraModule& m, const Echelon& basis);

/// Action on the quotient by a generator-stable subspace.
AlgebraModule quotient(const AlgebraModule& m, const Echelon& basis);

/// Smallest generator-stable subspace containing v, as an echelonized basis.
Echelon spin(const AlgebraModule& m, const std::vector<std::int64_t>& v);

/// Spin that records how each basis vector was produced: entry k > 0 of the
/// schedule is (index of parent vector, generator applied). Used to transport
/// bases between candidate-isomorphic modules.
struct StandardBasis {
  std::vector<std::vector<std::int64_t>> vectors;   // raw, not echelonized
  std::vector<std::pair<std::size_t, std::size_t>> schedule;
  bool full = false;  // spanned the whole module
};

StandardBasis standard_basis(const AlgebraModule& m,
                             const std::vector<std::int64_t>& v);

/// Composition factors as a list with repetition (a full composition series'
/// simple subquotients). Deterministic given the seed.
std::vector<AlgebraModule> composition_factors(const AlgebraModule& m,
                                               std::uint64_t seed);

bool are_isomorphic(const AlgebraModule& a, const AlgebraModule& b,
                    std::uint64_t seed = 0);

/// Groups a factor list into (representative, multiplicity) pairs.
struct FactorClass {
  AlgebraModule rep;
  std::size_t multiplicity = 0;
};
std::vector<FactorClass> group_by_isomorphism(
    const std::vector<AlgebraModule>& factors, std::uint64_t seed = 0);

}  // namespace modlie::fp
