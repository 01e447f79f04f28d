#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modlie::roots {

/// Integral weight in fundamental-weight coordinates.
using Weight = std::vector<std::int64_t>;

/// Sequence of simple-reflection indices, applied right to left.
using WeylWord = std::vector<int>;

/// Matrix of a Weyl group element in the fundamental-weight basis.
struct WeylElt {
  std::vector<std::vector<std::int64_t>> mat;

  Weight apply(const Weight& w) const;
  bool operator==(const WeylElt& rhs) const = default;
};

/// Root datum for series A (sl_{rank+1}): Cartan matrix, positive roots as
/// coroot intervals, rho, Coxeter number and R = prod <rho, coroot>.
class RootDatum {
 public:
  static RootDatum type_a(int rank);

  int rank() const { return rank_; }
  std::string label() const;
  std::int64_t coxeter_number() const { return rank_ + 1; }
  std::int64_t weyl_denominator() const { return big_r_; }  // R
  const Weight& rho() const { return rho_; }
  std::size_t num_positive_roots() const { return pos_.size(); }

  /// alpha_i in fundamental-weight coordinates (column i of the Cartan matrix).
  Weight simple_root(int i) const;
  /// Positive root t as a weight vector.
  Weight positive_root(std::size_t t) const;
  /// <w, coroot of positive root t> (integral pairing).
  std::int64_t pairing(const Weight& w, std::size_t t) const;

  Weight reflect(const Weight& w, int i) const;          // s_i, linear action
  Weight act(const WeylWord& word, const Weight& w) const;
  Weight dot(const WeylWord& word, const Weight& w) const;
  Weight dot(const WeylElt& e, const Weight& w) const;

  /// All |W| group elements, deterministic order (identity first).
  const std::vector<WeylElt>& weyl_elements() const;
  int length(const WeylElt& e) const;  // # positive roots sent negative
  WeylElt word_to_elt(const WeylWord& word) const;

 private:
  RootDatum() = default;
  int rank_ = 0;
  std::vector<std::vector<std::int64_t>> cartan_;  // cartan_[i][j] = <alpha_j, coroot_i>
  std::vector<std::pair<int, int>> pos_;           // coroot = sum of simples in [first, second]
  Weight rho_;
  std::int64_t big_r_ = 1;
  mutable std::vector<WeylElt> weyl_cache_;
};

struct AffineElt {
  // mu -> w(mu + rho) - rho + p * shift, the dot action of W extended by
  // p-translations in the weight lattice.
  WeylElt w;
  Weight shift;

  Weight dot(const RootDatum& rd, const Weight& mu, std::int64_t p) const;
  AffineElt inverse(const RootDatum& rd, std::int64_t p) const;
};

enum class AlcoveKind { Interior, Wall, Exterior };

struct AlcovePosition {
  AlcoveKind kind = AlcoveKind::Interior;
  std::vector<std::size_t> walls;       // positive roots with <mu+rho, coroot> in pZ
  Weight fundamental_rep;               // dot-W_aff representative in the closure
  bool rep_interior = false;
  AffineElt to_fundamental;             // maps the input onto fundamental_rep
};

/// Requires p > h. Classifies lambda relative to the fundamental alcove for
/// the p-dilated dot action.
AlcovePosition alcove_position(const RootDatum& rd, const Weight& lambda,
                               std::int64_t p);

/// True when <lambda+rho, coroot> is never divisible by p (dot-regular).
bool is_dot_regular(const RootDatum& rd, const Weight& lambda, std::int64_t p);

/// All integral weights mu with 0 <= <mu+rho, coroot> <= p for every
/// positive root: the closure of the fundamental alcove.
std::vector<Weight> fundamental_alcove_closure(const RootDatum& rd,
                                               std::int64_t p);

/// Integral weights in the closure of the alcove containing lambda
/// (lambda must be dot-regular).
std::vector<Weight> alcove_closure(const RootDatum& rd, const Weight& lambda,
                                   std::int64_t p);

/// Restricted weights (coordinates in [0, p-1]) lying in (W dot lambda) + p*Lambda,
/// sorted lexicographically.
std::vector<Weight> restricted_linkage_class(const RootDatum& rd,
                                             const Weight& lambda,
                                             std::int64_t p);

/// True when mu lies in (W dot lambda) + p*Lambda.
bool linked(const RootDatum& rd, const Weight& lambda, const Weight& mu,
            std::int64_t p);

Weight add(const Weight& a, const Weight& b);
Weight sub(const Weight& a, const Weight& b);
Weight negate(const Weight& a);
Weight scale(const Weight& a, std::int64_t c);
std::string to_string(const Weight& w);

}  // namespace modlie::roots
