#include "modlie/rootdata.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace modlie::roots {

Weight WeylElt::apply(const Weight& w) const {
  const std::size_t n = mat.size();
  Weight out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += mat[i][j] * w[j];
  }
  return out;
}

RootDatum RootDatum::type_a(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  RootDatum rd;
  rd.rank_ = rank;
  rd.cartan_.assign(rank, std::vector<std::int64_t>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    rd.cartan_[i][i] = 2;
    if (i > 0) rd.cartan_[i][i - 1] = -1;
    if (i + 1 < rank) rd.cartan_[i][i + 1] = -1;
  }
  // Positive roots of A_rank are the intervals alpha_i + ... + alpha_j,
  // listed by height then start index.
  for (int len = 1; len <= rank; ++len) {
    for (int i = 0; i + len <= rank; ++i) {
      rd.pos_.emplace_back(i, i + len - 1);
    }
  }
  rd.rho_.assign(rank, 1);
  rd.big_r_ = 1;
  for (const auto& [a, b] : rd.pos_) rd.big_r_ *= (b - a + 1);
  return rd;
}

std::string RootDatum::label() const { return "A" + std::to_string(rank_); }

Weight RootDatum::simple_root(int i) const {
  Weight w(rank_, 0);
  for (int k = 0; k < rank_; ++k) w[k] = cartan_[k][i];
  return w;
}

Weight RootDatum::positive_root(std::size_t t) const {
  Weight w(rank_, 0);
  for (int i = pos_[t].first; i <= pos_[t].second; ++i) {
    Weight a = simple_root(i);
    for (int k = 0; k < rank_; ++k) w[k] += a[k];
  }
  return w;
}

std::int64_t RootDatum::pairing(const Weight& w, std::size_t t) const {
  std::int64_t s = 0;
  for (int i = pos_[t].first; i <= pos_[t].second; ++i) s += w[i];
  return s;
}

Weight RootDatum::reflect(const Weight& w, int i) const {
  if (i < 0 || i >= rank_) throw std::out_of_range("invalid reflection index");
  Weight out = w;
  const std::int64_t c = w[i];
  Weight a = simple_root(i);
  for (int k = 0; k < rank_; ++k) out[k] -= c * a[k];
  return out;
}

Weight RootDatum::act(const WeylWord& word, const Weight& w) const {
  Weight out = w;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out = reflect(out, *it);
  }
  return out;
}

Weight RootDatum::dot(const WeylWord& word, const Weight& w) const {
  Weight shifted = add(w, rho_);
  shifted = act(word, shifted);
  return sub(shifted, rho_);
}

Weight RootDatum::dot(const WeylElt& e, const Weight& w) const {
  return sub(e.apply(add(w, rho_)), rho_);
}

const std::vector<WeylElt>& RootDatum::weyl_elements() const {
  if (!weyl_cache_.empty()) return weyl_cache_;
  WeylElt id;
  id.mat.assign(rank_, std::vector<std::int64_t>(rank_, 0));
  for (int i = 0; i < rank_; ++i) id.mat[i][i] = 1;
  std::vector<WeylElt> gens;
  for (int i = 0; i < rank_; ++i) {
    WeylElt s = id;
    Weight a = simple_root(i);
    for (int r = 0; r < rank_; ++r) s.mat[r][i] -= a[r];
    gens.push_back(s);
  }
  std::vector<WeylElt> elems{id};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const WeylElt& s : gens) {
      WeylElt prod;
      prod.mat.assign(rank_, std::vector<std::int64_t>(rank_, 0));
      for (int i = 0; i < rank_; ++i) {
        for (int j = 0; j < rank_; ++j) {
          for (int t = 0; t < rank_; ++t) {
            prod.mat[i][j] += s.mat[i][t] * elems[k].mat[t][j];
          }
        }
      }
      if (std::find(elems.begin(), elems.end(), prod) == elems.end()) {
        elems.push_back(prod);
      }
    }
  }
  weyl_cache_ = std::move(elems);
  return weyl_cache_;
}

int RootDatum::length(const WeylElt& e) const {
  int len = 0;
  for (std::size_t t = 0; t < pos_.size(); ++t) {
    Weight img = e.apply(positive_root(t));
    // A root is negative iff every fundamental coordinate pairing with the
    // simple coroots makes the root a nonpositive combination; for type A it
    // suffices to check the sign of <img, coroot> for the full interval,
    // but the robust test is expansion in simple roots.
    // img = sum c_i alpha_i; recover c via inverse Cartan action: for type A
    // use pairing with fundamental coweights. Simpler: a Weyl image of a
    // positive root is either positive or negative, so test against the
    // explicit positive-root list.
    bool is_positive = false;
    for (std::size_t u = 0; u < pos_.size(); ++u) {
      if (img == positive_root(u)) {
        is_positive = true;
        break;
      }
    }
    if (!is_positive) ++len;
  }
  return len;
}

WeylElt RootDatum::word_to_elt(const WeylWord& word) const {
  WeylElt e;
  e.mat.assign(rank_, std::vector<std::int64_t>(rank_, 0));
  for (int i = 0; i < rank_; ++i) e.mat[i][i] = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    // multiply on the left by s_{*it}
    const int i = *it;
    if (i < 0 || i >= rank_) throw std::out_of_range("invalid reflection index");
    Weight a = simple_root(i);
    for (int col = 0; col < rank_; ++col) {
      const std::int64_t c = e.mat[i][col];
      for (int r = 0; r < rank_; ++r) e.mat[r][col] -= c * a[r];
    }
  }
  return e;
}

Weight AffineElt::dot(const RootDatum& rd, const Weight& mu,
                      std::int64_t p) const {
  Weight out = rd.dot(w, mu);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += p * shift[i];
  return out;
}

AffineElt AffineElt::inverse(const RootDatum& rd, std::int64_t p) const {
  // (w, t)^-1 dot mu solves (w, t) dot nu = mu.
  const auto& elems = rd.weyl_elements();
  WeylElt winv;
  for (const WeylElt& cand : elems) {
    bool ok = true;
    for (int i = 0; i < rd.rank() && ok; ++i) {
      Weight e(rd.rank(), 0);
      e[i] = 1;
      if (cand.apply(w.apply(e)) != e) ok = false;
    }
    if (ok) {
      winv = cand;
      break;
    }
  }
  AffineElt inv;
  inv.w = winv;
  Weight t = winv.apply(shift);
  inv.shift = negate(t);
  // check
  Weight probe(rd.rank(), 0);
  if (inv.dot(rd, dot(rd, probe, p), p) != probe) {
    throw std::logic_error("affine inverse failed");
  }
  return inv;
}

bool is_dot_regular(const RootDatum& rd, const Weight& lambda, std::int64_t p) {
  Weight nu = add(lambda, rd.rho());
  for (std::size_t t = 0; t < rd.num_positive_roots(); ++t) {
    if (rd.pairing(nu, t) % p == 0) return false;
  }
  return true;
}

AlcovePosition alcove_position(const RootDatum& rd, const Weight& lambda,
                               std::int64_t p) {
  if (p <= rd.coxeter_number()) {
    throw std::invalid_argument("requires p > Coxeter number");
  }
  AlcovePosition pos;
  Weight nu = add(lambda, rd.rho());
  bool interior = true;
  for (std::size_t t = 0; t < rd.num_positive_roots(); ++t) {
    const std::int64_t m = rd.pairing(nu, t);
    if (m % p == 0) pos.walls.push_back(t);
    if (m <= 0 || m >= p) interior = false;
  }
  if (!pos.walls.empty()) {
    pos.kind = AlcoveKind::Wall;
  } else {
    pos.kind = interior ? AlcoveKind::Interior : AlcoveKind::Exterior;
  }

  // Reduce nu into the closed fundamental box by affine reflections and
  // p-translations along roots.
  Weight cur = nu;
  bool converged = false;
  for (std::size_t guard = 0; guard < 10000 && !converged; ++guard) {
    std::size_t bad = rd.num_positive_roots();
    std::int64_t m = 0;
    for (std::size_t t = 0; t < rd.num_positive_roots(); ++t) {
      m = rd.pairing(cur, t);
      if (m < 0 || m > p) {
        bad = t;
        break;
      }
    }
    if (bad == rd.num_positive_roots()) {
      converged = true;
      break;
    }
    Weight alpha = rd.positive_root(bad);
    const std::int64_t k = m < 0 ? 0 : m / p;
    const std::int64_t excess = m - k * p;
    if (excess != 0) {
      // reflection in the hyperplane <x, coroot> = kp
      for (int i = 0; i < rd.rank(); ++i) cur[i] -= excess * alpha[i];
    } else {
      // on a far wall (m = kp, k >= 2): translate down along alpha
      const std::int64_t c = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
      for (int i = 0; i < rd.rank(); ++i) cur[i] -= c * p * alpha[i];
    }
  }
  if (!converged) throw std::logic_error("alcove reduction did not converge");
  pos.fundamental_rep = sub(cur, rd.rho());
  pos.rep_interior = true;
  for (std::size_t t = 0; t < rd.num_positive_roots(); ++t) {
    const std::int64_t m = rd.pairing(cur, t);
    if (m <= 0 || m >= p) pos.rep_interior = false;
  }

  // Recover the affine element mapping lambda to the representative: find
  // w in W and integral shift with w(nu) + p*shift = cur.
  bool found = false;
  for (const WeylElt& w : rd.weyl_elements()) {
    Weight img = w.apply(nu);
    Weight diff = sub(cur, img);
    bool divisible = true;
    for (std::int64_t d : diff) {
      if (d % p != 0) divisible = false;
    }
    if (divisible) {
      g.w = w;
      g.shift.resize(rd.rank());
      for (int i = 0; i < rd.rank(); ++i) g.shift[i] = diff[i] / p;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("alcove reduction left the affine orbit");
  pos.to_fundamental = g;
  if (g.dot(rd, lambda, p) != pos.fundamental_rep) {
    throw std::logic_error("alcove reduction bookkeeping failed");
  }
  return pos;
}

std::vector<Weight> fundamental_alcove_closure(const RootDatum& rd,
                                               std::int64_t p) {
  if (p <= rd.coxeter_number()) {
    throw std::invalid_argument("requires p > Coxeter number");
  }
  // Coordinates of mu+rho lie in [0, p] on simple coroots; filter the rest.
  std::vector<Weight> out;
  Weight nu(rd.rank(), 0);
  const std::size_t total = rd.num_positive_roots();
  std::vector<std::int64_t> idx(rd.rank(), 0);
  while (true) {
    for (int i = 0; i < rd.rank(); ++i) nu[i] = idx[i];
    bool ok = true;
    for (std::size_t t = 0; t < total && ok; ++t) {
      const std::int64_t m = rd.pairing(nu, t);
      if (m < 0 || m > p) ok = false;
    }
    if (ok) out.push_back(sub(nu, rd.rho()));
    int posn = 0;
    while (posn < rd.rank() && idx[posn] == p) idx[posn++] = 0;
    if (posn == rd.rank()) break;
    ++idx[posn];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> alcove_closure(const RootDatum& rd, const Weight& lambda,
                                   std::int64_t p) {
  if (!is_dot_regular(rd, lambda, p)) {
    throw std::invalid_argument("alcove_closure requires a dot-regular weight");
  }
  AlcovePosition pos = alcove_position(rd, lambda, p);
  AffineElt back = pos.to_fundamental.inverse(rd, p);
  std::vector<Weight> out;
  for (const Weight& mu : fundamental_alcove_closure(rd, p)) {
    out.push_back(back.dot(rd, mu, p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Weight mod_p(const Weight& w, std::int64_t p) {
  Weight out = w;
  for (auto& c : out) {
    c %= p;
    if (c < 0) c += p;
  }
  return out;
}

}  // namespace

std::vector<Weight> restricted_linkage_class(const RootDatum& rd,
                                             const Weight& lambda,
                                             std::int64_t p) {
  if (p <= rd.coxeter_number()) {
    throw std::invalid_argument("requires p > Coxeter number");
  }
  std::set<Weight> out;
  for (const WeylElt& w : rd.weyl_elements()) {
    out.insert(mod_p(rd.dot(w, lambda), p));
  }
  return std::vector<Weight>(out.begin(), out.end());
}

bool linked(const RootDatum& rd, const Weight& lambda, const Weight& mu,
            std::int64_t p) {
  Weight target = mod_p(mu, p);
  for (const WeylElt& w : rd.weyl_elements()) {
    if (mod_p(rd.dot(w, lambda), p) == target) return true;
  }
  return false;
}

Weight add(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Weight sub(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Weight negate(const Weight& a) {
  Weight out = a;
  for (auto& c : out) c = -c;
  return out;
}

Weight scale(const Weight& a, std::int64_t c) {
  Weight out = a;
  for (auto& x : out) x *= c;
  return out;
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i];
  }
  os << ")";
  return os.str();
}

}  // namespace modlie::roots
