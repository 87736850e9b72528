#include "pizza/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

namespace pizza {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

[[noreturn]] void bad_spec(const std::string& s) {
  throw std::invalid_argument("invalid Coxeter spec: " + s);
}

// Full root set (both signs) of one simple factor, possibly in a
// higher-dimensional ambient space; essentialized below.
std::vector<Vec> factor_roots(const CoxeterFactor& f) {
  std::vector<Vec> roots;
  auto push_pm = [&](Vec v) {
    roots.push_back(v);
    roots.push_back(scale(v, -1.0));
  };
  switch (f.type) {
    case 'A': {  // e_i - e_j in R^(n+1)
      int m = f.rank + 1;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          Vec v(m, 0.0);
          v[i] = 1.0;
          v[j] = -1.0;
          push_pm(v);
        }
      break;
    }
    case 'B': {
      int n = f.rank;
      for (int i = 0; i < n; ++i) {
        Vec v(n, 0.0);
        v[i] = 1.0;
        push_pm(v);
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int s : {1, -1}) {
            Vec v(n, 0.0);
            v[i] = 1.0;
            v[j] = s;
            push_pm(v);
          }
      break;
    }
    case 'D': {
      int n = f.rank;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int s : {1, -1}) {
            Vec v(n, 0.0);
            v[i] = 1.0;
            v[j] = s;
            push_pm(v);
          }
      break;
    }
    case 'I': {
      int m = f.order;
      for (int k = 0; k < m; ++k) {
        double t = k * kPi / m + kPi / (2 * m);
        roots.push_back({std::cos(t), std::sin(t)});
        roots.push_back({-std::cos(t), -std::sin(t)});
      }
      break;
    }
    case 'F': {  // rank 4
      for (int i = 0; i < 4; ++i) {
        Vec v(4, 0.0);
        v[i] = 1.0;
        push_pm(v);
      }
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int s : {1, -1}) {
            Vec v(4, 0.0);
            v[i] = 1.0;
            v[j] = s;
            push_pm(v);
          }
      for (int mask = 0; mask < 16; ++mask) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? -0.5 : 0.5;
        roots.push_back(v);
      }
      break;
    }
    case 'E': {
      if (f.rank == 8) {
        for (int i = 0; i < 8; ++i)
          for (int j = i + 1; j < 8; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) {
                Vec v(8, 0.0);
                v[i] = si;
                v[j] = sj;
                roots.push_back(v);
              }
        for (int mask = 0; mask < 256; ++mask) {
          if (__builtin_popcount(mask) % 2) continue;  // even number of minus
          Vec v(8);
          for (int i = 0; i < 8; ++i) v[i] = (mask >> i) & 1 ? -0.5 : 0.5;
          roots.push_back(v);
        }
      } else if (f.rank == 7) {
        // Roots of E8 orthogonal to e_7 + e_8.
        for (int i = 0; i < 6; ++i)
          for (int j = i + 1; j < 6; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) {
                Vec v(8, 0.0);
                v[i] = si;
                v[j] = sj;
                roots.push_back(v);
              }
        {
          Vec v(8, 0.0);
          v[6] = 1.0;
          v[7] = -1.0;
          push_pm(v);
        }
        for (int mask = 0; mask < 64; ++mask) {
          if (__builtin_popcount(mask) % 2 == 0) continue;  // odd minus count
          for (int s : {1, -1}) {
            Vec v(8);
            for (int i = 0; i < 6; ++i) v[i] = (mask >> i) & 1 ? -0.5 : 0.5;
            v[6] = -0.5;
            v[7] = 0.5;
            roots.push_back(scale(v, s));
          }
        }
      } else {  // rank 6: roots of E8 in span{e_1..e_5, e_8-e_7-e_6}
        for (int i = 0; i < 5; ++i)
          for (int j = i + 1; j < 5; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) {
                Vec v(8, 0.0);
                v[i] = si;
                v[j] = sj;
                roots.push_back(v);
              }
        for (int mask = 0; mask < 32; ++mask) {
          if (__builtin_popcount(mask) % 2) continue;
          for (int s : {1, -1}) {
            Vec v(8);
            for (int i = 0; i < 5; ++i) v[i] = (mask >> i) & 1 ? -0.5 : 0.5;
            v[5] = -0.5;
            v[6] = -0.5;
            v[7] = 0.5;
            roots.push_back(scale(v, s));
          }
        }
      }
      break;
    }
    case 'H': {
      // Simple roots realized from the Coxeter matrix: the Gram entries are
      // -cos(pi/5) = -phi/2 and -cos(pi/3) = -1/2; close under the simple
      // reflections until stable.
      int n = f.rank;
      Mat gram(n, Vec(n, 0.0));
      for (int i = 0; i < n; ++i) gram[i][i] = 1.0;
      double c5 = std::cos(kPi / 5.0);
      gram[0][1] = gram[1][0] = -c5;
      for (int i = 1; i + 1 < n; ++i) gram[i][i + 1] = gram[i + 1][i] = -0.5;
      Mat l = cholesky(gram);
      std::vector<Vec> simples(n, Vec(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) simples[i][j] = l[i][j];  // row i = root i
      std::vector<Vec> orbit = simples;
      auto seen = [&](const Vec& v) {
        for (const Vec& w : orbit)
          if (norm(sub(v, w)) <= 1e-9) return true;
        return false;
      };
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        if (orbit.size() > 10000)
          throw std::runtime_error("H-type closure exceeded cap");
        for (const Vec& s : simples) {
          Vec r = reflect(orbit[head], s);
          if (!seen(r)) orbit.push_back(r);
        }
      }
      roots = orbit;
      break;
    }
    default:
      bad_spec(std::string(1, f.type));
  }
  return roots;
}

// Orthonormal basis of span(roots), deterministic in list order; for A_n the
// list is led by e_1-e_2, ..., e_n-e_(n+1) so the essentialization basis is
// the pinned Gram-Schmidt one.
std::vector<Vec> essentialize(const std::vector<Vec>& roots, int target_rank) {
  if (roots.empty()) return {};
  int amb = static_cast<int>(roots[0].size());
  if (amb == target_rank) return roots;
  std::vector<Vec> basis;
  for (const Vec& r : roots) {
    Vec v = r;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : basis) axpy(v, -inner(q, v), q);
    if (norm(v) > 1e-8) basis.push_back(normalize(v));
    if (static_cast<int>(basis.size()) == target_rank) break;
  }
  if (static_cast<int>(basis.size()) != target_rank)
    throw std::runtime_error("essentialize: rank deficiency");
  std::vector<Vec> out;
  out.reserve(roots.size());
  for (const Vec& r : roots) {
    Vec v(target_rank);
    for (int i = 0; i < target_rank; ++i) v[i] = inner(basis[i], r);
    out.push_back(std::move(v));
  }
  return out;
}

struct RootKey {
  long long k[8];
  bool operator<(const RootKey& o) const {
    for (int i = 0; i < 8; ++i)
      if (k[i] != o.k[i]) return k[i] < o.k[i];
    return false;
  }
};

RootKey key_of(const Vec& v) {
  RootKey k{};
  for (std::size_t i = 0; i < v.size() && i < 8; ++i)
    k.k[i] = std::llround(v[i] * 1e8);
  return k;
}

// Positive roots w.r.t. a generic direction (retried with deterministic
// jitter if some root is in the zero band), unit length, deduplicated.
std::vector<Vec> positive_system(std::vector<Vec> roots, int dim) {
  for (auto& r : roots) r = normalize(r);
  Vec g = generic_direction(dim);
  for (int tries = 0;; ++tries) {
    bool clean = true;
    for (const Vec& r : roots)
      if (std::fabs(inner(r, g)) <= 1e-7) clean = false;
    if (clean) break;
    if (tries > 64) throw std::runtime_error("positive_system: no generic direction");
    axpy(g, 1e-3 * (tries + 1), generic_direction(dim));
    std::rotate(g.begin(), g.begin() + 1, g.end());
  }
  std::map<RootKey, Vec> uniq;
  for (Vec& r : roots) {
    if (inner(r, g) < 0.0) r = scale(r, -1.0);
    uniq.emplace(key_of(r), r);
  }
  std::vector<Vec> out;
  for (auto& [k, v] : uniq) out.push_back(std::move(v));
  return out;
}

// Simple roots of a positive system: e is simple iff s_e permutes the other
// positive roots.
std::vector<int> find_simples(const std::vector<Vec>& pos) {
  std::map<RootKey, int> index;
  for (std::size_t i = 0; i < pos.size(); ++i) index[key_of(pos[i])] = 1;
  std::vector<int> simples;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < pos.size() && ok; ++j) {
      if (j == i) continue;
      Vec r = reflect(pos[j], pos[i]);
      if (!index.count(key_of(r))) ok = false;
    }
    if (ok) simples.push_back(static_cast<int>(i));
  }
  return simples;
}

void validate_closure(const std::vector<Vec>& pos) {
  std::map<RootKey, int> index;
  for (const Vec& p : pos) {
    index[key_of(p)] = 1;
    index[key_of(scale(p, -1.0))] = 1;
  }
  for (const Vec& e : pos)
    for (const Vec& f : pos)
      if (!index.count(key_of(reflect(f, e))))
        throw std::runtime_error("root system not closed under reflections");
}

CoxeterArrangement build_factor(const CoxeterFactor& f) {
  CoxeterArrangement ca;
  ca.spec.factors = {f};
  if (f.type == 'E' && f.rank == 1) {  // empty arrangement on R^1
    ca.base.dim = 1;
    ca.base.witness = {1.0};
    return ca;
  }
  std::vector<Vec> roots = essentialize(factor_roots(f), f.rank);
  std::vector<Vec> pos = positive_system(std::move(roots), f.rank);
  validate_closure(pos);
  ca.simple_indices = find_simples(pos);
  // Witness: solve <simple_i, x> = 1; every positive root is a nonnegative
  // combination of the simples, so x is interior to the fundamental chamber.
  Mat s;
  for (int i : ca.simple_indices) s.push_back(pos[i]);
  Vec w = solve_linear(s, Vec(s.size(), 1.0));
  std::vector<std::string> labels(pos.size());
  ca.base = build_arrangement(pos, normalize(w), {}, std::move(labels));
  return ca;
}

}  // namespace

CoxeterSpec CoxeterSpec::parse(const std::string& s) {
  CoxeterSpec spec;
  std::size_t i = 0;
  while (i < s.size()) {
    CoxeterFactor f;
    f.type = static_cast<char>(std::toupper(s[i]));
    if (std::string("ABDEFHI").find(f.type) == std::string::npos) bad_spec(s);
    ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(s[j])) ++j;
    if (j == i) bad_spec(s);
    f.rank = std::stoi(s.substr(i, j - i));
    i = j;
    if (f.type == 'I') {
      if (f.rank != 2 || i >= s.size() || s[i] != '(') bad_spec(s);
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) bad_spec(s);
      f.order = std::stoi(s.substr(i + 1, close - i - 1));
      if (f.order < 3) bad_spec(s);
      i = close + 1;
    }
    bool ok = false;
    switch (f.type) {
      case 'A': ok = f.rank >= 1; break;
      case 'B': ok = f.rank >= 2; break;
      case 'D': ok = f.rank >= 4; break;
      case 'E': ok = f.rank == 6 || f.rank == 7 || f.rank == 8 || f.rank == 1; break;
      case 'F': ok = f.rank == 4; break;
      case 'H': ok = f.rank == 3 || f.rank == 4; break;
      case 'I': ok = true; break;
    }
    if (!ok) bad_spec(s);
    spec.factors.push_back(f);
    if (i < s.size()) {
      if (s[i] != 'x' && s[i] != 'X') bad_spec(s);
      ++i;
      if (i == s.size()) bad_spec(s);
    }
  }
  if (spec.factors.empty()) bad_spec(s);
  return spec;
}

std::string CoxeterSpec::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << "x";
    os << factors[i].type << factors[i].rank;
    if (factors[i].type == 'I') os << "(" << factors[i].order << ")";
  }
  return os.str();
}

CoxeterArrangement build_type(const CoxeterSpec& spec) {
  CoxeterArrangement acc = build_factor(spec.factors[0]);
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    CoxeterArrangement next = build_factor(spec.factors[i]);
    int offset = acc.base.size();
    acc.base = product(acc.base, next.base);
    for (int s : next.simple_indices) acc.simple_indices.push_back(offset + s);
    acc.spec.factors.push_back(spec.factors[i]);
  }
  return acc;
}

Vec reflect(const Vec& x, const Vec& e) {
  Vec r = x;
  axpy(r, -2.0 * inner(x, e), e);
  return r;
}

DominantResult make_dominant(const CoxeterArrangement& ca, Vec x) {
  DominantResult res;
  res.point = std::move(x);
  const int cap = 16 * (ca.base.size() + 1) * (ca.rank() + 1) + 64;
  for (int step = 0;; ++step) {
    bool moved = false;
    for (int i : ca.simple_indices) {
      if (inner(res.point, ca.root(i)) < -kTolHyperplane) {
        res.point = reflect(res.point, ca.root(i));
        res.parity = -res.parity;
        ++res.steps;
        moved = true;
        break;
      }
    }
    if (!moved) return res;
    if (step > cap) throw std::runtime_error("make_dominant: did not terminate");
  }
}

bool minus_id_in_group(const CoxeterArrangement& ca) {
  int verdict = -2;
  Rng rng(0x636f78ULL);
  for (int trial = 0; trial < 3; ++trial) {
    // Generic interior point of the fundamental chamber.
    Vec v;
    for (int tries = 0;; ++tries) {
      v = ca.base.witness;
      for (auto& c : v) c += 0.05 * rng.uniform(-1.0, 1.0);
      bool interior = true;
      for (int i : ca.simple_indices)
        if (inner(v, ca.root(i)) <= 1e-6) interior = false;
      if (interior) break;
      if (tries > 256)
        throw std::runtime_error("minus_id_in_group: no generic interior point");
    }
    DominantResult d = make_dominant(ca, scale(v, -1.0));
    bool eq = norm(sub(d.point, v)) <= 1e-9 * std::max(1.0, norm(v));
    if (verdict == -2) verdict = eq;
    else if (verdict != static_cast<int>(eq))
      throw std::runtime_error("minus_id_in_group: inconsistent trials");
  }
  return verdict == 1;
}

namespace {

void orth_seq_dfs(const CoxeterArrangement& ca, int r, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out, std::size_t cap,
                  std::size_t& visited) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < ca.base.size(); ++i) {
    bool ok = true;
    for (int j : cur) {
      if (j == i || std::fabs(inner(ca.root(i), ca.root(j))) > kTolOrtho) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (++visited > cap)
      throw std::runtime_error("orthogonal_sequences: enumeration cap exceeded");
    cur.push_back(i);
    orth_seq_dfs(ca, r, cur, out, cap, visited);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> orthogonal_sequences(const CoxeterArrangement& ca,
                                                   int r, std::size_t cap) {
  if (r < 0 || r > ca.rank())
    throw std::invalid_argument("orthogonal_sequences: bad length");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::size_t visited = 0;
  orth_seq_dfs(ca, r, cur, out, cap, visited);
  return out;
}

namespace {

// Enumerates unordered orthogonal subsets in increasing index order and
// records the sizes of the maximal ones.
void max_rank_dfs(const CoxeterArrangement& ca, std::vector<int>& cur,
                  int first, int& size_seen, std::size_t cap,
                  std::size_t& visited) {
  bool extendable = false;
  for (int i = 0; i < ca.base.size(); ++i) {
    bool ok = true;
    for (int j : cur)
      if (j == i || std::fabs(inner(ca.root(i), ca.root(j))) > kTolOrtho) {
        ok = false;
        break;
      }
    if (!ok) continue;
    extendable = true;
    if (i < first) continue;  // covered by another branch
    if (++visited > cap)
      throw std::runtime_error("max_orthogonal_rank: enumeration cap exceeded");
    cur.push_back(i);
    max_rank_dfs(ca, cur, i + 1, size_seen, cap, visited);
    cur.pop_back();
  }
  if (!extendable) {
    int sz = static_cast<int>(cur.size());
    if (size_seen < 0) size_seen = sz;
    else if (size_seen != sz)
      throw std::runtime_error(
          "max_orthogonal_rank: maximal orthogonal sets of different sizes");
  }
}

}  // namespace

int max_orthogonal_rank(const CoxeterArrangement& ca, std::size_t cap) {
  if (ca.base.size() == 0) return 0;
  std::vector<int> cur;
  int size_seen = -1;
  std::size_t visited = 0;
  max_rank_dfs(ca, cur, 0, size_seen, cap, visited);
  return size_seen;
}

bool region_is_stable(const CoxeterArrangement& ca, const Region& k, int trials,
                      Rng& rng) {
  for (int t = 0; t < trials; ++t) {
    Vec x;
    if (k.has_sampler()) {
      x = k.sampler(rng);
    } else {
      int attempts = 0;
      do {
        x = sample_box(k.box_lo, k.box_hi, rng);
        if (++attempts > 100000)
          throw std::runtime_error("region_is_stable: empty region?");
      } while (!k.member(x));
    }
    for (int i : ca.simple_indices)
      if (!k.member(reflect(x, ca.root(i)))) return false;
  }
  return true;
}

std::vector<Mat> group_elements(const CoxeterArrangement& ca, std::size_t cap) {
  const int n = ca.rank();
  std::vector<Mat> gens;
  for (int i : ca.simple_indices) {
    Mat m = identity(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        m[r][c] -= 2.0 * ca.root(i)[r] * ca.root(i)[c];
    gens.push_back(std::move(m));
  }
  auto key = [n](const Mat& m) {
    std::string k;
    k.reserve(n * n * 8);
    char buf[24];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::snprintf(buf, sizeof buf, "%lld,", std::llround(m[r][c] * 1e6));
        k += buf;
      }
    return k;
  };
  std::vector<Mat> elems = {identity(n)};
  std::unordered_map<std::string, int> seen;
  seen[key(elems[0])] = 0;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    if (elems.size() > cap)
      throw std::runtime_error("group_elements: cap exceeded");
    for (const Mat& g : gens) {
      Mat m = mat_mul(g, elems[head]);
      auto k = key(m);
      if (!seen.count(k)) {
        seen[k] = static_cast<int>(elems.size());
        elems.push_back(std::move(m));
      }
    }
  }
  return elems;
}

}  // namespace pizza
