#include "pizza/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace pizza {

namespace {

double min_margin(const std::vector<Vec>& normals, const Vec& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec& e : normals) m = std::min(m, inner(e, x));
  return m;
}

// Maximizes min_e <e,x> over the unit sphere by projected subgradient
// ascent from deterministic random starts.
struct WitnessSearch {
  Vec point;
  double margin = -std::numeric_limits<double>::infinity();
};

WitnessSearch find_witness(const std::vector<Vec>& normals, int dim) {
  constexpr int kRestarts = 64;
  constexpr int kIters = 500;
  WitnessSearch best;
  Rng rng(0x70697a7a61ULL);  // fixed seed: witness search is deterministic
  for (int r = 0; r < kRestarts; ++r) {
    Vec x(dim);
    for (auto& v : x) v = rng.normal();
    x = normalize(x);
    for (int it = 0; it < kIters; ++it) {
      int arg = 0;
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < normals.size(); ++i) {
        double d = inner(normals[i], x);
        if (d < m) {
          m = d;
          arg = static_cast<int>(i);
        }
      }
      if (m > best.margin) {
        best.margin = m;
        best.point = x;
      }
      axpy(x, 0.5 / (1.0 + it), normals[arg]);
      x = normalize(x);
    }
  }
  return best;
}

}  // namespace

Arrangement build_arrangement(std::vector<Vec> normals,
                              std::optional<Vec> witness, BuildOptions opts,
                              std::vector<std::string> labels) {
  Arrangement a;
  if (normals.empty()) {
    if (witness) {
      a.dim = static_cast<int>(witness->size());
      a.witness = *witness;
    }
    return a;
  }
  a.dim = static_cast<int>(normals[0].size());
  for (auto& v : normals) {
    if (static_cast<int>(v.size()) != a.dim)
      throw std::invalid_argument("build_arrangement: mixed dimensions");
    v = normalize(v);
  }
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j)
      if (std::fabs(inner(normals[i], normals[j])) >= 1.0 - kTolHyperplane) {
        std::ostringstream msg;
        msg << "build_arrangement: normals " << i << " and " << j
            << " are parallel";
        throw std::invalid_argument(msg.str());
      }

  if (opts.auto_orient) {
    // Orient every normal toward a generic direction; the chamber containing
    // that direction then has an all-plus sign vector.
    Vec g = generic_direction(a.dim);
    for (int tries = 0; tries < 64; ++tries) {
      bool clean = true;
      for (const Vec& e : normals)
        if (std::fabs(inner(e, g)) <= kTolHyperplane) clean = false;
      if (clean) break;
      axpy(g, 1e-3 * (tries + 1), generic_direction(a.dim));
      std::rotate(g.begin(), g.begin() + 1, g.end());
    }
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (inner(normals[i], g) < 0.0) {
        normals[i] = scale(normals[i], -1.0);
        if (opts.flipped) opts.flipped->push_back(static_cast<int>(i));
      }
  }

  if (witness) {
    if (static_cast<int>(witness->size()) != a.dim)
      throw std::invalid_argument("build_arrangement: witness dimension");
    if (min_margin(normals, *witness) <= kTolHyperplane)
      throw std::invalid_argument(
          "build_arrangement: supplied witness is not interior to the base "
          "chamber");
    a.witness = *witness;
  } else {
    WitnessSearch s = find_witness(normals, a.dim);
    if (s.margin <= 1e-6) {
      std::ostringstream msg;
      msg << "build_arrangement: no all-positive chamber for this "
             "orientation (best margin "
          << s.margin << "); consider auto_orient";
      throw std::invalid_argument(msg.str());
    }
    a.witness = s.point;
  }
  a.normals = std::move(normals);
  a.labels = std::move(labels);
  a.labels.resize(a.normals.size());
  return a;
}

std::vector<int> sign_vector(const Arrangement& a, const Vec& x) {
  std::vector<int> s(a.normals.size());
  for (std::size_t i = 0; i < a.normals.size(); ++i) {
    double d = inner(a.normals[i], x);
    s[i] = std::fabs(d) <= kTolHyperplane ? 0 : (d > 0.0 ? 1 : -1);
  }
  return s;
}

int chamber_sign(const Arrangement& a, const Vec& x) {
  int s = chamber_sign_or_zero(a, x);
  if (s == 0)
    throw std::runtime_error("chamber_sign: point lies on a hyperplane");
  return s;
}

int chamber_sign_or_zero(const Arrangement& a, const Vec& x) noexcept {
  const std::size_t dim = x.size();
  bool neg = false;
  for (const Vec& e : a.normals) {
    double d = 0.0;
    const double* ep = e.data();
    const double* xp = x.data();
    for (std::size_t i = 0; i < dim; ++i) d += ep[i] * xp[i];
    if (std::fabs(d) <= kTolHyperplane) return 0;
    neg ^= (d < 0.0);
  }
  return neg ? -1 : 1;
}

Arrangement product(const Arrangement& a1, const Arrangement& a2) {
  Arrangement p;
  p.dim = a1.dim + a2.dim;
  p.witness.assign(p.dim, 0.0);
  std::copy(a1.witness.begin(), a1.witness.end(), p.witness.begin());
  std::copy(a2.witness.begin(), a2.witness.end(), p.witness.begin() + a1.dim);
  for (int i = 0; i < a1.size(); ++i) {
    Vec e(p.dim, 0.0);
    std::copy(a1.normals[i].begin(), a1.normals[i].end(), e.begin());
    p.normals.push_back(std::move(e));
    p.labels.push_back(a1.labels.empty() ? "" : a1.labels[i]);
  }
  for (int i = 0; i < a2.size(); ++i) {
    Vec e(p.dim, 0.0);
    std::copy(a2.normals[i].begin(), a2.normals[i].end(), e.begin() + a1.dim);
    p.normals.push_back(std::move(e));
    p.labels.push_back(a2.labels.empty() ? "" : a2.labels[i]);
  }
  return p;
}

Arrangement apply_isometry(const Arrangement& a, const Mat& u) {
  Mat utu = mat_mul(transpose(u), u);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      if (std::fabs(utu[i][j] - (i == j ? 1.0 : 0.0)) > kTolOrtho)
        throw std::invalid_argument("apply_isometry: matrix not orthogonal");
  Arrangement r = a;
  for (auto& e : r.normals) e = mat_vec(u, e);
  r.witness = mat_vec(u, a.witness);
  return r;
}

bool parity_condition(const Arrangement& a) {
  return (a.size() - a.dim) % 2 == 0;
}

std::vector<std::vector<int>> irreducible_components(const Arrangement& a) {
  const int n = a.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(inner(a.normals[i], a.normals[j])) > kTolOrtho)
        parent[find(i)] = find(j);
  std::vector<std::vector<int>> comps;
  std::vector<int> root_slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_slot[r] < 0) {
      root_slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[root_slot[r]].push_back(i);
  }
  return comps;
}

void write_arrangement(std::ostream& os, const Arrangement& a) {
  char buf[64];
  os << "dim " << a.dim << "\n";
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.dim; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a.normals[i][j]);
      os << (j ? " " : "") << buf;
    }
    if (!a.labels.empty() && !a.labels[i].empty()) os << " # " << a.labels[i];
    os << "\n";
  }
  if (!a.witness.empty()) {
    os << "witness";
    for (double v : a.witness) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << " " << buf;
    }
    os << "\n";
  }
}

Arrangement read_arrangement(std::istream& is) {
  std::string line;
  int dim = -1;
  std::vector<Vec> normals;
  std::vector<std::string> labels;
  std::optional<Vec> witness;
  while (std::getline(is, line)) {
    std::string label;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      label = line.substr(hash + 1);
      auto b = label.find_first_not_of(" \t");
      label = b == std::string::npos ? "" : label.substr(b);
      line = line.substr(0, hash);
    }
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "dim") {
      if (!(ls >> dim) || dim < 0)
        throw std::runtime_error("read_arrangement: bad dim line");
      continue;
    }
    if (dim < 0) throw std::runtime_error("read_arrangement: missing dim line");
    Vec v;
    if (first == "witness") {
      double x;
      while (ls >> x) v.push_back(x);
      if (static_cast<int>(v.size()) != dim)
        throw std::runtime_error("read_arrangement: bad witness length");
      witness = v;
      continue;
    }
    v.push_back(std::stod(first));
    double x;
    while (ls >> x) v.push_back(x);
    if (static_cast<int>(v.size()) != dim)
      throw std::runtime_error("read_arrangement: bad normal length");
    normals.push_back(std::move(v));
    labels.push_back(label);
  }
  if (dim < 0) throw std::runtime_error("read_arrangement: missing dim line");
  if (normals.empty() && !witness) witness = Vec(dim, 0.0);
  return build_arrangement(std::move(normals), witness, {}, std::move(labels));
}

Arrangement read_arrangement_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_arrangement(f);
}

void write_arrangement_file(const std::string& path, const Arrangement& a) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_arrangement(f, a);
}

}  // namespace pizza
