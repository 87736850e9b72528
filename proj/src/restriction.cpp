#include "pizza/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace pizza {

namespace {

// Embeds child coordinates into the parent space: sum of y_k * basis_k,
// starting from the parent-space origin (works for dim-0 children too).
Vec embed_in(const OrthonormalBasis& basis, const Vec& y, int parent_dim) {
  Vec x(parent_dim, 0.0);
  for (std::size_t k = 0; k < basis.vectors.size(); ++k)
    axpy(x, y[k], basis.vectors[k]);
  return x;
}

// First sign of the list with zero band 1e-10; requires a clean resolution
// (the resolved entry at least 1e-8 in magnitude). Returns 0 when unresolved
// or ambiguous.
int lex_sign(const std::vector<double>& entries) {
  for (double v : entries) {
    if (std::fabs(v) > 1e-10) {
      if (std::fabs(v) < 1e-8) return 0;  // gray zone
      return v > 0.0 ? 1 : -1;
    }
  }
  return 0;
}

}  // namespace

int intersection_multiplicity(const Arrangement& a, int e, int f) {
  if (e == f) throw std::invalid_argument("intersection_multiplicity: e == f");
  const Vec& u = a.normals[e];
  Vec w = sub(a.normals[f], scale(u, inner(a.normals[f], u)));
  w = normalize(w);
  int count = 0;
  for (const Vec& g : a.normals) {
    Vec res = g;
    axpy(res, -inner(g, u), u);
    axpy(res, -inner(res, w), w);
    if (norm(res) <= 1e-9) ++count;
  }
  return count;
}

RestrictionStep even_restricted(const Arrangement& a, int e, const Vec& reference) {
  if (e < 0 || e >= a.size())
    throw std::invalid_argument("even_restricted: normal index out of range");
  RestrictionStep step;
  step.chosen_index = e;
  step.normal = a.normals[e];
  step.child_basis = subspace_basis({a.normals[e]}, a.dim);
  const int cdim = a.dim - 1;

  // Projections of all other normals onto H_e (child coordinates), and the
  // even-multiplicity classes among them.
  std::vector<Vec> projections(a.size());
  std::vector<char> is_even(a.size(), 0);
  for (int f = 0; f < a.size(); ++f) {
    if (f == e) continue;
    Vec p = sub(a.normals[f], scale(step.normal, inner(a.normals[f], step.normal)));
    p = normalize(p);
    projections[f] = basis_coords(step.child_basis, p);
    is_even[f] = intersection_multiplicity(a, e, f) % 2 == 0;
  }
  std::vector<Vec> child_normals;
  for (int f = 0; f < a.size(); ++f) {
    if (f == e || !is_even[f]) continue;
    int found = -1;
    for (std::size_t c = 0; c < step.classes.size(); ++c) {
      int rep = step.classes[c][0];
      if (std::fabs(inner(projections[f], projections[rep])) >= 1.0 - 1e-9) {
        found = static_cast<int>(c);
        break;
      }
    }
    if (found >= 0) {
      step.classes[found].push_back(f);
    } else {
      step.classes.push_back({f});
      child_normals.push_back(projections[f]);
    }
  }

  // Child base chamber: the chamber containing the projected reference,
  // deterministically nudged off every projected wall (both parities, so the
  // z0 sign below resolves cleanly).
  Vec y = basis_coords(step.child_basis, reference);
  if (cdim > 0) {
    double margin_goal = 1e-4 * std::max(1.0, norm(y));
    Vec dir = generic_direction(cdim);
    double delta = 1e-6 * std::max(1.0, norm(y));
    for (int tries = 0;; ++tries) {
      bool ok = true;
      for (int f = 0; f < a.size() && ok; ++f) {
        if (f == e) continue;
        if (std::fabs(inner(projections[f], y)) <= margin_goal) ok = false;
      }
      if (ok) break;
      if (tries > 200)
        throw std::runtime_error("even_restricted: cannot place base chamber");
      axpy(y, delta, dir);
      delta *= 2.0;
      std::rotate(dir.begin(), dir.end() - 1, dir.end());
    }
  }
  for (Vec& c : child_normals)
    if (inner(c, y) < 0.0) c = scale(c, -1.0);
  step.child = build_arrangement(std::move(child_normals),
                                 cdim > 0 ? std::optional<Vec>(y)
                                          : std::optional<Vec>(Vec{}));
  if (step.child.dim != cdim) step.child.dim = cdim;

  // z0_sign: sign, relative to the parent base chamber, of the parent
  // chamber containing w + eps*e for w the embedded child witness.
  Vec w = embed_in(step.child_basis, y, a.dim);
  int negatives = 0;
  for (int f = 0; f < a.size(); ++f) {
    int s = lex_sign({inner(a.normals[f], w), inner(a.normals[f], step.normal)});
    if (s == 0)
      throw std::runtime_error("even_restricted: unresolved z0 sign");
    if (s < 0) ++negatives;
  }
  step.z0_sign = negatives % 2 ? -1 : 1;
  return step;
}

RestrictionSequence make_sequence(const Arrangement& ambient) {
  RestrictionSequence seq;
  seq.ambient = ambient;
  for (int i = 0; i < ambient.dim; ++i) {
    Vec e(ambient.dim, 0.0);
    e[i] = 1.0;
    seq.to_ambient.vectors.push_back(std::move(e));
  }
  return seq;
}

RestrictionSequence extend(const RestrictionSequence& seq, int current_index) {
  const Arrangement& cur = seq.current();
  if (current_index < 0 || current_index >= cur.size())
    throw std::invalid_argument("extend: no such hyperplane in the current arrangement");
  RestrictionSequence next = seq;
  RestrictionStep step = even_restricted(cur, current_index, cur.witness);
  next.lifted_normals.push_back(
      embed_in(seq.to_ambient, step.normal, seq.ambient.dim));
  OrthonormalBasis nb;
  for (const Vec& b : step.child_basis.vectors)
    nb.vectors.push_back(embed_in(seq.to_ambient, b, seq.ambient.dim));
  next.to_ambient = std::move(nb);
  next.steps.push_back(std::move(step));
  return next;
}

bool is_maximal(const RestrictionSequence& seq) {
  return seq.current().size() == 0;
}

int sequence_sign(const RestrictionSequence& seq) {
  if (!is_maximal(seq))
    throw std::invalid_argument("sequence_sign: sequence is not maximal");
  const Arrangement& amb = seq.ambient;
  const int r = seq.length();
  const int tdim = amb.dim - r;

  auto sign_with = [&](const Vec& v) -> int {
    int negatives = 0;
    for (const Vec& f : amb.normals) {
      std::vector<double> entries;
      if (tdim > 0) entries.push_back(inner(f, v));
      for (int i = r - 1; i >= 0; --i)
        entries.push_back(inner(f, seq.lifted_normals[i]));
      int s = lex_sign(entries);
      if (s == 0) return 0;
      if (s < 0) ++negatives;
    }
    return negatives % 2 ? -1 : 1;
  };

  if (tdim == 0) {
    int s = sign_with(Vec{});
    if (s == 0)
      throw std::runtime_error("sequence_sign: unresolved sign (internal error)");
    return s;
  }
  // Generic terminal vector; the sign does not depend on the choice (only
  // hyperplanes of the stage arrangements could break that, and a maximal
  // sequence leaves none), so two independent picks must agree.
  Vec pattern = generic_direction(tdim);
  int first = 0;
  for (int tries = 0; tries < 64; ++tries) {
    Vec v = embed_in(seq.to_ambient, pattern, amb.dim);
    int s = sign_with(v);
    if (s != 0) {
      if (first == 0) {
        first = s;
      } else if (first != s) {
        throw std::runtime_error(
            "sequence_sign: terminal direction changed the sign (internal "
            "error)");
      } else {
        return first;  // two independent picks agree
      }
    }
    std::rotate(pattern.begin(), pattern.end() - 1, pattern.end());
    pattern[0] = -pattern[0];
  }
  if (first != 0) return first;
  throw std::runtime_error("sequence_sign: unresolved sign (internal error)");
}

namespace {

void class_dfs(const RestrictionSequence& seq, int r,
               const std::function<void(const RestrictionSequence&)>& fn,
               std::size_t cap, std::size_t& visited) {
  if (seq.length() == r) {
    fn(seq);
    return;
  }
  const Arrangement& cur = seq.current();
  for (int i = 0; i < cur.size(); ++i) {
    if (++visited > cap)
      throw std::runtime_error("canonical_classes: enumeration cap exceeded");
    class_dfs(extend(seq, i), r, fn, cap, visited);
  }
}

// Canonical key for a stage: the ambient-lifted normals, sign-normalized,
// rounded to 1e-8 and sorted, plus the stage dimension.
std::string stage_key(const Arrangement& cur, const OrthonormalBasis& to_amb,
                      int amb_dim) {
  std::vector<std::string> parts;
  char buf[32];
  for (const Vec& nrm : cur.normals) {
    Vec u = embed_in(to_amb, nrm, amb_dim);
    int flip = 1;
    for (double c : u)
      if (std::fabs(c) > 1e-6) {
        flip = c < 0.0 ? -1 : 1;
        break;
      }
    std::string p;
    for (double c : u) {
      std::snprintf(buf, sizeof buf, "%lld,", static_cast<long long>(std::llround(flip * c * 1e8)));
      p += buf;
    }
    parts.push_back(std::move(p));
  }
  std::sort(parts.begin(), parts.end());
  std::string key = std::to_string(cur.dim) + "|";
  for (auto& p : parts) key += p + ";";
  return key;
}

bool even_dfs(const RestrictionSequence& seq,
              std::unordered_map<std::string, bool>& memo) {
  const Arrangement& cur = seq.current();
  if (cur.size() == 0) return cur.dim == 0;
  std::string key = stage_key(cur, seq.to_ambient, seq.ambient.dim);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool ok = true;
  for (int i = 0; i < cur.size() && ok; ++i)
    ok = even_dfs(extend(seq, i), memo);
  memo.emplace(std::move(key), ok);
  return ok;
}

}  // namespace

bool is_even_arrangement(const Arrangement& a) {
  std::unordered_map<std::string, bool> memo;
  return even_dfs(make_sequence(a), memo);
}

std::vector<RestrictionSequence> canonical_classes(const Arrangement& a, int r,
                                                   std::size_t cap) {
  std::vector<RestrictionSequence> out;
  for_each_class(a, r, [&](const RestrictionSequence& s) { out.push_back(s); },
                 cap);
  return out;
}

void for_each_class(const Arrangement& a, int r,
                    const std::function<void(const RestrictionSequence&)>& fn,
                    std::size_t cap) {
  if (r < 0 || r > a.dim)
    throw std::invalid_argument("for_each_class: bad length");
  std::size_t visited = 0;
  class_dfs(make_sequence(a), r, fn, cap, visited);
}

}  // namespace pizza
