#pragma once
// Sparse nonnegative vectors keyed by concept id (or keyword).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include "json.hpp"

namespace ontorec {

using json = nlohmann::json;

// No stored zeros; all weights >= 0.
using SparseVector = std::map<std::string, double>;
using ConceptVector = SparseVector;
using KeywordVector = SparseVector;

inline double dot(const SparseVector& a, const SparseVector& b) {
  // Merge join in key order, so dot(a, b) and dot(b, a) sum identically.
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

inline double norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& [k, w] : v) sum += w * w;
  return std::sqrt(sum);
}

inline double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double denom = norm(a) * norm(b);
  if (denom == 0.0) return 0.0;
  return std::clamp(dot(a, b) / denom, 0.0, 1.0);
}

// Unit-length copy; the empty vector stays empty.
inline SparseVector normalized(const SparseVector& v) {
  const double n = norm(v);
  if (n == 0.0) return {};
  SparseVector out;
  for (const auto& [k, w] : v) {
    const double x = w / n;
    if (x > 0.0) out.emplace(k, x);
  }
  return out;
}

inline SparseVector scaled(const SparseVector& v, double factor) {
  SparseVector out;
  for (const auto& [k, w] : v) {
    const double x = w * factor;
    if (x > 0.0) out.emplace(k, x);
  }
  return out;
}

// Weight rounded to 12 significant digits, the precision vectors are stored at.
inline double round_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", w);
  return std::strtod(buf, nullptr);
}

// Ranking score: cosine at stored precision, so mathematically tied documents
// tie exactly (and fall back to the id order) whatever the query's scale.
inline double similarity(const SparseVector& a, const SparseVector& b) { return round_weight(cosine(a, b)); }

inline json to_json(const SparseVector& v) {
  json out = json::object();
  for (const auto& [k, w] : v) out[k] = w;
  return out;
}

inline SparseVector sparse_from_json(const json& j) {
  SparseVector out;
  for (const auto& [k, w] : j.items()) {
    const double x = w.get<double>();
    if (x > 0.0) out.emplace(k, x);
  }
  return out;
}

}  // namespace ontorec
