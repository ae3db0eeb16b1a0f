#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "hostsg/errors.hpp"

namespace hostsg {

// Fraction of instances whose gold class appears in the top-k ranking.
inline double acc_at_k(const std::vector<std::vector<std::size_t>>& rankings,
                       const std::vector<int>& gold, std::size_t k) {
  if (rankings.size() != gold.size())
    throw DataError("acc_at_k: ranking/gold size mismatch");
  if (rankings.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& r = rankings[i];
    const std::size_t n = std::min(k, r.size());
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] == static_cast<std::size_t>(gold[i])) {
        ++hit;
        break;
      }
  }
  return static_cast<double>(hit) / static_cast<double>(gold.size());
}

// Macro recall at k: per gold class, the fraction of its instances whose
// class appears in the top-k ranking; averaged over classes that occur.
inline double macro_recall_at_k(
    const std::vector<std::vector<std::size_t>>& rankings,
    const std::vector<int>& gold, std::size_t k) {
  if (rankings.size() != gold.size())
    throw DataError("macro_recall_at_k: ranking/gold size mismatch");
  std::map<int, std::pair<std::size_t, std::size_t>> per_class;  // hit, total
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto& [hit, total] = per_class[gold[i]];
    ++total;
    const auto& r = rankings[i];
    const std::size_t n = std::min(k, r.size());
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] == static_cast<std::size_t>(gold[i])) {
        ++hit;
        break;
      }
  }
  if (per_class.empty()) return 0.0;
  double s = 0.0;
  for (const auto& [cls, ht] : per_class)
    s += static_cast<double>(ht.first) / static_cast<double>(ht.second);
  return s / static_cast<double>(per_class.size());
}

// Per-gold-class accuracy averaged over classes that occur.
template <typename Key>
inline double macro_accuracy(const std::map<Key, int>& pred,
                             const std::map<Key, int>& gold) {
  std::map<int, std::pair<std::size_t, std::size_t>> per_class;
  for (const auto& [key, y] : gold) {
    auto& [hit, total] = per_class[y];
    ++total;
    auto it = pred.find(key);
    if (it != pred.end() && it->second == y) ++hit;
  }
  if (per_class.empty()) return 0.0;
  double s = 0.0;
  for (const auto& [cls, ht] : per_class)
    s += static_cast<double>(ht.first) / static_cast<double>(ht.second);
  return s / static_cast<double>(per_class.size());
}

inline std::size_t lcs_length(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// LCS F-measure. Two empty sequences match perfectly; one empty scores 0.
inline double rouge_l(const std::vector<int>& pred,
                      const std::vector<int>& ref) {
  if (pred.empty() && ref.empty()) return 1.0;
  if (pred.empty() || ref.empty()) return 0.0;
  const double l = static_cast<double>(lcs_length(pred, ref));
  if (l == 0.0) return 0.0;
  const double p = l / static_cast<double>(pred.size());
  const double r = l / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

}  // namespace hostsg
