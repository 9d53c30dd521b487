#include "welfare/rank_weighted.hpp"

#include <cmath>
#include <numeric>

namespace welfare {

DiscountFactor::DiscountFactor(double k) : k_(k) {
  if (!std::isfinite(k) || !(k > 0.0) || !(k < 1.0)) {
    throw Error(ErrorKind::InvalidParams, "discount factor k must lie in (0, 1)");
  }
}

std::size_t LevelHistogram::population() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

UtilityProfile LevelHistogram::to_profile() const {
  std::vector<double> values;
  values.reserve(population());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    values.insert(values.end(), counts[j], levels[j]);
  }
  return UtilityProfile(std::move(values));
}

LevelHistogram level_histogram(const UtilityProfile& p, double merge_tol) {
  if (!std::isfinite(merge_tol) || merge_tol < 0.0) {
    throw Error(ErrorKind::InvalidParams, "merge tolerance must be >= 0");
  }
  const auto view = sort_view(p);
  LevelHistogram h;
  CompensatedSum cluster_sum;
  std::size_t cluster_size = 0;
  auto flush = [&] {
    h.levels.push_back(cluster_sum.value() / static_cast<double>(cluster_size));
    h.counts.push_back(cluster_size);
  };
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (cluster_size > 0 && view[i] - view[i - 1] > merge_tol) {
      flush();
      cluster_sum = {};
      cluster_size = 0;
    }
    cluster_sum.add(view[i]);
    ++cluster_size;
  }
  flush();
  return h;
}

double w_ulbd(const LevelHistogram& h, const DiscountFactor& k) {
  CompensatedSum acc;
  double weight = 1.0;
  for (std::size_t j = 0; j < h.levels.size(); ++j) {
    acc.add(weight * static_cast<double>(h.counts[j]) * h.levels[j]);
    weight *= k.value();
  }
  return acc.value();
}

double w_ulbd(const UtilityProfile& p, const DiscountFactor& k) {
  return w_ulbd(level_histogram(p), k);
}

double w_irbd(const UtilityProfile& p, const DiscountFactor& k) {
  const auto view = sort_view(p);
  CompensatedSum acc;
  double weight = 1.0;
  for (std::size_t i = 0; i < view.size(); ++i) {
    acc.add(weight * view[i]);
    weight *= k.value();
  }
  return acc.value();
}

double irbd_replication_limit(const UtilityProfile& p, const DiscountFactor& k) {
  return p.min() / (1.0 - k.value());
}

}  // namespace welfare
