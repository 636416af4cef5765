#include "spatk/k_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spatk/errors.hpp"
#include "spatk/grid_index.hpp"
#include "spatk/parallel.hpp"
#include "spatk/random.hpp"

namespace spatk {

Correction correction_from_string(const std::string& name) {
  if (name == "none") return Correction::kNone;
  if (name == "border") return Correction::kBorder;
  throw InvalidArgument("unknown correction '" + name + "' (expected none|border)");
}

const char* to_string(Correction c) {
  return c == Correction::kBorder ? "border" : "none";
}

namespace {

// Per-source neighbor counts, cumulative over the radii grid. counts must
// hold radii.size() entries and is not cleared here.
void count_neighbors(const GridIndex& index, const PointPattern& pat, std::size_t s,
                     int target_class, const RadiiGrid& radii,
                     std::vector<std::size_t>& counts) {
  const double r_max = radii.max();
  const double sx = pat.x(s);
  const double sy = pat.y(s);
  const auto& rs = radii.values();
  index.for_each_candidate(sx, sy, r_max, [&](std::uint32_t t) {
    if (t == s || pat.label(t) != target_class) return;
    const double d2 = squared_distance(sx, sy, pat.x(t), pat.y(t));
    if (d2 >= r_max * r_max) return;
    const double d = std::sqrt(d2);
    // Strict d < r: the neighbor counts toward every radius > d.
    const auto it = std::upper_bound(rs.begin(), rs.end(), d);
    for (std::size_t j = static_cast<std::size_t>(it - rs.begin()); j < rs.size(); ++j) {
      ++counts[j];
    }
  });
}

}  // namespace

KCurve ripley_k(const PointPattern& pattern, int source_class, int target_class,
                const RadiiGrid& radii, Correction correction) {
  pattern.check_class(source_class);
  pattern.check_class(target_class);
  const bool same = source_class == target_class;
  const std::size_t n_src = pattern.class_count(source_class);
  const std::size_t n_tgt = pattern.class_count(target_class);
  if (same && n_src < 2) {
    throw EmptyPatternError("K estimator needs >= 2 points of class " +
                            std::to_string(source_class));
  }
  if (!same && (n_src == 0 || n_tgt == 0)) {
    throw EmptyPatternError("K-cross estimator needs >= 1 point of each class");
  }

  const GridIndex index(pattern, radii.max());
  const std::size_t n_r = radii.size();
  const double area = pattern.window().area();
  const double pair_norm = static_cast<double>(n_tgt) - (same ? 1.0 : 0.0);

  std::vector<std::size_t> sources;
  sources.reserve(n_src);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern.label(i) == source_class) sources.push_back(i);
  }

  KCurve curve{radii, std::vector<double>(n_r, 0.0), source_class, target_class};

  if (correction == Correction::kNone) {
    std::vector<std::size_t> total(n_r, 0);
    std::vector<std::size_t> counts(n_r);
    for (std::size_t s : sources) {
      std::fill(counts.begin(), counts.end(), 0);
      count_neighbors(index, pattern, s, target_class, radii, counts);
      for (std::size_t j = 0; j < n_r; ++j) total[j] += counts[j];
    }
    for (std::size_t j = 0; j < n_r; ++j) {
      curve.values[j] =
          area * static_cast<double>(total[j]) / (static_cast<double>(n_src) * pair_norm);
    }
    return curve;
  }

  // Border correction: per-radius source retention.
  std::vector<std::vector<std::size_t>> per_source(sources.size(),
                                                   std::vector<std::size_t>(n_r, 0));
  std::vector<double> border(sources.size());
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const std::size_t s = sources[k];
    count_neighbors(index, pattern, s, target_class, radii, per_source[k]);
    border[k] = pattern.window().border_distance(pattern.x(s), pattern.y(s));
  }
  for (std::size_t j = 0; j < n_r; ++j) {
    const double r = radii[j];
    std::size_t retained = 0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      if (border[k] >= r) {
        ++retained;
        total += per_source[k][j];
      }
    }
    curve.values[j] = retained == 0
                          ? 0.0
                          : area * static_cast<double>(total) /
                                (static_cast<double>(retained) * pair_norm);
  }
  return curve;
}

Envelope csr_envelope(const PointPattern& pattern, int source_class, int target_class,
                      const RadiiGrid& radii, std::size_t n_sims, std::size_t rank,
                      std::uint64_t seed, Correction correction, int workers) {
  if (rank == 0) {
    throw InvalidArgument("envelope rank must be >= 1");
  }
  // A single simulation is never a usable envelope, whatever the rank.
  if (n_sims < 2 || n_sims < 2 * rank - 1) {
    throw InvalidArgument("envelope needs n_sims >= max(2, 2*rank - 1), got n_sims=" +
                          std::to_string(n_sims) + " rank=" + std::to_string(rank));
  }
  pattern.check_class(source_class);
  pattern.check_class(target_class);

  std::vector<std::size_t> counts(static_cast<std::size_t>(pattern.n_classes()));
  for (int c = 0; c < pattern.n_classes(); ++c) {
    counts[static_cast<std::size_t>(c)] = pattern.class_count(c);
  }

  std::vector<std::vector<double>> sim_values(n_sims);
  parallel_for(n_sims, workers, [&](std::size_t i) {
    const PointPattern sim =
        simulate_uniform_pattern(pattern.window(), counts, Rng::derive_seed(seed, i));
    sim_values[i] = ripley_k(sim, source_class, target_class, radii, correction).values;
  });

  const std::size_t n_r = radii.size();
  Envelope env{radii,
               std::vector<double>(n_r),
               std::vector<double>(n_r),
               std::vector<double>(n_r),
               n_sims,
               rank};
  std::vector<double> column(n_sims);
  for (std::size_t j = 0; j < n_r; ++j) {
    for (std::size_t i = 0; i < n_sims; ++i) column[i] = sim_values[i][j];
    std::sort(column.begin(), column.end());
    env.lower[j] = column[rank - 1];
    env.upper[j] = column[n_sims - rank];
    env.baseline[j] = std::numbers::pi * radii[j] * radii[j];
  }
  return env;
}

}  // namespace spatk
