#include "walkrag/walkability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walkrag/enrichment.hpp"
#include "walkrag/errors.hpp"

namespace walkrag::walkability {

std::string_view to_string(indicator_kind kind) {
  switch (kind) {
    case indicator_kind::sidewalk: return "Sidewalk";
    case indicator_kind::pollution: return "Pollution";
    case indicator_kind::green_area: return "GreenArea";
    case indicator_kind::accessibility: return "Accessibility";
  }
  return "Sidewalk";
}

indicator_kind indicator_from_string(std::string_view text) {
  for (auto const k : kIndicators) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw std::invalid_argument("unknown indicator '" + std::string{text} + "'");
}

indicator_weights indicator_weights::with_preferences(std::set<indicator_kind> const& preferred) {
  if (preferred.empty()) {
    return uniform();
  }
  indicator_weights out;
  auto total = 0.0;
  for (auto const k : kIndicators) {
    out.w[slot(k)] = preferred.contains(k) ? kPreferredWeight : kOtherWeight;
    total += out.w[slot(k)];
  }
  for (auto& v : out.w) {
    v /= total;
  }
  return out;
}

bool indicator_weights::valid() const {
  auto sum = 0.0;
  for (auto const v : w) {
    if (!(v >= 0.0)) {
      return false;
    }
    sum += v;
  }
  return std::abs(sum - 1.0) <= 1e-9;
}

segment_counts count_indicators(routing::segment const& segment,
                                enrichment::spatial_index const& index, double buffer_m) {
  segment_counts counts{};
  auto const c = enrichment::corridor{{segment.polyline}, buffer_m};
  auto const& features = index.features();
  for (auto const i : index.query(c.segment_bounds(0))) {
    auto const& f = features[i];
    auto k = indicator_kind::pollution;
    switch (f.kind) {
      case geodata::feature_kind::sidewalk: k = indicator_kind::sidewalk; break;
      case geodata::feature_kind::green_area: k = indicator_kind::green_area; break;
      case geodata::feature_kind::accessibility: k = indicator_kind::accessibility; break;
      case geodata::feature_kind::poi: continue;
    }
    if (c.distance_to_segment(f.pos, 0) <= buffer_m) {
      counts[slot(k)] += 1.0;
    }
  }
  return counts;
}

double pollution_count(geodata::air_quality_sample const& sample, double tau) {
  if (sample.aqi < 1 || sample.aqi > 5) {
    throw std::invalid_argument("aqi must be in 1..5");
  }
  return tau * (5.0 - sample.aqi) / 4.0;
}

indicator_values average_capped_counts(std::vector<segment_counts> const& counts, double tau) {
  if (counts.empty()) {
    throw empty_route("cannot average indicator counts over zero segments");
  }
  indicator_values c{};
  for (auto const& seg : counts) {
    for (auto i = std::size_t{0}; i < kIndicatorCount; ++i) {
      if (seg[i] < 0.0) {
        throw std::invalid_argument("indicator counts must be non-negative");
      }
      c[i] += std::min(seg[i], tau);
    }
  }
  for (auto& v : c) {
    v /= static_cast<double>(counts.size());
  }
  return c;
}

walkability_score score(indicator_values const& c, indicator_weights const& weights, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (!weights.valid()) {
    throw invalid_weights("indicator weights must be non-negative and sum to 1");
  }
  walkability_score out;
  out.c = c;
  out.weights = weights;
  out.tau = tau;
  auto sum = 0.0;
  for (auto i = std::size_t{0}; i < kIndicatorCount; ++i) {
    if (c[i] < 0.0 || c[i] > tau) {
      throw std::invalid_argument("average capped counts must lie in [0, tau]");
    }
    sum += weights.w[i] * c[i];
  }
  // Weights summing to 1 +- 1e-9 can push a saturated route a hair past 1.
  out.ws = std::clamp(sum / tau, 0.0, 1.0);
  return out;
}

std::size_t select_best_route(std::vector<scored_route> const& candidates) {
  if (candidates.empty()) {
    throw no_candidates("no route candidates to choose from");
  }
  auto best = std::size_t{0};
  for (auto i = std::size_t{1}; i < candidates.size(); ++i) {
    auto const& a = candidates[i];
    auto const& b = candidates[best];
    if (a.score.ws > b.score.ws ||
        (a.score.ws == b.score.ws && a.route.total_length_m < b.route.total_length_m)) {
      best = i;
    }
  }
  return best;
}

walkability_score score_route(routing::route_candidate const& route,
                              enrichment::spatial_index const& index,
                              geodata::air_quality_client* air_quality,
                              scoring_options const& options) {
  if (route.segments.empty()) {
    auto out = score(indicator_values{}, options.weights, options.tau);
    out.flags.push_back("empty_route");
    return out;
  }

  auto estimated = false;
  auto pollution = options.tau / 2.0;
  if (air_quality != nullptr) {
    auto const geometry = route.geometry();
    try {
      pollution = pollution_count(air_quality->fetch(polyline_midpoint(geometry)), options.tau);
    } catch (unavailable const&) {
      estimated = true;
    }
  } else {
    estimated = true;
  }

  std::vector<segment_counts> counts;
  counts.reserve(route.segments.size());
  for (auto const& seg : route.segments) {
    auto sc = count_indicators(seg, index, options.indicator_buffer_m);
    sc[slot(indicator_kind::pollution)] = pollution;
    counts.push_back(sc);
  }
  auto out = score(average_capped_counts(counts, options.tau), options.weights, options.tau);
  if (estimated) {
    out.flags.push_back("pollution_estimated");
  }
  return out;
}

}  // namespace walkrag::walkability
