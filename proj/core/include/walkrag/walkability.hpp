#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/air_quality.hpp"
#include "walkrag/router.hpp"
#include "walkrag/spatial_index.hpp"

namespace walkrag::walkability {

enum class indicator_kind { sidewalk, pollution, green_area, accessibility };

inline constexpr std::array kIndicators = {indicator_kind::sidewalk, indicator_kind::pollution,
                                           indicator_kind::green_area,
                                           indicator_kind::accessibility};
inline constexpr std::size_t kIndicatorCount = kIndicators.size();

inline constexpr double kDefaultTau = 5.0;
inline constexpr double kDefaultIndicatorBufferM = 100.0;
inline constexpr double kPreferredWeight = 0.4;
inline constexpr double kOtherWeight = 0.2;

std::string_view to_string(indicator_kind kind);
indicator_kind indicator_from_string(std::string_view text);

constexpr std::size_t slot(indicator_kind kind) { return static_cast<std::size_t>(kind); }

using indicator_values = std::array<double, kIndicatorCount>;

struct indicator_weights {
  indicator_values w{0.25, 0.25, 0.25, 0.25};

  static indicator_weights uniform() { return {}; }
  // Preferred indicators get 0.4, the rest 0.2, renormalised to sum to one.
  static indicator_weights with_preferences(std::set<indicator_kind> const& preferred);

  double operator[](indicator_kind k) const { return w[slot(k)]; }
  // Non-negative and summing to one within 1e-9.
  bool valid() const;
};

using segment_counts = indicator_values;

struct walkability_score {
  indicator_values c{};
  indicator_weights weights;
  double tau = kDefaultTau;
  double ws = 0.0;
  std::vector<std::string> flags;  // "empty_route", "pollution_estimated"
};

// Sidewalk, green-area and accessibility features within `buffer_m` of the
// segment polyline. The pollution slot is left at zero.
segment_counts count_indicators(routing::segment const& segment, enrichment::spatial_index const& index,
                                double buffer_m = kDefaultIndicatorBufferM);

// Linear inversion of the 1 (best) .. 5 (worst) grade: tau * (5 - aqi) / 4.
double pollution_count(geodata::air_quality_sample const& sample, double tau = kDefaultTau);

// c_i = sum over segments of min(count_i, tau) / segment count. Throws
// empty_route for zero segments.
indicator_values average_capped_counts(std::vector<segment_counts> const& counts,
                                       double tau = kDefaultTau);

// ws = sum_i w_i c_i / tau. Throws invalid_weights when the weights do not sum
// to one, std::invalid_argument when tau <= 0 or some c_i lies outside [0, tau].
walkability_score score(indicator_values const& c, indicator_weights const& weights,
                        double tau = kDefaultTau);

struct scored_route {
  routing::route_candidate route;
  walkability_score score;
};

// Highest ws; ties go to the shorter route, then to the earlier entry.
// Throws no_candidates on an empty list.
std::size_t select_best_route(std::vector<scored_route> const& candidates);

struct scoring_options {
  double tau = kDefaultTau;
  double indicator_buffer_m = kDefaultIndicatorBufferM;
  indicator_weights weights;
};

// Full per-route evaluation: counts every segment, samples air quality once at
// the route midpoint (tau/2 with a "pollution_estimated" flag when the client
// is unavailable or absent), averages and scores. A zero-segment route scores
// 0 with the "empty_route" flag.
walkability_score score_route(routing::route_candidate const& route,
                              enrichment::spatial_index const& index,
                              geodata::air_quality_client* air_quality,
                              scoring_options const& options);

}  // namespace walkrag::walkability
