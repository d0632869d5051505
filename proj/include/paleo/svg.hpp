#pragma once

#include <string>

#include "paleo/summary.hpp"

namespace paleo::report {

/// Population trajectory figure: posterior-mean curve, MAP curve, shaded
/// interquartile band, calendar-year axis (BCE rendered as "5000 BCE").
/// Deterministic bytes for equal inputs. Throws on an empty trajectory.
std::string render_trajectory_svg(const PosteriorSummary& summary, const model::TimeGrid& grid);

/// Three-panel figure with the fitted guide densities of the loss rate,
/// the scaling factor, and the sampling probability, each plotted over its
/// 0.1%-99.9% quantile range.
std::string render_density_svg(const infer::GuideState& guide);

}  // namespace paleo::report
