#pragma once

#include <string>

#include <json.hpp>

#include "paleo/summary.hpp"
#include "paleo/svi.hpp"

namespace paleo::report {

// JSON/CSV serialization. All exports are byte-stable: equal inputs produce
// identical documents.

nlohmann::ordered_json summary_to_json(const PosteriorSummary& summary);
PosteriorSummary summary_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json guide_to_json(const infer::GuideState& guide);
infer::GuideState guide_from_json(const nlohmann::ordered_json& j);

/// Fit artifact: seed, config echo, guide, ELBO trace, warning counters.
/// Wall time is intentionally not serialized so reruns are byte-identical.
nlohmann::ordered_json fit_to_json(const infer::FitResult& fit,
                                   const nlohmann::ordered_json& config_echo);

/// `year,mean,map,q25,q75` rows, one per bin.
std::string trajectory_csv(const PosteriorSummary& summary);

/// `name,mean,std,q25,q75,map,units` rows for the shared latents.
std::string parameters_csv(const PosteriorSummary& summary);

/// `iteration,elbo` rows.
std::string elbo_trace_csv(const infer::FitResult& fit);

}  // namespace paleo::report
