#include "paleo/export.hpp"

#include <cinttypes>
#include <cstdio>

namespace paleo::report {

namespace {

using nlohmann::ordered_json;

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ordered_json latent_to_json(const LatentSummary& s) {
    return ordered_json{{"name", s.name},     {"units", s.units}, {"mean", s.mean},
                        {"std", s.stddev},    {"median", s.median}, {"q05", s.q05},
                        {"q25", s.q25},       {"q75", s.q75},     {"q95", s.q95},
                        {"map", s.map}};
}

LatentSummary latent_from_json(const ordered_json& j) {
    LatentSummary s;
    s.name = j.at("name").get<std::string>();
    s.units = j.at("units").get<std::string>();
    s.mean = j.at("mean").get<double>();
    s.stddev = j.at("std").get<double>();
    s.median = j.at("median").get<double>();
    s.q05 = j.at("q05").get<double>();
    s.q25 = j.at("q25").get<double>();
    s.q75 = j.at("q75").get<double>();
    s.q95 = j.at("q95").get<double>();
    s.map = j.at("map").get<double>();
    return s;
}

}  // namespace

ordered_json summary_to_json(const PosteriorSummary& summary) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : summary.trajectory) {
        rows.push_back(ordered_json{{"year", r.year}, {"mean", r.mean}, {"std", r.stddev},
                                    {"median", r.median}, {"q05", r.q05}, {"q25", r.q25},
                                    {"q75", r.q75}, {"q95", r.q95}, {"map", r.map}});
    }
    ordered_json params = ordered_json::array();
    for (const auto& p : summary.parameters) params.push_back(latent_to_json(p));
    return ordered_json{{"trajectory", rows}, {"parameters", params}};
}

PosteriorSummary summary_from_json(const ordered_json& j) {
    PosteriorSummary s;
    for (const auto& r : j.at("trajectory")) {
        TrajectoryRow row;
        row.year = r.at("year").get<double>();
        row.mean = r.at("mean").get<double>();
        row.stddev = r.at("std").get<double>();
        row.median = r.at("median").get<double>();
        row.q05 = r.at("q05").get<double>();
        row.q25 = r.at("q25").get<double>();
        row.q75 = r.at("q75").get<double>();
        row.q95 = r.at("q95").get<double>();
        row.map = r.at("map").get<double>();
        s.trajectory.push_back(row);
    }
    for (const auto& p : j.at("parameters")) s.parameters.push_back(latent_from_json(p));
    return s;
}

ordered_json guide_to_json(const infer::GuideState& guide) {
    return ordered_json{{"n_bins", guide.n_bins},
                        {"locations", guide.locations},
                        {"scales", guide.scales}};
}

infer::GuideState guide_from_json(const ordered_json& j) {
    infer::GuideState g;
    g.n_bins = j.at("n_bins").get<std::size_t>();
    g.locations = j.at("locations").get<std::vector<double>>();
    g.scales = j.at("scales").get<std::vector<double>>();
    if (g.locations.size() != g.n_bins + 3 || g.scales.size() != g.n_bins + 3) {
        throw std::invalid_argument("guide_from_json: inconsistent dimensions");
    }
    return g;
}

ordered_json fit_to_json(const infer::FitResult& fit, const ordered_json& config_echo) {
    ordered_json trace = ordered_json::array();
    for (const auto& [it, elbo] : fit.elbo_trace) {
        trace.push_back(ordered_json::array({it, elbo}));
    }
    return ordered_json{{"seed", fit.seed},
                        {"config", config_echo},
                        {"guide", guide_to_json(fit.guide)},
                        {"elbo_trace", trace},
                        {"floor_warnings", fit.floor_warnings}};
}

std::string trajectory_csv(const PosteriorSummary& summary) {
    std::string out = "year,mean,map,q25,q75\n";
    for (const auto& r : summary.trajectory) {
        out += csv_num(r.year) + "," + csv_num(r.mean) + "," + csv_num(r.map) + "," +
               csv_num(r.q25) + "," + csv_num(r.q75) + "\n";
    }
    return out;
}

std::string parameters_csv(const PosteriorSummary& summary) {
    std::string out = "name,mean,std,q25,q75,map,units\n";
    for (const auto& p : summary.parameters) {
        out += p.name + "," + csv_num(p.mean) + "," + csv_num(p.stddev) + "," +
               csv_num(p.q25) + "," + csv_num(p.q75) + "," + csv_num(p.map) + "," + p.units +
               "\n";
    }
    return out;
}

std::string elbo_trace_csv(const infer::FitResult& fit) {
    std::string out = "iteration,elbo\n";
    for (const auto& [it, elbo] : fit.elbo_trace) {
        out += std::to_string(it) + "," + csv_num(elbo) + "\n";
    }
    return out;
}

}  // namespace paleo::report
