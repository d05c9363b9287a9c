#include "kirigami/export.hpp"

#include "kirigami/dataset_io.hpp"

namespace kirigami {

namespace {
double bin_center(double lo, double width, int k) { return lo + (k + 0.5) * width; }
}  // namespace

std::string map_pgm(const TwoCutMap& map) {
    const int n = map.resolution();
    std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(n) * n);
    for (auto v : map.occupancy()) out.push_back(static_cast<char>(v ? 0xff : 0x00));
    return out;
}

std::string map_csv(const TwoCutMap& map) {
    const int n = map.resolution();
    std::string out = "first\\second";
    for (int c = 0; c < n; ++c) out += "," + format_double(map.center(c));
    out += '\n';
    for (int r = 0; r < n; ++r) {
        out += format_double(map.center(r));
        for (int c = 0; c < n; ++c) out += map.blocked(r, c) ? ",1" : ",0";
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const Histogram1D& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    const double w = h.bin_width();
    for (int k = 0; k < h.bins(); ++k)
        out += format_double(h.lo + k * w) + "," + format_double(h.lo + (k + 1) * w) + "," +
               std::to_string(h.counts[k]) + "\n";
    return out;
}

std::string histogram_csv(const Histogram2D& h) {
    const double w = h.bin_width();
    std::string out = "first\\second";
    for (int c = 0; c < h.bins; ++c) out += "," + format_double(bin_center(h.lo, w, c));
    out += '\n';
    for (int r = 0; r < h.bins; ++r) {
        out += format_double(bin_center(h.lo, w, r));
        for (int c = 0; c < h.bins; ++c) out += "," + std::to_string(h.at(r, c));
        out += '\n';
    }
    return out;
}

std::string sweep_curve_csv(const std::vector<SweepCurvePoint>& curve) {
    std::string out =
        "beta_max,samples,mean_intersections,stderr,admissible,likelihood,likelihood_lo,likelihood_hi\n";
    for (const auto& p : curve)
        out += format_double(p.beta_max) + "," + std::to_string(p.tally.samples) + "," +
               format_double(p.tally.mean()) + "," + format_double(p.tally.standard_error()) + "," +
               std::to_string(p.tally.admissible) + "," + format_double(p.admissible.value) + "," +
               format_double(p.admissible.lower) + "," + format_double(p.admissible.upper) + "\n";
    return out;
}

nlohmann::json to_json(const ProportionEstimate& e) {
    return {{"value", e.value}, {"lower", e.lower}, {"upper", e.upper},
            {"successes", e.successes}, {"trials", e.trials}, {"confidence", 0.95}};
}

nlohmann::json to_json(const IntersectionTally& t) {
    return {{"samples", t.samples},
            {"mean_intersections", t.mean()},
            {"stderr", t.standard_error()},
            {"admissible", t.admissible},
            {"admissible_fraction", t.admissible_fraction()}};
}

nlohmann::json to_json(const EvalReport& r) {
    nlohmann::json j;
    j["samples"] = r.samples;
    j["beta_max"] = r.beta_max;
    j["mean_intersections"] = r.mean_intersections;
    j["mean_intersections_stderr"] = r.intersections.standard_error();
    j["admissible_fraction"] = r.admissible_fraction;
    j["zone_violation_rate"] = r.zone_violation_rate;
    j["marginal_histogram"] = {{"lo", r.marginal.lo}, {"hi", r.marginal.hi}, {"counts", r.marginal.counts}};
    j["pair_histogram"] = {{"lo", r.pairs.lo}, {"hi", r.pairs.hi}, {"bins", r.pairs.bins},
                           {"total", r.pairs.total()}};
    j["tv_to_reference"] = r.tv_to_reference ? nlohmann::json(*r.tv_to_reference) : nlohmann::json(nullptr);
    j["marginal_tv_to_reference"] =
        r.marginal_tv_to_reference ? nlohmann::json(*r.marginal_tv_to_reference) : nlohmann::json(nullptr);
    if (r.baselines)
        j["baselines"] = {{"beta_max", r.baselines->beta_max},
                          {"uniform", to_json(r.baselines->uniform)},
                          {"marginal", to_json(r.baselines->marginal)}};
    else
        j["baselines"] = nullptr;
    return j;
}

nlohmann::json to_json(const PathResult& path) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : path.polyline) pts.push_back({p.first, p.second});
    return {{"found", path.found}, {"length", path.length}, {"polyline", pts}};
}

}  // namespace kirigami
