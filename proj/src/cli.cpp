#include "kirigami/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kirigami/analysis.hpp"
#include "kirigami/dataset_io.hpp"
#include "kirigami/evaluation.hpp"
#include "kirigami/export.hpp"
#include "kirigami/samplers.hpp"

namespace kirigami::cli {

namespace {

using nlohmann::json;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v{};
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw ValidationError("not a number list: '" + text + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

AnglePair parse_pair(const std::string& text) {
    const auto v = parse_numbers(text);
    if (v.size() != 2) throw ValidationError("expected an angle pair 'a1,a2', got '" + text + "'");
    return {v[0], v[1]};
}

TwoCutFrame make_frame(const std::string& name, const std::string& separation) {
    TwoCutFrame f = name == "absolute" ? TwoCutFrame::absolute() : TwoCutFrame::lattice_pair();
    f.separation = separation == "horizontal" ? Separation::horizontal : Separation::vertical;
    return f;
}

json frame_json(const std::string& name, const TwoCutFrame& f) {
    return {{"name", name},
            {"separation", f.separation == Separation::vertical ? "vertical" : "horizontal"},
            {"first_base", f.first_base},
            {"second_base", f.second_base}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct GenOptions {
    double beta_max = 0.0;
    int count = 0;
    int sweeps = kDefaultSweeps;
    std::uint64_t seed = 0;
    std::string out;
    int rows = 6;
    int cols = 6;
};

void add_shape(CLI::App* cmd, GenOptions& o) {
    cmd->add_option("--rows", o.rows, "Lattice rows (even)")->capture_default_str();
    cmd->add_option("--cols", o.cols, "Lattice columns (even)")->capture_default_str();
}

json summary(const SampleSet& set, const std::string& path) {
    return {{"out", path},
            {"count", set.size()},
            {"rows", set.rows()},
            {"cols", set.cols()},
            {"beta_max", set.beta_max},
            {"source", std::string(to_string(set.source))},
            {"seed", set.seed}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kirigami cut-lattice design space toolkit", "kgs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::function<void()> action;

    // gen
    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Admissible dataset from the sweep-replacement sampler");
    gen_cmd->add_option("--beta-max", gen.beta_max, "Bound on added rotations (degrees)")->required();
    gen_cmd->add_option("--count", gen.count, "Number of unit cells")->required();
    gen_cmd->add_option("--sweeps", gen.sweeps, "Raster passes per chain")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Run seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output KGS1 file")->required();
    add_shape(gen_cmd, gen);
    gen_cmd->callback([&] {
        action = [&] {
            const LatticeSpec spec(gen.rows, gen.cols);
            const SampleSet set = generate_dataset(spec, gen.beta_max, gen.count, gen.sweeps, gen.seed);
            write_dataset(set, gen.out);
            json j = summary(set, gen.out);
            j["sweeps"] = gen.sweeps;
            emit(out, j);
        };
    });

    // gen-uniform
    GenOptions uni;
    auto* uni_cmd = app.add_subcommand("gen-uniform", "i.i.d. uniform added rotations (no admissibility guarantee)");
    uni_cmd->add_option("--beta-max", uni.beta_max, "Bound on added rotations (degrees)")->required();
    uni_cmd->add_option("--count", uni.count, "Number of unit cells")->required();
    uni_cmd->add_option("--seed", uni.seed, "Run seed")->required();
    uni_cmd->add_option("--out", uni.out, "Output KGS1 file")->required();
    add_shape(uni_cmd, uni);
    uni_cmd->callback([&] {
        action = [&] {
            const LatticeSpec spec(uni.rows, uni.cols);
            const SampleSet set = uniform_set(spec, uni.beta_max, uni.count, uni.seed);
            write_dataset(set, uni.out);
            emit(out, summary(set, uni.out));
        };
    });

    // gen-marginal
    GenOptions mar;
    std::string mar_ref;
    int mar_bins = kDefaultMarginalBins;
    bool mar_per_cell = false;
    auto* mar_cmd = app.add_subcommand("gen-marginal", "Independent draws from a reference set's angle marginal");
    mar_cmd->add_option("--ref", mar_ref, "Reference KGS1 file")->required();
    mar_cmd->add_option("--count", mar.count, "Number of unit cells")->required();
    mar_cmd->add_option("--seed", mar.seed, "Run seed")->required();
    mar_cmd->add_option("--out", mar.out, "Output KGS1 file")->required();
    mar_cmd->add_option("--bins", mar_bins, "Marginal bins")->capture_default_str();
    mar_cmd->add_flag("--per-cell", mar_per_cell, "Fit one marginal per cell instead of per base orientation");
    mar_cmd->callback([&] {
        action = [&] {
            const SampleSet ref = read_dataset(mar_ref);
            const LatticeSpec spec(ref.rows(), ref.cols());
            const AngleMarginal m = fit_marginal(
                spec, ref, mar_bins, mar_per_cell ? MarginalMode::per_cell : MarginalMode::per_orientation);
            const SampleSet set = marginal_set(spec, m, mar.count, mar.seed);
            write_dataset(set, mar.out);
            emit(out, summary(set, mar.out));
        };
    });

    // eval
    std::string ev_in, ev_ref, ev_report, ev_hist, ev_mhist;
    bool ev_alpha = false, ev_upper = false, ev_no_baselines = false;
    EvalOptions ev_opts;
    auto* ev_cmd = app.add_subcommand("eval", "Score a KGS1 sample set");
    ev_cmd->add_option("--in", ev_in, "KGS1 file to evaluate")->required();
    ev_cmd->add_option("--ref", ev_ref, "Reference KGS1 file (training set)");
    ev_cmd->add_option("--report", ev_report, "Write the full report JSON here");
    ev_cmd->add_option("--hist", ev_hist, "Write the neighbor-pair histogram CSV here");
    ev_cmd->add_option("--marginal-hist", ev_mhist, "Write the marginal histogram CSV here");
    ev_cmd->add_flag("--alpha", ev_alpha, "Input stores absolute angles; convert to added rotations");
    ev_cmd->add_flag("--upper-neighbor", ev_upper, "Pair each vertical-base cut with row i-1 instead of i+1");
    ev_cmd->add_flag("--no-baselines", ev_no_baselines, "Skip the uniform/marginal baseline Monte Carlo");
    ev_cmd->add_option("--pair-bins", ev_opts.pair_bins, "Pair histogram bins per axis")->capture_default_str();
    ev_cmd->add_option("--marginal-bins", ev_opts.marginal_bins, "Marginal histogram bins")->capture_default_str();
    ev_cmd->add_option("--baseline-n", ev_opts.baseline_samples, "Baseline Monte Carlo samples")
        ->capture_default_str();
    ev_cmd->add_option("--seed", ev_opts.seed, "Baseline Monte Carlo seed")->capture_default_str();
    ev_cmd->callback([&] {
        action = [&] {
            // The header gives the shape; the lattice is derived from it.
            SampleSet probe = read_dataset(ev_in);
            const LatticeSpec spec(probe.rows(), probe.cols());
            const auto encoding = ev_alpha ? AngleEncoding::absolute : AngleEncoding::added_rotation;
            const SampleSet set = ev_alpha ? read_dataset(ev_in, encoding, spec) : std::move(probe);
            std::optional<SampleSet> ref;
            if (!ev_ref.empty()) ref = read_dataset(ev_ref, encoding, spec);
            ev_opts.direction = ev_upper ? PairDirection::previous_row : PairDirection::next_row;
            ev_opts.baselines = !ev_no_baselines;
            const EvalReport report = evaluate(spec, set, ref ? &*ref : nullptr, ev_opts);
            const json j = to_json(report);
            if (!ev_report.empty()) write_text_file(ev_report, j.dump(2) + "\n");
            if (!ev_hist.empty()) write_text_file(ev_hist, histogram_csv(report.pairs));
            if (!ev_mhist.empty()) write_text_file(ev_mhist, histogram_csv(report.marginal));
            json s = j;
            s.erase("marginal_histogram");
            emit(out, s);
        };
    });

    // two-cut-map
    double map_beta = 90.0;
    int map_res = kDefaultMapResolution;
    std::string map_out, map_csv_path, map_frame = "lattice", map_sep = "vertical";
    auto* map_cmd = app.add_subcommand("two-cut-map", "Admissibility bitmap of two neighboring cuts");
    map_cmd->add_option("--beta-max", map_beta, "Half-width of the angle square")->capture_default_str();
    map_cmd->add_option("--res", map_res, "Cells per axis")->capture_default_str();
    map_cmd->add_option("--out", map_out, "Write the map as binary PGM");
    map_cmd->add_option("--csv", map_csv_path, "Write the map as a CSV matrix");
    map_cmd->add_option("--frame", map_frame, "Coordinates: lattice (added rotations on 0/90 bases) or absolute")
        ->check(CLI::IsMember({"lattice", "absolute"}))
        ->capture_default_str();
    map_cmd->add_option("--separation", map_sep, "Axis joining the cut centers")
        ->check(CLI::IsMember({"vertical", "horizontal"}))
        ->capture_default_str();
    map_cmd->callback([&] {
        action = [&] {
            const TwoCutFrame frame = make_frame(map_frame, map_sep);
            const TwoCutMap map = build_two_cut_map(map_beta, map_res, frame);
            if (!map_out.empty()) write_text_file(map_out, map_pgm(map));
            if (!map_csv_path.empty()) write_text_file(map_csv_path, map_csv(map));
            emit(out, {{"beta_max", map_beta},
                       {"resolution", map_res},
                       {"frame", frame_json(map_frame, frame)},
                       {"blocked_cells", map.blocked_count()},
                       {"nonadmissible_fraction", nonadmissible_fraction(map)}});
        };
    });

    // path
    std::string path_from, path_to, path_frame = "absolute", path_sep = "vertical", path_csv;
    double path_beta = 90.0, path_step = kDefaultChordStep;
    int path_res = kDefaultMapResolution;
    auto* path_cmd = app.add_subcommand("path", "Straight chord test and admissible detour between two configurations");
    path_cmd->add_option("--from", path_from, "Start angle pair a1,a2")->required();
    path_cmd->add_option("--to", path_to, "End angle pair b1,b2")->required();
    path_cmd->add_option("--beta-max", path_beta, "Half-width of the angle square")->capture_default_str();
    path_cmd->add_option("--res", path_res, "Map cells per axis")->capture_default_str();
    path_cmd->add_option("--step", path_step, "Chord sampling step (degrees)")->capture_default_str();
    path_cmd->add_option("--frame", path_frame, "Coordinates: absolute or lattice")
        ->check(CLI::IsMember({"lattice", "absolute"}))
        ->capture_default_str();
    path_cmd->add_option("--separation", path_sep, "Axis joining the cut centers")
        ->check(CLI::IsMember({"vertical", "horizontal"}))
        ->capture_default_str();
    path_cmd->add_option("--csv", path_csv, "Write the detour polyline as CSV");
    path_cmd->callback([&] {
        action = [&] {
            const AnglePair a = parse_pair(path_from);
            const AnglePair b = parse_pair(path_to);
            const TwoCutFrame frame = make_frame(path_frame, path_sep);
            const bool crosses = straight_path_crosses(a, b, frame, path_step);
            const TwoCutMap map = build_two_cut_map(path_beta, path_res, frame);
            const PathResult p = admissible_path(map, a, b, path_step);
            if (!path_csv.empty()) {
                std::string csv = "first,second\n";
                for (const auto& v : p.polyline) csv += format_double(v.first) + "," + format_double(v.second) + "\n";
                write_text_file(path_csv, csv);
            }
            emit(out, {{"from", {a.first, a.second}},
                       {"to", {b.first, b.second}},
                       {"frame", frame_json(path_frame, frame)},
                       {"euclidean_distance", euclidean_distance(a, b)},
                       {"straight_path_crosses", crosses},
                       {"path", to_json(p)}});
        };
    });

    // chord-prob
    double chord_beta = 90.0, chord_step = kDefaultChordStep;
    std::uint64_t chord_n = 100'000, chord_seed = 0;
    std::string chord_frame = "lattice", chord_sep = "vertical";
    auto* chord_cmd = app.add_subcommand("chord-prob", "Probability that a chord between admissible points leaves the region");
    chord_cmd->add_option("--beta-max", chord_beta, "Half-width of the angle square")->required();
    chord_cmd->add_option("--n", chord_n, "Number of point pairs (>= 10000)")->capture_default_str();
    chord_cmd->add_option("--seed", chord_seed, "Run seed")->required();
    chord_cmd->add_option("--step", chord_step, "Chord sampling step (degrees)")->capture_default_str();
    chord_cmd->add_option("--frame", chord_frame, "Coordinates: lattice or absolute")
        ->check(CLI::IsMember({"lattice", "absolute"}))
        ->capture_default_str();
    chord_cmd->add_option("--separation", chord_sep, "Axis joining the cut centers")
        ->check(CLI::IsMember({"vertical", "horizontal"}))
        ->capture_default_str();
    chord_cmd->callback([&] {
        action = [&] {
            const TwoCutFrame frame = make_frame(chord_frame, chord_sep);
            const ProportionEstimate e = path_crossing_probability(chord_beta, chord_n, frame, chord_seed, chord_step);
            emit(out, {{"beta_max", chord_beta},
                       {"frame", frame_json(chord_frame, frame)},
                       {"step", chord_step},
                       {"seed", chord_seed},
                       {"crossing_probability", to_json(e)}});
        };
    });

    // sweep-curve
    std::vector<double> curve_betas;
    std::uint64_t curve_n = 100'000, curve_seed = 0;
    std::string curve_out;
    int curve_rows = 6, curve_cols = 6;
    auto* curve_cmd = app.add_subcommand("sweep-curve", "Intersections and admissible likelihood of uniform grids vs beta_max");
    curve_cmd->add_option("--betas", curve_betas, "Comma-separated beta_max values")->required()->delimiter(',');
    curve_cmd->add_option("--n", curve_n, "Samples per point (>= 10000)")->capture_default_str();
    curve_cmd->add_option("--seed", curve_seed, "Run seed")->required();
    curve_cmd->add_option("--out", curve_out, "Write CSV here instead of stdout");
    curve_cmd->add_option("--rows", curve_rows, "Lattice rows (even)")->capture_default_str();
    curve_cmd->add_option("--cols", curve_cols, "Lattice columns (even)")->capture_default_str();
    curve_cmd->callback([&] {
        action = [&] {
            const LatticeSpec spec(curve_rows, curve_cols);
            const std::string csv = sweep_curve_csv(sweep_curves(spec, curve_betas, curve_n, curve_seed));
            if (curve_out.empty())
                out << csv;
            else
                write_text_file(curve_out, csv);
        };
    });

    // ed
    std::string ed_a, ed_b;
    auto* ed_cmd = app.add_subcommand("ed", "Euclidean distance between angle vectors or between the samples of two files");
    ed_cmd->add_option("--a", ed_a, "KGS1 file or comma-separated vector")->required();
    ed_cmd->add_option("--b", ed_b, "KGS1 file or comma-separated vector")->required();
    ed_cmd->callback([&] {
        action = [&] {
            auto load = [](const std::string& arg) -> std::vector<std::vector<double>> {
                if (std::filesystem::exists(arg)) {
                    const SampleSet s = read_dataset(arg);
                    std::vector<std::vector<double>> v;
                    for (const auto& g : s.samples) v.emplace_back(g.values().begin(), g.values().end());
                    return v;
                }
                return {parse_numbers(arg)};
            };
            const auto xs = load(ed_a);
            const auto ys = load(ed_b);
            if (xs.size() != ys.size() && xs.size() != 1 && ys.size() != 1)
                throw ValidationError("ed: sample counts differ and neither side is a single sample");
            const std::size_t n = std::max(xs.size(), ys.size());
            std::vector<double> d(n);
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                d[k] = euclidean_distance(xs[xs.size() == 1 ? 0 : k], ys[ys.size() == 1 ? 0 : k]);
                sum += d[k];
            }
            json j = {{"pairs", n}, {"mean_distance", sum / static_cast<double>(n)}};
            if (n == 1)
                j["distance"] = d[0];
            else
                j["distances"] = d;
            emit(out, j);
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (action) action();
        return kExitOk;
    } catch (const IoError& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitFailure;
    } catch (const DatasetError& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "kgs: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace kirigami::cli
