#include "cli/commands.hpp"

#include "cli/report.hpp"
#include "eqmargin/errors.hpp"
#include "eqmargin/inference.hpp"
#include "eqmargin/margins.hpp"
#include "eqmargin/simlab.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

namespace eqmargin::cli {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view text, const std::string& what) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InputFormatError(what + ": '" + std::string(text) + "' is not a number");
    }
    return x;
}

long parse_count(std::string_view text, const std::string& what) {
    const double x = parse_double(text, what);
    if (x != static_cast<double>(static_cast<long>(x))) {
        throw InputFormatError(what + ": '" + std::string(text) + "' is not an integer");
    }
    return static_cast<long>(x);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    for (const auto& part : split(text, ',')) values.push_back(parse_double(part, what));
    return values;
}

TwoSampleSummary parse_summary(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 5) {
        throw InputFormatError("--summary expects n1,mean1,n2,mean2,pooled-sd");
    }
    return TwoSampleSummary::from_moments(parse_count(parts[0], "--summary n1"),
                                          parse_double(parts[1], "--summary mean1"),
                                          parse_count(parts[2], "--summary n2"),
                                          parse_double(parts[3], "--summary mean2"),
                                          parse_double(parts[4], "--summary pooled-sd"));
}

ConfidenceInterval parse_interval(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw InputFormatError("--ci expects lower,upper,level");
    return make_interval(parse_double(parts[0], "--ci lower"), parse_double(parts[1], "--ci upper"),
                         parse_double(parts[2], "--ci level"));
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InputFormatError("--grid expects lo:hi:steps");
    return linear_grid(parse_double(parts[0], "--grid lo"), parse_double(parts[1], "--grid hi"),
                       static_cast<int>(parse_count(parts[2], "--grid steps")));
}

// Writes through a temporary file and renames it into place, so a failed run
// never leaves a partial artifact behind.
void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        file << content;
        file.flush();
        if (!file) {
            fs::remove(tmp);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

// Options shared by the data-driven subcommands.
struct InputOptions {
    std::string csv_path;
    std::string summary;
    std::string interval;

    int given() const {
        return static_cast<int>(!csv_path.empty()) + static_cast<int>(!summary.empty()) +
               static_cast<int>(!interval.empty());
    }

    TwoSampleSummary load_summary() const {
        if (!summary.empty()) return parse_summary(summary);
        const auto samples = read_group_csv(csv_path);
        return eqmargin::summarize(samples.group_a, samples.group_b);
    }
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool allow_interval) {
    cmd->add_option("--csv", in.csv_path, "CSV file with header group,value");
    cmd->add_option("--summary", in.summary, "n1,mean1,n2,mean2,pooled-sd");
    if (allow_interval) cmd->add_option("--ci", in.interval, "lower,upper,level of a reported interval");
}

struct OutputOptions {
    std::string format;
    std::string output;
};

void add_output_options(CLI::App* cmd, OutputOptions& o, const std::string& default_format) {
    o.format = default_format;
    cmd->add_option("--format", o.format, "Output format: text, csv or json")
        ->capture_default_str();
    cmd->add_option("-o,--output", o.output, "Write results to this file");
}

// Emits a report. Simulation commands pass their summary line separately:
// it goes to `out` when results go to a file and to `err` otherwise.
void emit(const OutputOptions& o, const std::string& payload, std::ostream& out, std::ostream& err,
          const std::string& summary_line = {}) {
    if (!o.output.empty()) {
        write_atomically(o.output, payload);
        if (!summary_line.empty()) out << summary_line << '\n';
    } else {
        out << payload;
        if (!summary_line.empty()) err << summary_line << '\n';
    }
}

// ---------------------------------------------------------------- test

struct TestOptions {
    InputOptions in;
    OutputOptions out;
    std::optional<double> delta;
    double theta0 = 0.0;
    std::optional<double> ni_bound;
    std::string direction;
    double alpha = 0.05;
    bool z_interval = false;
};

void run_test(const TestOptions& o, std::ostream& out, std::ostream& err) {
    if (o.in.given() != 1) {
        throw CLI::ValidationError("input", "exactly one of --csv, --summary or --ci is required");
    }
    if (o.delta.has_value() == o.ni_bound.has_value()) {
        throw CLI::ValidationError("margin", "give either --delta or --ni-bound with --direction");
    }
    if (o.ni_bound && o.direction.empty()) {
        throw CLI::ValidationError("margin", "--ni-bound requires --direction lower|upper");
    }
    if (!o.in.interval.empty() && !o.ni_bound) {
        throw CLI::ValidationError("input", "--ci input supports only --ni-bound tests");
    }
    const auto format = parse_format(o.out.format);
    const auto method = o.z_interval ? CiMethod::normal : CiMethod::student_t;

    TestDecision decision;
    Json config{{"alpha", json_number(o.alpha)},
                {"interval_method", o.z_interval ? "normal" : "student_t"}};
    if (o.delta) {
        const auto margin = EquivalenceMargin::centered(*o.delta, o.theta0);
        const auto summary = o.in.load_summary();
        decision = equivalence_test(summary, margin, o.alpha, method);
        config["delta"] = json_number(margin.delta);
        config["theta0"] = json_number(margin.theta0);
    } else {
        const auto direction = o.direction == "lower" ? Direction::lower : Direction::upper;
        if (!o.in.interval.empty()) {
            decision = noninferiority_test(parse_interval(o.in.interval), *o.ni_bound, o.alpha,
                                           direction);
        } else {
            decision = noninferiority_test(o.in.load_summary(), *o.ni_bound, o.alpha, direction,
                                           method);
        }
        config["ni_bound"] = json_number(*o.ni_bound);
        config["direction"] = to_string(direction);
    }

    std::string payload;
    switch (format) {
        case Format::text: payload = decision_text(decision); break;
        case Format::csv: payload = decision_csv(decision); break;
        case Format::json:
            payload = dump(Json{{"command", "test"}, {"config", config}, {"decision", to_json(decision)}});
            break;
    }
    emit(o.out, payload, out, err);
}

// ---------------------------------------------------------------- lead

struct LeadOptions {
    InputOptions in;
    OutputOptions out;
    double alpha = 0.05;
    double epsilon = kDefaultLeadEpsilon;
    double theta0 = 0.0;
};

void run_lead(const LeadOptions& o, std::ostream& out, std::ostream& err) {
    if (o.in.given() != 1) {
        throw CLI::ValidationError("input", "exactly one of --csv, --summary or --ci is required");
    }
    const auto format = parse_format(o.out.format);
    ConfidenceInterval ci;
    bool has_claim = false;
    bool claims = false;
    if (!o.in.interval.empty()) {
        ci = parse_interval(o.in.interval);
    } else {
        if (!(o.alpha > 0.0 && o.alpha < 0.5)) throw DomainError("lead: alpha must lie in (0, 0.5)");
        const auto summary = o.in.load_summary();
        ci = confidence_interval(summary, 1.0 - 2.0 * o.alpha);
        const auto m = lead_margin(ci, o.epsilon, o.theta0);
        if (m.delta_of_x > 0.0) {
            has_claim = true;
            claims = equivalence_test(summary, EquivalenceMargin::centered(m.delta_of_x, o.theta0),
                                      o.alpha)
                         .reject_null;
        }
    }
    const auto m = lead_margin(ci, o.epsilon, o.theta0);

    std::string payload;
    switch (format) {
        case Format::text: {
            std::ostringstream os;
            os << "Delta(X): " << format_short(m.delta_of_x) << '\n'
               << "f(X):     " << format_short(m.f_of_x) << '\n'
               << "epsilon:  " << format_short(m.epsilon) << '\n'
               << "alpha:    " << format_short(0.5 * (1.0 - m.source_level)) << " (interval level "
               << format_short(m.source_level) << ")\n";
            if (has_claim) os << "claims equivalence at Delta(X): " << (claims ? "yes" : "no") << '\n';
            payload = os.str();
            break;
        }
        case Format::csv: payload = lead_csv(m, has_claim, claims); break;
        case Format::json: {
            Json j{{"command", "lead"},
                   {"config", {{"alpha", json_number(0.5 * (1.0 - m.source_level))},
                               {"epsilon", json_number(o.epsilon)},
                               {"theta0", json_number(o.theta0)}}},
                   {"interval", to_json(ci)},
                   {"lead", to_json(m)}};
            if (has_claim) j["claims_equivalence"] = claims;
            payload = dump(j);
            break;
        }
    }
    emit(o.out, payload, out, err);
}

// ---------------------------------------------------------------- curve

struct CurveOptions {
    InputOptions in;
    OutputOptions out;
    std::string grid;
    double theta0 = 0.0;
};

void run_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
    if (o.in.given() != 1) {
        throw CLI::ValidationError("input", "exactly one of --csv or --summary is required");
    }
    const auto format = parse_format(o.out.format);
    const auto summary = o.in.load_summary();
    const auto grid = parse_grid(o.grid);
    const auto curve = alpha_delta_curve(summary, grid, o.theta0);

    std::string payload;
    if (format == Format::json) {
        Json rows = Json::array();
        for (const auto& pt : curve) {
            rows.push_back({{"delta", json_number(pt.delta)}, {"alpha_min", json_number(pt.alpha_min)}});
        }
        payload = dump(Json{{"command", "curve"},
                            {"config", {{"grid", o.grid},
                                        {"theta0", json_number(o.theta0)},
                                        {"n1", summary.n1()},
                                        {"mean1", json_number(summary.mean1())},
                                        {"n2", summary.n2()},
                                        {"mean2", json_number(summary.mean2())},
                                        {"pooled_sd", json_number(summary.pooled_sd())}}},
                            {"curve", rows}});
    } else {
        payload = curve_csv(curve);
    }
    emit(o.out, payload, out, err);
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    OutputOptions out;
    std::string p_grid;
    int grid_points = 41;
    MarginCorrelationConfig cfg;
    int workers = 0;
};

void run_simulate(SimulateOptions o, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(o.out.format);
    o.cfg.ci_level = 1.0 - 2.0 * o.cfg.test_alpha;
    if (!o.p_grid.empty()) {
        o.cfg.p_grid = parse_list(o.p_grid, "--p-grid");
    } else {
        o.cfg.p_grid = linear_grid(0.0, 1.0, o.grid_points);
    }
    const auto results = run_margin_correlation_experiment(o.cfg, ExecutionPolicy{o.workers});

    std::string payload;
    if (format == Format::json) {
        Json rows = Json::array();
        for (const auto& r : results) rows.push_back(to_json(r));
        payload = dump(Json{{"command", "simulate"}, {"config", to_json(o.cfg)}, {"results", rows}});
    } else {
        payload = simulation_csv(results);
    }

    double max_corr = -1.0;
    for (const auto& r : results) {
        if (r.observed_correlation > max_corr) max_corr = r.observed_correlation;
    }
    const auto& first = results.front();
    const auto& last = results.back();
    std::ostringstream line;
    line << "simulate: " << results.size() << " points x " << o.cfg.reps_per_point << " reps; p="
         << format_short(first.p) << " rejection_rate=" << format_short(first.rejection_rate)
         << " pseudo_type1=" << format_short(first.pseudo_type1) << "; p=" << format_short(last.p)
         << " rejection_rate=" << format_short(last.rejection_rate)
         << " pseudo_type1=" << format_short(last.pseudo_type1)
         << "; max correlation=" << format_short(max_corr);
    emit(o.out, payload, out, err, line.str());
}

// ---------------------------------------------------------------- fer

struct FerOptions {
    OutputOptions out;
    FerConfig cfg;
    int workers = 0;
};

void run_fer(const FerOptions& o, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(o.out.format);
    const auto e = estimate_fer(o.cfg, ExecutionPolicy{o.workers});
    if (!e.warning.empty()) err << "warning: " << e.warning << '\n';
    const std::string payload =
        format == Format::json
            ? dump(Json{{"command", "fer"}, {"config", to_json(o.cfg)}, {"result", to_json(e)}})
            : fer_csv(o.cfg, e);
    std::ostringstream line;
    line << "fer: estimate=" << format_short(e.estimate) << " mc_se=" << format_short(e.mc_standard_error)
         << " bound alpha=" << format_short(o.cfg.alpha) << " rejection_rate="
         << format_short(e.rejection_rate);
    emit(o.out, payload, out, err, line.str());
}

// ---------------------------------------------------------------- replicate

struct ReplicateOptions {
    OutputOptions out;
    std::string mode = "nhst";
    ReplicationConfig cfg;
    int workers = 0;
};

void run_replicate(ReplicateOptions o, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(o.out.format);
    if (o.mode == "nhst") {
        o.cfg.mode = ReplicationMode::nhst_alpha_chase;
    } else if (o.mode == "equivalence") {
        o.cfg.mode = ReplicationMode::equivalence_lead_margin;
    } else {
        throw CLI::ValidationError("--mode", "expected nhst or equivalence");
    }
    const auto r = run_replication_experiment(o.cfg, ExecutionPolicy{o.workers});
    const std::string payload =
        format == Format::json
            ? dump(Json{{"command", "replicate"}, {"config", to_json(o.cfg)}, {"result", to_json(r)}})
            : replication_csv(o.cfg, r);
    std::ostringstream line;
    line << "replicate: mode=" << to_string(o.cfg.mode) << " probability="
         << format_short(r.probability) << " mc_se=" << format_short(r.mc_standard_error);
    emit(o.out, payload, out, err, line.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivalence and non-inferiority testing with data-dependent margins"};
    app.name(args.empty() ? "eqmargin" : args.front());
    app.require_subcommand(1);

    TestOptions test_opts;
    auto* test = app.add_subcommand("test", "Equivalence or non-inferiority decision");
    add_input_options(test, test_opts.in, true);
    add_output_options(test, test_opts.out, "text");
    test->add_option("--delta", test_opts.delta, "Equivalence margin half-width");
    test->add_option("--theta0", test_opts.theta0, "No-effect value")->capture_default_str();
    test->add_option("--ni-bound", test_opts.ni_bound, "Non-inferiority margin bound");
    test->add_option("--direction", test_opts.direction, "lower or upper")
        ->check(CLI::IsMember({"lower", "upper"}));
    test->add_option("--alpha", test_opts.alpha, "Test level")->capture_default_str();
    test->add_flag("--z", test_opts.z_interval, "Use the large-sample normal interval");

    LeadOptions lead_opts;
    auto* lead = app.add_subcommand("lead", "Smallest margin at which equivalence is claimed");
    add_input_options(lead, lead_opts.in, true);
    add_output_options(lead, lead_opts.out, "text");
    lead->add_option("--alpha", lead_opts.alpha, "Test level of the interval")->capture_default_str();
    lead->add_option("--epsilon", lead_opts.epsilon, "Slack added to the boundary")->capture_default_str();
    lead->add_option("--theta0", lead_opts.theta0, "No-effect value")->capture_default_str();

    CurveOptions curve_opts;
    auto* curve = app.add_subcommand("curve", "alpha versus Delta correspondence");
    add_input_options(curve, curve_opts.in, false);
    add_output_options(curve, curve_opts.out, "csv");
    curve->add_option("--grid", curve_opts.grid, "lo:hi:steps")->required();
    curve->add_option("--theta0", curve_opts.theta0, "No-effect value")->capture_default_str();

    SimulateOptions sim_opts;
    auto* sim = app.add_subcommand("simulate", "Margin-data correlation experiment");
    add_output_options(sim, sim_opts.out, "csv");
    sim->add_option("--p-grid", sim_opts.p_grid, "Comma-separated mixture probabilities");
    sim->add_option("--grid-points", sim_opts.grid_points, "Equally spaced p values on [0,1]")
        ->capture_default_str();
    sim->add_option("--reps", sim_opts.cfg.reps_per_point, "Replications per grid point")
        ->capture_default_str();
    sim->add_option("--seed", sim_opts.cfg.seed, "Random seed")->required();
    sim->add_option("--n", sim_opts.cfg.n_per_arm, "Observations per arm")->capture_default_str();
    sim->add_option("--mu", sim_opts.cfg.mu, "True effect")->capture_default_str();
    sim->add_option("--alpha", sim_opts.cfg.test_alpha, "Test level")->capture_default_str();
    sim->add_option("--epsilon", sim_opts.cfg.epsilon, "Offset of the independent margin below mu")
        ->capture_default_str();
    sim->add_option("--half-normal-scale", sim_opts.cfg.half_normal_scale,
                    "SD of the independent margin draw (0 pins it at mu - epsilon)")
        ->capture_default_str();
    sim->add_option("--lead-epsilon", sim_opts.cfg.lead_epsilon, "Slack on the data-dependent margin")
        ->capture_default_str();
    sim->add_option("--workers", sim_opts.workers, "Worker threads (0 = OpenMP default)")
        ->capture_default_str();

    FerOptions fer_opts;
    auto* fer = app.add_subcommand("fer", "False equivalence rate in the pathological case");
    add_output_options(fer, fer_opts.out, "csv");
    fer->add_option("--theta", fer_opts.cfg.theta, "True effect")->capture_default_str();
    fer->add_option("--alpha", fer_opts.cfg.alpha, "Test level")->capture_default_str();
    fer->add_option("--reps", fer_opts.cfg.reps, "Replications")->capture_default_str();
    fer->add_option("--seed", fer_opts.cfg.seed, "Random seed")->required();
    fer->add_option("--n", fer_opts.cfg.n_per_arm, "Observations per arm")->capture_default_str();
    fer->add_option("--lead-epsilon", fer_opts.cfg.lead_epsilon, "Slack on the LEAD margin")
        ->capture_default_str();
    fer->add_option("--target-se", fer_opts.cfg.target_se, "Warn when reps cannot reach this SE");
    fer->add_option("--workers", fer_opts.workers, "Worker threads (0 = OpenMP default)")
        ->capture_default_str();

    ReplicateOptions rep_opts;
    auto* rep = app.add_subcommand("replicate", "Confirmation probability of a data-chased claim");
    add_output_options(rep, rep_opts.out, "csv");
    rep->add_option("--mode", rep_opts.mode, "nhst or equivalence")->capture_default_str();
    rep->add_option("--epsilon", rep_opts.cfg.epsilon, "Slack added to the chased alpha or margin")
        ->capture_default_str();
    rep->add_option("--reps", rep_opts.cfg.reps, "Replications")->capture_default_str();
    rep->add_option("--seed", rep_opts.cfg.seed, "Random seed")->required();
    rep->add_option("--n", rep_opts.cfg.n_per_arm, "Observations per arm")->capture_default_str();
    rep->add_option("--effect", rep_opts.cfg.true_effect, "True effect")->capture_default_str();
    rep->add_option("--alpha", rep_opts.cfg.alpha_base, "Base test level")->capture_default_str();
    rep->add_option("--workers", rep_opts.workers, "Worker threads (0 = OpenMP default)")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);

        if (test->parsed()) run_test(test_opts, out, err);
        else if (lead->parsed()) run_lead(lead_opts, out, err);
        else if (curve->parsed()) run_curve(curve_opts, out, err);
        else if (sim->parsed()) run_simulate(sim_opts, out, err);
        else if (fer->parsed()) run_fer(fer_opts, out, err);
        else if (rep->parsed()) run_replicate(rep_opts, out, err);
        return kExitOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitMalformed;
    } catch (const InputFormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace eqmargin::cli
