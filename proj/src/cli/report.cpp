#include "cli/report.hpp"

#include "eqmargin/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace eqmargin::cli {

namespace {

std::string printf_double(const char* fmt, double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw InputFormatError("unknown format '" + name + "' (expected text, csv or json)");
}

std::string format_exact(double x) { return printf_double("%.17g", x); }
std::string format_short(double x) { return printf_double("%.6g", x); }

Json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json to_json(const ConfidenceInterval& ci) {
    return Json{{"lower", json_number(ci.lower)},
                {"upper", json_number(ci.upper)},
                {"level", json_number(ci.level)},
                {"estimate", json_number(ci.estimate)}};
}

Json to_json(const TestDecision& d) {
    Json j{{"kind", to_string(d.kind)},
           {"reject_null", d.reject_null},
           {"p_value", json_number(d.p_value)},
           {"alpha", json_number(d.alpha)},
           {"interval", to_json(d.interval)}};
    if (d.margin) {
        j["margin"] = Json{{"theta0", json_number(d.margin->theta0)},
                           {"delta", json_number(d.margin->delta)}};
    }
    if (d.bound) j["bound"] = json_number(*d.bound);
    return j;
}

Json to_json(const LeadMargin& m) {
    return Json{{"delta_of_x", json_number(m.delta_of_x)},
                {"f_of_x", json_number(m.f_of_x)},
                {"epsilon", json_number(m.epsilon)},
                {"source_level", json_number(m.source_level)},
                {"alpha", json_number(0.5 * (1.0 - m.source_level))}};
}

Json to_json(const SimPointResult& r) {
    return Json{{"p", json_number(r.p)},
                {"correlation", json_number(r.observed_correlation)},
                {"rejection_rate", json_number(r.rejection_rate)},
                {"pseudo_type1", json_number(r.pseudo_type1)},
                {"null_true_fraction", json_number(r.null_true_fraction)},
                {"fer_numerator_rate", json_number(r.fer_numerator_rate)},
                {"mc_se", json_number(r.mc_standard_error)}};
}

Json to_json(const MarginCorrelationConfig& cfg) {
    Json grid = Json::array();
    for (double p : cfg.p_grid) grid.push_back(json_number(p));
    return Json{{"n_per_arm", cfg.n_per_arm},
                {"mu", json_number(cfg.mu)},
                {"ci_level", json_number(cfg.ci_level)},
                {"test_alpha", json_number(cfg.test_alpha)},
                {"p_grid", grid},
                {"reps_per_point", cfg.reps_per_point},
                {"epsilon", json_number(cfg.epsilon)},
                {"half_normal_scale", json_number(cfg.half_normal_scale)},
                {"lead_epsilon", json_number(cfg.lead_epsilon)},
                {"seed", cfg.seed}};
}

Json to_json(const FerConfig& cfg) {
    return Json{{"theta", json_number(cfg.theta)},
                {"n_per_arm", cfg.n_per_arm},
                {"alpha", json_number(cfg.alpha)},
                {"lead_epsilon", json_number(cfg.lead_epsilon)},
                {"reps", cfg.reps},
                {"seed", cfg.seed},
                {"target_se", json_number(cfg.target_se)}};
}

Json to_json(const FerEstimate& e) {
    Json j{{"estimate", json_number(e.estimate)},
           {"mc_se", json_number(e.mc_standard_error)},
           {"rejection_rate", json_number(e.rejection_rate)},
           {"reps", e.reps},
           {"false_claims", e.false_claim_count}};
    if (!e.warning.empty()) j["warning"] = e.warning;
    return j;
}

Json to_json(const ReplicationConfig& cfg) {
    return Json{{"mode", to_string(cfg.mode)},
                {"epsilon", json_number(cfg.epsilon)},
                {"n_per_arm", cfg.n_per_arm},
                {"true_effect", json_number(cfg.true_effect)},
                {"reps", cfg.reps},
                {"alpha_base", json_number(cfg.alpha_base)},
                {"seed", cfg.seed}};
}

Json to_json(const ReplicationResult& r) {
    return Json{{"probability", json_number(r.probability)},
                {"mc_se", json_number(r.mc_standard_error)},
                {"reps", r.reps},
                {"successes", r.success_count}};
}

std::string decision_csv(const TestDecision& d) {
    std::ostringstream os;
    os << "kind,reject_null,p_value,alpha,lower,upper,level,estimate,theta0,delta,bound\n";
    os << to_string(d.kind) << ',' << bool_text(d.reject_null) << ',' << format_exact(d.p_value)
       << ',' << format_exact(d.alpha) << ',' << format_exact(d.interval.lower) << ','
       << format_exact(d.interval.upper) << ',' << format_exact(d.interval.level) << ','
       << format_exact(d.interval.estimate) << ',';
    if (d.margin) os << format_exact(d.margin->theta0) << ',' << format_exact(d.margin->delta);
    else os << ',';
    os << ',';
    if (d.bound) os << format_exact(*d.bound);
    os << '\n';
    return os.str();
}

std::string decision_text(const TestDecision& d) {
    std::ostringstream os;
    const bool equivalence = d.kind == TestKind::equivalence;
    os << "test:      " << to_string(d.kind) << '\n';
    if (equivalence) {
        os << "decision:  " << (d.reject_null ? "equivalence claimed" : "equivalence not claimed")
           << '\n';
    } else {
        os << "decision:  "
           << (d.reject_null ? "non-inferiority demonstrated" : "non-inferiority not demonstrated")
           << '\n';
    }
    os << "p-value:   " << format_short(d.p_value) << '\n';
    os << "alpha:     " << format_short(d.alpha) << '\n';
    os << "estimate:  " << format_short(d.interval.estimate) << '\n';
    os << "interval:  [" << format_short(d.interval.lower) << ", " << format_short(d.interval.upper)
       << "] at level " << format_short(d.interval.level) << '\n';
    if (d.margin) {
        os << "margin:    [" << format_short(d.margin->low()) << ", "
           << format_short(d.margin->high()) << "] (theta0 " << format_short(d.margin->theta0)
           << ", delta " << format_short(d.margin->delta) << ")\n";
    }
    if (d.bound) os << "bound:     " << format_short(*d.bound) << '\n';
    return os.str();
}

std::string lead_csv(const LeadMargin& m, bool has_claim, bool claims) {
    std::ostringstream os;
    os << "delta_of_x,f_of_x,epsilon,source_level,alpha,claims_equivalence\n";
    os << format_exact(m.delta_of_x) << ',' << format_exact(m.f_of_x) << ','
       << format_exact(m.epsilon) << ',' << format_exact(m.source_level) << ','
       << format_exact(0.5 * (1.0 - m.source_level)) << ',';
    if (has_claim) os << bool_text(claims);
    os << '\n';
    return os.str();
}

std::string curve_csv(std::span<const CurvePoint> curve) {
    std::ostringstream os;
    os << "delta,alpha_min\n";
    for (const auto& pt : curve) os << format_exact(pt.delta) << ',' << format_exact(pt.alpha_min) << '\n';
    return os.str();
}

std::string simulation_csv(std::span<const SimPointResult> results) {
    std::ostringstream os;
    os << kSimulationCsvHeader << '\n';
    for (const auto& r : results) {
        os << format_exact(r.p) << ',' << format_exact(r.observed_correlation) << ','
           << format_exact(r.rejection_rate) << ',' << format_exact(r.pseudo_type1) << ','
           << format_exact(r.null_true_fraction) << ',' << format_exact(r.fer_numerator_rate)
           << ',' << format_exact(r.mc_standard_error) << '\n';
    }
    return os.str();
}

std::string fer_csv(const FerConfig& cfg, const FerEstimate& e) {
    std::ostringstream os;
    os << "theta,alpha,lead_epsilon,reps,estimate,mc_se,rejection_rate,false_claims\n";
    os << format_exact(cfg.theta) << ',' << format_exact(cfg.alpha) << ','
       << format_exact(cfg.lead_epsilon) << ',' << e.reps << ',' << format_exact(e.estimate)
       << ',' << format_exact(e.mc_standard_error) << ',' << format_exact(e.rejection_rate) << ','
       << e.false_claim_count << '\n';
    return os.str();
}

std::string replication_csv(const ReplicationConfig& cfg, const ReplicationResult& r) {
    std::ostringstream os;
    os << "mode,epsilon,reps,probability,mc_se,successes\n";
    os << to_string(cfg.mode) << ',' << format_exact(cfg.epsilon) << ',' << r.reps << ','
       << format_exact(r.probability) << ',' << format_exact(r.mc_standard_error) << ','
       << r.success_count << '\n';
    return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace eqmargin::cli
