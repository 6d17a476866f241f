#pragma once

// Output schemas shared by the CLI subcommands. Machine formats use 17
// significant digits; human-readable text uses 6.

#include "eqmargin/inference.hpp"
#include "eqmargin/margins.hpp"
#include "eqmargin/simlab.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace eqmargin::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, csv, json };

Format parse_format(const std::string& name);

std::string format_exact(double x);  // %.17g, "nan" for NaN
std::string format_short(double x);  // %.6g

/// NaN and infinities become null.
Json json_number(double x);

Json to_json(const ConfidenceInterval& ci);
Json to_json(const TestDecision& d);
Json to_json(const LeadMargin& m);
Json to_json(const SimPointResult& r);
Json to_json(const MarginCorrelationConfig& cfg);
Json to_json(const FerConfig& cfg);
Json to_json(const FerEstimate& e);
Json to_json(const ReplicationConfig& cfg);
Json to_json(const ReplicationResult& r);

std::string decision_csv(const TestDecision& d);
std::string decision_text(const TestDecision& d);

std::string lead_csv(const LeadMargin& m, bool has_claim, bool claims);

std::string curve_csv(std::span<const CurvePoint> curve);

inline constexpr const char* kSimulationCsvHeader =
    "p,correlation,rejection_rate,pseudo_type1,null_true_fraction,fer_numerator_rate,mc_se";
std::string simulation_csv(std::span<const SimPointResult> results);

std::string fer_csv(const FerConfig& cfg, const FerEstimate& e);
std::string replication_csv(const ReplicationConfig& cfg, const ReplicationResult& r);

/// Serializes JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace eqmargin::cli
