#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "capflow/cutflow.hpp"
#include "capflow/experiments.hpp"
#include "capflow/fpp.hpp"

namespace capflow {

inline constexpr const char* kVersion = "0.4.1";

/// Version and resolved-config hash carried by every output.
struct Stamp {
    std::string version = kVersion;
    std::string config_hash;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;
/// Stamp for a resolved configuration rendered as canonical text.
Stamp stamp_for(std::string_view resolved_config);

/// Fixed-precision rendering used in every CSV column holding a float.
std::string format_double(double x);

nlohmann::json maxflow_json(const MaxFlowResult& result, std::size_t source_size, const Stamp& stamp);

std::string mu_csv(const MuTable& table, const Stamp& stamp);

/// Without `timing` the seconds column is written as 0 so reruns are byte-identical.
std::string convergence_csv(const ConvergenceRun& run, const Stamp& stamp, bool timing);
nlohmann::json convergence_summary_json(const ConvergenceRun& run, const Rational& eps, const Stamp& stamp);

std::string tail_csv(const TailRun& run, const Stamp& stamp);
nlohmann::json tail_json(const TailRun& run, const Rational& eps, const Stamp& stamp);

std::string disjoint_csv(const DisjointRun& run, const Stamp& stamp, bool timing);
nlohmann::json disjoint_json(const DisjointRun& run, const Stamp& stamp);

enum class Schema { Mu, Convergence, Tail, Disjoint, MaxFlow, Summary, TailSummary, DisjointSummary, IFun, Oracle };

Schema schema_from_name(std::string_view name);

struct SchemaCheck {
    bool ok = true;
    std::string message;
};

/// Parses `text` as the given document kind and checks headers, column
/// counts, field types and the version stamp.
SchemaCheck check_document(std::string_view text, Schema schema);

}  // namespace capflow
