#include "capflow/io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "capflow/error.hpp"

namespace capflow {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Stamp stamp_for(std::string_view resolved_config) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(resolved_config)));
    return Stamp{kVersion, buf};
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

namespace {

std::string stamp_line(const Stamp& stamp) { return "# capflow " + stamp.version + " config " + stamp.config_hash + "\n"; }

void stamp_json(json& j, const Stamp& stamp) {
    j["version"] = stamp.version;
    j["config_hash"] = stamp.config_hash;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
    return out;
}

}  // namespace

json maxflow_json(const MaxFlowResult& result, std::size_t source_size, const Stamp& stamp) {
    json j;
    stamp_json(j, stamp);
    j["value_micro"] = result.value;
    j["box_used"] = result.box_used;
    j["stabilized"] = result.stabilized;
    j["budget_exceeded"] = result.budget_exceeded;
    json cut = json::array();
    for (const Bond& b : result.mincut.bonds) cut.push_back({b.a.x, b.a.y, b.b.x, b.b.y});
    j["mincut"] = std::move(cut);
    j["source_size"] = source_size;
    return j;
}

std::string mu_csv(const MuTable& table, const Stamp& stamp) { return stamp_line(stamp) + mu_table_csv(table); }

std::string convergence_csv(const ConvergenceRun& run, const Stamp& stamp, bool timing) {
    std::string out = stamp_line(stamp);
    out += "n,replicate,mincut_micro,i_hat_micro,ratio,stabilized,seconds\n";
    for (const ConvergenceRecord& r : run.records) {
        out += join({std::to_string(r.n), std::to_string(r.replicate), std::to_string(r.mincut_micro),
                     std::to_string(r.target.round()), format_double(r.ratio), r.stabilized ? "1" : "0",
                     format_double(timing ? r.seconds : 0.0)});
    }
    return out;
}

json convergence_summary_json(const ConvergenceRun& run, const Rational& eps, const Stamp& stamp) {
    json j;
    stamp_json(j, stamp);
    j["i_hat_micro"] = run.i_hat.to_double();
    j["epsilon"] = eps.str();
    json rows = json::array();
    for (const SummaryRow& row : summarize(run.records, eps)) {
        rows.push_back({{"n", row.n},
                        {"count", row.count},
                        {"mean", row.mean},
                        {"std", row.sd},
                        {"min", row.min},
                        {"max", row.max},
                        {"deviation_frequency", row.deviation_frequency}});
    }
    j["per_n"] = std::move(rows);
    json warnings = json::array();
    for (const auto& w : run.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j;
}

std::string tail_csv(const TailRun& run, const Stamp& stamp) {
    std::string out = stamp_line(stamp);
    out += "n,reps,upper_hits,lower_hits,frequency,wilson_lo,wilson_hi\n";
    for (const TailPoint& p : run.points) {
        out += join({std::to_string(p.n), std::to_string(p.reps), std::to_string(p.upper_hits),
                     std::to_string(p.lower_hits), format_double(p.frequency), format_double(p.wilson.lo),
                     format_double(p.wilson.hi)});
    }
    return out;
}

json tail_json(const TailRun& run, const Rational& eps, const Stamp& stamp) {
    json j;
    stamp_json(j, stamp);
    j["epsilon"] = eps.str();
    json pts = json::array();
    for (const TailPoint& p : run.points) {
        pts.push_back({{"n", p.n},
                       {"reps", p.reps},
                       {"upper_hits", p.upper_hits},
                       {"lower_hits", p.lower_hits},
                       {"frequency", p.frequency},
                       {"wilson_lo", p.wilson.lo},
                       {"wilson_hi", p.wilson.hi}});
    }
    j["points"] = std::move(pts);
    j["nonincreasing"] = run.nonincreasing;
    j["mann_kendall"] = {{"s", run.trend.s},
                         {"variance", run.trend.variance},
                         {"z", run.trend.z},
                         {"p_decreasing", run.trend.p_decreasing}};
    return j;
}

std::string disjoint_csv(const DisjointRun& run, const Stamp& stamp, bool timing) {
    std::string out = stamp_line(stamp);
    out += "n,replicate,count,cut_value,i_hat,ratio,stabilized,seconds\n";
    for (const DisjointRecord& r : run.records) {
        out += join({std::to_string(r.n), std::to_string(r.replicate), std::to_string(r.count),
                     std::to_string(r.cut_value), format_double(r.target.to_double()), format_double(r.ratio),
                     r.stabilized ? "1" : "0", format_double(timing ? r.seconds : 0.0)});
    }
    return out;
}

json disjoint_json(const DisjointRun& run, const Stamp& stamp) {
    json j;
    stamp_json(j, stamp);
    j["i_hat"] = run.i_hat.to_double();
    json rows = json::array();
    std::size_t i = 0;
    while (i < run.records.size()) {
        std::size_t k = i;
        std::vector<double> counts;
        while (k < run.records.size() && run.records[k].n == run.records[i].n) {
            counts.push_back(static_cast<double>(run.records[k].count));
            ++k;
        }
        rows.push_back({{"n", run.records[i].n},
                        {"count", counts.size()},
                        {"mean", mean(counts)},
                        {"std", sample_sd(counts)},
                        {"min", *std::min_element(counts.begin(), counts.end())},
                        {"max", *std::max_element(counts.begin(), counts.end())}});
        i = k;
    }
    j["per_n"] = std::move(rows);
    json warnings = json::array();
    for (const auto& w : run.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j;
}

Schema schema_from_name(std::string_view name) {
    static const std::pair<std::string_view, Schema> names[] = {
        {"mu", Schema::Mu},
        {"converge", Schema::Convergence},
        {"tail", Schema::Tail},
        {"disjoint", Schema::Disjoint},
        {"maxflow", Schema::MaxFlow},
        {"summary", Schema::Summary},
        {"tail-summary", Schema::TailSummary},
        {"disjoint-summary", Schema::DisjointSummary},
        {"ifun", Schema::IFun},
        {"oracle", Schema::Oracle},
    };
    for (const auto& [n, s] : names) {
        if (n == name) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown schema '" + std::string(name) + "'");
}

namespace {

// Column kinds: 'i' integer, 'f' number, 'b' 0 or 1.
struct CsvSchema {
    const char* header;
    const char* kinds;
};

CsvSchema csv_schema(Schema s) {
    switch (s) {
        case Schema::Mu: return {"direction_x,direction_y,n,reps,mean_micro,stderr_micro", "iiiiff"};
        case Schema::Convergence: return {"n,replicate,mincut_micro,i_hat_micro,ratio,stabilized,seconds", "iiiifbf"};
        case Schema::Tail: return {"n,reps,upper_hits,lower_hits,frequency,wilson_lo,wilson_hi", "iiiifff"};
        case Schema::Disjoint: return {"n,replicate,count,cut_value,i_hat,ratio,stabilized,seconds", "iiiiffbf"};
        default: return {nullptr, nullptr};
    }
}

bool is_integer_field(const std::string& f) {
    if (f.empty()) return false;
    std::size_t i = (f[0] == '-') ? 1 : 0;
    if (i == f.size()) return false;
    for (; i < f.size(); ++i) {
        if (f[i] < '0' || f[i] > '9') return false;
    }
    return true;
}

bool is_number_field(const std::string& f) {
    if (f == "inf" || f == "nan" || f == "-inf") return true;
    try {
        std::size_t pos = 0;
        std::stod(f, &pos);
        return pos == f.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool valid_stamp_line(const std::string& line) {
    std::istringstream in(line);
    std::string hash_mark, name, version, word, hash;
    in >> hash_mark >> name >> version >> word >> hash;
    return hash_mark == "#" && name == "capflow" && !version.empty() && word == "config" && hash.size() == 16;
}

SchemaCheck fail(std::string msg) { return SchemaCheck{false, std::move(msg)}; }

SchemaCheck check_csv(std::string_view text, const CsvSchema& schema) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || !valid_stamp_line(line)) return fail("missing version stamp line");
    if (!std::getline(in, line) || line != schema.header) return fail("unexpected header: " + line);
    const std::string kinds = schema.kinds;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto fields = split(line);
        if (fields.size() != kinds.size()) return fail("row " + std::to_string(row) + ": wrong column count");
        for (std::size_t c = 0; c < kinds.size(); ++c) {
            const std::string& f = fields[c];
            const bool ok = kinds[c] == 'i'   ? is_integer_field(f)
                            : kinds[c] == 'b' ? (f == "0" || f == "1")
                                              : is_number_field(f);
            if (!ok) return fail("row " + std::to_string(row) + ", column " + std::to_string(c + 1) + ": bad field '" + f + "'");
        }
    }
    return {};
}

SchemaCheck require(const json& j, const char* key, json::value_t type) {
    if (!j.contains(key)) return fail(std::string("missing key '") + key + "'");
    const json& v = j.at(key);
    const bool ok = (type == json::value_t::number_float) ? v.is_number()
                    : (type == json::value_t::number_integer) ? v.is_number_integer()
                                                              : v.type() == type;
    if (!ok) return fail(std::string("key '") + key + "' has the wrong type");
    return {};
}

#define CAPFLOW_REQUIRE(obj, key, type)                           \
    do {                                                          \
        if (SchemaCheck c = require(obj, key, type); !c.ok) return c; \
    } while (0)

SchemaCheck check_rows(const json& rows, std::initializer_list<const char*> keys) {
    if (!rows.is_array()) return fail("expected an array");
    for (const json& row : rows) {
        if (!row.is_object()) return fail("expected objects in array");
        for (const char* k : keys) CAPFLOW_REQUIRE(row, k, json::value_t::number_float);
    }
    return {};
}

SchemaCheck check_json(std::string_view text, Schema schema) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        return fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) return fail("top level must be an object");
    CAPFLOW_REQUIRE(j, "version", json::value_t::string);
    CAPFLOW_REQUIRE(j, "config_hash", json::value_t::string);
    using V = json::value_t;
    switch (schema) {
        case Schema::MaxFlow: {
            CAPFLOW_REQUIRE(j, "value_micro", V::number_integer);
            CAPFLOW_REQUIRE(j, "box_used", V::number_integer);
            CAPFLOW_REQUIRE(j, "stabilized", V::boolean);
            CAPFLOW_REQUIRE(j, "source_size", V::number_integer);
            CAPFLOW_REQUIRE(j, "mincut", V::array);
            for (const json& b : j["mincut"]) {
                if (!b.is_array() || b.size() != 4) return fail("mincut entries must be [x1,y1,x2,y2]");
                for (const json& c : b) {
                    if (!c.is_number_integer()) return fail("mincut coordinates must be integers");
                }
            }
            return {};
        }
        case Schema::Summary:
            CAPFLOW_REQUIRE(j, "i_hat_micro", V::number_float);
            CAPFLOW_REQUIRE(j, "per_n", V::array);
            return check_rows(j["per_n"], {"n", "count", "mean", "std", "min", "max", "deviation_frequency"});
        case Schema::TailSummary:
            CAPFLOW_REQUIRE(j, "points", V::array);
            CAPFLOW_REQUIRE(j, "nonincreasing", V::boolean);
            CAPFLOW_REQUIRE(j, "mann_kendall", V::object);
            return check_rows(j["points"], {"n", "reps", "upper_hits", "lower_hits", "frequency", "wilson_lo", "wilson_hi"});
        case Schema::DisjointSummary:
            CAPFLOW_REQUIRE(j, "i_hat", V::number_float);
            CAPFLOW_REQUIRE(j, "per_n", V::array);
            return check_rows(j["per_n"], {"n", "count", "mean", "std", "min", "max"});
        case Schema::IFun:
            CAPFLOW_REQUIRE(j, "i_micro", V::string);
            CAPFLOW_REQUIRE(j, "i_micro_float", V::number_float);
            CAPFLOW_REQUIRE(j, "directions", V::array);
            return {};
        case Schema::Oracle:
            CAPFLOW_REQUIRE(j, "radius", V::number_integer);
            CAPFLOW_REQUIRE(j, "oracle_micro", V::number_integer);
            CAPFLOW_REQUIRE(j, "maxflow_micro", V::number_integer);
            CAPFLOW_REQUIRE(j, "agree", V::boolean);
            return {};
        default: return fail("not a JSON schema");
    }
}

#undef CAPFLOW_REQUIRE

}  // namespace

SchemaCheck check_document(std::string_view text, Schema schema) {
    const CsvSchema csv = csv_schema(schema);
    if (csv.header) return check_csv(text, csv);
    return check_json(text, schema);
}

}  // namespace capflow
