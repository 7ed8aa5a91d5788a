#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capflow/cutflow.hpp"
#include "capflow/error.hpp"
#include "capflow/experiments.hpp"
#include "capflow/functional.hpp"
#include "capflow/io.hpp"

namespace {

using namespace capflow;

constexpr int kUsageError = 1;
constexpr int kBudgetExceeded = 2;

struct Options {
    std::string dist = "exp:1";
    std::string polygon = "square:1";
    std::int64_t n = 8;
    std::string ngrid = "8,16,32";
    std::int64_t reps = 10;
    std::uint64_t seed = 0;
    std::string eps = "1/5";
    std::string p = "9/10";
    std::string dir = "1,0";
    std::string out;
    std::string format;
    std::int64_t scale = kDefaultScale;
    std::int64_t nmax_factor = 512;
    std::int32_t box = 0;
    std::int64_t mu_n = 64;
    std::int64_t mu_reps = 30;
    bool timing = false;
};

// Flags each subcommand accepts, in the order they are echoed.
const std::map<std::string, std::vector<std::string>> kFlags = {
    {"mu", {"dist", "dir", "n", "reps", "seed", "scale", "format"}},
    {"mincut", {"dist", "polygon", "n", "seed", "scale", "nmax-factor", "format"}},
    {"maxflow", {"dist", "polygon", "n", "box", "seed", "scale", "format"}},
    {"oracle", {"dist", "polygon", "n", "box", "seed", "scale", "format"}},
    {"ifun", {"dist", "polygon", "seed", "scale", "mu-n", "mu-reps", "format"}},
    {"converge",
     {"dist", "polygon", "ngrid", "reps", "seed", "eps", "scale", "nmax-factor", "mu-n", "mu-reps", "format", "timing"}},
    {"tail", {"dist", "polygon", "ngrid", "reps", "seed", "eps", "scale", "nmax-factor", "mu-n", "mu-reps", "format"}},
    {"disjoint", {"p", "polygon", "ngrid", "reps", "seed", "nmax-factor", "mu-n", "mu-reps", "format", "timing"}},
};

const std::map<std::string, std::string> kDefaultFormat = {
    {"mu", "csv"},     {"mincut", "json"},   {"maxflow", "json"}, {"oracle", "json"},
    {"ifun", "json"},  {"converge", "csv"},  {"tail", "csv"},     {"disjoint", "csv"},
};

void add_flags(CLI::App& sub, const std::vector<std::string>& names, Options& o) {
    for (const std::string& name : names) {
        const std::string flag = "--" + name;
        if (name == "dist") sub.add_option(flag, o.dist, "capacity law: const:c, bern:p, exp:rate, unif:lo:hi");
        else if (name == "polygon") sub.add_option(flag, o.polygon, "square:r, ngon:k:r or @file");
        else if (name == "n") sub.add_option(flag, o.n, "scale factor or passage length")->check(CLI::NonNegativeNumber);
        else if (name == "ngrid") sub.add_option(flag, o.ngrid, "comma separated increasing grid of n");
        else if (name == "reps") sub.add_option(flag, o.reps, "replicates")->check(CLI::PositiveNumber);
        else if (name == "seed") sub.add_option(flag, o.seed, "master seed");
        else if (name == "eps") sub.add_option(flag, o.eps, "deviation tolerance in (0, 1)");
        else if (name == "p") sub.add_option(flag, o.p, "probability that a bond is open");
        else if (name == "dir") sub.add_option(flag, o.dir, "direction x,y");
        else if (name == "scale") sub.add_option(flag, o.scale, "micro-units per capacity unit")->check(CLI::PositiveNumber);
        else if (name == "nmax-factor") sub.add_option(flag, o.nmax_factor, "box budget as a multiple of radius(A)")->check(CLI::PositiveNumber);
        else if (name == "box") sub.add_option(flag, o.box, "box radius")->required()->check(CLI::PositiveNumber);
        else if (name == "mu-n") sub.add_option(flag, o.mu_n, "steps of the time-constant pass");
        else if (name == "mu-reps") sub.add_option(flag, o.mu_reps, "replicates of the time-constant pass");
        else if (name == "format") sub.add_option(flag, o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        else if (name == "timing") sub.add_flag(flag, o.timing, "record wall time (breaks byte-identical reruns)");
    }
    sub.add_option("--out", o.out, "output file (default stdout)");
}

std::string value_of(const Options& o, const std::string& name) {
    if (name == "dist") return o.dist;
    if (name == "polygon") return o.polygon;
    if (name == "n") return std::to_string(o.n);
    if (name == "ngrid") return o.ngrid;
    if (name == "reps") return std::to_string(o.reps);
    if (name == "seed") return std::to_string(o.seed);
    if (name == "eps") return o.eps;
    if (name == "p") return o.p;
    if (name == "dir") return o.dir;
    if (name == "scale") return std::to_string(o.scale);
    if (name == "nmax-factor") return std::to_string(o.nmax_factor);
    if (name == "box") return std::to_string(o.box);
    if (name == "mu-n") return std::to_string(o.mu_n);
    if (name == "mu-reps") return std::to_string(o.mu_reps);
    if (name == "format") return o.format;
    if (name == "timing") return o.timing ? "true" : "false";
    return "";
}

std::string resolved_config(const std::string& cmd, const Options& o) {
    std::string text = "subcommand=" + cmd + "\n";
    for (const std::string& name : kFlags.at(cmd)) text += name + "=" + value_of(o, name) + "\n";
    return text;
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != item.size()) throw Error(ErrorCode::InvalidArgument, "bad integer list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty integer list");
    return out;
}

SiteSet source_set(const Options& o) {
    if (o.n == 0) return SiteSet({Site{0, 0}});
    return sites_in_scaled_polygon(parse_polygon(o.polygon), o.n);
}

RunConfig run_config(const Options& o) {
    RunConfig cfg;
    cfg.spec = DistributionSpec::parse(o.dist);
    cfg.polygon = parse_polygon(o.polygon);
    cfg.n_grid = parse_ints(o.ngrid);
    cfg.reps = o.reps;
    cfg.master_seed = o.seed;
    cfg.epsilon = Rational::parse(o.eps);
    cfg.p_open = Rational::parse(o.p);
    cfg.scale = o.scale;
    cfg.mincut.nmax_factor = o.nmax_factor;
    cfg.mu_n = o.mu_n;
    cfg.mu_reps = o.mu_reps;
    return cfg;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run(const std::string& cmd, const Options& o) {
    const std::string config = resolved_config(cmd, o);
    std::cerr << config;
    const Stamp stamp = stamp_for(config);
    std::cerr << "config_hash=" << stamp.config_hash << "\n";
    Output output(o.out);
    std::ostream& out = output.stream();
    const bool json_out = o.format == "json";

    if (cmd == "mu") {
        const auto d = parse_ints(o.dir);
        if (d.size() != 2) throw Error(ErrorCode::InvalidArgument, "--dir needs two integers");
        MuTable table;
        table.insert(estimate_mu(DistributionSpec::parse(o.dist), IntVec{d[0], d[1]}, o.n, o.reps, o.seed, o.scale));
        if (json_out) {
            const MuEstimate& e = table.entries().begin()->second;
            nlohmann::json j = {{"version", stamp.version},       {"config_hash", stamp.config_hash},
                                {"direction_x", e.direction.x},   {"direction_y", e.direction.y},
                                {"n", e.n_used},                  {"reps", e.replicates},
                                {"mean_micro", e.mean.str()},     {"mean_micro_float", e.mean.to_double()},
                                {"stderr_micro", e.std_error}};
            out << j.dump(2) << "\n";
        } else {
            out << mu_csv(table, stamp);
        }
        return 0;
    }

    if (cmd == "mincut" || cmd == "maxflow") {
        const CapacityField field(DistributionSpec::parse(o.dist), o.seed, o.scale);
        const SiteSet source = source_set(o);
        MaxFlowResult res;
        if (cmd == "mincut") {
            MincutOptions opts;
            opts.nmax_factor = o.nmax_factor;
            res = mincut_infinity(field, source, opts);
        } else {
            res = truncated_maxflow(field, source, o.box);
        }
        out << maxflow_json(res, source.size(), stamp).dump(2) << "\n";
        if (res.budget_exceeded) {
            std::cerr << "budget exceeded: min cut did not stabilize\n";
            return kBudgetExceeded;
        }
        return 0;
    }

    if (cmd == "oracle") {
        const CapacityField field(DistributionSpec::parse(o.dist), o.seed, o.scale);
        const SiteSet source = source_set(o);
        const std::int64_t brute = brute_force_min_cycle(field, source, o.box);
        const MaxFlowResult flow = truncated_maxflow(field, source, o.box);
        nlohmann::json j = {{"version", stamp.version}, {"config_hash", stamp.config_hash},
                            {"radius", o.box},          {"source_size", source.size()},
                            {"oracle_micro", brute},    {"maxflow_micro", flow.value},
                            {"agree", brute == flow.value}};
        out << j.dump(2) << "\n";
        return 0;
    }

    if (cmd == "ifun") {
        const DistributionSpec spec = DistributionSpec::parse(o.dist);
        const ConvexPolygon polygon = parse_polygon(o.polygon);
        const MuTable table = polygon_mu_table(spec, polygon, o.seed, o.mu_n, o.mu_reps, o.scale);
        const IValue value = i_functional(polygon, table);
        nlohmann::json dirs = nlohmann::json::array();
        for (const IntVec& d : side_directions(polygon)) {
            dirs.push_back({{"direction", {d.x, d.y}}, {"mu_micro", table.eval(d).str()}});
        }
        nlohmann::json j = {{"version", stamp.version},      {"config_hash", stamp.config_hash},
                            {"i_micro", value.value.str()}, {"i_micro_float", value.value.to_double()},
                            {"directions", dirs}};
        out << j.dump(2) << "\n";
        return 0;
    }

    const RunConfig cfg = run_config(o);
    if (cmd == "converge" || cmd == "tail") {
        TailRun tail = run_tail(cfg);
        warn(tail.base.warnings);
        if (cmd == "converge") {
            if (json_out) out << convergence_summary_json(tail.base, cfg.epsilon, stamp).dump(2) << "\n";
            else out << convergence_csv(tail.base, stamp, o.timing);
        } else {
            if (json_out) out << tail_json(tail, cfg.epsilon, stamp).dump(2) << "\n";
            else out << tail_csv(tail, stamp);
        }
        for (const auto& r : tail.base.records) {
            if (r.budget_exceeded) {
                std::cerr << "budget exceeded at n=" << r.n << " replicate=" << r.replicate << "\n";
                return kBudgetExceeded;
            }
        }
        return 0;
    }

    if (cmd == "disjoint") {
        const DisjointRun run = run_disjoint(cfg);
        warn(run.warnings);
        if (json_out) out << disjoint_json(run, stamp).dump(2) << "\n";
        else out << disjoint_csv(run, stamp, o.timing);
        for (const auto& r : run.records) {
            if (r.budget_exceeded) {
                std::cerr << "budget exceeded at n=" << r.n << " replicate=" << r.replicate << "\n";
                return kBudgetExceeded;
            }
        }
        return 0;
    }
    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact min cuts to infinity and first-passage experiments on Z^2"};
    app.require_subcommand(1);
    Options options;
    std::map<std::string, CLI::App*> subs;
    const std::map<std::string, std::string> help = {
        {"mu", "estimate the time constant in one direction"},
        {"mincut", "min cut from nA to infinity"},
        {"maxflow", "max flow from nA to the boundary of a fixed box"},
        {"oracle", "compare max flow with the exhaustive dual-cycle search"},
        {"ifun", "evaluate I(A) for a polygon"},
        {"converge", "mincut(nA)/n against n I(A)"},
        {"tail", "deviation frequencies of mincut(nA)/(n I(A))"},
        {"disjoint", "edge-disjoint open paths from nA to infinity"},
    };
    for (const auto& [name, flags] : kFlags) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        add_flags(*sub, flags, options);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    std::string cmd;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) cmd = name;
    }
    if (options.format.empty()) options.format = kDefaultFormat.at(cmd);

    try {
        return run(cmd, options);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::BudgetExceeded ? kBudgetExceeded : kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
