#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "capflow/error.hpp"
#include "capflow/io.hpp"

using namespace capflow;

namespace {

constexpr std::int64_t kUnit = kDefaultScale;

struct Result {
    int status = 0;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(CAPFLOW_CLI) + " " + args + " 2>/dev/null";
    Result r;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(pipe.release());
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

}  // namespace

TEST(Stamp, HashIsStable) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    const Stamp s = stamp_for("x=1\n");
    EXPECT_EQ(s.config_hash.size(), 16u);
    EXPECT_EQ(s.config_hash, stamp_for("x=1\n").config_hash);
    EXPECT_NE(s.config_hash, stamp_for("x=2\n").config_hash);
}

TEST(Schema, LibraryOutputsRoundTrip) {
    const Stamp stamp = stamp_for("test");
    RunConfig cfg;
    cfg.spec = DistributionSpec::constant(Rational(1));
    cfg.n_grid = {1, 2};
    cfg.reps = 2;
    const TailRun tail = run_tail(cfg);
    EXPECT_TRUE(check_document(convergence_csv(tail.base, stamp, false), Schema::Convergence).ok);
    EXPECT_TRUE(check_document(convergence_csv(tail.base, stamp, true), Schema::Convergence).ok);
    EXPECT_TRUE(check_document(convergence_summary_json(tail.base, cfg.epsilon, stamp).dump(), Schema::Summary).ok);
    EXPECT_TRUE(check_document(tail_csv(tail, stamp), Schema::Tail).ok);
    EXPECT_TRUE(check_document(tail_json(tail, cfg.epsilon, stamp).dump(), Schema::TailSummary).ok);

    cfg.p_open = Rational(1);
    const DisjointRun dis = run_disjoint(cfg);
    EXPECT_TRUE(check_document(disjoint_csv(dis, stamp, false), Schema::Disjoint).ok);
    EXPECT_TRUE(check_document(disjoint_json(dis, stamp).dump(), Schema::DisjointSummary).ok);

    const CapacityField f(DistributionSpec::constant(Rational(1)), 0);
    const MaxFlowResult r = truncated_maxflow(f, SiteSet({Site{0, 0}}), 4);
    const nlohmann::json j = maxflow_json(r, 1, stamp);
    EXPECT_TRUE(check_document(j.dump(), Schema::MaxFlow).ok);
    EXPECT_EQ(j["value_micro"], 4 * kUnit);
    EXPECT_EQ(j["mincut"].size(), 4u);
    EXPECT_EQ(j["source_size"], 1);

    MuTable t;
    t.insert(estimate_mu(DistributionSpec::constant(Rational(1)), {1, 0}, 8, 2, 0));
    EXPECT_TRUE(check_document(mu_csv(t, stamp), Schema::Mu).ok);
}

TEST(Schema, RejectsMalformedDocuments) {
    const std::string stamp = "# capflow 0.4.1 config 0123456789abcdef\n";
    const std::string header = "n,replicate,mincut_micro,i_hat_micro,ratio,stabilized,seconds\n";
    EXPECT_TRUE(check_document(stamp + header + "1,0,5,4,1.25,1,0\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document(header + "1,0,5,4,1.25,1,0\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document(stamp + header + "1,0,5,4,1.25,2,0\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document(stamp + header + "1,0,5.5,4,1.25,1,0\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document(stamp + header + "1,0,5,4,1.25,1\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document(stamp + "n,replicate\n", Schema::Convergence).ok);
    EXPECT_FALSE(check_document("{", Schema::MaxFlow).ok);
    EXPECT_FALSE(check_document(R"({"version":"1","config_hash":"x","value_micro":1.5})", Schema::MaxFlow).ok);
    EXPECT_THROW(schema_from_name("nope"), Error);
}

TEST(Cli, MincutExample) {
    const Result r = run("mincut --dist const:1 --polygon square:1 --n 3 --seed 7");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["value_micro"], 29360128);
    EXPECT_TRUE(j["stabilized"].get<bool>());
    EXPECT_TRUE(check_document(r.out, Schema::MaxFlow).ok);
}

TEST(Cli, MuExample) {
    const Result r = run("mu --dist const:1 --dir 1,0 --n 32 --reps 5 --seed 1");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\n1,0,32,5,1048576,0.000000\n"), std::string::npos);
    EXPECT_TRUE(check_document(r.out, Schema::Mu).ok);
}

TEST(Cli, EverySubcommandEmitsValidDocuments) {
    const std::pair<const char*, Schema> cases[] = {
        {"mu --dist exp:1 --dir 2,1 --n 4 --reps 3 --seed 2", Schema::Mu},
        {"mincut --dist bern:0.7 --n 1 --seed 2", Schema::MaxFlow},
        {"maxflow --dist exp:1 --n 0 --box 5 --seed 2", Schema::MaxFlow},
        {"oracle --dist exp:1 --n 0 --box 3 --seed 2", Schema::Oracle},
        {"ifun --dist const:1 --polygon ngon:6:1", Schema::IFun},
        {"ifun --dist exp:1 --polygon square:1 --mu-n 8 --mu-reps 3", Schema::IFun},
        {"converge --dist exp:1 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3", Schema::Convergence},
        {"converge --dist exp:1 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3 --format json", Schema::Summary},
        {"tail --dist exp:1 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3", Schema::Tail},
        {"tail --dist exp:1 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3 --format json", Schema::TailSummary},
        {"disjoint --p 0.8 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3", Schema::Disjoint},
        {"disjoint --p 0.8 --ngrid 1,2 --reps 2 --mu-n 8 --mu-reps 3 --format json", Schema::DisjointSummary},
    };
    for (const auto& [args, schema] : cases) {
        const Result r = run(args);
        ASSERT_EQ(r.status, 0) << args;
        const SchemaCheck c = check_document(r.out, schema);
        EXPECT_TRUE(c.ok) << args << ": " << c.message;
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").status, 1);
    EXPECT_EQ(run("mincut --bogus 1").status, 1);
    EXPECT_EQ(run("mincut --polygon circle:1").status, 1);
    EXPECT_EQ(run("converge --ngrid 4,2").status, 1);
    EXPECT_EQ(run("converge --format xml").status, 1);
    EXPECT_EQ(run("oracle --n 0 --box 9").status, 2);
    EXPECT_EQ(run("mincut --dist exp:1 --n 1 --seed 3 --nmax-factor 1").status, 2);
}

TEST(Cli, OutFileMatchesStdout) {
    const std::string path = testing::TempDir() + "capflow_out.csv";
    const std::string args = "converge --dist const:1 --ngrid 1,2 --reps 1";
    const Result a = run(args);
    ASSERT_EQ(run(args + " --out " + path).status, 0);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), a.out);
    std::remove(path.c_str());
}
