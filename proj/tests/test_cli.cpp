#include <gtest/gtest.h>

#include <filesystem>

#include <conescore/cli.hpp>

namespace fs = std::filesystem;
using conescore::cli::json;
using conescore::cli::Options;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

struct Run {
    int code;
    json out;
    std::string text;
    std::string err;
};

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "conescore_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

Run invoke(Options opt) {
    static int counter = 0;
    if (opt.out.empty()) opt.out = scratch("out_" + std::to_string(counter++) + ".json").string();
    std::ostringstream err;
    Run r{conescore::cli::run(opt, err), json(), "", err.str()};
    std::ifstream f(opt.out);
    if (f) {
        std::stringstream ss;
        ss << f.rdbuf();
        r.text = ss.str();
        if (!r.text.empty()) r.out = json::parse(r.text);
    }
    fs::remove(opt.out);
    return r;
}

Options opts(std::string command, std::string in) {
    Options o;
    o.command = std::move(command);
    o.in = std::move(in);
    o.reproducible = true;
    return o;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST(CliDecompose, Fixtures) {
    EXPECT_EQ(invoke(opts("decompose", fixture("planar_d_generators.json"))).out["decomposition"]["ell"], 1);
    EXPECT_EQ(invoke(opts("decompose", fixture("square_cone_generators.json"))).out["decomposition"]["ell"], 0);
    const auto r = invoke(opts("decompose", fixture("five_dim_generators.json")));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out["decomposition"]["ell"], 2);
    EXPECT_EQ(r.out["decomposition"]["pointed_count"], 4);
    EXPECT_EQ(r.out["schema_version"], 1);
    EXPECT_EQ(r.out["tool"]["version"], "0.1.0");
    EXPECT_FALSE(r.out.contains("timestamp"));
}

TEST(CliRank, Fixtures) {
    auto five = invoke(opts("rank", fixture("five_dim_generators.json")));
    EXPECT_EQ(five.code, 0);
    EXPECT_EQ(five.out["ranks"]["csr"]["value"], 8);
    EXPECT_EQ(five.out["ranks"]["cgr"]["value"], 7);
    EXPECT_EQ(five.out["ranks"]["cr"]["value"], 6);
    EXPECT_EQ(five.out["chain_inequality"]["holds"], true);

    auto sq = invoke(opts("rank", fixture("square_cone_generators.json")));
    EXPECT_EQ(sq.out["ranks"]["csr"]["value"], 4);
    EXPECT_EQ(sq.out["ranks"]["cgr"]["value"], 4);
    EXPECT_EQ(sq.out["ranks"]["cr"]["value"], 3);

    auto one = invoke(opts("rank", fixture("single_generator.json")));
    for (const char* k : {"csr", "cgr", "cr"}) EXPECT_EQ(one.out["ranks"][k]["value"], 1);

    auto only = opts("rank", fixture("square_cone_generators.json"));
    only.kind = "cr";
    const auto cr = invoke(only);
    EXPECT_FALSE(cr.out["ranks"].contains("csr"));
    EXPECT_EQ(cr.out["ranks"]["cr"]["value"], 3);
}

TEST(CliRank, EnumerationCapExitsThree) {
    auto o = opts("rank", fixture("five_dim_generators.json"));
    o.max_lineality_dim = 1;
    const auto r = invoke(o);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("lineality dimension too large"), std::string::npos);
}

TEST(CliDesign, Fixtures) {
    auto corr = opts("design", fixture("correlated_samples.json"));
    corr.objective = "improvement";
    corr.restriction = "res-l";
    EXPECT_EQ(invoke(corr).out["k"], 1);

    auto sq = opts("design", fixture("square_cone_samples.json"));
    sq.objective = "both";
    sq.restriction = "res-l";
    const auto r = invoke(sq);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out["k"], 4);
    EXPECT_EQ(r.out["verification_passed"], true);
    EXPECT_EQ(r.out["minimality_certified"], false);

    sq.objective = "optimality";
    sq.restriction = "res-lm";
    const auto opt = invoke(sq);
    EXPECT_EQ(opt.out["k"], 1);
    EXPECT_EQ(opt.out["A"]["data"], json({1.0, 1.0, 1.0, 1.0}));
}

TEST(CliDesign, RelintAssertionEnablesCertification) {
    const auto in = write_file("relint.json", R"({"metrics_samples": [[0,0],[1,0],[0,1]], "assert_relint_nonempty": true,
        "objective": "improvement", "restriction": "res-cs"})");
    const auto r = invoke(opts("design", in));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out["minimality_certified"], true);
}

TEST(CliVerify, Fixtures) {
    EXPECT_EQ(invoke(opts("verify", fixture("empty_relint.json"))).code, 0);
    const auto grid = invoke(opts("verify", fixture("linf_grid.json")));
    EXPECT_EQ(grid.code, 4);
    EXPECT_EQ(grid.out["verification_passed"], false);

    const auto in = write_file("identity.json", R"({"metrics_samples": [[3,1,2],[0,0,1],[5,-2,4],[1,1,1]],
        "design": {"A": [[1,0,0],[0,1,0],[0,0,1]], "restriction": "res-cs"}})");
    EXPECT_EQ(invoke(opts("verify", in)).code, 0);
}

TEST(CliVerify, DimensionMismatchExitsTwo) {
    const auto in = write_file("mismatch.json", R"({"metrics_samples": [[1,2],[3,4]], "design": {"A": [[1,0,0]]}})");
    const auto r = invoke(opts("verify", in));
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliErrors, InputProblemsExitTwo) {
    EXPECT_EQ(invoke(opts("rank", write_file("bad.json", "{ not json"))).code, 2);
    EXPECT_EQ(invoke(opts("rank", fixture("correlated_samples.json"))).code, 2);  // no generators
    EXPECT_EQ(invoke(opts("design", fixture("square_cone_generators.json"))).code, 2);
    EXPECT_EQ(invoke(opts("rank", "/nonexistent/file.json")).code, 2);
    EXPECT_EQ(invoke(opts("rank", write_file("ragged.json", R"({"generators": [[1,2],[3]]})"))).code, 2);
    auto t = opts("rank", fixture("single_generator.json"));
    t.tol_cone = 2.0;
    EXPECT_EQ(invoke(t).code, 2);
    auto bad = opts("design", fixture("correlated_samples.json"));
    bad.restriction = "res-x";
    EXPECT_EQ(invoke(bad).code, 2);
}

TEST(CliOutput, DeterministicAndFullPrecision) {
    auto o = opts("rank", fixture("five_dim_generators.json"));
    const auto a = invoke(o), b = invoke(o);
    EXPECT_EQ(a.text, b.text);
    o.reproducible = false;
    EXPECT_TRUE(invoke(o).out.contains("timestamp"));

    // Serialized doubles parse back to the in-memory values exactly.
    conescore::Tolerances tol;
    const auto w = conescore::GeneratorSet::from_matrix(
        conescore::cli::matrix_from_json(json::parse(std::ifstream(fixture("five_dim_generators.json")))["generators"], "g"), tol);
    const auto cr = conescore::cone_rank(w, tol);
    const auto data = a.out["ranks"]["cr"]["witness"]["data"].get<std::vector<double>>();
    ASSERT_EQ(data, cr.witness.matrix().data());
}

TEST(CliCsv, SamplesFromCsv) {
    const auto in = write_file("samples.csv", "f1,f2\n-1,0\n1,1\n0,0.5\n# comment\n3,2\n");
    auto o = opts("design", in);
    o.csv = true;
    o.objective = "improvement";
    o.restriction = "res-cs";
    const auto r = invoke(o);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out["k"], 1);

    const auto broken = write_file("broken.csv", "1,2\n3,x\n");
    auto ob = opts("design", broken);
    ob.csv = true;
    ob.objective = "improvement";
    ob.restriction = "res-cs";
    EXPECT_EQ(invoke(ob).code, 2);
}
