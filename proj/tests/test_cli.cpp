#include <catch2/catch_amalgamated.hpp>

#include <hardy/io.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace hardy;

namespace {

std::string cli() {
    const char* env = std::getenv("HARDY_CLI");
    return env ? env : "../tools/hardy";
}

std::string tmpdir() {
    static std::string dir = [] {
        std::string d = "cli_scratch";
        std::system(("mkdir -p " + d).c_str());
        return d;
    }();
    return dir;
}

std::string write_spec(const std::string& name, const json& j) {
    const std::string path = tmpdir() + "/" + name;
    write_json(path, j);
    return path;
}

int run(const std::string& args) {
    const int rc = std::system((cli() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli factory: blaschke spec") {
    const auto spec = write_spec("b.json", json{{"kind", "blaschke"}, {"zeros", {0.5}}});
    const std::string out = tmpdir() + "/b_out.json";
    REQUIRE(run("factory " + spec + " --degree 64 --out " + out) == 0);
    const AnalyticFunction f = function_from_json(read_json(out));
    REQUIRE(f.degree() == 64);
    CHECK(std::abs(evaluate(f, cd(0.0)) - cd(0.5)) < 1e-12);
}

TEST_CASE("cli factory: outer polynomial roots and composites") {
    const auto spec = write_spec(
        "o.json", json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}, {"multiplicities", {2}}});
    const std::string out = tmpdir() + "/o_out.json";
    REQUIRE(run("factory " + spec + " --degree 16 --out " + out) == 0);
    const AnalyticFunction f = function_from_json(read_json(out));
    CHECK(std::abs(f.coeff(0) - cd(1)) < 1e-12);
    CHECK(std::abs(f.coeff(1) - cd(-2)) < 1e-12);
    CHECK(std::abs(f.coeff(2) - cd(1)) < 1e-12);

    const auto comp = write_spec(
        "c.json",
        json{{"kind", "composite"},
             {"product",
              {json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}},
               json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}}}}});
    const std::string out2 = tmpdir() + "/c_out.json";
    REQUIRE(run("factory " + comp + " --degree 16 --out " + out2) == 0);
    const AnalyticFunction g = function_from_json(read_json(out2));
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(g.coeff(k) - f.coeff(k)) < 1e-12);
}

TEST_CASE("cli factory: invalid spec exits 2") {
    const auto spec = write_spec("bad.json", json{{"kind", "no-such-kind"}});
    CHECK(run("factory " + spec) == 2);
    CHECK(run("factory " + tmpdir() + "/does_not_exist.json") == 2);
}

TEST_CASE("cli ac: exit codes follow the dichotomy") {
    const auto spec = write_spec(
        "zm1sq.json", json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}, {"multiplicities", {2}}});
    CHECK(run("ac " + spec + " 0 1") == 0);
    CHECK(run("ac " + spec + " 0 2") == 4);
    CHECK(run("ac " + spec + " 1.0 0") == 4);  // angle pi: no root there
}

TEST_CASE("cli a2: power weight dichotomy") {
    CHECK(run("a2 --eps 0.25") == 0);
    CHECK(run("a2 --eps 0.6") == 4);
}

TEST_CASE("cli decompose: dimensions and the empty-nullspace warning") {
    const auto one_plus_z =
        write_spec("opz.json", json{{"kind", "outer_poly_roots"}, {"roots", {-1.0}}});
    const std::string out = tmpdir() + "/dec.json";
    REQUIRE(run("decompose " + one_plus_z + " --degree 32 --out " + out) == 0);
    CHECK(read_json(out)["complement_dim"] == 1);

    const auto constant = write_spec(
        "const.json", function_to_json(AnalyticFunction{{cd(1.0)}, "1"}));
    CHECK(run("decompose " + constant + " --degree 16") == 5);
}

TEST_CASE("cli decompose: equal seeds give byte-identical reports") {
    const auto spec = write_spec(
        "det.json", json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}, {"multiplicities", {2}}});
    const std::string o1 = tmpdir() + "/det1.json", o2 = tmpdir() + "/det2.json";
    REQUIRE(run("decompose " + spec + " --degree 32 --seed 7 --out " + o1) == 0);
    REQUIRE(run("decompose " + spec + " --degree 32 --seed 7 --out " + o2) == 0);
    CHECK(slurp(o1) == slurp(o2));
}

TEST_CASE("cli kernel report fields") {
    const auto spec = write_spec(
        "zk.json", json{{"kind", "outer_poly_roots"}, {"roots", {1.0}}, {"multiplicities", {2}}});
    const std::string out = tmpdir() + "/k.json";
    REQUIRE(run("kernel " + spec + " 0.5 0 0 --degree 64 --out " + out) == 0);
    const json j = read_json(out);
    CHECK(j["order"] == 0);
    CHECK(j["boundary_flag"] == false);
    CHECK(j["norm_sq"].get<double>() > 0.0);
}

TEST_CASE("cli data dir resolves bare --out names") {
    const auto spec = write_spec("dd.json", json{{"kind", "blaschke"}, {"zeros", {0.25}}});
    std::system(("mkdir -p " + tmpdir() + "/data").c_str());
    const std::string cmd = "HRL_DATA_DIR=" + tmpdir() + "/data " + cli() + " factory " + spec +
                            " --degree 16 --out dd_out.json > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(read_json(tmpdir() + "/data/dd_out.json").contains("coeffs"));
}

TEST_CASE("cli usage and unknown commands") {
    CHECK(run("no-such-command") == 2);
    const int rc = std::system((cli() + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}
