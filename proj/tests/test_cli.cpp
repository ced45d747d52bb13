// End-to-end CLI tests: every documented exit code, schema diagnostics, and
// byte-identical reports for identical seeds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = HOLONOV_CLI_PATH;
const std::string kFixtures = HOLONOV_FIXTURES;

int run(const std::string& args, const std::string& out_file = "/dev/null") {
    std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("exit code 0: passing runs") {
    CHECK(run("forms-verify --samples 200 --propb 25") == 0);
    CHECK(run("model-run --input " + kFixtures + "/circle.json --alphas 5") == 0);
    CHECK(run("model-run --input " + kFixtures + "/torus.json --alphas 5") == 0);
    CHECK(run("model-run --input " + kFixtures + "/wall3.json --alphas 5") == 0);
    CHECK(run("atlas-check --input " + kFixtures + "/atlas3.json") == 0);
    CHECK(run("glue --input " + kFixtures + "/sections.json --atlas " + kFixtures +
              "/atlas3.json") == 0);
    CHECK(run("slag --input " + kFixtures + "/weights.json") == 0);
    CHECK(run("fueter --N 5 --samples 3") == 0);
    CHECK(run("fueter --family " + kFixtures + "/family.json") == 0);
    CHECK(run("crossing --input " + kFixtures + "/diagram.json --moves " + kFixtures +
              "/moves.json") == 0);
}

TEST_CASE("exit code 2: verification failure via the mutation hook") {
    CHECK(run("forms-verify --mutate --samples 100 --propb 10") == 2);
}

TEST_CASE("exit code 3: schema errors carry a field diagnostic") {
    std::string bad = "/tmp/holonov_bad_input.json";
    {
        std::ofstream out(bad);
        out << "{\"lattice_rank\": 1, \"theta\": [-1.0], \"critical_points\": "
               "[{\"name\": \"p\", \"index\": 1}], \"flows\": "
               "[{\"from\": \"p\", \"to\": \"nowhere\", \"class\": [\"0\"], \"count\": 1}]}";
    }
    std::string log = "/tmp/holonov_schema_err.txt";
    CHECK(run("model-run --input " + bad, log) == 3);
    std::string msg = slurp(log);
    CHECK(msg.find("flows[0]") != std::string::npos);
    CHECK(msg.find("nowhere") != std::string::npos);
    CHECK(run("model-run --input /does/not/exist.json") == 3);
    CHECK(run("fueter --N 4") == 3);  // even lattice refused
}

TEST_CASE("exit code 4: divergence probe below the growth rate") {
    CHECK(run("model-run --input " + kFixtures + "/growth.json --s-real 0.593") == 4);
    CHECK(run("model-run --input " + kFixtures + "/growth.json --s-real 0.8") == 0);
}

TEST_CASE("reports are byte-identical across runs with one seed") {
    std::string a = "/tmp/holonov_rep_a.txt", b = "/tmp/holonov_rep_b.txt";
    CHECK(run("forms-verify --samples 300 --propb 30 --seed 99 --output " + a) == 0);
    CHECK(run("forms-verify --samples 300 --propb 30 --seed 99 --output " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());

    CHECK(run("model-run --input " + kFixtures + "/torus.json --seed 7 --alphas 12 --output " + a) == 0);
    CHECK(run("model-run --input " + kFixtures + "/torus.json --seed 7 --alphas 12 --output " + b) == 0);
    CHECK(slurp(a) == slurp(b));

    // a different seed changes the sampled twists but not the verdict
    CHECK(run("model-run --input " + kFixtures + "/torus.json --seed 8 --alphas 12 --output " + b) == 0);
    CHECK(slurp(a) != slurp(b));
}

TEST_CASE("json reports parse and carry the seed") {
    std::string out = "/tmp/holonov_rep.json";
    CHECK(run("atlas-check --input " + kFixtures + "/atlas3.json --json --seed 31 --output " + out) == 0);
    std::string s = slurp(out);
    CHECK(s.find("\"seed\": 31") != std::string::npos);
    CHECK(s.find("\"pass\": true") != std::string::npos);
    CHECK(run("fueter --N 5 --samples 2 --json --output " + out) == 0);
    CHECK(slurp(out).find("\"kernel_dimension\": 4") != std::string::npos);
}

TEST_CASE("glue output carries the paired class and count") {
    std::string out = "/tmp/holonov_glue.json";
    CHECK(run("glue --input " + kFixtures + "/sections.json --atlas " + kFixtures +
              "/atlas3.json --output " + out) == 0);
    std::string s = slurp(out);
    CHECK(s.find("\"count\": \"13\"") != std::string::npos);
}

TEST_CASE("slag output value") {
    std::string out = "/tmp/holonov_slag.txt";
    CHECK(run("slag --input " + kFixtures + "/weights.json --output " + out) == 0);
    CHECK(slurp(out) == "n_kappa = 2\n");
    CHECK(run("slag --input " + kFixtures + "/weights.json --kappa 3,0 --output " + out) == 0);
    CHECK(slurp(out) == "n_kappa = 2\n");  // {(1),(2)} and {(1),(1),(1)} with k <= 2: {1,2},{1,1,1} -> 2
}
