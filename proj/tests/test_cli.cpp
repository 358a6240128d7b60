#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace msrkit;

namespace {

const fs::path kWork = fs::path("cli_work");

int run(const std::string& args) {
    std::string cmd = std::string(MSRKIT_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct WorkDir {
    WorkDir() {
        fs::remove_all(kWork);
        fs::create_directories(kWork);
    }
};

std::string path(const char* name) { return (kWork / name).string(); }

} // namespace

TEST_CASE("cli round trip") {
    WorkDir wd;

    SUBCASE("construct picks the smallest admissible field") {
        REQUIRE(run("construct --r 2 --m 3 --out " + path("r2m3.json")) == 0);
        json spec = load_json_file(path("r2m3.json"));
        CHECK(spec["field"]["p"] == 2);
        CHECK(spec["field"]["k"] == 2); // q = 4
        CHECK(spec["k"] == 6);
        CHECK(spec["ell"] == 8);

        REQUIRE(run("construct --r 3 --m 1 --out " + path("r3m1.json")) == 0);
        json even = load_json_file(path("r3m1.json"));
        CHECK(even["field"]["p"] == 2); // q = 4, the even branch wins at m = 1

        REQUIRE(run("construct --r 3 --m 1 --parity odd --out " + path("r3m1odd.json")) == 0);
        json odd = load_json_file(path("r3m1odd.json"));
        CHECK(odd["field"]["p"] == 7);
        CHECK(odd["field"]["k"] == 1);
    }

    SUBCASE("identical invocations write identical bytes") {
        REQUIRE(run("construct --r 2 --m 2 --out " + path("a.json")) == 0);
        REQUIRE(run("construct --r 2 --m 2 --out " + path("b.json")) == 0);
        CHECK(slurp(path("a.json")) == slurp(path("b.json")));

        REQUIRE(run("simulate --spec " + path("a.json") + " --trials 4 --seed 2 --out " +
                    path("sa.json")) == 0);
        REQUIRE(run("simulate --spec " + path("a.json") + " --trials 4 --seed 2 --out " +
                    path("sb.json")) == 0);
        CHECK(slurp(path("sa.json")) == slurp(path("sb.json")));
    }

    SUBCASE("usage errors exit 2") {
        CHECK(run("construct --r 2 --m 2 --variant long --out " + path("x.json")) == 2);
        CHECK(run("construct --r 4 --m 2 --out " + path("x.json")) == 2);
        CHECK(run("construct --r 2 --m 9 --out " + path("x.json")) == 2);
        CHECK(run("bogus-subcommand") == 2);
    }

    SUBCASE("verify: 0 on pass, 1 on algebra failure, 2 on malformed input") {
        REQUIRE(run("construct --r 2 --m 2 --out " + path("spec.json")) == 0);
        CHECK(run("verify --spec " + path("spec.json") + " --out " + path("cert.json")) == 0);
        json cert = load_json_file(path("cert.json"));
        CHECK(cert["passed"] == true);

        json corrupted = load_json_file(path("spec.json"));
        int v = corrupted["pairs"][0]["A"][0][0].get<int>();
        corrupted["pairs"][0]["A"][0][0] = (v + 1) % 3;
        write_json_file(path("bad.json"), corrupted);
        CHECK(run("verify --spec " + path("bad.json") + " --out " + path("badcert.json")) == 1);
        json badcert = load_json_file(path("badcert.json"));
        CHECK(badcert["passed"] == false);

        std::ofstream(path("trunc.json")) << "{\"variant\": \"r2-access";
        CHECK(run("verify --spec " + path("trunc.json")) == 2);
        CHECK(run("verify --spec " + path("missing.json")) == 2);
    }

    SUBCASE("simulate, encode, repair, reconstruct, report") {
        REQUIRE(run("construct --r 3 --m 1 --out " + path("spec.json")) == 0);
        CHECK(run("simulate --spec " + path("spec.json") + " --trials 5 --seed 9 --out " +
                  path("sim.json")) == 0);
        json sim = load_json_file(path("sim.json"));
        CHECK(sim["passed"] == true);
        CHECK(sim["bandwidth"]["total"] == 5);

        CHECK(run("encode --spec " + path("spec.json") + " --seed 4 --out " + path("store.json")) == 0);
        CHECK(run("repair --spec " + path("spec.json") + " --store " + path("store.json") +
                  " --node 2 --out " + path("tr.json")) == 0);
        json tr = load_json_file(path("tr.json"));
        CHECK(tr["failed"] == 2);
        CHECK(tr["symbols_sent"] == 5);

        CHECK(run("reconstruct --spec " + path("spec.json") + " --store " + path("store.json") +
                  " --nodes 2,3,6 --out " + path("file.hex")) == 0);
        json store = load_json_file(path("store.json"));
        std::string hex = slurp(path("file.hex"));
        // the first ell symbols of the file are node 1's column
        CHECK(hex.substr(0, 3) == store["columns"][0].get<std::string>());

        CHECK(run("reconstruct --spec " + path("spec.json") + " --store " + path("store.json") +
                  " --nodes 1,2 --out " + path("file.hex")) == 2);

        CHECK(run("report --spec " + path("spec.json") + " --out " + path("report.json")) == 0);
        json report = load_json_file(path("report.json"));
        CHECK(report["rows"][0]["q"] == 4);
        CHECK(report["rows"][0]["access_optimal"] == true);
        CHECK(report["reference"].contains("r3"));
    }

    SUBCASE("two-parity simulation at twenty trials reports bandwidth 10") {
        REQUIRE(run("construct --r 2 --m 2 --out " + path("r2m2.json")) == 0);
        REQUIRE(run("simulate --spec " + path("r2m2.json") + " --trials 20 --seed 1 --out " +
                    path("r2sim.json")) == 0);
        json sim = load_json_file(path("r2sim.json"));
        CHECK(sim["passed"] == true);
        CHECK(sim["bandwidth"]["total"] == 10);
        CHECK(sim["reconstruct"]["exhaustive"] == true);
        CHECK(sim["reconstruct"]["subsets"] == 15);
        for (const auto& row : sim["repairs"]) {
            CHECK(row["exact"] == true);
            CHECK(row["symbols_sent"] == 10);
            CHECK(row["access_per_helper"] == 2);
        }
    }

    SUBCASE("the long variant flows through construct and simulate") {
        REQUIRE(run("construct --r 3 --m 1 --variant long --out " + path("long.json")) == 0);
        json spec = load_json_file(path("long.json"));
        CHECK(spec["variant"] == "r3-long");
        CHECK(spec["k"] == 4);
        CHECK(spec["field"]["p"].get<int>() <= 200);
        CHECK(spec.contains("h"));

        REQUIRE(run("simulate --spec " + path("long.json") + " --trials 3 --out " + path("lsim.json")) == 0);
        json sim = load_json_file(path("lsim.json"));
        CHECK(sim["passed"] == true);
        CHECK(sim["spec"]["access_optimal"] == false);
        // the edge-sum node reads three coordinates per helper, ell/r = 1
        CHECK(sim["repairs"][3]["access_per_helper"] == 3);
        CHECK(sim["repairs"][3]["optimal_access"] == 1);
        CHECK(sim["repairs"][0]["access_per_helper"] == 1);
    }

    SUBCASE("report row for the two-parity code at m = 3") {
        REQUIRE(run("construct --r 2 --m 3 --out " + path("r2m3b.json")) == 0);
        REQUIRE(run("report --spec " + path("r2m3b.json") + " --out " + path("rep2.json")) == 0);
        json report = load_json_file(path("rep2.json"));
        CHECK(report["rows"][0]["ell"] == 8);
        CHECK(report["rows"][0]["k"] == 6);
        CHECK(report["rows"][0]["q"] == 4);
        CHECK(report["rows"][0]["access_optimal"] == true);
        CHECK(report["reference"].contains("r2"));
    }

    SUBCASE("field overrides") {
        REQUIRE(run("construct --r 3 --m 1 --q 7 --out " + path("q7.json")) == 0);
        json spec = load_json_file(path("q7.json"));
        CHECK(spec["field"]["p"] == 7);
        CHECK(run("construct --r 2 --m 2 --q 1027 --out " + path("x.json")) == 2); // not a prime power
        CHECK(run("construct --r 3 --m 1 --q 5 --out " + path("x.json")) == 2);    // no order-3 roots
    }
}
