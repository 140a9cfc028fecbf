#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
}

std::string bin() { return std::string(DTA_SA_BIN); }

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("dta_sa_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write_example_csv(const fs::path& path) {
    std::ofstream out(path);
    // threshold-effect pattern: studies with higher sensitivity run at lower
    // specificity, so the fitted correlation is negative
    out << "id,tp,fn,tn,fp\n"
           "s01,45,5,70,30\n"
           "s02,42,8,76,24\n"
           "s03,48,2,60,40\n"
           "s04,38,12,86,14\n"
           "s05,35,15,90,10\n"
           "s06,46,4,64,36\n"
           "s07,40,10,80,20\n"
           "s08,44,6,72,28\n"
           "s09,36,14,88,12\n"
           "s10,47,3,66,34\n"
           "s11,39,11,84,16\n"
           "s12,43,7,74,26\n";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_CASE("cli fit writes the expected artifacts") {
    const fs::path d = fresh_dir("fit");
    write_example_csv(d / "in.csv");
    const int rc = run(bin() + " --full-precision fit -i " + (d / "in.csv").string() + " -o " +
                       (d / "out").string());
    REQUIRE(rc == 0);
    REQUIRE(fs::exists(d / "out" / "reitsma.json"));
    REQUIRE(fs::exists(d / "out" / "sroc.csv"));
    REQUIRE(fs::exists(d / "out" / "manifest.json"));

    const json r = load_json(d / "out" / "reitsma.json");
    CHECK(r["sauc"].get<double>() > 0.5);
    CHECK(r["sauc"].get<double>() < 1.0);
    CHECK(r["n_studies"].get<int>() == 12);
    CHECK(r["se_hat"].get<double>() > 0.0);
    CHECK(r["tau1"].get<double>() > 0.0);

    std::ifstream sroc(d / "out" / "sroc.csv");
    std::string header;
    std::getline(sroc, header);
    CHECK(header == "fpr,tpr");

    const json m = load_json(d / "out" / "manifest.json");
    CHECK(m["command"] == "fit");
}

TEST_CASE("cli sa at p = 1 reproduces the fit output") {
    const fs::path d = fresh_dir("sa_p1");
    write_example_csv(d / "in.csv");
    REQUIRE(run(bin() + " --full-precision fit -i " + (d / "in.csv").string() + " -o " +
                (d / "fit").string()) == 0);
    REQUIRE(run(bin() + " --full-precision sa --p-grid 1 -i " + (d / "in.csv").string() +
                " -o " + (d / "sa").string()) == 0);

    const json r = load_json(d / "fit" / "reitsma.json");
    const json arr = load_json(d / "sa" / "sa.json");
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    const json& s = arr[0];
    CHECK(s["p"].get<double>() == 1.0);
    CHECK(s["alpha"].is_null());
    for (const char* k : {"mu1", "mu2", "tau1", "tau2", "rho", "loglik", "sauc"}) {
        CHECK(std::abs(s[k].get<double>() - r[k].get<double>()) <= 1e-10);
    }
    CHECK(s["converged"].get<bool>());
    REQUIRE(fs::exists(d / "sa" / "sroc_by_p.csv"));
    REQUIRE(fs::exists(d / "sa" / "trajectory.csv"));
    REQUIRE(fs::exists(d / "sa" / "unpublished.csv"));
}

TEST_CASE("cli sa over a grid emits one record per p") {
    const fs::path d = fresh_dir("sa_grid");
    write_example_csv(d / "in.csv");
    REQUIRE(run(bin() + " sa --p-grid 1,0.8,0.6 --svg -i " + (d / "in.csv").string() + " -o " +
                (d / "sa").string()) == 0);
    const json arr = load_json(d / "sa" / "sa.json");
    REQUIRE(arr.size() == 3);
    CHECK(arr[1]["p"].get<double>() == 0.8);
    CHECK(!arr[1]["alpha"].is_null());
    CHECK(fs::exists(d / "sa" / "sroc.svg"));
    CHECK(fs::exists(d / "sa" / "selection.svg"));
}

TEST_CASE("cli rejects malformed csv with exit code 2") {
    const fs::path d = fresh_dir("badcsv");
    {
        std::ofstream out(d / "bad.csv");
        out << "id,tp,fn,tn\ns1,1,2,3\n";
    }
    const int rc = run(bin() + " fit -i " + (d / "bad.csv").string() + " -o " +
                       (d / "out").string() + " 2> " + (d / "err.txt").string());
    CHECK(rc == 2);
    CHECK(slurp(d / "err.txt").find("missing column: fp") != std::string::npos);
}

TEST_CASE("cli rejects an unknown scenario with exit code 2") {
    const fs::path d = fresh_dir("badscen");
    const int rc = run(bin() + " simulate --scenario 99 -o " + (d / "out").string() + " 2> " +
                       (d / "err.txt").string());
    CHECK(rc == 2);
    CHECK(slurp(d / "err.txt").find("unknown scenario") != std::string::npos);
}

TEST_CASE("cli simulate output is byte-identical across runs and thread counts") {
    const fs::path d = fresh_dir("simdet");
    const std::string args = " simulate --scenario 1 --S 30 --reps 6 --seed 9 "
                             "--methods reitsma_p,reitsma_o -o ";
    REQUIRE(run("DTA_SA_THREADS=1 " + bin() + args + (d / "a").string()) == 0);
    REQUIRE(run("DTA_SA_THREADS=4 " + bin() + args + (d / "b").string()) == 0);
    REQUIRE(run("DTA_SA_THREADS=2 " + bin() + args + (d / "c").string()) == 0);
    const std::string a = slurp(d / "a" / "simulation.csv");
    CHECK(a == slurp(d / "b" / "simulation.csv"));
    CHECK(a == slurp(d / "c" / "simulation.csv"));
    CHECK(a.rfind("scenario,method,S,median,q1,q3,cr\n", 0) == 0);
}

TEST_CASE("cli sroc prints the area and writes the curve") {
    const fs::path d = fresh_dir("sroc");
    const int rc = run(bin() + " sroc --mu1 1.5 --mu2 1.0 --tau1 0.7 --tau2 0.9 --rho -0.4 -o " +
                       (d / "out").string() + " > " + (d / "stdout.txt").string());
    REQUIRE(rc == 0);
    const std::string out = slurp(d / "stdout.txt");
    CHECK(out.rfind("sauc ", 0) == 0);
    CHECK(fs::exists(d / "out" / "sroc.csv"));

    CHECK(run(bin() + " sroc --mu1 0 --mu2 0 --tau1 -1 --tau2 1 --rho 0 -o " +
              (d / "bad").string() + " 2> /dev/null") == 2);
}
