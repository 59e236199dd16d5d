#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "voapf/serialize.hpp"

#ifndef VOAPF_CLI_PATH
#define VOAPF_CLI_PATH "voapf"
#endif

using namespace voapf;

namespace {

struct RunResult {
    int status;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(VOAPF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("partition subcommand emits the reference series") {
    RunResult r = run("partition --model heisenberg:1 --genus 1 --trunc 2 --points builtin:g1a");
    CHECK(r.status == 0);
    QSeries z = qseries_from_json(r.output.substr(0, r.output.rfind('}') + 1));
    CHECK(z.coeff({0}) == 1);
    CHECK(z.coeff({1}) == rat(-1, 4));
    CHECK(z.coeff({2}) == rat(1, 4));
    CHECK(r.output.find("u_region_radius") != std::string::npos);
}

TEST_CASE("reruns are byte-identical and thread-count independent") {
    std::string args = "partition --model heisenberg:2 --genus 2 --trunc 2 --points builtin:g2a";
    RunResult a = run(args + " --threads 1");
    RunResult b = run(args + " --threads 1");
    CHECK(a.output == b.output);
    RunResult c = run(args + " --threads 4");
    RunResult d = run(args + " --threads 16");
    CHECK(a.output == c.output);
    CHECK(a.output == d.output);
}

TEST_CASE("oracle agrees with the partition series") {
    RunResult p = run("partition --model lattice:A1 --genus 1 --trunc 3 --points builtin:g1b");
    RunResult o = run("oracle --model lattice:A1 --trunc 3 --points builtin:g1b");
    REQUIRE(p.status == 0);
    REQUIRE(o.status == 0);
    QSeries zp = qseries_from_json(p.output);
    QSeries zo = qseries_from_json(o.output);
    CHECK(zp == zo);
}

TEST_CASE("theta subcommand") {
    RunResult r = run("theta --lattice E8 --trunc 3");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"240\"") != std::string::npos);
    CHECK(r.output.find("\"2160\"") != std::string::npos);
    CHECK(r.output.find("\"6720\"") != std::string::npos);
}

TEST_CASE("csv output has exponent columns plus numerator and denominator") {
    RunResult r =
        run("partition --model heisenberg:1 --trunc 1 --points builtin:g1a --out csv");
    CHECK(r.status == 0);
    CHECK(r.output.find("n1,num,den") != std::string::npos);
    CHECK(r.output.find("1,-1,4") != std::string::npos);
}

TEST_CASE("exit codes: usage, budget, domain") {
    CHECK(run("nosuchcommand").status == 2);
    CHECK(run("partition --model heisenberg:2 --trunc 6 --budget 3").status == 3);
    CHECK(run("partition --model heisenberg:1 --trunc 1 --points builtin:g1a --variant sep:9")
              .status == 4);
    CHECK(run("theta --lattice NoSuchLattice").status == 4);
}

TEST_CASE("json round trips for series, lattices and points") {
    QSeries s(2, 3);
    s.set_coeff({1, 2}, rat(-7, 3));
    s.set_coeff({0, 0}, Rat(1));
    QSeries back = qseries_from_json(qseries_to_json(s));
    CHECK(back == s);

    EvenLattice L = e8_lattice();
    EvenLattice Lback = lattice_from_json(lattice_to_json(L));
    CHECK(Lback.gram == L.gram);
    CHECK(Lback.name == L.name);

    PointConfig pts = PointConfig::of({Rat(13), Rat(7), rat(7, 2), Rat(1)});
    PointConfig pback = points_from_json(points_to_json(pts));
    CHECK(pback.all() == pts.all());
}

TEST_CASE("user lattices load from json files") {
    std::string path = "/tmp/voapf_test_a1.json";
    {
        std::ofstream out(path);
        out << lattice_to_json(a1_lattice());
    }
    RunResult r = run("theta --lattice @" + path + " --trunc 2");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"2\"") != std::string::npos);
    std::remove(path.c_str());
}
