#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const std::string out = std::string(HANKELC_TEST_TMP) + "/cli_out.txt";
    const std::string err = std::string(HANKELC_TEST_TMP) + "/cli_err.txt";
    const std::string cmd = std::string(HANKELC_CLI) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string sample(const char* name) { return std::string(HANKELC_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("transform of an eigenfunction") {
    const Run r = run("transform --spec " + sample("eigen.json") + " --grid 0.1:4:32 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto xs = j.at("spec").at("axes").at(0).get<std::vector<double>>();
    const auto vs = j.at("values").get<std::vector<double>>();
    REQUIRE(xs.size() == 32);
    double err = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(vs[i] - xs[i] * std::exp(-xs[i] * xs[i] / 2)));
    CHECK(err < 1e-6);
}

TEST_CASE("transform writes csv to a file") {
    const std::string path = std::string(HANKELC_TEST_TMP) + "/cli_grid.csv";
    const Run r = run("transform --spec " + sample("eigen.json") + " --grid 1:2:2 --out " + path);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(path);
    CHECK(csv.rfind("x1,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("invalid mu is a spec error") {
    const Run r = run("transform --spec " + sample("invalid_mu.json"));
    CHECK(r.code == 2);
    CHECK(r.err.find("mu_i >= -1/2") != std::string::npos);
}

TEST_CASE("kernel of a sum of S operators") {
    const Run r = run("kernel --spec " + sample("kernel_sum.json") + " --degree 3");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("basis").size() == 1);
    const auto& terms = j.at("basis").at(0).at("terms");
    REQUIRE(terms.size() == 1);
    CHECK(terms.at(0).at("k") == nlohmann::json::array({0}));
    CHECK(terms.at(0).at("q") == "1");
    CHECK(j.at("hypothesis").at("pass").get<bool>());

    const Run r2 = run("kernel --spec " + sample("kernel_sum2.json") + " --degree 1");
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out).at("basis").size() == 2);
}

TEST_CASE("kernel of a constant operator is empty") {
    const Run r = run("kernel --spec " + sample("kernel_const.json"));
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("basis").empty());
}

TEST_CASE("kernel hypothesis failure names the axis") {
    const Run r = run("kernel --spec " + sample("kernel_product.json"));
    CHECK(r.code == 4);
    CHECK(r.err.find("axis 1") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run("verify nope").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("transform").code == 2);
    CHECK(run("transform --spec /nonexistent.json").code == 2);
    CHECK(run("transform --spec " + sample("eigen.json") + " --grid 1:2").code == 2);
    CHECK(run("transform --spec " + sample("eigen.json") + " --format xml").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("verify identities") {
    const Run r = run("verify identities");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("ok").get<bool>());
}

TEST_CASE("negative controls are reported as expected failures") {
    const Run r = run("verify liouville --negative-controls");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j.at("checks"))
        if (c.at("expected_fail").get<bool>()) {
            found = true;
            CHECK_FALSE(c.at("passed").get<bool>());
        }
    CHECK(found);
}

TEST_CASE("taylor, seminorm, pair-delta and multiplier run") {
    const Run t = run("taylor --spec " + sample("taylor.json"));
    REQUIRE(t.code == 0);
    CHECK(nlohmann::json::parse(t.out).at("coefficients").size() == 4);

    const Run s = run("seminorm --spec " + sample("seminorm.json"));
    REQUIRE(s.code == 0);
    CHECK(nlohmann::json::parse(s.out).at("bound_holds").get<bool>());

    const Run p = run("pair-delta --spec " + sample("pair_delta.json"));
    REQUIRE(p.code == 0);
    const auto pj = nlohmann::json::parse(p.out);
    CHECK(pj.at("limit_exact") == "-3");
    const auto& tr = pj.at("transform");
    CHECK(std::abs(tr.at("lhs").get<double>() - tr.at("rhs").get<double>()) <= 1e-10 * tr.at("scale").get<double>());

    const Run m = run("multiplier --spec " + sample("multiplier.json") + " --degree 1");
    REQUIRE(m.code == 0);
    CHECK(nlohmann::json::parse(m.out).at("entries").size() == 2);
}
