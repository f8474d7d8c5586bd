#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "symqfi/cli.hpp"
#include "symqfi/report.hpp"

using namespace symqfi;

namespace {

std::string tmp(const std::string& name) { return std::string(SYMQFI_TEST_TMP) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Result {
    int code;
    std::string out, err;
};

Result run_with(const std::string& command, const std::vector<std::string>& overrides) {
    RunConfig cfg = RunConfig::defaults(command);
    for (const auto& o : overrides) cfg.apply_override(o);
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config parsing and diagnostics") {
    const auto cfg = RunConfig::parse("qfi", "[model]\nkind = ring\nn = 6\n\n[psf]\np = 2\n");
    CHECK(cfg.get_string("model.kind", "") == "ring");
    CHECK(cfg.get_int("model.n", 0) == 6);
    CHECK(cfg.get_double("psf.p", 0) == 2.0);
    CHECK(cfg.get_double("model.r", 0.25) == 0.25);

    CHECK_THROWS_WITH_AS(RunConfig::parse("qfi", "[model]\nkind = pair\nbogus = 1\n"),
                         doctest::Contains("model.bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(RunConfig::parse("qfi", "[model]\nkind = pair\n[psf\n", "run.ini"),
                         doctest::Contains("run.ini:3"), ConfigError);
    CHECK_THROWS_AS(RunConfig::defaults("nonsense"), ConfigError);

    RunConfig c = RunConfig::defaults("qfi");
    c.apply_override("psf.p = 1.5");
    CHECK(c.get_double("psf.p", 0) == 1.5);
    CHECK_THROWS_AS(c.apply_override("psf.p"), ConfigError);
    c.set("model.r", "abc");
    CHECK_THROWS_AS(c.get_double("model.r", 0), ConfigError);
    c.set("study.photons", "10, 20,30");
    CHECK(c.get_list("study.photons", {}) == std::vector<double>{10, 20, 30});
}

TEST_CASE("config hash is stable and sensitive") {
    RunConfig a = RunConfig::defaults("qfi"), b = RunConfig::defaults("qfi");
    a.set("psf.p", "2");
    a.set("model.r", "0.4");
    b.set("model.r", "0.4");
    b.set("psf.p", "2");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.set("psf.p", "2.0");
    CHECK(a.hash() != b.hash());
    CHECK(RunConfig::defaults("qfi").hash() != RunConfig::defaults("eigen").hash());
}

TEST_CASE("point lists") {
    const auto pts = parse_point_list("1 2; -0.5 3e-1 ;", "model.points");
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].y == 0.3);
    CHECK_THROWS_AS(parse_point_list("1 2 3", "model.points"), ConfigError);
    CHECK_THROWS_AS(parse_point_list("", "model.points"), ConfigError);
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(4.0) == "4");
    Table t{{"a", "b"}, {{1.0, 0.5}}};
    CHECK(to_csv(t, "00ff") == "# config_hash: 00ff\na,b\n1,0.5\n");
}

TEST_CASE("qfi on the on-axis pair") {
    const auto r = run_with("qfi", {"model.kind=pair", "psf.p=1", "model.r=0.3", "check.enabled=true"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("qfi self-check violation exits with 4") {
    const auto r = run_with("qfi", {"model.kind=pair", "model.r=0.3", "check.enabled=true", "check.tolerance=1e-14"});
    CHECK(r.code == kExitCheckViolation);
}

TEST_CASE("qfi records the rectangle symbol reading") {
    const auto r = run_with("qfi", {"model.kind=rectangle", "psf.px=1", "psf.py=2", "model.x0=0.3", "model.y0=0.5",
                                    "output.json=" + tmp("rect.json")});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(tmp("rect.json")));
    CHECK(j["rectangle_reading"]["confirmed"].get<std::string>().find("momentum") != std::string::npos);
}

TEST_CASE("eigen on the ring at zero radius") {
    const auto r =
        run_with("eigen", {"model.kind=ring", "model.n=4", "model.r=0", "output.csv=" + tmp("eigen.csv")});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(tmp("eigen.csv"));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config_hash: ", 0) == 0);
    std::getline(in, line);
    CHECK(line == "index,eigenvalue,character_weight_sorted,character,character_weight");
    std::vector<double> weights;
    while (std::getline(in, line)) weights.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    CHECK(weights == std::vector<double>{1, 0, 0, 0});
}

TEST_CASE("simulate emits the study table and is reproducible") {
    const std::vector<std::string> o{"model.kind=pair", "study.photons=100,1000", "study.trials=20",
                                     "study.seed=4", "output.csv=" + tmp("sim.csv"), "output.json=" + tmp("sim.json")};
    REQUIRE(run_with("simulate", o).code == kExitOk);
    const std::string csv1 = slurp(tmp("sim.csv")), json1 = slurp(tmp("sim.json"));
    auto o2 = o;
    o2.push_back("study.threads=3");
    // thread count enters the hash; compare the data lines only
    REQUIRE(run_with("simulate", o).code == kExitOk);
    CHECK(slurp(tmp("sim.csv")) == csv1);
    CHECK(slurp(tmp("sim.json")) == json1);
    REQUIRE(run_with("simulate", o2).code == kExitOk);
    const std::string csv3 = slurp(tmp("sim.csv"));
    CHECK(csv3.substr(csv3.find('\n')) == csv1.substr(csv1.find('\n')));

    std::istringstream in(csv1);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "M,trials,mse,crb,ratio");
}

TEST_CASE("uninformative measurement exits with 3") {
    const auto r = run_with("simulate", {"model.kind=pair", "measurement.basis=direct", "study.trials=5"});
    CHECK(r.code == kExitNumericalFailure);
    CHECK(!r.err.empty());
}

TEST_CASE("config errors exit with 2") {
    CHECK(run_with("qfi", {"model.kind=hexagon"}).code == kExitConfigError);
    CHECK(run_with("sweep", {"model.kind=pair"}).code == kExitConfigError);
    CHECK(run_with("simulate", {"model.kind=rectangle"}).code == kExitConfigError);
    CHECK(run_with("decompose", {"decompose.unitary=" + tmp("missing.txt")}).code == kExitConfigError);
    CHECK(run_with("qfi", {"measurement.basis=netlist"}).code == kExitOk);  // basis unused by qfi
}

TEST_CASE("decompose a user unitary and a preset") {
    {
        std::ofstream f(tmp("u.txt"));
        f.precision(17);
        const double h = 1 / std::sqrt(2.0);
        f << "# a 2x2 unitary\n" << h << " 0 0 " << h << "\n0 " << h << " " << h << " 0\n";
    }
    auto r = run_with("decompose", {"decompose.unitary=" + tmp("u.txt"), "output.netlist=" + tmp("u.net"),
                                    "check.enabled=true"});
    CHECK(r.code == kExitOk);
    CHECK(slurp(tmp("u.net")).find("BS 0 1") != std::string::npos);

    r = run_with("decompose", {"decompose.preset=ring", "decompose.n=8", "check.enabled=true",
                               "output.json=" + tmp("ring8.json")});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(tmp("ring8.json")));
    CHECK(j["netlist"]["modes"] == 8);
    CHECK(j["table"]["rows"][0][3].get<double>() <= 1e-9);
}

TEST_CASE("sweep tabulates the closed form") {
    const auto r = run_with("sweep", {"model.kind=pair", "sweep.start=0.1", "sweep.stop=1.0", "sweep.count=4",
                                      "check.enabled=true", "output.csv=" + tmp("sweep.csv")});
    CHECK(r.code == kExitOk);
    const std::string csv = slurp(tmp("sweep.csv"));
    CHECK(csv.find("r,qfi,analytic\n") != std::string::npos);
    const auto e = run_with("sweep", {"model.kind=ring", "model.n=3", "sweep.start=0.1", "sweep.stop=1.0",
                                      "sweep.quantity=eigenvalues"});
    CHECK(e.code == kExitOk);
    CHECK(e.out.find("lambda_2") != std::string::npos);
}

TEST_CASE("matrix text parser") {
    const ComplexMatrix m = parse_matrix_text("1 0 0 1\n0 -1 2 0\n");
    CHECK(m(0, 1) == cplx(0, 1));
    CHECK(m(1, 0) == cplx(0, -1));
    CHECK_THROWS(parse_matrix_text("1 0 0\n"));
    CHECK_THROWS(parse_matrix_text("1 0\n1 0 0 0\n"));
}
