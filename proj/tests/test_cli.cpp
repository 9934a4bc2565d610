#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("PGDLAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string src() {
    const char* s = std::getenv("PGDLAB_SRC");
    REQUIRE(s != nullptr);
    return s;
}

struct RunResult {
    int exit_code;
    std::string out, err;
};

RunResult run(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / "pgdlab_cli_test";
    fs::create_directories(dir);
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd =
        bin() + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("simulate writes a schema-tagged table and a summary") {
    const fs::path out = fs::temp_directory_path() / "pgdlab_simulate";
    fs::remove_all(out);
    const auto r = run("simulate --config " + src() + "/scenarios/symmetric-riemann.cfg" +
                       " --set discretization.t_max=0.1 --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp_file(out / "simulate.csv");
    CHECK(csv.rfind("# schema=1\n", 0) == 0);
    CHECK(csv.find("t,l,x,y,P,I,J,U,V") != std::string::npos);
    CHECK(slurp_file(out / "simulate_summary.json").find("\"n_markers\":33") !=
          std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path out1 = fs::temp_directory_path() / "pgdlab_det1";
    const fs::path out2 = fs::temp_directory_path() / "pgdlab_det2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    const std::string common = "simulate --config " + src() +
                               "/scenarios/symmetric-riemann.cfg"
                               " --set discretization.t_max=0.1 --out ";
    CHECK(run(common + out1.string()).exit_code == 0);
    CHECK(run(common + out2.string()).exit_code == 0);
    CHECK(slurp_file(out1 / "simulate.csv") == slurp_file(out2 / "simulate.csv"));
}

TEST_CASE("constant-state reports the closed-form fraction") {
    const fs::path out = fs::temp_directory_path() / "pgdlab_cstate";
    fs::remove_all(out);
    const auto r = run("constant-state --config " + src() + "/scenarios/rho1-rho4.cfg" +
                       " --set discretization.t_max=0.5 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("kappa = 0.333") != std::string::npos);
    CHECK(r.out.find("holds") != std::string::npos);
    CHECK(slurp_file(out / "constant_state.csv").rfind("# schema=1\n", 0) == 0);
}

TEST_CASE("dispersion writes the growth-rate table") {
    const fs::path out = fs::temp_directory_path() / "pgdlab_disp";
    fs::remove_all(out);
    const auto r = run("dispersion --config " + src() + "/scenarios/dispersion.cfg --out " +
                       out.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp_file(out / "dispersion.csv");
    CHECK(csv.find("xi,predicted,measured") != std::string::npos);
    CHECK(csv.find("exact_mode") != std::string::npos);
    CHECK(csv.find("finite_difference") != std::string::npos);
}

TEST_CASE("missing config file exits 2 with a machine-readable error") {
    const auto r = run("simulate --config /nonexistent/nowhere.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("\"error\":\"config\"") != std::string::npos);
}

TEST_CASE("malformed config values exit 2") {
    const auto r = run("simulate --config " + src() + "/scenarios/symmetric-riemann.cfg" +
                       " --set discretization.dt=-1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("\"error\":\"config\"") != std::string::npos);
    CHECK(r.err.find("dt") != std::string::npos);
}

TEST_CASE("wrong scenario kind for a subcommand exits 2") {
    const auto r = run("constant-state --config " + src() +
                       "/scenarios/symmetric-riemann.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("constant_state") != std::string::npos);
}

TEST_CASE("runtime failures exit 3") {
    // k_hat0 outside (0,1) trips the closed-form stability guard at runtime
    const auto r = run("constant-state --config " + src() + "/scenarios/rho1-rho4.cfg" +
                       " --set scenario.k_hat0=1.5 --set discretization.t_max=0.05");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("\"error\":\"runtime\"") != std::string::npos);
}
