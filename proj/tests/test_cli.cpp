#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = SDWAVE_CLI_PATH;

struct Run {
    int rc = -1;
    std::string out;
};

Run run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "run.log";
    const std::string cmd = cli + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

fs::path make_config(const std::string& body, const std::string& name = "run.cfg") {
    const fs::path dir =
        fs::temp_directory_path() / ("sdwave_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / name) << body;
    return dir;
}

std::string base_config(const std::string& out_dir,
                        const std::string& nonlinearity = "arctan") {
    return "[operator]\n"
           "n_grid = 800\n"
           "n_modes = 8\n"
           "[nonlinearity]\n"
           "name = " + nonlinearity + "\n"
           "[dynamics]\n"
           "k = 1\n"
           "dt = 0.01\n"
           "T = 1\n"
           "[checks]\n"
           "n_samples = 100\n"
           "n_boundary_samples = 100\n"
           "n_initial = 4\n"
           "[output]\n"
           "out_dir = " + out_dir + "\n";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("basis prints the spectrum and partition") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg") << base_config((dir / "out").string());
    const Run r = run_cli("basis --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 0);
    CHECK(r.out.find("mu_1 = 9.869") != std::string::npos);
    CHECK(r.out.find("kernel dim = 1") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "basis.csv"));

    // k = 3 exposes two minus modes.
    std::ofstream(dir / "k3.cfg") << base_config((dir / "out").string()) +
                                         "[dynamics]\nk = 3\n";
    const Run r3 = run_cli("basis --config " + (dir / "k3.cfg").string(), dir);
    CHECK(r3.rc == 0);
    CHECK(r3.out.find("dim E_minus = 2") != std::string::npos);
}

TEST_CASE("malformed config exits 2 and names the key") {
    const fs::path dir = make_config(
        "[operator]\nn_grid = 800\n[dynamics]\nwavelength = 3\n");
    const Run r = run_cli("check --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 2);
    CHECK(r.out.find("wavelength") != std::string::npos);
    CHECK(r.out.find("line 4") != std::string::npos);
}

TEST_CASE("missing config file exits 2") {
    const fs::path dir = make_config("");
    const Run r = run_cli("basis --config /nonexistent.cfg", dir);
    CHECK(r.rc == 2);
}

TEST_CASE("inconclusive condition exits 4") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg")
        << base_config((dir / "out").string(), "zero");
    const Run r = run_cli("index --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 4);
}

TEST_CASE("check and index succeed on the arctan example") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg") << base_config((dir / "out").string());
    const std::string cfg = (dir / "run.cfg").string();

    CHECK(run_cli("check --config " + cfg, dir).rc == 0);
    const Run idx = run_cli("index --config " + cfg, dir);
    CHECK(idx.rc == 0);
    CHECK(idx.out.find("K_infty nonempty: true") != std::string::npos);
    CHECK(idx.out.find("\"exponent\": 1") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    const fs::path dir = make_config("");
    for (const std::string cmd : {"index", "block"}) {
        std::ofstream(dir / "a.cfg") << base_config((dir / "out_a").string());
        std::ofstream(dir / "b.cfg") << base_config((dir / "out_b").string());
        const Run ra = run_cli(cmd + " --config " + (dir / "a.cfg").string(), dir);
        const Run rb = run_cli(cmd + " --config " + (dir / "b.cfg").string(), dir);
        CHECK(ra.rc == 0);
        CHECK(rb.rc == 0);
        const std::string name = cmd + ".json";
        CHECK(slurp(dir / "out_a" / name) == slurp(dir / "out_b" / name));
        CHECK_FALSE(slurp(dir / "out_a" / name).empty());
    }
}

TEST_CASE("seed override changes sampled reports") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg") << base_config((dir / "outs").string());
    const std::string cfg = (dir / "run.cfg").string();
    const Run r1 = run_cli("block --config " + cfg + " --seed 1", dir);
    const std::string first = slurp(dir / "outs" / "block.json");
    const Run r2 = run_cli("block --config " + cfg + " --seed 2", dir);
    CHECK(r1.rc == 0);
    CHECK(r2.rc == 0);
    CHECK(first != slurp(dir / "outs" / "block.json"));
}

TEST_CASE("simulate writes trajectory CSVs with the documented header") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg") << base_config((dir / "traj").string());
    const Run r = run_cli("simulate --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 0);
    bool found = false;
    for (const auto& e : fs::directory_iterator(dir / "traj")) {
        if (e.path().filename().string().rfind("traj_", 0) == 0) {
            found = true;
            const std::string csv = slurp(e.path());
            CHECK(csv.rfind("t,Enorm,Qnorm,w1_norm,w2_norm,phi_functional\n", 0) ==
                  0);
        }
    }
    CHECK(found);
}

TEST_CASE("probe-divergence reports the unit slope") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg")
        << base_config((dir / "out").string()) + "[dynamics]\nT = 20\n";
    const Run r =
        run_cli("probe-divergence --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 0);
    CHECK(r.out.find("\"expected_slope\": 1.0") != std::string::npos);
}

TEST_CASE("connect reports the clause walk for arctan") {
    const fs::path dir = make_config("");
    std::ofstream(dir / "run.cfg") << base_config((dir / "out").string());
    const Run r = run_cli("connect --config " + (dir / "run.cfg").string(), dir);
    CHECK(r.rc == 0);
    CHECK(r.out.find("\"clause_name\": \"none\"") != std::string::npos);
}
