#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("NOZZLE_CLI");
    REQUIRE_MESSAGE(env != nullptr, "NOZZLE_CLI must point at the built binary");
    return env;
}

fs::path scratch_dir() {
    const char* env = std::getenv("NOZZLE_TMP");
    fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "nozzle_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kQuickMarchConfig = R"(
[grid]
n_phi = 33
r_max = 8
store_targets = 9
[perturbation]
eps_list = 0, 1e-3
)";

}  // namespace

TEST_CASE("background subcommand produces tables and exits cleanly") {
    const fs::path dir = scratch_dir() / "bg";
    fs::remove_all(dir);
    CHECK(run("background --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "background" / "background.csv"));
    const std::string head = slurp(dir / "background" / "background.csv").substr(0, 64);
    CHECK(head.rfind("r,rho,U,c2,P1,P2,dP1,dP2", 0) == 0);
}

TEST_CASE("invalid configurations exit with the usage code") {
    const fs::path dir = scratch_dir();
    const fs::path bad_gamma = dir / "bad_gamma.cfg";
    write_file(bad_gamma, "[gas]\ngamma = 2.5\n");
    CHECK(run("background --config " + bad_gamma.string() + " --out " + dir.string()) == 64);

    const fs::path subsonic = dir / "subsonic.cfg";
    write_file(subsonic, "[gas]\nq0 = 0.5\n");
    CHECK(run("background --config " + subsonic.string() + " --out " + dir.string()) == 64);

    const fs::path unknown = dir / "unknown.cfg";
    write_file(unknown, "[gas]\nnonsense = 1\n");
    CHECK(run("background --config " + unknown.string() + " --out " + dir.string()) == 64);

    CHECK(run("frobnicate") == 64);
}

TEST_CASE("march subcommand writes one trace per amplitude") {
    const fs::path dir = scratch_dir() / "march";
    fs::remove_all(dir);
    const fs::path cfg = scratch_dir() / "march.cfg";
    write_file(cfg, kQuickMarchConfig);
    CHECK(run("march --config " + cfg.string() + " --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "march" / "eps_0" / "trace.csv"));
    CHECK(fs::exists(dir / "march" / "eps_0.001" / "trace.csv"));
    const std::string meta = slurp(dir / "march" / "eps_0.001" / "meta.txt");
    CHECK(meta.find("completed = 1") != std::string::npos);
}

TEST_CASE("unwritable output maps to the I/O exit code") {
    CHECK(run("background --out /dev/null/out") == 74);
}

TEST_CASE("identical config and seed give byte-identical output") {
    const fs::path dir1 = scratch_dir() / "det1";
    const fs::path dir2 = scratch_dir() / "det2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    const fs::path cfg = scratch_dir() / "det.cfg";
    write_file(cfg, R"(
[diagnostics]
ineq_members = 6
ineq_levels = 2
)");
    CHECK(run("ineq --config " + cfg.string() + " --seed 424242 --out " + dir1.string()) == 0);
    CHECK(run("ineq --config " + cfg.string() + " --seed 424242 --out " + dir2.string()) == 0);
    CHECK(slurp(dir1 / "ineq" / "ineq.csv") == slurp(dir2 / "ineq" / "ineq.csv"));
    // A different seed actually changes the sampled family.
    const fs::path dir3 = scratch_dir() / "det3";
    CHECK(run("ineq --config " + cfg.string() + " --seed 5 --out " + dir3.string()) == 0);
    CHECK(slurp(dir1 / "ineq" / "ineq.csv") != slurp(dir3 / "ineq" / "ineq.csv"));
}

TEST_CASE("tampered multiplier exponent is reported as a check failure") {
    const fs::path dir = scratch_dir() / "tamper";
    fs::remove_all(dir);
    const fs::path cfg = scratch_dir() / "tamper.cfg";
    // Restrict the sweep to the certificate block by keeping the march cheap.
    write_file(cfg, R"(
[grid]
n_phi = 33
r_max = 12
store_targets = 9
[diagnostics]
mu_override = 0.1
decay_r_lo = 2
decay_r_hi = 12
ineq_members = 4
ineq_levels = 2
)");
    CHECK(run("verify --config " + cfg.string() + " --out " + dir.string()) == 2);
    const std::string report = slurp(dir / "verify" / "report.txt");
    CHECK(report.find("FAIL certificates.mu_override") != std::string::npos);
}
