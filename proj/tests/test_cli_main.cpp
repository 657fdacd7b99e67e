// End-to-end tests of the command-line front end: each case shells out to the
// built binary and inspects exit codes and emitted files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "tripm_cli_tests";

void write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << content;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& stdout_file = {},
        const fs::path& stderr_file = {}) {
  std::string cmd = std::string(TRIPM_CLI_PATH) + " " + args;
  if (!stdout_file.empty()) cmd += " >" + stdout_file.string();
  if (!stderr_file.empty()) cmd += " 2>" + stderr_file.string();
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("solve: trust_ipm on lp1d writes trace and certificate") {
  fs::path cfg = kWork / "lp1d.json";
  write(cfg, R"({"problem": {"name": "lp1d"}, "solver": "trust_ipm",
    "solver_params": {"mu": 0.1, "tau_l": 2.0, "mode": "nonconvex"},
    "x0": [1.0]})");
  fs::path outdir = kWork / "run_lp1d";
  CHECK(run("solve " + cfg.string() + " --out " + outdir.string(),
            kWork / "out.txt", kWork / "err.txt") == 0);
  std::string trace = slurp(outdir / "trace.csv");
  CHECK(trace.rfind("k,psi,grad_norm,min_slack,y_norm1,r,alpha,delta,model,s_ratio,"
                    "fj1,fj2",
                    0) == 0);
  CHECK(slurp(outdir / "certificate.json").find("FritzJohn") != std::string::npos);
}

TEST_CASE("solve: missing key is a config error naming the key") {
  fs::path cfg = kWork / "missing_mu.json";
  write(cfg, R"({"problem": {"name": "lp1d"}, "solver": "trust_ipm",
    "solver_params": {"tau_l": 2.0}, "x0": [1.0]})");
  fs::path err = kWork / "missing_mu.err";
  CHECK(run("solve " + cfg.string(), kWork / "out.txt", err) == 1);
  CHECK(slurp(err).find("'mu'") != std::string::npos);
}

TEST_CASE("solve: two_phase on infeasible_1d emits an Infeasible certificate") {
  fs::path cfg = kWork / "inf.json";
  write(cfg, R"({"problem": {"name": "infeasible_1d"}, "solver": "two_phase",
    "solver_params": {"eps_opt": 0.05, "eps_inf": 0.1}, "x0": [0.0]})");
  fs::path outdir = kWork / "run_inf";
  CHECK(run("solve " + cfg.string() + " --out " + outdir.string(),
            kWork / "out.txt", kWork / "err.txt") == 0);
  CHECK(slurp(outdir / "certificate.json").find("\"kind\": \"Infeasible\"") !=
        std::string::npos);
}

TEST_CASE("solve: --max-iters override surfaces IterationLimit as exit 2") {
  fs::path cfg = kWork / "lp1d.json";  // reuses the first config
  CHECK(run("solve " + cfg.string() + " --max-iters 3", kWork / "out.txt",
            kWork / "err.txt") == 2);
}

TEST_CASE("solve: gd_adaptive converges") {
  fs::path cfg = kWork / "gd.json";
  write(cfg, R"({"problem": {"name": "lp1d"}, "solver": "gd_adaptive",
    "solver_params": {"mu": 0.5, "tau_l": 1.0}, "x0": [1.0]})");
  CHECK(run("solve " + cfg.string(), kWork / "out.txt", kWork / "err.txt") == 0);
}

TEST_CASE("sweep: one row per value; empty list is a config error") {
  fs::path cfg = kWork / "lp1d.json";
  fs::path out = kWork / "sweep.txt";
  CHECK(run("sweep " + cfg.string() + " --param mu --values 0.1,0.05,0.025", out,
            kWork / "err.txt") == 0);
  std::stringstream ss(slurp(out));
  std::string line;
  int rows = 0;
  bool header_ok = false;
  while (std::getline(ss, line)) {
    if (line.rfind("param,value,outcome", 0) == 0)
      header_ok = true;
    else if (line.rfind("mu,", 0) == 0)
      ++rows;
  }
  CHECK(header_ok);
  CHECK(rows == 3);

  CHECK(run("sweep " + cfg.string() + " --param mu --values ,", kWork / "out.txt",
            kWork / "err.txt") == 1);
}

TEST_CASE("check-derivs") {
  fs::path cfg = kWork / "lp1d.json";
  fs::path out = kWork / "derivs.txt";
  CHECK(run("check-derivs " + cfg.string(), out, kWork / "err.txt") == 0);
  CHECK(slurp(out).find("pass=true") != std::string::npos);
}

TEST_CASE("config errors: unknown problem, bad x0 dimension") {
  fs::path cfg = kWork / "bad_problem.json";
  write(cfg, R"({"problem": {"name": "nope"}, "solver": "trust_ipm",
    "solver_params": {"mu": 0.1, "tau_l": 1.0}, "x0": [1.0]})");
  CHECK(run("solve " + cfg.string(), kWork / "out.txt", kWork / "err.txt") == 1);

  fs::path cfg2 = kWork / "bad_dim.json";
  write(cfg2, R"({"problem": {"name": "lp1d"}, "solver": "trust_ipm",
    "solver_params": {"mu": 0.1, "tau_l": 1.0}, "x0": [1.0, 2.0]})");
  CHECK(run("solve " + cfg2.string(), kWork / "out.txt", kWork / "err.txt") == 1);
}
