#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripm/annealing.hpp"
#include "tripm/barrier.hpp"
#include "tripm/gd.hpp"
#include "tripm/ipm.hpp"
#include "tripm/problem.hpp"
#include "tripm/trace_io.hpp"
#include "tripm/two_phase.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tripm;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProblemPtr problem;
  std::string solver;
  json solver_params;
  Vector x0;
  std::string trace_path, cert_path;
};

double require_num(const json& obj, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ConfigError("missing or non-numeric solver parameter '" + key + "'");
  return obj[key].get<double>();
}

double opt_num(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? require_num(obj, key) : fallback;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("problem") || !j["problem"].contains("name"))
    throw ConfigError("missing key 'problem.name'");
  ParamMap params;
  if (j["problem"].contains("params"))
    for (auto& [k, v] : j["problem"]["params"].items()) params[k] = v.get<double>();
  try {
    cfg.problem = builtin_problem(j["problem"]["name"].get<std::string>(), params);
  } catch (const SolverError& e) {
    throw ConfigError(e.what());
  }

  if (!j.contains("solver")) throw ConfigError("missing key 'solver'");
  cfg.solver = j["solver"].get<std::string>();
  cfg.solver_params = j.value("solver_params", json::object());

  if (!j.contains("x0") || !j["x0"].is_array())
    throw ConfigError("missing key 'x0' (array)");
  cfg.x0.resize(j["x0"].size());
  for (size_t i = 0; i < j["x0"].size(); ++i) cfg.x0(i) = j["x0"][i].get<double>();
  if (cfg.x0.size() != cfg.problem->dim())
    throw ConfigError("x0 dimension does not match the problem");

  if (j.contains("output")) {
    cfg.trace_path = j["output"].value("trace_path", "");
    cfg.cert_path = j["output"].value("cert_path", "");
  }
  return cfg;
}

IPMParams ipm_params_from_json(const Problem& p, const json& sp) {
  IPMParams params;
  params.mu = require_num(sp, "mu");
  params.tau_l = require_num(sp, "tau_l");
  params.mode = sp.value("mode", std::string("nonconvex")) == "convex"
                    ? CurvatureMode::Convex
                    : CurvatureMode::Nonconvex;
  SmallMuCheck smc =
      validate_small_mu(params.mu, params.tau_l, p.lip().L1, p.lip().L2, params.mode);
  for (const auto& w : smc.warnings) std::cerr << "warning: " << w << "\n";
  EtaPair eta = eta_params(params.mu, params.tau_l, p.lip().L1, params.mode);
  params.tau_c = std::min(opt_num(sp, "tau_c", smc.tau_c), 1.0 - 1e-12);
  params.eta_s = opt_num(sp, "eta_s", eta.eta_s);
  params.eta_x = opt_num(sp, "eta_x", eta.eta_x);
  params.max_iters = static_cast<long>(opt_num(sp, "max_iters", 1000000));
  return params;
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  fs::path fp(path);
  if (fp.has_parent_path()) fs::create_directories(fp.parent_path());
  std::ofstream out(fp);
  if (!out) throw ConfigError("cannot write to '" + path + "'");
  out << content;
}

struct RunOutcome {
  int exit_code = 0;
  std::string outcome;  // "certificate", "iteration_limit", "verification_failed"
  long iterations = 0;
  double final_value = 0;
};

RunOutcome execute(const RunConfig& cfg) {
  const Problem& p = *cfg.problem;
  const json& sp = cfg.solver_params;
  RunOutcome out;

  auto emit_trace = [&](const std::vector<IterateRecord>& trace) {
    if (cfg.trace_path.empty()) return;
    std::ostringstream os;
    write_trace_csv(os, trace);
    write_file(cfg.trace_path, os.str());
  };

  if (cfg.solver == "trust_ipm") {
    IPMResult res = trust_ipm(p, ipm_params_from_json(p, sp), cfg.x0);
    emit_trace(res.trace);
    out.iterations = static_cast<long>(res.trace.size());
    if (res.status == IPMStatus::Converged) {
      write_file(cfg.cert_path, certificate_to_json(res.certificate));
      out.outcome = "certificate";
      out.final_value = p.f(res.x);
    } else {
      out.outcome = "iteration_limit";
      out.exit_code = 2;
      out.final_value = p.f(res.x);
    }
  } else if (cfg.solver == "annealed") {
    AnnealConfig ac;
    ac.mu0 = require_num(sp, "mu0");
    ac.eps = require_num(sp, "eps");
    ac.R = require_num(sp, "R");
    ac.tau_l = require_num(sp, "tau_l");
    ac.max_outer = static_cast<long>(opt_num(sp, "max_outer", 64));
    ac.inner_max_iters = static_cast<long>(opt_num(sp, "max_iters", 1000000));
    ac.zeta = opt_num(sp, "zeta", 0.0);
    AnnealResult res = annealed_ipm(p, ac, cfg.x0);
    emit_trace(res.last_inner_trace);
    for (const auto& o : res.outer) out.iterations += o.inner_iters;
    out.final_value = p.f(res.x);
    if (res.converged) {
      json summary = {{"terminating_j", res.terminating_j},
                      {"f", p.f(res.x)},
                      {"x", std::vector<double>(res.x.data(), res.x.data() + res.x.size())}};
      write_file(cfg.cert_path, summary.dump(2) + "\n");
      out.outcome = "certificate";
    } else {
      out.outcome = "iteration_limit";
      out.exit_code = 2;
    }
  } else if (cfg.solver == "two_phase") {
    TwoPhaseConfig tc;
    tc.eps_opt = require_num(sp, "eps_opt");
    tc.eps_inf = require_num(sp, "eps_inf");
    tc.max_iters = static_cast<long>(opt_num(sp, "max_iters", 1000000));
    for (const auto& w : tc.validate(p)) std::cerr << "warning: " << w << "\n";
    TwoPhaseResult res = two_phase_ipm(cfg.problem, tc, cfg.x0);
    emit_trace(res.phase_one_ran ? res.phase1_trace : res.phase2_trace);
    out.iterations =
        static_cast<long>(res.phase1_trace.size() + res.phase2_trace.size());
    if (res.status == TwoPhaseStatus::Certified) {
      write_file(cfg.cert_path, certificate_to_json(res.certificate));
      out.outcome = "certificate";
      out.final_value = p.f(res.certificate.x);
    } else {
      out.outcome = "iteration_limit";
      out.exit_code = 2;
    }
  } else if (cfg.solver == "gd_fixed" || cfg.solver == "gd_adaptive") {
    GDTrace trace;
    Vector xf = cfg.x0;
    if (cfg.solver == "gd_fixed") {
      trace = fixed_step_gd(p, require_num(sp, "mu"), require_num(sp, "alpha"),
                            cfg.x0, static_cast<long>(opt_num(sp, "max_iters", 1000000)),
                            opt_num(sp, "tau_l", 1.0));
      if (!trace.rows.empty()) xf = trace.rows.back().x;
    } else {
      AdaptiveGDResult res =
          adaptive_gd(p, require_num(sp, "mu"), require_num(sp, "tau_l"), cfg.x0,
                      static_cast<long>(opt_num(sp, "max_iters", 1000000)));
      trace = std::move(res.trace);
      xf = res.x;
    }
    if (!cfg.trace_path.empty()) {
      std::ostringstream os;
      write_gd_trace_csv(os, trace);
      write_file(cfg.trace_path, os.str());
    }
    out.iterations = static_cast<long>(trace.rows.size());
    out.final_value = p.f(xf);
    if (trace.outcome == GDOutcome::Converged) {
      out.outcome = "certificate";
    } else if (trace.outcome == GDOutcome::LeftFeasibleRegion) {
      out.outcome = "left_feasible_region";
      out.exit_code = 3;
    } else {
      out.outcome = "iteration_limit";
      out.exit_code = 2;
    }
  } else {
    throw ConfigError("unknown solver '" + cfg.solver + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive trust-region log-barrier interior point solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir, sweep_param, sweep_values;
  std::optional<double> mu_override;
  std::optional<long> max_iters_override;

  CLI::App* solve = app.add_subcommand("solve", "run one configured solve");
  solve->add_option("config", config_path)->required();
  solve->add_option("--mu", mu_override, "override solver_params.mu");
  solve->add_option("--max-iters", max_iters_override, "override solver_params.max_iters");
  solve->add_option("--out", out_dir, "directory for trace.csv and certificate.json");

  CLI::App* sweep = app.add_subcommand("sweep", "run one solve per parameter value");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--param", sweep_param)->required();
  sweep->add_option("--values", sweep_values, "comma-separated list")->required();
  sweep->add_option("--out", out_dir, "directory for summary.csv");

  CLI::App* chk = app.add_subcommand("check-derivs", "finite-difference check at x0");
  chk->add_option("config", config_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);

    if (chk->parsed()) {
      DerivativeReport rep = check_derivatives(*cfg.problem, cfg.x0, 1e-5);
      std::cout << "max_grad_err=" << format_double(rep.max_grad_err)
                << " max_jac_err=" << format_double(rep.max_jac_err)
                << " max_hess_err=" << format_double(rep.max_hess_err)
                << " pass=" << (rep.pass ? "true" : "false") << "\n";
      return rep.pass ? 0 : 3;
    }

    if (solve->parsed()) {
      if (mu_override) cfg.solver_params["mu"] = *mu_override;
      if (max_iters_override) cfg.solver_params["max_iters"] = *max_iters_override;
      if (!out_dir.empty()) {
        cfg.trace_path = (fs::path(out_dir) / "trace.csv").string();
        cfg.cert_path = (fs::path(out_dir) / "certificate.json").string();
      }
      RunOutcome out = execute(cfg);
      std::cout << "outcome=" << out.outcome << " iterations=" << out.iterations
                << " f=" << format_double(out.final_value) << "\n";
      return out.exit_code;
    }

    // sweep
    std::vector<double> values;
    std::stringstream ss(sweep_values);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) values.push_back(std::stod(tok));
    if (values.empty()) throw ConfigError("sweep requires a non-empty values list");

    std::ostringstream summary;
    summary << "param,value,outcome,iterations,final_value,wall_ms\n";
    for (double v : values) {
      RunConfig run_cfg = cfg;
      run_cfg.solver_params[sweep_param] = v;
      run_cfg.trace_path.clear();
      run_cfg.cert_path.clear();
      auto t0 = std::chrono::steady_clock::now();
      RunOutcome out;
      try {
        out = execute(run_cfg);
      } catch (const SolverError& e) {
        out.outcome = std::string("error:") + e.what();
      }
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      summary << sweep_param << ',' << format_double(v) << ',' << out.outcome << ','
              << out.iterations << ',' << format_double(out.final_value) << ','
              << format_double(ms) << "\n";
    }
    std::cout << summary.str();
    if (!out_dir.empty())
      write_file((fs::path(out_dir) / "summary.csv").string(), summary.str());
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const CertificateVerificationFailed& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
