#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pjrp/errors.hpp"
#include "pjrp/harness.hpp"
#include "pjrp/io.hpp"

using namespace pjrp;

namespace {

struct Globals {
  std::uint64_t lcm_cap = cost::DensityLimits{}.lcm_cap;
  std::size_t subset_cap = cost::DensityLimits{}.subset_cap;
  std::uint64_t search_cap = harness::SolveOptions{}.search_cap;

  cost::DensityLimits limits() const {
    cost::DensityLimits l;
    l.lcm_cap = lcm_cap;
    l.subset_cap = subset_cap;
    return l;
  }

  harness::SolveOptions solve_options(unsigned threads) const {
    harness::SolveOptions o;
    o.limits = limits();
    o.search_cap = search_cap;
    o.threads = threads;
    return o;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for the 3SAT to periodic joint replenishment reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--lcm-cap", g.lcm_cap, "Largest hyperperiod the counting oracle scans");
  app.add_option("--subset-cap", g.subset_cap, "Distinct cycles admitted by inclusion-exclusion");
  app.add_option("--search-cap", g.search_cap, "Largest number of policies a solve may enumerate");

  auto* primes_cmd = app.add_subcommand("primes", "Prime-pair tools");
  primes_cmd->require_subcommand(1);
  primes_cmd->fallthrough();
  auto* select = primes_cmd->add_subcommand("select", "Select prime pairs and report the conditions");
  std::uint64_t n = 1, b = 2, b_tilde = 2, start = 0, limit = 0;
  std::optional<std::uint64_t> pp_cap;
  std::string stretch, vp_out, conditions_out;
  select->add_option("--n", n, "Number of pairs")->required();
  select->add_option("--b", b, "Largest gap within a pair")->capture_default_str();
  select->add_option("--b-tilde", b_tilde, "Density exponent")->capture_default_str();
  select->add_option("--start", start, "Smallest admissible lower prime")->required();
  select->add_option("--limit", limit, "Sieve limit")->required();
  select->add_option("--pp-cap", pp_cap, "Keep PP below this bound");
  select->add_option("--B", stretch, "Interval stretch as a rational");
  select->add_option("--out", vp_out, "Write the pair set here instead of standard output");
  select->add_option("--conditions", conditions_out, "Write the condition CSV here instead of standard error");

  auto* compile = app.add_subcommand("compile", "Build the reduction instance from a CNF and a pair set");
  std::string cnf_path, vp_path, out_path;
  compile->add_option("--cnf", cnf_path, "DIMACS file")->required();
  compile->add_option("--vp", vp_path, "Pair set JSON")->required();
  compile->add_option("--out", out_path, "Instance JSON output")->required();

  auto* eval = app.add_subcommand("eval", "Exact average cost of a policy");
  std::string instance_path, policy_path;
  eval->add_option("--instance", instance_path, "Instance or reduction JSON")->required();
  eval->add_option("--policy", policy_path, "Policy JSON")->required();

  auto* solve = app.add_subcommand("solve", "Exact minimum over a finite window");
  std::string windows_path, gamma_path;
  bool pinned = false, full = false;
  unsigned threads = 1;
  solve->add_option("--instance", instance_path, "Instance JSON");
  solve->add_option("--windows", windows_path, "Window JSON");
  solve->add_option("--gamma", gamma_path, "Reduction instance JSON");
  auto* pinned_flag = solve->add_flag("--pinned", pinned, "Constants and clauses at t*, variables between their primes");
  auto* full_flag = solve->add_flag("--full", full, "One step around t* and the pair primes");
  pinned_flag->excludes(full_flag);
  solve->add_option("--threads", threads, "Worker threads")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Recompute the reduction's inequalities exactly");
  std::string suite = "all";
  bool no_exact = false;
  verify->add_option("--gamma", gamma_path, "Reduction instance JSON")->required();
  verify->add_option("--suite", suite, "constants, variables, gap or all")
      ->check(CLI::IsMember({"constants", "variables", "gap", "all"}))
      ->capture_default_str();
  verify->add_flag("--no-exact", no_exact, "Skip exact marginal costs in the variables suite");

  auto* curve = app.add_subcommand("curve", "Bounds on one variable's marginal cost");
  std::uint32_t var = 1;
  curve->add_option("--gamma", gamma_path, "Reduction instance JSON")->required();
  curve->add_option("--var", var, "Variable index (1-based)")->required();

  auto* e2e = app.add_subcommand("reduce-e2e", "Compile, solve, extract and compare with the truth table");
  std::string mode = "pinned";
  e2e->add_option("--cnf", cnf_path, "DIMACS file")->required();
  e2e->add_option("--vp", vp_path, "Pair set JSON")->required();
  e2e->add_option("--mode", mode, "pinned or full")->check(CLI::IsMember({"pinned", "full"}))->capture_default_str();
  e2e->add_option("--threads", threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*select) {
      std::optional<Rational> B;
      if (!stretch.empty()) B = Rational::parse(stretch);
      auto vp = primes::select_vp(primes::make_params(n, b, b_tilde, B, pp_cap), start, limit);
      emit(dump(io::to_json(vp)), vp_out);
      std::ostringstream csv;
      io::write_conditions_csv(csv, primes::validate_conditions(vp));
      if (conditions_out.empty()) {
        std::cerr << csv.str();
      } else {
        io::write_file(conditions_out, csv.str());
      }
    } else if (*compile) {
      auto cnf = reduction::parse_dimacs(io::read_file(cnf_path));
      auto gamma = reduction::build_gamma(cnf, io::vpset_from_json(io::read_json_file(vp_path)));
      io::write_file(out_path, dump(io::to_json(gamma)));
    } else if (*eval) {
      auto inst = io::instance_from_json(io::read_json_file(instance_path));
      auto pol = io::policy_from_json(io::read_json_file(policy_path));
      std::cout << cost::total_average_cost(inst, pol, g.limits()).str() << "\n";
    } else if (*solve) {
      std::optional<cost::Instance> inst;
      harness::SearchWindow window;
      if (!gamma_path.empty()) {
        if (!instance_path.empty() || !windows_path.empty())
          throw ValidationError("--gamma excludes --instance and --windows");
        auto gamma = io::gamma_from_json(io::read_json_file(gamma_path));
        window = full ? harness::full_window(gamma) : harness::pinned_window(gamma);
        inst = gamma.instance;
      } else {
        if (instance_path.empty() || windows_path.empty())
          throw ValidationError("solve needs --instance with --windows, or --gamma");
        if (pinned || full) throw ValidationError("--pinned and --full apply to --gamma only");
        inst = io::instance_from_json(io::read_json_file(instance_path));
        window = io::window_from_json(io::read_json_file(windows_path));
      }
      std::cout << dump(io::to_json(harness::solve_exact(*inst, window, g.solve_options(threads))));
    } else if (*verify) {
      auto gamma = io::gamma_from_json(io::read_json_file(gamma_path));
      VerificationReport rep;
      if (suite == "constants" || suite == "all") rep.append(harness::verify_constants(gamma));
      if (suite == "variables" || suite == "all") {
        harness::ClaimOptions opt;
        opt.exact_delta = !no_exact;
        opt.limits = g.limits();
        rep.append(harness::verify_variable_claims(gamma, opt));
      }
      if (suite == "gap" || suite == "all") rep.append(reduction::satisfiability_gap(gamma).report);
      io::write_report_csv(std::cout, rep);
    } else if (*curve) {
      auto gamma = io::gamma_from_json(io::read_json_file(gamma_path));
      io::write_curve_csv(std::cout, harness::bounds_curve(gamma, var));
    } else if (*e2e) {
      auto cnf = reduction::parse_dimacs(io::read_file(cnf_path));
      auto vp = io::vpset_from_json(io::read_json_file(vp_path));
      auto rep = harness::end_to_end(cnf, vp, harness::parse_mode(mode), g.solve_options(threads));
      std::cout << dump(io::to_json(rep));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
