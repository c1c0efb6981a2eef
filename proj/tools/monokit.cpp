#include "monokit/io.hpp"
#include "monokit/report.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace monokit;

namespace {

constexpr int kInputError = 64;

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

int run_check_command(const OperatorFile& f, const std::string& mode, const SamplingPlan& plan) {
  const CheckReport r = run_check(f.op, parse_check_mode(mode), plan);
  std::cout << format_check_report(r, mode);
  return exit_code(r.verdict);
}

int run_trace(const OperatorFile& f, const std::vector<double>& z, const std::vector<double>& v) {
  if (contains_ball(f.op)) throw Error(Errc::UnsupportedVariant, "ball normal cones have no exact trace");
  const Vec zv = to_vec(z), vv = to_vec(v);
  require_dim(zv, f.dim, "--z");
  require_dim(vv, f.dim, "--v");
  std::cout << line_trace(f.op, zv, vv).describe();
  return 0;
}

int run_oracle(const OperatorFile& f, double step, const std::vector<double>& bounds, std::size_t cap) {
  if (bounds.size() != 2) throw Error(Errc::InvalidArgument, "expected --grid-bounds LO,HI");
  std::cout << format_oracle_report(operator_oracle(f.op, GridSpec{step, bounds[0], bounds[1]}, cap));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal monotonicity checks for polyhedral operators"};
  app.require_subcommand(1);
  double tol_flag = 0.0;
  app.add_option("--tol", tol_flag, "Numerical tolerance (overrides MONOKIT_TOL)");

  std::string file, mode = "lohne";
  std::uint64_t seed = 0;
  int directions = -1;
  auto* check = app.add_subcommand("check", "Run a maximality checker");
  check->add_option("file", file, "Operator file")->required();
  check->add_option("--mode", mode, "onedim | line | plane | lohne")
      ->check(CLI::IsMember({"onedim", "line", "plane", "lohne"}));
  auto* seed_opt = check->add_option("--seed", seed, "Sampling seed");
  auto* dir_opt = check->add_option("--directions", directions, "Number of random directions")->check(CLI::NonNegativeNumber);

  std::vector<double> z, v;
  auto* trace = app.add_subcommand("trace", "Print the exact trace along a line");
  trace->add_option("file", file, "Operator file")->required();
  trace->add_option("--z", z, "Base point")->delimiter(',')->required();
  trace->add_option("--v", v, "Direction")->delimiter(',')->required();

  double step = 0.0;
  std::vector<double> bounds;
  std::size_t cap = kDefaultGridCap;
  auto* oracle = app.add_subcommand("oracle", "Run the grid oracle");
  oracle->add_option("file", file, "Operator file")->required();
  oracle->add_option("--grid-step", step, "Lattice step")->required();
  oracle->add_option("--grid-bounds", bounds, "LO,HI")->delimiter(',')->required();
  oracle->add_option("--cap", cap, "Maximum number of lattice points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (app.count("--tol")) {
      if (!(tol_flag > 0)) throw Error(Errc::InvalidArgument, "--tol must be positive");
      set_tol(tol_flag);
    }
    const OperatorFile f = load_operator_file(file);
    if (*check) {
      SamplingPlan plan = f.plan.value_or(SamplingPlan{});
      if (*seed_opt) plan.seed = seed;
      if (*dir_opt) plan.n_random_directions = directions;
      return run_check_command(f, mode, plan);
    }
    if (*trace) return run_trace(f, z, v);
    return run_oracle(f, step, bounds, cap);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::UnsupportedVariant ? 2 : kInputError;
  }
}
