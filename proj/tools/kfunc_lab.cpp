// kfunc-lab: evaluate K-functionals and interpolation norms of instance
// files, and run the seeded identity suites.
//
//   kfunc-lab k-eval <file> --t 0.5,1,2
//   kfunc-lab norm <file> --kind interp --theta 0.5 --q inf
//   kfunc-lab verify theorem1 --seed 7 --cases 1000 --tol 1e-9 --csv out.csv
//
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 divergent norm.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kfunclab/allocation.hpp"
#include "kfunclab/errors.hpp"
#include "kfunclab/instance.hpp"
#include "kfunclab/lorentz.hpp"
#include "kfunclab/verify.hpp"

namespace {

using namespace kfunclab;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDivergent = 3;

// Accepts decimal numbers and "inf".
double parse_number(const std::string& text, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InputError(std::string("invalid value for ") + what + ": '" + text + "'");
  }
  return value;
}

int cmd_k_eval(const std::string& path, const std::vector<std::string>& t_list) {
  const SimpleVectorFunction f = to_vector_function(load_instance(path));
  const KProfile profile = vector_K_profile(f);
  std::vector<double> ts;
  for (const std::string& item : t_list) {
    const double t = parse_number(item, "--t");
    if (!(t >= 0.0)) throw InputError("--t values must be >= 0");
    ts.push_back(t);
  }
  const std::vector<double> values = eval_K_batch(profile, ts);
  std::cout << "t,K_t\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::cout << format_double(ts[i]) << ',' << format_double(values[i]) << '\n';
  }
  return kExitPass;
}

struct NormArgs {
  std::string kind;
  std::string p;
  std::string q;
  std::string theta;
};

int cmd_norm(const std::string& path, const NormArgs& args) {
  const KProfile profile = vector_K_profile(to_vector_function(load_instance(path)));
  if (args.q.empty()) throw InputError("--q is required");
  const double q = parse_number(args.q, "--q");
  double p = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  try {
    if (args.kind == "interp") {
      if (args.theta.empty()) throw InputError("--kind interp requires --theta");
      theta = parse_number(args.theta, "--theta");
      p = 1.0 / (1.0 - theta);
      value = interp_norm(profile, theta, q);
    } else {
      if (args.p.empty()) throw InputError("--kind " + args.kind + " requires --p");
      p = parse_number(args.p, "--p");
      value = args.kind == "pq" ? lorentz_pq(profile.derivative(), p, q)
                                : lorentz_pq_starstar(profile, p, q);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  std::cout << "kind,p,q,theta,value\n";
  std::cout << args.kind << ',' << format_double(p) << ',' << format_double(q) << ','
            << (std::isnan(theta) ? std::string() : format_double(theta)) << ','
            << format_double(value) << '\n';
  return kExitPass;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t cases = 0;
  std::string tol;
  std::string csv;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& args) {
  const auto suite = parse_suite(args.suite);
  if (!suite) throw InputError("unknown suite '" + args.suite + "'");
  SuiteOptions options;
  options.seed = args.seed;
  options.cases = args.cases;
  options.exec = args.serial ? Execution::kSerial : Execution::kParallel;
  if (!args.tol.empty()) {
    options.tol = parse_number(args.tol, "--tol");
  } else if (const char* env = std::getenv("KFUNCLAB_TOL_OVERRIDE"); env != nullptr && *env) {
    options.tol = parse_number(env, "KFUNCLAB_TOL_OVERRIDE");
  }
  if (options.tol < 0.0) throw InputError("tolerance must be >= 0");

  const SuiteReport report = run_suite(*suite, options);
  if (args.csv.empty()) {
    write_case_csv(std::cout, report);
    std::cout << '\n';
  } else {
    std::ofstream out(args.csv);
    if (!out) throw InputError(args.csv + ": cannot open for writing");
    write_case_csv(out, report);
  }
  write_summary_csv(std::cout, report);
  if (!report.note.empty()) std::cerr << suite_name(*suite) << ": " << report.note << '\n';
  return report.pass ? kExitPass : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-functional and real-interpolation norm toolkit"};
  app.require_subcommand(1);

  std::string instance_path;
  std::vector<std::string> t_list;
  auto* k_eval = app.add_subcommand("k-eval", "Evaluate the allocation K-functional of an instance");
  k_eval->add_option("file", instance_path, "Instance JSON file")->required();
  k_eval->add_option("--t", t_list, "Comma-separated t values")->required()->delimiter(',');

  NormArgs norm_args;
  auto* norm = app.add_subcommand("norm", "Lorentz or interpolation norm of an instance");
  norm->add_option("file", instance_path, "Instance JSON file")->required();
  norm->add_option("--kind", norm_args.kind, "pq | pq-star | interp")
      ->required()
      ->check(CLI::IsMember({"pq", "pq-star", "interp"}));
  norm->add_option("--p", norm_args.p, "Lorentz exponent p (may be inf)");
  norm->add_option("--q", norm_args.q, "Second exponent q (may be inf)");
  norm->add_option("--theta", norm_args.theta, "Interpolation parameter in (0,1)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a seeded identity suite");
  verify->add_option("suite", verify_args.suite,
                     "theorem1 | theorem2 | eq10 | eq11 | eq13 | eq14 | sp | hardy | remark7")
      ->required();
  verify->add_option("--seed", verify_args.seed, "64-bit seed");
  verify->add_option("--cases", verify_args.cases, "Number of cases (default per suite)");
  verify->add_option("--tol", verify_args.tol, "Pass threshold on max relative deviation");
  verify->add_option("--csv", verify_args.csv, "Write per-case rows to this file");
  verify->add_flag("--serial", verify_args.serial, "Use the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*k_eval) return cmd_k_eval(instance_path, t_list);
    if (*norm) return cmd_norm(instance_path, norm_args);
    if (*verify) return cmd_verify(verify_args);
  } catch (const DivergentNorm& e) {
    std::cerr << "divergent norm: " << e.what() << '\n';
    return kExitDivergent;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
