// Times each parallel kernel against its serial reference and checks that
// both produce the same numbers.
//
//   bench_kernels [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "kfunclab/allocation.hpp"
#include "kfunclab/embedding.hpp"
#include "kfunclab/parallel.hpp"
#include "kfunclab/random.hpp"
#include "kfunclab/verify.hpp"

using namespace kfunclab;

namespace {

double seconds(const std::function<void()>& body, int repetitions) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repetitions; ++r) body();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count() / repetitions;
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name.c_str(), serial,
              parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int repetitions = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("OpenMP %s, %d thread(s)\n", openmp_enabled() ? "on" : "off", max_threads());

  for (Suite suite : {Suite::kTheorem1, Suite::kEq10, Suite::kEq11, Suite::kEq14}) {
    SuiteOptions options;
    options.seed = 42;
    SuiteReport serial_report;
    SuiteReport parallel_report;
    options.exec = Execution::kSerial;
    const double serial = seconds([&] { serial_report = run_suite(suite, options); }, repetitions);
    options.exec = Execution::kParallel;
    const double parallel =
        seconds([&] { parallel_report = run_suite(suite, options); }, repetitions);
    bool same = serial_report.cases.size() == parallel_report.cases.size();
    for (std::size_t i = 0; same && i < serial_report.cases.size(); ++i) {
      same = serial_report.cases[i].rel_dev == parallel_report.cases[i].rel_dev &&
             serial_report.cases[i].extra == parallel_report.cases[i].extra;
    }
    report("verify " + std::string(suite_name(suite)), serial, parallel, same);
  }

  CaseRng rng(7, 0);
  SimpleVectorFunction f;
  for (int i = 0; i < 4; ++i) f.add(rng.log_uniform2(-2.0, 2.0), random_profile(rng, 4));
  double serial_value = 0.0;
  double parallel_value = 0.0;
  const double serial = seconds(
      [&] { serial_value = grid_alloc_oracle(f, 1.0, 120, Execution::kSerial); }, repetitions);
  const double parallel = seconds(
      [&] { parallel_value = grid_alloc_oracle(f, 1.0, 120, Execution::kParallel); }, repetitions);
  report("grid_alloc_oracle 4x120", serial, parallel, serial_value == parallel_value);

  const KProfile profile = random_profile(rng, 4, -2.0, 2.0);
  SimpleVectorFunction serial_cells;
  SimpleVectorFunction parallel_cells;
  const double disc_serial = seconds(
      [&] {
        serial_cells = tp_discretize(profile, 2.0, 1e-8, 1e8, 256.0, CellScale::kGeometricMid,
                                     Execution::kSerial);
      },
      repetitions);
  const double disc_parallel = seconds(
      [&] {
        parallel_cells = tp_discretize(profile, 2.0, 1e-8, 1e8, 256.0, CellScale::kGeometricMid,
                                       Execution::kParallel);
      },
      repetitions);
  bool same = serial_cells.size() == parallel_cells.size();
  for (std::size_t i = 0; same && i < serial_cells.size(); ++i) {
    same = serial_cells.cells()[i].mu == parallel_cells.cells()[i].mu &&
           serial_cells.cells()[i].profile == parallel_cells.cells()[i].profile;
  }
  report("tp_discretize 16 decades", disc_serial, disc_parallel, same);
  return 0;
}
