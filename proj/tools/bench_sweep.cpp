// Benchmark for the sweep kernel: serial reference vs the OpenMP grid,
// on a refined alpha grid so there is enough work per run.  Verifies
// that both paths produce identical records before reporting timings.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <omp.h>

#include "fuzzylp/flp.hpp"
#include "fuzzylp/model_io.hpp"

namespace {

fuzzylp::fuzzy_linear_program load_or_die(const std::string& path) {
  const auto src = fuzzylp::load_model_file(path);
  if (!src) {
    std::fprintf(stderr, "cannot read %s\n", path.c_str());
    std::exit(2);
  }
  auto parsed = fuzzylp::parse_model(*src);
  if (!parsed.ok()) {
    std::fprintf(stderr, "%s",
                 fuzzylp::format_diagnostics(parsed, path).c_str());
    std::exit(3);
  }
  return std::move(*parsed.model);
}

bool identical(const fuzzylp::sweep_result& a, const fuzzylp::sweep_result& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.alpha1 != rb.alpha1 || ra.alpha2 != rb.alpha2 ||
        ra.status != rb.status || ra.x != rb.x) {
      return false;
    }
    const bool both_nan = ra.objective != ra.objective &&
                          rb.objective != rb.objective;
    if (!both_nan && ra.objective != rb.objective) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string model_path = "models/textile.flp";
  int grid = 120;
  int repeats = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--model" && i + 1 < argc) {
      model_path = argv[++i];
    } else if (arg == "--grid" && i + 1 < argc) {
      grid = std::atoi(argv[++i]);
    } else if (arg == "--repeats" && i + 1 < argc) {
      repeats = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr,
                   "usage: bench_sweep [--model path] [--grid n] "
                   "[--repeats n]\n");
      return 2;
    }
  }
  if (grid < 2) grid = 2;

  const fuzzylp::fuzzy_linear_program flp = load_or_die(model_path);

  // Refined grid inside the invertible degree range.
  std::vector<double> alphas(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    alphas[static_cast<std::size_t>(i)] =
        0.002 + (0.996 * i) / (grid - 1);
  }

  std::printf("model: %s, grid %dx%d (%d solves), %d threads\n",
              model_path.c_str(), grid, grid, grid * grid,
              omp_get_max_threads());

  fuzzylp::sweep_result serial, parallel;
  double t_serial = 1e300, t_parallel = 1e300;
  for (int r = 0; r < repeats; ++r) {
    double t0 = omp_get_wtime();
    serial = fuzzylp::sweep_serial(flp, alphas, grid);
    t_serial = std::min(t_serial, omp_get_wtime() - t0);

    t0 = omp_get_wtime();
    parallel = fuzzylp::sweep(flp, alphas, grid);
    t_parallel = std::min(t_parallel, omp_get_wtime() - t0);
  }

  if (!identical(serial, parallel)) {
    std::printf("FAIL: serial and parallel sweeps disagree\n");
    return 1;
  }
  std::printf("serial:   %8.3f ms\n", 1e3 * t_serial);
  std::printf("parallel: %8.3f ms\n", 1e3 * t_parallel);
  std::printf("speedup:  %8.2fx (results identical)\n",
              t_serial / t_parallel);
  std::printf("g_max=%s g_min=%s\n",
              fuzzylp::format_number(serial.g_max).c_str(),
              fuzzylp::format_number(serial.g_min).c_str());
  return 0;
}
