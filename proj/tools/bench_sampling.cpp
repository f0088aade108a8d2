// Compares the serial reference kernels against the OpenMP ones on the two
// hot loops: expression evaluation over sample points and per-sample minor
// sums of a symbolic Hessian.

#include "dhred/catalog.hpp"
#include "dhred/minkowski.hpp"
#include "dhred/sampling.hpp"

#include <chrono>
#include <cstdio>
#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dhred;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, seconds(t0, t1));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int points = argc > 1 ? std::atoi(argv[1]) : 20000;

  VariableSpace space = VariableSpace::with_surface(3, {"y", "z"});
  // representative residual: wave operator applied to a lifted radial solution
  ExprPtr r = sqrt_of(parse_expr("x1^2 + x2^2 + x3^2", space));
  ExprPtr u = sin_of(var("x0") - r) / r;
  ExprPtr residual = dalembertian(u, space);

  SamplePlan plan = default_plan();
  plan.count = points;
  plan.exclusions.push_back(r);
  SampleSet set = draw_samples(plan, {"x0", "x1", "x2", "x3"}, {residual});

  double t_serial = time_best_of(3, [&] { eval_quad_batch_serial(residual, set); });
  double t_par = time_best_of(3, [&] { eval_quad_batch(residual, set); });

  auto serial = eval_quad_batch_serial(residual, set);
  auto par = eval_quad_batch(residual, set);
  bool identical = serial.size() == par.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i)
    identical = serial[i].ok == par[i].ok && serial[i].value == par[i].value;

  MixedHessian H = mixed_hessian(var("x0") - r, space);
  SamplePlan hplan = default_plan();
  hplan.count = std::max(1, points / 8);
  hplan.exclusions.push_back(r);
  std::vector<ExprPtr> entries;
  for (const auto& row : H.h)
    for (const auto& e : row) entries.push_back(e);
  SampleSet hset = draw_samples(hplan, {"x0", "x1", "x2", "x3"}, entries);

  double h_serial = time_best_of(3, [&] { minor_sums_at_points_serial(H.h, hset); });
  double h_par = time_best_of(3, [&] { minor_sums_at_points(H.h, hset); });

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");
  std::printf("%-28s %10.4f %10.4f %7.2fx\n", "eval_quad_batch", t_serial, t_par,
              t_serial / t_par);
  std::printf("%-28s %10.4f %10.4f %7.2fx\n", "minor_sums_at_points", h_serial, h_par,
              h_serial / h_par);
  std::printf("serial/openmp results identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
