// Benchmark comparing the serial reference kernels with the OpenMP variants
// on the hot paths: multiplier application, pointwise products, pairwise
// reductions, the w-system right-hand side and one IF-RK4 step.
//
//   bql_bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "bql/dynamics.hpp"
#include "bql/kernels.hpp"
#include "bql/reformulate.hpp"
#include "bql/symbol.hpp"
#include "bql/synth.hpp"

using namespace bql;
using kernels::Exec;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up (also builds FFT plans)
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

void bench_grid(int n, int reps) {
  const GridSpec g{n, n, 16.0, 16.0};
  std::printf("\ngrid %dx%d (threads: %d)\n", n, n, kernels::thread_count());
  std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

  Field a = random_real_field(g, 1, n / 4, 2.0);
  Field b = random_real_field(g, 2, n / 4, 2.0);
  Field dst(g, Rep::Physical);
  std::vector<cplx> table(g.size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      table[g.index(ix, iy)] = std::polar(1.0, -0.01 * phi_symbol(g.kx(ix), g.ky(iy)));

  for (Exec mode : {Exec::Serial, Exec::Parallel}) (void)mode;

  double s, p;
  s = time_ms([&] { kernels::mul(dst.data(), a.data(), b.data(), g.size(), Exec::Serial); }, reps * 4);
  p = time_ms([&] { kernels::mul(dst.data(), a.data(), b.data(), g.size(), Exec::Parallel); }, reps * 4);
  report("pointwise product", s, p);

  s = time_ms([&] { kernels::mul_inplace(dst.data(), table.data(), g.size(), Exec::Serial); }, reps * 4);
  p = time_ms([&] { kernels::mul_inplace(dst.data(), table.data(), g.size(), Exec::Parallel); }, reps * 4);
  report("multiplier table", s, p);

  s = time_ms([&] { (void)kernels::sum_abs2(a.data(), g.size(), Exec::Serial); }, reps * 4);
  p = time_ms([&] { (void)kernels::sum_abs2(a.data(), g.size(), Exec::Parallel); }, reps * 4);
  report("pairwise |.|^2 reduction", s, p);

  const StateW w = differentiate_to_w(
      diagonalize({random_real_field(g, 3, n / 4, 1.0, 0.01),
                   random_real_field(g, 4, n / 4, 1.0, 0.01)}));
  kernels::set_default_exec(Exec::Serial);
  s = time_ms([&] { (void)rhs_w(w); }, reps);
  kernels::set_default_exec(Exec::Parallel);
  p = time_ms([&] { (void)rhs_w(w); }, reps);
  report("rhs_w evaluation", s, p);

  kernels::set_default_exec(Exec::Serial);
  s = time_ms([&] { (void)step_ifrk4(w, 1e-3); }, reps);
  kernels::set_default_exec(Exec::Parallel);
  p = time_ms([&] { (void)step_ifrk4(w, 1e-3); }, reps);
  report("if-rk4 step (cold tables)", s, p);

  // Sustained path: simulate() builds the multiplier tables once and the
  // trajectory keeps only the endpoints.
  const int steps = 16;
  SimulateOptions opts;
  opts.save_every = steps;
  kernels::set_default_exec(Exec::Serial);
  s = time_ms([&] { (void)simulate(w, steps * 1e-3, 1e-3, opts); }, reps) / steps;
  kernels::set_default_exec(Exec::Parallel);
  p = time_ms([&] { (void)simulate(w, steps * 1e-3, 1e-3, opts); }, reps) / steps;
  report("if-rk4 step (sustained)", s, p);
  kernels::set_default_exec(Exec::Parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  if (quick) {
    bench_grid(64, 3);
  } else {
    bench_grid(128, 10);
    bench_grid(256, 4);
  }
  return 0;
}
