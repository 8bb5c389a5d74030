#include "bql/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace bql::fft {

namespace {

std::mutex g_planner_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int nx, int ny, int sign) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto key = std::make_tuple(nx, ny, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  // FFTW_UNALIGNED lets the cached plan run on any buffer via
  // fftw_execute_dft.
  fftw_complex* dummy = fftw_alloc_complex(static_cast<std::size_t>(nx) * ny);
  fftw_plan p = fftw_plan_dft_2d(nx, ny, dummy, dummy, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(dummy);
  g_plans.emplace(key, p);
  return p;
}

inline fftw_complex* fc(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}
inline fftw_complex* fc(const std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

void forward(const GridSpec& g, const std::complex<double>* in, std::complex<double>* out) {
  fftw_execute_dft(plan_for(g.nx, g.ny, FFTW_FORWARD), fc(in), fc(out));
}

void backward(const GridSpec& g, const std::complex<double>* in, std::complex<double>* out) {
  fftw_execute_dft(plan_for(g.nx, g.ny, FFTW_BACKWARD), fc(in), fc(out));
}

}  // namespace bql::fft
