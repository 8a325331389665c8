#include "mindrace/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace mindrace::kernels {

namespace {

double scalar_sum(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double scalar_sumsq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double scalar_dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double scalar_sqdist(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void scalar_scale(double* a, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void scalar_axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scalar_magnitudes(const std::complex<double>* z, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::sqrt(z[i].real() * z[i].real() + z[i].imag() * z[i].imag());
}

std::atomic<const detail::Ops*> g_ops{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::Ops* select_initial() {
  Backend want = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("MINDRACE_KERNELS")) {
    if (std::string(env) == "scalar") want = Backend::scalar;
    if (std::string(env) == "avx2" && cpu_has_avx2()) want = Backend::avx2;
  }
  g_backend.store(want);
  return want == Backend::avx2 ? &detail::avx2_ops() : &detail::scalar_ops();
}

inline const detail::Ops& ops() {
  const detail::Ops* p = g_ops.load(std::memory_order_acquire);
  if (!p) {
    p = select_initial();
    g_ops.store(p, std::memory_order_release);
  }
  return *p;
}

}  // namespace

namespace detail {
const Ops& scalar_ops() {
  static const Ops k{scalar_sum, scalar_sumsq,  scalar_dot,       scalar_sqdist,
                     scalar_scale, scalar_axpy, scalar_magnitudes};
  return k;
}
}  // namespace detail

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  ops();
  return g_backend.load();
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2())
    throw std::runtime_error("avx2 backend not supported on this cpu");
  g_backend.store(b);
  g_ops.store(b == Backend::avx2 ? &detail::avx2_ops() : &detail::scalar_ops(),
              std::memory_order_release);
}

double sum(const double* a, std::size_t n) { return ops().sum(a, n); }
double sumsq(const double* a, std::size_t n) { return ops().sumsq(a, n); }
double dot(const double* a, const double* b, std::size_t n) { return ops().dot(a, b, n); }
double squared_distance(const double* a, const double* b, std::size_t n) {
  return ops().squared_distance(a, b, n);
}
void scale(double* a, std::size_t n, double s) { ops().scale(a, n, s); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  ops().axpy(alpha, x, y, n);
}
void magnitudes(const std::complex<double>* z, double* out, std::size_t n) {
  ops().magnitudes(z, out, n);
}

}  // namespace mindrace::kernels
