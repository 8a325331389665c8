#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops used by the signal chain (band averaging, RBF
// kernel distances, reduction metrics, spectrum magnitudes). Every operation
// has a scalar reference implementation and an AVX2+FMA variant; the backend
// is picked once at runtime and can be forced for equivalence testing.
namespace mindrace::kernels {

enum class Backend { scalar, avx2 };

// Backend selected at startup: AVX2 when the CPU supports it, unless the
// MINDRACE_KERNELS environment variable ("scalar" | "avx2") overrides.
Backend active_backend();
const char* backend_name(Backend b);
bool cpu_has_avx2();

// Force a backend (throws std::runtime_error if unsupported on this CPU).
void force_backend(Backend b);

double sum(const double* a, std::size_t n);
double sumsq(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void scale(double* a, std::size_t n, double s);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void magnitudes(const std::complex<double>* z, double* out, std::size_t n);

namespace detail {
struct Ops {
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_distance)(const double*, const double*, std::size_t);
  void (*scale)(double*, std::size_t, double);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*magnitudes)(const std::complex<double>*, double*, std::size_t);
};
const Ops& scalar_ops();
const Ops& avx2_ops();  // valid only when cpu_has_avx2()
}  // namespace detail

}  // namespace mindrace::kernels
