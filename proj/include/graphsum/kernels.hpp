#pragma once

#include <cstddef>
#include <span>

// Dense inner loops used by the matrix, norm and operator code. Each kernel has
// a scalar reference version and, on x86-64, an AVX2+FMA version; the variant is
// picked once at startup from CPUID and can be forced with GRAPHSUM_KERNELS=scalar.

namespace graphsum::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  /// y = A x for row-major A (rows x cols).
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool available(Backend b) noexcept;
Backend active_backend() noexcept;
/// Switches the process-wide variant; returns false if `b` is unavailable.
bool set_backend(Backend b) noexcept;
const KernelTable& active() noexcept;

double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
double sum(std::span<const double> x);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y);

}  // namespace graphsum::kernels
