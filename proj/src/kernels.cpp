#include "graphsum/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace graphsum::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(GRAPHSUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_initial() noexcept {
  const char* forced = std::getenv("GRAPHSUM_KERNELS");
  if (forced && std::strcmp(forced, "scalar") == 0) return &detail::kScalarTable;
  if (const KernelTable* t = avx2_table()) return t;
  return &detail::kScalarTable;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{pick_initial()};
  return table;
}

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("kernels::") + what + ": length mismatch");
}

}  // namespace

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* avx2_table() noexcept {
#if defined(GRAPHSUM_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

bool available(Backend b) noexcept { return b == Backend::scalar || avx2_table() != nullptr; }

Backend active_backend() noexcept {
  return current().load() == &detail::kScalarTable ? Backend::scalar : Backend::avx2;
}

bool set_backend(Backend b) noexcept {
  if (!available(b)) return false;
  current().store(b == Backend::scalar ? &detail::kScalarTable : avx2_table());
  return true;
}

const KernelTable& active() noexcept { return *current().load(); }

double dot(std::span<const double> x, std::span<const double> y) {
  check_same(x.size(), y.size(), "dot");
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same(x.size(), y.size(), "axpy");
  active().axpy(a, x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y) {
  check_same(a.size(), rows * cols, "gemv");
  check_same(x.size(), cols, "gemv");
  check_same(y.size(), rows, "gemv");
  active().gemv(a.data(), rows, cols, x.data(), y.data());
}

}  // namespace graphsum::kernels
