#include <atomic>

#include "covshift/error.hpp"
#include "covshift/kernels.hpp"

namespace covshift::kernels {

namespace {

struct Table {
  Backend backend;
  std::size_t (*count_at_least)(std::span<const double>, double);
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*squared_distance)(std::span<const double>, std::span<const double>);
};

constexpr Table kScalar{Backend::scalar, &scalar::count_at_least, &scalar::dot,
                        &scalar::squared_distance};
#if defined(COVSHIFT_HAVE_AVX2)
constexpr Table kAvx2{Backend::avx2, &avx2::count_at_least, &avx2::dot, &avx2::squared_distance};
#endif

bool cpu_has_avx2() noexcept {
#if defined(COVSHIFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* detect() noexcept {
#if defined(COVSHIFT_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

inline const Table& table() { return *current().load(std::memory_order_relaxed); }

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidInput("kernel operands differ in length");
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) noexcept {
  return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return table().backend; }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw InvalidInput("kernel backend " + std::string(backend_name(b)) + " is not available");
  }
#if defined(COVSHIFT_HAVE_AVX2)
  if (b == Backend::avx2) {
    current().store(&kAvx2);
    return;
  }
#endif
  current().store(&kScalar);
}

std::size_t count_at_least(std::span<const double> xs, double threshold) {
  return table().count_at_least(xs, threshold);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_lengths(a.size(), b.size());
  return table().dot(a, b);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_lengths(a.size(), b.size());
  return table().squared_distance(a, b);
}

}  // namespace covshift::kernels
