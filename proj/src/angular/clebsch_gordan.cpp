#include "oamion/angular/clebsch_gordan.hpp"

#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oamion::angular {
namespace {

using BigInt = boost::multiprecision::cpp_int;

const BigInt& factorial(int n) {
  static std::vector<BigInt> table = [] {
    std::vector<BigInt> t(1, BigInt(1));
    t.reserve(256);
    for (int i = 1; i < 256; ++i) t.push_back(t.back() * i);
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) {
    throw std::out_of_range("factorial argument out of table range: " + std::to_string(n));
  }
  return table[static_cast<std::size_t>(n)];
}

void check_pair(int l, int m, const char* which) {
  if (l < 0 || m < -l || m > l) {
    throw std::invalid_argument(std::string("Clebsch-Gordan domain violation for ") + which + ": l=" +
                                std::to_string(l) + ", m=" + std::to_string(m));
  }
}

std::uint64_t pack_key(int l1, int l2, int m1, int m2, int L, int M) {
  // Every field fits in 10 bits with an offset of 512; M is implied by m1 + m2.
  auto f = [](int v) { return static_cast<std::uint64_t>(v + 512) & 0x3ffu; };
  (void)M;
  return f(l1) | (f(l2) << 10) | (f(m1) << 20) | (f(m2) << 30) | (f(L) << 40);
}

}  // namespace

double ExactCoefficient::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::sqrt(square.convert_to<double>());
}

ExactCoefficient clebsch_gordan_exact(int l1, int l2, int m1, int m2, int L, int M) {
  check_pair(l1, m1, "(l1, m1)");
  check_pair(l2, m2, "(l2, m2)");
  check_pair(L, M, "(L, M)");

  if (M != m1 + m2) return {};
  if (L < std::abs(l1 - l2) || L > l1 + l2) return {};

  const Rational triangle(factorial(L + l1 - l2) * factorial(L - l1 + l2) * factorial(l1 + l2 - L),
                          factorial(l1 + l2 + L + 1));
  const BigInt projections = factorial(L + M) * factorial(L - M) * factorial(l1 - m1) * factorial(l1 + m1) *
                             factorial(l2 - m2) * factorial(l2 + m2);

  const int k_min = std::max({0, l2 - L - m1, l1 - L + m2});
  const int k_max = std::min({l1 + l2 - L, l1 - m1, l2 + m2});

  Rational sum(0);
  for (int k = k_min; k <= k_max; ++k) {
    const BigInt denom = factorial(k) * factorial(l1 + l2 - L - k) * factorial(l1 - m1 - k) *
                         factorial(l2 + m2 - k) * factorial(L - l2 + m1 + k) * factorial(L - l1 - m2 + k);
    const Rational term(BigInt(1), denom);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }

  ExactCoefficient out;
  if (sum == 0) return out;
  out.sign = sum > 0 ? 1 : -1;
  out.square = Rational(2 * L + 1) * triangle * Rational(projections) * sum * sum;
  return out;
}

double clebsch_gordan(int l1, int l2, int m1, int m2, int L, int M) {
  check_pair(l1, m1, "(l1, m1)");
  check_pair(l2, m2, "(l2, m2)");
  check_pair(L, M, "(L, M)");
  if (M != m1 + m2) return 0.0;
  if (L < std::abs(l1 - l2) || L > l1 + l2) return 0.0;

  static std::shared_mutex mutex;
  static std::unordered_map<std::uint64_t, double> cache;

  const std::uint64_t key = pack_key(l1, l2, m1, m2, L, M);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value = clebsch_gordan_exact(l1, l2, m1, m2, L, M).to_double();
  std::unique_lock lock(mutex);
  cache.emplace(key, value);
  return value;
}

}  // namespace oamion::angular
