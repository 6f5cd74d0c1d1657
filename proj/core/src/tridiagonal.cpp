#include "slepian/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slepian/error.hpp"

namespace slepian {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_shape(const SymTridiagonal& t) {
  if (t.diag.empty()) throw ParameterError("tridiagonal matrix is empty");
  if (t.off.size() + 1 != t.diag.size())
    throw ParameterError("tridiagonal off-diagonal must have size n-1");
}

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin(const SymTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = kEps * std::max({std::abs(lo), std::abs(hi), 1.0}) * static_cast<double>(n);
  return {lo - pad, hi + pad};
}

}  // namespace

std::size_t count_below(const SymTridiagonal& t, double x) {
  check_shape(t);
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == t.size()) break;
    q = t.diag[i + 1] - x - t.off[i] * t.off[i] / q;
  }
  return count;
}

std::vector<double> largest_eigenvalues(const SymTridiagonal& t, std::size_t count) {
  check_shape(t);
  const std::size_t n = t.size();
  if (count > n) throw ParameterError("requested more eigenvalues than the matrix order");
  const auto [lower, upper] = gershgorin(t);

  std::vector<double> values;
  values.reserve(count);
  double hi = upper;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t target = n - 1 - k;  // ascending index of the eigenvalue
    double lo = lower;
    for (int iter = 0; iter < 256; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(t, mid) > target)
        hi = mid;
      else
        lo = mid;
    }
    const double value = 0.5 * (lo + hi);
    values.push_back(value);
    // the next eigenvalue cannot exceed this one
    hi = std::nextafter(value, upper);
  }
  return values;
}

std::vector<double> inverse_iteration(const SymTridiagonal& t, double eigenvalue) {
  check_shape(t);
  const std::size_t n = t.size();
  if (n == 1) return {1.0};

  // LU factorization of (T - eigenvalue I) with partial pivoting.
  std::vector<double> d(n), dl(t.off), du(t.off), du2(n, 0.0);
  std::vector<bool> swapped(n, false);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diag[i] - eigenvalue;
    scale = std::max(scale, std::abs(d[i]));
  }
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = 1.0;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] != 0.0) {
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        dl[i] = 0.0;
      }
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  for (double& pivot : d)
    if (std::abs(pivot) < kEps * scale) pivot = std::copysign(kEps * scale, pivot == 0.0 ? 1.0 : pivot);

  auto solve = [&](std::vector<double>& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  };

  auto normalize = [](std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    const double norm = std::sqrt(sum);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("inverse iteration broke down");
    for (double& x : v) x /= norm;
  };

  // Start vector with no reflection symmetry, so both parities are reachable.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  normalize(v);
  for (int iter = 0; iter < 4; ++iter) {
    solve(v);
    normalize(v);
  }
  return v;
}

}  // namespace slepian
