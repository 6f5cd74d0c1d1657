#pragma once

#include <cstddef>
#include <vector>

namespace slepian {

/// Real symmetric tridiagonal matrix. `off[i]` couples rows i and i+1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly less than x (Sturm sequence count).
std::size_t count_below(const SymTridiagonal& t, double x);

/// The `count` largest eigenvalues, in decreasing order, by bisection.
std::vector<double> largest_eigenvalues(const SymTridiagonal& t, std::size_t count);

/// Unit-norm eigenvector for an (accurately known) eigenvalue, by inverse
/// iteration with a partially pivoted tridiagonal solve.
std::vector<double> inverse_iteration(const SymTridiagonal& t, double eigenvalue);

}  // namespace slepian
