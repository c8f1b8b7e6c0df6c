#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace hilbert {

/// Streaming pairwise (cascade) summation. The reduction tree depends only
/// on the number of terms, so the result is bit-stable for a fixed term order.
template <class T>
class PairwiseSum {
 public:
  void add(T v) {
    std::size_t level = 0;
    while (count_ & (std::size_t{1} << level)) {
      v += partial_[level];
      partial_[level] = T{};
      ++level;
    }
    if (level >= partial_.size()) partial_.resize(level + 1, T{});
    partial_[level] = v;
    ++count_;
  }
  T total() const {
    T acc{};
    for (std::size_t i = 0; i < partial_.size(); ++i)
      if (count_ & (std::size_t{1} << i)) acc += partial_[i];
    return acc;
  }
  std::size_t count() const noexcept { return count_; }

 private:
  std::vector<T> partial_;
  std::size_t count_ = 0;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule; cached per n.
const GaussRule& gauss_legendre(int n);

/// ∫_a^b f using a composite Gauss–Legendre rule with `panels` panels of
/// `order` points.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 1, int order = 20);
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       int panels = 1, int order = 20);

/// Adaptive Gauss–Kronrod-free scheme: refines a composite Gauss–Legendre
/// rule (doubling panels) until two successive estimates agree to tol
/// (relative, with absolute floor abs_floor).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                          double abs_floor = 1e-300, int max_panels = 4096);
std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                double b, double tol = 1e-12, double abs_floor = 1e-300,
                                                int max_panels = 4096);

}  // namespace hilbert
