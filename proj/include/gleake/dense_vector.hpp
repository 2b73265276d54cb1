#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gleake/error.hpp"

namespace gleake {

// Fixed-dimension real vector carrying both local and global embeddings.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t dimension) : values_(dimension, 0.0) {}
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {}
  DenseVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  DenseVector& operator+=(const DenseVector& other) {
    require_same_dimension(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  DenseVector& add(std::span<const double> other) {
    if (other.size() != values_.size()) {
      throw Error("dimension mismatch: " + std::to_string(values_.size()) + " vs " +
                  std::to_string(other.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
    return *this;
  }

  friend DenseVector operator+(DenseVector lhs, const DenseVector& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

  bool is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
  }

  bool all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
  }

  double norm() const noexcept {
    double s = 0.0;
    for (double x : values_) s += x * x;
    return std::sqrt(s);
  }

  void require_same_dimension(const DenseVector& other) const {
    if (other.size() != size()) {
      throw Error("dimension mismatch: " + std::to_string(size()) + " vs " +
                  std::to_string(other.size()));
    }
  }

 private:
  std::vector<double> values_;
};

inline double dot(const DenseVector& a, const DenseVector& b) {
  a.require_same_dimension(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace gleake
