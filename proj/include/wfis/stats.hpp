#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace wfis {

/// Estimate of an expectation with its Monte-Carlo standard error
/// (sample standard deviation / sqrt(n_samples)).
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

/// Welford accumulator; partial accumulators merge exactly in a fixed order,
/// so block-wise reductions are reproducible.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count_ + other.count_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.count_) / total;
    m2_ += other.m2_ + delta * delta * static_cast<double>(count_) *
                           static_cast<double>(other.count_) / total;
    count_ += other.count_;
  }

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
  }
  double std_error() const {
    return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
  }
  EstimateWithError estimate() const { return {mean(), std_error(), count_}; }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Sample mean and sample variance of a finite sample, each with a standard
/// error. The variance error uses the fourth central moment,
/// sqrt((m4 - var^2) / n).
struct SampleMoments {
  EstimateWithError mean;
  EstimateWithError variance;
};

inline SampleMoments sample_moments(std::span<const double> values) {
  RunningStats stats;
  for (double v : values) stats.add(v);
  SampleMoments out;
  out.mean = stats.estimate();
  const double var = stats.variance();
  out.variance.value = var;
  out.variance.n_samples = stats.count();
  if (stats.count() >= 2) {
    double m4 = 0.0;
    for (double v : values) {
      const double d = v - stats.mean();
      m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(stats.count());
    const double spread = m4 - var * var;
    out.variance.std_error =
        spread > 0.0 ? std::sqrt(spread / static_cast<double>(stats.count())) : 0.0;
  }
  return out;
}

}  // namespace wfis
