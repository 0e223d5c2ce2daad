#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abi/foottap/grid.hpp"

namespace abi::foottap {

struct TapSample {
  Point2 point;
  std::optional<Cell> label;
};

struct SvmHyperparams {
  double c = 1.0;
  /// Radial kernel width; unset means 1 / (2 * median^2) of the pairwise
  /// training distances.
  std::optional<double> gamma;
  double tolerance = 1e-3;
  long max_iterations = 200000;
};

/// One-vs-rest soft-margin SVM with kernel k(u, v) = exp(-gamma |u - v|^2).
class TapClassifier {
 public:
  const std::vector<Cell>& classes() const { return classes_; }
  double gamma() const { return gamma_; }
  double c() const { return c_; }
  std::size_t support_size() const { return support_.size(); }

  /// Signed margin per class, in the order of classes().
  std::vector<double> decision_values(Point2 p) const;
  /// Class with the largest margin; ties go to the earlier class.
  Cell predict(Point2 p) const;

  friend bool operator==(const TapClassifier&, const TapClassifier&) = default;

 private:
  friend TapClassifier train_classifier(std::span<const TapSample>, const SvmHyperparams&,
                                        std::uint64_t);

  std::vector<Cell> classes_;
  double gamma_ = 1.0;
  double c_ = 1.0;
  std::vector<Point2> support_;
  std::vector<std::vector<double>> coef_;  // [class][support] = alpha * y
  std::vector<double> bias_;
};

/// Trains on labeled samples (unlabeled ones are rejected). The seed only
/// drives pair subsampling for the median heuristic on large sets, so equal
/// inputs always give equal models.
TapClassifier train_classifier(std::span<const TapSample> samples, const SvmHyperparams& params = {},
                               std::uint64_t seed = 0);

double resubstitution_accuracy(const TapClassifier& model, std::span<const TapSample> samples);

/// Mean held-out accuracy over folds x repetitions with seeded, stratified
/// fold assignment.
double evaluate_cv(std::span<const TapSample> samples, int folds = 10, int repetitions = 3,
                   std::uint64_t seed = 0, const SvmHyperparams& params = {});

/// Median-heuristic kernel width for a point set.
double median_heuristic_gamma(std::span<const Point2> points, std::uint64_t seed = 0);

}  // namespace abi::foottap
