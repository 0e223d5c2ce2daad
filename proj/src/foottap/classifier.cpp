#include "abi/foottap/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"

namespace abi::foottap {

namespace {

double sq_dist(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct BinarySolution {
  std::vector<double> alpha;
  double rho = 0.0;
};

// SMO with second-order working set selection for
//   min 1/2 a'Qa - e'a  s.t.  0 <= a <= C, y'a = 0,  Q_ij = y_i y_j K_ij.
BinarySolution solve_binary(const std::vector<double>& kernel, std::size_t n,
                            const std::vector<signed char>& y, const SvmHyperparams& params) {
  constexpr double kTau = 1e-12;
  const double c = params.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * kernel[i * n + j]; };

  for (long iter = 0; iter < params.max_iterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == +1) {
        if (alpha[t] < c && -grad[t] >= gmax) { gmax = -grad[t]; i = t; }
      } else {
        if (alpha[t] > 0.0 && grad[t] >= gmax) { gmax = grad[t]; i = t; }
      }
    }
    if (i == n) break;

    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    const double qii = kernel[i * n + i];
    for (std::size_t t = 0; t < n; ++t) {
      double grad_diff = 0.0;
      if (y[t] == +1) {
        if (!(alpha[t] > 0.0)) continue;
        grad_diff = gmax + grad[t];
        gmax2 = std::max(gmax2, grad[t]);
      } else {
        if (!(alpha[t] < c)) continue;
        grad_diff = gmax - grad[t];
        gmax2 = std::max(gmax2, -grad[t]);
      }
      if (grad_diff > 0.0) {
        const double quad = y[t] == +1 ? qii + kernel[t * n + t] - 2.0 * y[i] * q(i, t)
                                       : qii + kernel[t * n + t] + 2.0 * y[i] * q(i, t);
        const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (obj <= best_obj) { best_obj = obj; j = t; }
      }
    }
    if (gmax + gmax2 < params.tolerance || j == n) break;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double qij = q(i, j);
    if (y[i] != y[j]) {
      double quad = qii + kernel[j * n + j] + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
      } else {
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
      } else {
        if (alpha[j] > c) { alpha[j] = c; alpha[i] = c + diff; }
      }
    } else {
      double quad = qii + kernel[j * n + j] - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
      } else {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
      }
      if (sum > c) {
        if (alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
      } else {
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(i, t) * di + q(j, t) * dj;
  }

  // Offset from the free variables, or the midpoint of the feasible range.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] == +1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  BinarySolution sol;
  sol.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
  sol.alpha = std::move(alpha);
  return sol;
}

}  // namespace

double median_heuristic_gamma(std::span<const Point2> points, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n < 2) fail(ErrorKind::TrainingFailure, "need at least two points for the kernel width");
  constexpr std::size_t kMaxPairs = 200000;
  std::vector<double> d;
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs <= kMaxPairs) {
    d.reserve(pairs);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d.push_back(sq_dist(points[i], points[j]));
  } else {
    Rng rng(derive_seed(seed, 0x6d656469616eULL));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    d.reserve(kMaxPairs);
    while (d.size() < kMaxPairs) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i != j) d.push_back(sq_dist(points[i], points[j]));
    }
  }
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  const double median_sq = *mid;
  if (!(median_sq > 0.0)) fail(ErrorKind::TrainingFailure, "degenerate data: points coincide");
  return 1.0 / (2.0 * median_sq);
}

TapClassifier train_classifier(std::span<const TapSample> samples, const SvmHyperparams& params,
                               std::uint64_t seed) {
  if (!(params.c > 0.0)) fail(ErrorKind::InvalidArgument, "C must be positive");
  std::map<Cell, std::size_t> counts;
  for (const auto& s : samples) {
    if (!s.label) fail(ErrorKind::InvalidData, "training sample without label");
    if (!std::isfinite(s.point.x) || !std::isfinite(s.point.y)) {
      fail(ErrorKind::InvalidData, "non-finite tap coordinates");
    }
    ++counts[*s.label];
  }
  if (counts.size() < 2) fail(ErrorKind::InvalidData, "need at least two classes");
  for (const auto& [cell, k] : counts) {
    if (k < 2) fail(ErrorKind::InvalidData, "class " + to_string(cell) + " has fewer than two samples");
  }

  const std::size_t n = samples.size();
  std::vector<Point2> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = samples[i].point;
  const bool all_same = std::all_of(points.begin(), points.end(),
                                    [&](const Point2& p) { return p == points.front(); });
  if (all_same) fail(ErrorKind::TrainingFailure, "degenerate data: all points identical");

  TapClassifier model;
  model.c_ = params.c;
  model.gamma_ = params.gamma ? *params.gamma : median_heuristic_gamma(points, seed);
  if (!(model.gamma_ > 0.0) || !std::isfinite(model.gamma_)) {
    fail(ErrorKind::InvalidArgument, "kernel gamma must be positive");
  }
  for (const auto& [cell, k] : counts) model.classes_.push_back(cell);

  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    kernel[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = std::exp(-model.gamma_ * sq_dist(points[i], points[j]));
      kernel[i * n + j] = k;
      kernel[j * n + i] = k;
    }
  }

  std::vector<std::vector<double>> dense_coef;
  std::vector<char> used(n, 0);
  std::vector<signed char> y(n);
  for (const Cell& cls : model.classes_) {
    for (std::size_t i = 0; i < n; ++i) y[i] = *samples[i].label == cls ? +1 : -1;
    BinarySolution sol = solve_binary(kernel, n, y, params);
    std::vector<double> coef(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (sol.alpha[i] > 0.0) {
        coef[i] = sol.alpha[i] * y[i];
        used[i] = 1;
      }
    }
    dense_coef.push_back(std::move(coef));
    model.bias_.push_back(-sol.rho);
  }

  std::vector<std::size_t> support_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) support_idx.push_back(i);
  for (std::size_t i : support_idx) model.support_.push_back(points[i]);
  for (const auto& dense : dense_coef) {
    std::vector<double> coef;
    coef.reserve(support_idx.size());
    for (std::size_t i : support_idx) coef.push_back(dense[i]);
    model.coef_.push_back(std::move(coef));
  }
  return model;
}

std::vector<double> TapClassifier::decision_values(Point2 p) const {
  std::vector<double> k(support_.size());
  for (std::size_t s = 0; s < support_.size(); ++s) k[s] = std::exp(-gamma_ * sq_dist(support_[s], p));
  std::vector<double> out(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    out[c] = std::inner_product(coef_[c].begin(), coef_[c].end(), k.begin(), bias_[c]);
  }
  return out;
}

Cell TapClassifier::predict(Point2 p) const {
  const auto values = decision_values(p);
  const auto best = std::max_element(values.begin(), values.end());
  return classes_[static_cast<std::size_t>(best - values.begin())];
}

double resubstitution_accuracy(const TapClassifier& model, std::span<const TapSample> samples) {
  if (samples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& s : samples)
    if (s.label && model.predict(s.point) == *s.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

double evaluate_cv(std::span<const TapSample> samples, int folds, int repetitions, std::uint64_t seed,
                   const SvmHyperparams& params) {
  if (folds < 2 || repetitions < 1) fail(ErrorKind::InvalidArgument, "need folds >= 2 and repetitions >= 1");
  std::map<Cell, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].label) fail(ErrorKind::InvalidData, "evaluation sample without label");
    by_class[*samples[i].label].push_back(i);
  }
  for (const auto& [cell, idx] : by_class) {
    if (idx.size() < static_cast<std::size_t>(folds)) {
      fail(ErrorKind::InvalidData, "class " + to_string(cell) + " has fewer samples than folds");
    }
  }

  double total = 0.0;
  int evaluated = 0;
  std::vector<int> fold_of(samples.size());
  for (int rep = 0; rep < repetitions; ++rep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
    std::size_t running = 0;
    for (auto& [cell, idx] : by_class) {
      std::vector<std::size_t> order = idx;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) fold_of[i] = static_cast<int>(running++ % static_cast<std::size_t>(folds));
    }
    for (int f = 0; f < folds; ++f) {
      std::vector<TapSample> train;
      std::vector<TapSample> test;
      for (std::size_t i = 0; i < samples.size(); ++i) (fold_of[i] == f ? test : train).push_back(samples[i]);
      if (test.empty()) continue;
      const TapClassifier model =
          train_classifier(train, params, derive_seed(seed, static_cast<std::uint64_t>(rep), f));
      total += resubstitution_accuracy(model, test);
      ++evaluated;
    }
  }
  return evaluated > 0 ? total / evaluated : 0.0;
}

}  // namespace abi::foottap
