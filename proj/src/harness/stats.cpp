#include "abi/harness/stats.hpp"

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "abi/common/error.hpp"

namespace abi::harness {

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) fail(ErrorKind::InvalidArgument, "degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * boost::math::ibeta(0.5 * df, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::InvalidArgument, "probability must be in (0, 1)");
  double lo = -1.0, hi = 1.0;
  while (student_t_cdf(lo, df) > p) lo *= 2.0;
  while (student_t_cdf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SummaryStats describe(std::span<const double> values, double confidence) {
  if (values.empty()) fail(ErrorKind::InvalidArgument, "no values to describe");
  if (!(confidence > 0.0 && confidence < 1.0)) fail(ErrorKind::InvalidArgument, "confidence must be in (0, 1)");
  SummaryStats s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  s.se = *s.sd / std::sqrt(static_cast<double>(s.n));
  const double t = student_t_quantile(0.5 + 0.5 * confidence, static_cast<double>(s.n - 1));
  s.ci_lo = s.mean - t * *s.se;
  s.ci_hi = s.mean + t * *s.se;
  return s;
}

std::vector<GroupStats> describe(std::span<const TrialRecord> records, const std::vector<std::string>& group_by,
                                 const std::string& metric, double confidence) {
  std::map<std::map<std::string, double>, std::vector<double>> groups;
  for (const auto& r : records) {
    std::map<std::string, double> key;
    for (const auto& g : group_by) {
      const auto it = r.condition.find(g);
      if (it == r.condition.end()) fail(ErrorKind::InvalidArgument, "record has no condition " + g);
      key[g] = it->second;
    }
    groups[key].push_back(metric_value(r, metric));
  }
  std::vector<GroupStats> out;
  for (const auto& [key, values] : groups) out.push_back({key, describe(values, confidence)});
  return out;
}

}  // namespace abi::harness
