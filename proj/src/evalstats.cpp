#include "circlelink/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "circlelink/betadist.hpp"
#include "circlelink/rng.hpp"

namespace circlelink {

Rate precision(const Confusion& c) {
  std::uint64_t denom = c.tp + c.fp;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(c.tp) / static_cast<double>(denom), false};
}

Rate recall(const Confusion& c) {
  std::uint64_t denom = c.tp + c.fn;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(c.tp) / static_cast<double>(denom), false};
}

Rate f1(const Confusion& c) {
  std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return {0.0, true};
  return {2.0 * static_cast<double>(c.tp) / static_cast<double>(denom), false};
}

Confusion microaverage(const std::vector<Confusion>& parts) {
  Confusion sum;
  for (const auto& c : parts) {
    sum.tp += c.tp;
    sum.fp += c.fp;
    sum.fn += c.fn;
    sum.tn += c.tn;
  }
  return sum;
}

namespace {

CredibleInterval beta_interval(double a, double b, double mass) {
  double tail = (1.0 - mass) / 2.0;
  CredibleInterval ci;
  ci.point = a / (a + b);  // posterior mean
  ci.lo = beta_quantile(tail, a, b);
  ci.hi = beta_quantile(1.0 - tail, a, b);
  return ci;
}

}  // namespace

CredibleInterval precision_ci(const Confusion& c, double lambda, double mass) {
  return beta_interval(static_cast<double>(c.tp) + lambda,
                       static_cast<double>(c.fp) + lambda, mass);
}

CredibleInterval recall_ci(const Confusion& c, double lambda, double mass) {
  return beta_interval(static_cast<double>(c.tp) + lambda,
                       static_cast<double>(c.fn) + lambda, mass);
}

CredibleInterval f1_ci(const Confusion& c, double lambda, double mass,
                       std::size_t samples, std::uint64_t seed) {
  const double a_tp = static_cast<double>(c.tp) + lambda;
  const double a_fp = static_cast<double>(c.fp) + lambda;
  const double a_fn = static_cast<double>(c.fn) + lambda;

  constexpr std::size_t kBlock = 4096;
  std::vector<double> draws(samples);
  std::size_t blocks = (samples + kBlock - 1) / kBlock;
  // fixed per-block seeds: any evaluation order produces the same draws
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    Rng rng(mix_seed(seed, blk));
    std::size_t begin = blk * kBlock;
    std::size_t end = std::min(begin + kBlock, samples);
    for (std::size_t i = begin; i < end; ++i) {
      // Dirichlet via independent gammas; normalization cancels in the ratio
      double g_tp = rng.gamma(a_tp);
      double g_fp = rng.gamma(a_fp);
      double g_fn = rng.gamma(a_fn);
      draws[i] = 2.0 * g_tp / (2.0 * g_tp + g_fp + g_fn);
    }
  }
  std::sort(draws.begin(), draws.end());
  auto quantile = [&](double q) {
    double pos = q * static_cast<double>(draws.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= draws.size()) return draws.back();
    return draws[lo] * (1.0 - frac) + draws[lo + 1] * frac;
  };
  double tail = (1.0 - mass) / 2.0;
  CredibleInterval ci;
  ci.lo = quantile(tail);
  ci.point = quantile(0.5);
  ci.hi = quantile(1.0 - tail);
  return ci;
}

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out =
      "slice,method,k_or_fold,tp,fp,fn,tn,precision,p_lo,p_hi,recall,r_lo,"
      "r_hi,f1,f1_lo,f1_hi,auc\n";
  for (const auto& r : rows) {
    out += r.slice + ',' + r.method + ',' + r.k_or_fold + ',';
    out += std::to_string(r.counts.tp) + ',' + std::to_string(r.counts.fp) +
           ',' + std::to_string(r.counts.fn) + ',' +
           std::to_string(r.counts.tn) + ',';
    out += fmt_g(r.precision_ci.point) + ',' + fmt_g(r.precision_ci.lo) + ',' +
           fmt_g(r.precision_ci.hi) + ',';
    out += fmt_g(r.recall_ci.point) + ',' + fmt_g(r.recall_ci.lo) + ',' +
           fmt_g(r.recall_ci.hi) + ',';
    out += fmt_g(r.f1_ci.point) + ',' + fmt_g(r.f1_ci.lo) + ',' +
           fmt_g(r.f1_ci.hi) + ',';
    if (r.auc) out += fmt_g(*r.auc);
    out += '\n';
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += "  {";
    out += "\"slice\":\"" + json_escape(r.slice) + "\",";
    out += "\"method\":\"" + json_escape(r.method) + "\",";
    out += "\"k_or_fold\":\"" + json_escape(r.k_or_fold) + "\",";
    out += "\"tp\":" + std::to_string(r.counts.tp) + ',';
    out += "\"fp\":" + std::to_string(r.counts.fp) + ',';
    out += "\"fn\":" + std::to_string(r.counts.fn) + ',';
    out += "\"tn\":" + std::to_string(r.counts.tn) + ',';
    out += "\"precision\":" + fmt_g(r.precision_ci.point) + ',';
    out += "\"p_lo\":" + fmt_g(r.precision_ci.lo) + ',';
    out += "\"p_hi\":" + fmt_g(r.precision_ci.hi) + ',';
    out += "\"recall\":" + fmt_g(r.recall_ci.point) + ',';
    out += "\"r_lo\":" + fmt_g(r.recall_ci.lo) + ',';
    out += "\"r_hi\":" + fmt_g(r.recall_ci.hi) + ',';
    out += "\"f1\":" + fmt_g(r.f1_ci.point) + ',';
    out += "\"f1_lo\":" + fmt_g(r.f1_ci.lo) + ',';
    out += "\"f1_hi\":" + fmt_g(r.f1_ci.hi) + ',';
    out += "\"auc\":" + (r.auc ? fmt_g(*r.auc) : std::string("null"));
    out += i + 1 < rows.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

}  // namespace circlelink
