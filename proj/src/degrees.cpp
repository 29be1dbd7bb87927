#include "ecm/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace ecm {

DegreeSequence DegreeSequence::from_degrees(std::vector<Degree> raw) {
  DegreeSequence seq;
  seq.degrees = std::move(raw);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < seq.degrees.size(); ++i) {
    if (seq.degrees[i] < 1)
      throw std::invalid_argument("degree at index " + std::to_string(i) + " is below 1");
    sum += seq.degrees[i];
  }
  if (sum % 2 != 0) {
    seq.degrees.back() += 1;
    sum += 1;
    seq.parity_fixed = true;
  }
  seq.l_n = sum;
  seq.d_max = seq.degrees.empty() ? 0 : *std::max_element(seq.degrees.begin(), seq.degrees.end());
  return seq;
}

ZipfSampler::ZipfSampler(double tau, Degree table_limit) : tau_(tau) {
  if (!(tau > 1.0)) throw std::invalid_argument("ZipfSampler: tau must exceed 1");
  if (table_limit < 1) throw std::invalid_argument("ZipfSampler: table limit must be positive");
  const auto limit = static_cast<std::size_t>(table_limit);
  survival_.assign(limit + 2, 0.0);
  // Euler-Maclaurin for sum_{j > limit} j^-tau.
  const double m = static_cast<double>(limit + 1);
  double tail = std::pow(m, 1.0 - tau) / (tau - 1.0) + 0.5 * std::pow(m, -tau) +
                tau / 12.0 * std::pow(m, -tau - 1.0);
  survival_[limit + 1] = tail;
  for (std::size_t k = limit; k >= 1; --k) {
    tail += std::pow(static_cast<double>(k), -tau);
    survival_[k] = tail;
  }
  zeta_ = survival_[1];
  for (std::size_t k = 1; k <= limit + 1; ++k) survival_[k] /= zeta_;
  survival_[1] = 1.0;
}

std::shared_ptr<const ZipfSampler> ZipfSampler::shared(double tau) {
  static std::mutex mutex;
  static std::map<double, std::shared_ptr<const ZipfSampler>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[tau];
  if (!slot) slot = std::make_shared<const ZipfSampler>(tau);
  return slot;
}

double ZipfSampler::pmf(Degree k) const {
  if (k < 1) return 0.0;
  return std::pow(static_cast<double>(k), -tau_) / zeta_;
}

double ZipfSampler::survival(Degree k) const {
  if (k <= 1) return 1.0;
  if (k < static_cast<Degree>(survival_.size())) return survival_[static_cast<std::size_t>(k)];
  return std::pow(static_cast<double>(k) - 0.5, 1.0 - tau_) / ((tau_ - 1.0) * zeta_);
}

Degree ZipfSampler::invert(double v) const {
  const std::size_t last = survival_.size() - 1;
  if (v <= survival_[last]) {
    const double k = 0.5 + std::pow((tau_ - 1.0) * zeta_ * v, -1.0 / (tau_ - 1.0));
    const double capped = std::min(k, 9.0e18);
    return std::max(static_cast<Degree>(last), static_cast<Degree>(std::floor(capped)));
  }
  // survival_ is non-increasing on [1, last]; find the last index with S(k) >= v.
  auto first = survival_.begin() + 1;
  auto end = survival_.begin() + static_cast<std::ptrdiff_t>(last);
  auto it = std::partition_point(first, end, [v](double s) { return s >= v; });
  return static_cast<Degree>(it - survival_.begin()) - 1;
}

Degree ZipfSampler::draw(Stream& stream) const { return invert(stream.uniform_pos()); }

DegreeSequence sample_degrees(const ModelParams& params, Stream& stream) {
  const auto sampler = ZipfSampler::shared(params.tau);
  std::vector<Degree> raw(static_cast<std::size_t>(params.n));
  for (auto& d : raw) d = sampler->draw(stream);
  return DegreeSequence::from_degrees(std::move(raw));
}

bool jn_holds(const DegreeSequence& degs, const ModelParams& params) {
  const double n = static_cast<double>(params.n);
  const double deviation = std::abs(static_cast<double>(degs.l_n) - params.mu * n);
  return deviation <= std::pow(n, 1.0 / (params.tau - 1.0));
}

}  // namespace ecm
