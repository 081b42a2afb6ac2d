#include "modchar/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "modchar/error.hpp"

namespace modchar {

CheckpointRule CheckpointRule::parse(const std::string& text) {
  CheckpointRule rule;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "dyadic" && arg.empty()) {
      rule.kind = Kind::Dyadic;
      return rule;
    }
    if (head == "geometric") {
      rule.kind = Kind::Geometric;
      if (!arg.empty()) rule.ratio = std::stod(arg);
      if (!(rule.ratio > 1.0)) throw std::invalid_argument("ratio");
      return rule;
    }
    if (head == "every") {
      rule.kind = Kind::EveryN;
      rule.step = arg.empty() ? 1 : std::stoull(arg);
      if (rule.step == 0) throw std::invalid_argument("step");
      return rule;
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Config, "bad checkpoint rule '" + text + "' (expected every:<n>, geometric:<ratio> or dyadic)");
}

std::string CheckpointRule::to_string() const {
  switch (kind) {
    case Kind::Dyadic:
      return "dyadic";
    case Kind::EveryN:
      return "every:" + std::to_string(step);
    case Kind::Geometric: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "geometric:%.17g", ratio);
      return buf;
    }
  }
  return "";
}

std::vector<std::uint64_t> make_checkpoints(const CheckpointRule& rule, std::uint64_t x_max) {
  std::vector<std::uint64_t> out;
  if (x_max == 0) return out;
  switch (rule.kind) {
    case CheckpointRule::Kind::EveryN:
      for (std::uint64_t x = rule.step; x < x_max; x += rule.step) out.push_back(x);
      break;
    case CheckpointRule::Kind::Dyadic:
      for (std::uint64_t x = 1; x < x_max; x *= 2) out.push_back(x);
      break;
    case CheckpointRule::Kind::Geometric: {
      double y = 1.0;
      std::uint64_t x = 1;
      while (x < x_max) {
        out.push_back(x);
        y *= rule.ratio;
        x = std::max(x + 1, static_cast<std::uint64_t>(std::floor(y)));
      }
      break;
    }
  }
  out.push_back(x_max);
  return out;
}

PartialSumSeries partial_sums(const ModifiedCharacter& mc, std::uint64_t x_max, const CheckpointRule& rule,
                              const SieveOptions& options) {
  return partial_sums(mc, make_checkpoints(rule, x_max), options);
}

PartialSumSeries partial_sums(const ModifiedCharacter& mc, const std::vector<std::uint64_t>& checkpoints,
                              const SieveOptions& options) {
  PartialSumSeries series;
  series.digest = mc.digest();
  if (checkpoints.empty()) return series;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw Error(ErrorCode::Domain, "checkpoints must be positive and strictly increasing");
    }
  }
  const ValueCodec codec(mc);
  series.checkpoints = checkpoints;
  series.x_max = checkpoints.back();
  series.exact = codec.real_valued();

  CompensatedComplexSum sum;
  std::int64_t exact_sum = 0;
  double window_max_sq = 0.0;
  std::int64_t exact_window_max = 0;
  std::size_t next = 0;

  for_each_block(codec, series.x_max, options, [&](std::uint64_t lo, std::span<const std::int32_t> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::uint64_t n = lo + i;
      const std::int32_t e = values[i];
      if (series.exact) {
        const int v = codec.to_int(e);
        exact_sum += v;
        sum.add_real(static_cast<double>(v));
        exact_window_max = std::max(exact_window_max, exact_sum < 0 ? -exact_sum : exact_sum);
      } else {
        if (e != kZero) sum.add(codec.to_complex(e));
        window_max_sq = std::max(window_max_sq, std::norm(sum.value()));
      }
      if (n == checkpoints[next]) {
        if (series.exact) {
          series.exact_sums.push_back(exact_sum);
          series.exact_window_max_abs.push_back(exact_window_max);
          series.sums.emplace_back(static_cast<double>(exact_sum), 0.0);
          series.window_max_abs.push_back(static_cast<double>(exact_window_max));
          exact_window_max = 0;
        } else {
          series.sums.push_back(sum.value());
          series.window_max_abs.push_back(std::sqrt(window_max_sq));
          window_max_sq = 0.0;
        }
        ++next;
      }
    }
  });
  return series;
}

const std::vector<std::complex<double>>& RieszRecord::row(int k) const {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == k) return values[i];
  }
  throw Error(ErrorCode::Domain, "order " + std::to_string(k) + " not present in Riesz record");
}

RieszAccumulator::RieszAccumulator(std::vector<int> orders, std::vector<double> checkpoints, bool normalize)
    : orders_(std::move(orders)), checkpoints_(std::move(checkpoints)), normalize_(normalize), max_order_(0) {
  if (orders_.empty()) throw Error(ErrorCode::Domain, "no Riesz orders requested");
  for (int k : orders_) {
    if (k < 0) throw Error(ErrorCode::Domain, "Riesz order must be >= 0");
    if (k > kMaxRieszOrder) {
      throw Error(ErrorCode::OrderTooLarge, "Riesz order " + std::to_string(k) + " exceeds " + std::to_string(kMaxRieszOrder));
    }
    max_order_ = std::max(max_order_, k);
  }
  if (checkpoints_.empty()) throw Error(ErrorCode::Domain, "no Riesz checkpoints");
  for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
    if (!(checkpoints_[i] >= 1.0) || (i > 0 && checkpoints_[i] <= checkpoints_[i - 1])) {
      throw Error(ErrorCode::Domain, "Riesz checkpoints must be >= 1 and strictly increasing");
    }
  }
  anchor_ = std::log(checkpoints_.front());
  limit_ = static_cast<std::uint64_t>(std::floor(checkpoints_.back()));
  acc_.resize(static_cast<std::size_t>(max_order_) + 1);
  powers_.resize(static_cast<std::size_t>(max_order_) + 1);
  binom_.assign(static_cast<std::size_t>(max_order_) + 1, {});
  for (int j = 0; j <= max_order_; ++j) {
    binom_[j].assign(static_cast<std::size_t>(j) + 1, 1.0L);
    for (int l = 1; l < j; ++l) binom_[j][l] = binom_[j - 1][l - 1] + binom_[j - 1][l];
  }
  record_.orders = orders_;
  record_.checkpoints = checkpoints_;
  record_.normalized = normalize_;
  record_.values.assign(orders_.size(), std::vector<std::complex<double>>(checkpoints_.size()));
}

void RieszAccumulator::record_current() {
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::complex<double> v = acc_[static_cast<std::size_t>(orders_[i])].value();
    if (normalize_) v /= std::tgamma(static_cast<double>(orders_[i]) + 1.0);
    record_.values[i][next_] = v;
  }
}

void RieszAccumulator::shift_to_next() {
  const double target = std::log(checkpoints_[next_]);
  const long double delta = static_cast<long double>(target) - anchor_;
  anchor_ = target;
  if (max_order_ == 0) return;
  std::vector<std::complex<long double>> old(acc_.size());
  for (std::size_t j = 0; j < acc_.size(); ++j) {
    const auto v = acc_[j].value();
    old[j] = {v.real(), v.imag()};
  }
  std::vector<long double> dpow(acc_.size(), 1.0L);
  for (std::size_t j = 1; j < dpow.size(); ++j) dpow[j] = dpow[j - 1] * delta;
  // Order 0 is shift invariant; leave its compensated state untouched.
  for (std::size_t j = 1; j < acc_.size(); ++j) {
    std::complex<long double> s = 0;
    for (std::size_t l = 0; l <= j; ++l) s += binom_[j][l] * dpow[j - l] * old[l];
    acc_[j].reset({static_cast<double>(s.real()), static_cast<double>(s.imag())});
  }
}

void RieszAccumulator::advance_to(std::uint64_t n) {
  while (next_ < checkpoints_.size() && static_cast<double>(n) > checkpoints_[next_]) {
    record_current();
    ++next_;
    if (next_ < checkpoints_.size()) shift_to_next();
  }
}

void RieszAccumulator::push(std::uint64_t n, std::complex<double> a) {
  advance_to(n);
  if (next_ == checkpoints_.size()) return;
  const double d = anchor_ - std::log(static_cast<double>(n));
  double p = 1.0;
  for (int j = 0; j <= max_order_; ++j) {
    acc_[j].add(a * p);
    p *= d;
  }
}

void RieszAccumulator::push_real(std::uint64_t n, double a) {
  advance_to(n);
  if (next_ == checkpoints_.size()) return;
  const double d = anchor_ - std::log(static_cast<double>(n));
  double p = a;
  for (int j = 0; j <= max_order_; ++j) {
    acc_[j].add_real(p);
    p *= d;
  }
}

RieszRecord RieszAccumulator::finish() {
  advance_to(std::numeric_limits<std::uint64_t>::max());
  return std::move(record_);
}

RieszRecord riesz_means(const ModifiedCharacter& mc, const std::vector<int>& orders,
                        const std::vector<double>& checkpoints, const RieszOptions& options) {
  RieszAccumulator acc(orders, checkpoints, options.normalize);
  const ValueCodec codec(mc);
  for_each_block(codec, acc.limit(), options.sieve, [&](std::uint64_t lo, std::span<const std::int32_t> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::int32_t e = values[i];
      if (e == kZero) continue;
      if (codec.real_valued()) {
        acc.push_real(lo + i, static_cast<double>(codec.to_int(e)));
      } else {
        acc.push(lo + i, codec.to_complex(e));
      }
    }
  });
  RieszRecord record = acc.finish();
  record.digest = mc.digest();
  return record;
}

namespace {

// Γ(m+1, y) / m! = e^{-y} Σ_{j<=m} y^j / j!
double upper_gamma_ratio(int m, double y) {
  double term = 1.0, sum = 1.0;
  for (int j = 1; j <= m; ++j) {
    term *= y / j;
    sum += term;
  }
  return std::exp(-y) * sum;
}

}  // namespace

MellinResult mellin_transform(const ModifiedCharacter& mc, double sigma, double x_cut, const SieveOptions& options) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::Domain, "Mellin transform needs sigma > 0");
  if (!(x_cut >= 1.0)) throw Error(ErrorCode::Domain, "Mellin transform needs x_cut >= 1");
  const ValueCodec codec(mc);
  const auto x_last = static_cast<std::uint64_t>(std::floor(x_cut));
  const int m = static_cast<int>(mc.size_S());

  CompensatedComplexSum partial;
  CompensatedComplexSum integral;
  double growth = 0.0;
  for_each_block(codec, x_last, options, [&](std::uint64_t lo, std::span<const std::int32_t> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::uint64_t n = lo + i;
      if (values[i] != kZero) partial.add(codec.to_complex(values[i]));
      const std::complex<double> mval = partial.value();
      const auto dn = static_cast<double>(n);
      const double logn = std::log(dn);
      growth = std::max(growth, std::abs(mval) / std::pow(std::max(1.0, logn), m));
      // σ ∫_n^{n+1} x^{-1-σ} dx = n^{-σ} - (n+1)^{-σ}, or up to x_cut on the last piece.
      double weight;
      if (n < x_last) {
        weight = std::exp(-sigma * logn) * -std::expm1(-sigma * std::log1p(1.0 / dn));
      } else {
        weight = std::exp(-sigma * logn) * -std::expm1(-sigma * std::log(x_cut / dn));
      }
      integral.add(mval * weight);
    }
  });

  MellinResult result;
  result.value = integral.value();
  result.growth_constant = growth;
  result.x_cut = x_cut;
  // σ C ∫_L^∞ u^m e^{-σu} du = C m! Γ(m+1, σL)/(m! σ^m)
  const double L = std::log(x_cut);
  result.tail_bound = growth * std::tgamma(m + 1.0) * upper_gamma_ratio(m, sigma * L) / std::pow(sigma, m);
  return result;
}

}  // namespace modchar
