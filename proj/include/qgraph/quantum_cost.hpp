#pragma once

// Classical emulation of the two quantum subroutines the graph algorithms are
// built on: Grover-type search for marked items and quantum counting. Every
// call evaluates its predicate exhaustively (so answers are exact), then
// charges the query cost the quantum routine would have paid to a ledger.
//
// Charges are integral "units" (ceilings of exact square roots), multiplied
// by the run's amplification factor and scaled by a rational cost constant.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qgraph/core.hpp"

namespace qgraph {

enum class Primitive : std::uint8_t {
  GroverBatch,       ///< ceil(sqrt(k * l)) for finding k items among l
  GroverEmptyCheck,  ///< ceil(sqrt(l)) for certifying no further items
  GroverSingle,      ///< ceil(sqrt(l / k)) for finding one of k items
  Counting,          ///< ceil(sqrt(n)) for estimating a count
};

inline constexpr std::size_t kPrimitiveCount = 4;

inline std::string_view primitive_name(Primitive p) {
  switch (p) {
    case Primitive::GroverBatch: return "grover_batch";
    case Primitive::GroverEmptyCheck: return "grover_empty_check";
    case Primitive::GroverSingle: return "grover_single";
    case Primitive::Counting: return "counting";
  }
  return "?";
}

enum class Amplification : std::uint8_t { None, LogN };

/// Repetition factor that drives a subroutine's error below 1/n^(c+1).
inline std::uint32_t amplification_factor(Amplification mode, std::size_t n_context) {
  if (mode == Amplification::None) return 1;
  return std::max<std::uint32_t>(1, ceil_log2(n_context + 2));
}

struct OracleConfig {
  std::uint64_t seed = 0;
  Rational cost_constant{1};
  Amplification amplification = Amplification::None;
  /// Probability that a search silently omits one marked item. Zero disables
  /// failure injection.
  Rational failure_prob{0};

  void validate() const {
    if (cost_constant <= 0) throw ContractViolation("cost_constant must be positive");
    if (failure_prob < 0 || failure_prob > Rational(1, 3)) {
      throw ContractViolation("failure_prob must lie in [0, 1/3]");
    }
  }
};

struct ChargeEntry {
  std::uint64_t calls = 0;
  std::uint64_t units = 0;
};

class QueryLedger {
 public:
  QueryLedger() = default;
  QueryLedger(Rational cost_constant, std::uint32_t amplification)
      : cost_constant_(cost_constant), amplification_(amplification) {}

  void charge(Primitive kind, std::uint64_t units) {
    auto& entry = breakdown_[static_cast<std::size_t>(kind)];
    ++entry.calls;
    entry.units += units;
    units_ += units;
  }

  void count_probe(std::uint64_t probes = 1) { raw_probes_ += probes; }

  /// Sum of breakdown units, before amplification and scaling.
  std::uint64_t units() const { return units_; }
  std::uint64_t amplified_units() const { return units_ * amplification_; }
  Rational charged_queries() const {
    return cost_constant_ * static_cast<std::int64_t>(amplified_units());
  }
  double charged_as_double() const {
    return boost::rational_cast<double>(cost_constant_) * static_cast<double>(amplified_units());
  }

  std::uint64_t raw_probes() const { return raw_probes_; }
  std::uint32_t amplification() const { return amplification_; }
  const Rational& cost_constant() const { return cost_constant_; }
  const ChargeEntry& entry(Primitive kind) const {
    return breakdown_[static_cast<std::size_t>(kind)];
  }
  const std::array<ChargeEntry, kPrimitiveCount>& breakdown() const { return breakdown_; }

  friend bool operator==(const QueryLedger& a, const QueryLedger& b) {
    if (a.units_ != b.units_ || a.raw_probes_ != b.raw_probes_ ||
        a.amplification_ != b.amplification_ || a.cost_constant_ != b.cost_constant_) {
      return false;
    }
    for (std::size_t i = 0; i < kPrimitiveCount; ++i) {
      if (a.breakdown_[i].calls != b.breakdown_[i].calls ||
          a.breakdown_[i].units != b.breakdown_[i].units) {
        return false;
      }
    }
    return true;
  }

 private:
  Rational cost_constant_{1};
  std::uint32_t amplification_ = 1;
  std::uint64_t units_ = 0;
  std::uint64_t raw_probes_ = 0;
  std::array<ChargeEntry, kPrimitiveCount> breakdown_{};
};

/// One run's quantum subroutines: configuration, seeded randomness and the
/// ledger they charge. Owned by exactly one run.
class QuantumEmulator {
 public:
  QuantumEmulator(OracleConfig config, std::size_t n_context)
      : config_(config),
        ledger_(config.cost_constant, amplification_factor(config.amplification, n_context)),
        rng_(config.seed) {
    config_.validate();
  }

  const OracleConfig& config() const { return config_; }
  QueryLedger& ledger() { return ledger_; }
  const QueryLedger& ledger() const { return ledger_; }
  /// Probe counter to hand to black-box graph accessors.
  QueryLedger* meter() { return &ledger_; }

  /// All marked indices of [0, domain) in seeded-random order.
  template <class Pred>
  std::vector<std::size_t> find_all(std::size_t domain, Pred&& marked) {
    std::vector<std::size_t> found;
    for (std::size_t i = 0; i < domain; ++i) {
      if (marked(i)) found.push_back(i);
    }
    shuffle(found, rng_);
    if (!found.empty() && injects_failure()) {
      found.erase(found.begin() + static_cast<std::ptrdiff_t>(uniform_below(rng_, found.size())));
    }
    if (!found.empty()) ledger_.charge(Primitive::GroverBatch, ceil_sqrt(found.size() * domain));
    ledger_.charge(Primitive::GroverEmptyCheck, ceil_sqrt(domain));
    return found;
  }

  /// A uniformly chosen marked index, or nothing if none is marked.
  template <class Pred>
  std::optional<std::size_t> find_one(std::size_t domain, Pred&& marked) {
    std::vector<std::size_t> found;
    for (std::size_t i = 0; i < domain; ++i) {
      if (marked(i)) found.push_back(i);
    }
    last_marked_ = found.size();
    if (found.empty() || injects_failure()) {
      ledger_.charge(Primitive::GroverEmptyCheck, ceil_sqrt(domain));
      return std::nullopt;
    }
    ledger_.charge(Primitive::GroverSingle, ceil_sqrt_ratio(domain, found.size()));
    return found[uniform_below(rng_, found.size())];
  }

  /// Number of marked items the most recent find_one saw.
  std::size_t last_marked_count() const { return last_marked_; }

  /// Estimate of the number of set bits, off by strictly less than sqrt(n).
  std::uint64_t count(const std::vector<bool>& bits) {
    if (bits.empty()) throw ContractViolation("quantum_count needs a non-empty string");
    const auto n = static_cast<std::int64_t>(bits.size());
    std::int64_t ones = 0;
    for (bool b : bits) ones += b ? 1 : 0;
    const auto radius = static_cast<std::int64_t>(ceil_sqrt(bits.size())) - 1;
    const auto delta =
        static_cast<std::int64_t>(uniform_below(rng_, static_cast<std::uint64_t>(2 * radius + 1))) -
        radius;
    ledger_.charge(Primitive::Counting, ceil_sqrt(bits.size()));
    return static_cast<std::uint64_t>(std::clamp<std::int64_t>(ones + delta, 0, n));
  }

 private:
  bool injects_failure() {
    return config_.failure_prob > 0 && bernoulli(rng_, config_.failure_prob);
  }

  OracleConfig config_;
  QueryLedger ledger_;
  Rng rng_;
  std::size_t last_marked_ = 0;
};

}  // namespace qgraph
