#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace qgraph {

using Vertex = std::int32_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr Vertex kNoVertex = -1;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelMismatch : Error {
  using Error::Error;
};

struct BoundsError : Error {
  using Error::Error;
};

struct InvalidGraph : Error {
  using Error::Error;
};

struct ContractViolation : Error {
  using Error::Error;
};

struct NotBipartite : Error {
  using Error::Error;
};

struct SizeGuardError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Exact integer roots
// ---------------------------------------------------------------------------

/// Smallest c with c*c >= x.
inline std::uint64_t ceil_sqrt(std::uint64_t x) {
  if (x == 0) return 0;
  auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (c > 0 && static_cast<unsigned __int128>(c - 1) * (c - 1) >= x) --c;
  while (static_cast<unsigned __int128>(c) * c < x) ++c;
  return c;
}

/// Smallest c with c*c*den >= num, i.e. ceil(sqrt(num/den)).
inline std::uint64_t ceil_sqrt_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("ceil_sqrt_ratio: zero denominator");
  if (num == 0) return 0;
  std::uint64_t c = ceil_sqrt((num + den - 1) / den);
  while (c > 0 && static_cast<unsigned __int128>(c - 1) * (c - 1) * den >= num) --c;
  while (static_cast<unsigned __int128>(c) * c * den < num) ++c;
  return c;
}

/// Smallest c with c*c*c >= x.
inline std::uint64_t ceil_cbrt(std::uint64_t x) {
  if (x == 0) return 0;
  auto c = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(x)));
  auto cube = [](std::uint64_t y) { return static_cast<unsigned __int128>(y) * y * y; };
  while (c > 0 && cube(c - 1) >= x) --c;
  while (cube(c) < x) ++c;
  return c;
}

inline std::uint64_t floor_sqrt(std::uint64_t x) {
  std::uint64_t c = ceil_sqrt(x);
  return static_cast<unsigned __int128>(c) * c == x ? c : c - 1;
}

/// ceil(log2(x)) for x >= 1.
inline std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Portable seeded randomness. The standard distributions are implementation
// defined, so bounded draws are done by hand to keep reports bit-identical
// across standard libraries.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// True with probability num/den.
inline bool bernoulli(Rng& rng, const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return uniform_below(rng, static_cast<std::uint64_t>(p.denominator())) <
         static_cast<std::uint64_t>(p.numerator());
}

template <class T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace qgraph
