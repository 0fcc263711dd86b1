#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "pairlab/errors.hpp"

namespace pairlab {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kDefaultMaxLimit = 1'000'000'000;
// Integers at or above 2^63 are rejected everywhere.
inline constexpr std::uint64_t kIntegerCeiling = std::uint64_t{1} << 63;

struct SieveOptions {
  std::uint64_t segment_size = kDefaultSegmentSize;
  std::uint64_t max_limit = kDefaultMaxLimit;
  unsigned threads = 1;
  // When set, segments are read from / written to this directory.
  std::optional<std::filesystem::path> cache_dir;
};

/// Primality flags for every integer of one segment [lo, hi].
///
/// Immutable after construction. A segment never spans more than the
/// configured segment size; larger ranges are tiled by Sieve.
class SieveCache {
 public:
  static constexpr std::uint32_t kFileVersion = 1;
  static constexpr std::size_t kHeaderBytes = 32;

  /// Sieves [lo, hi] using `base_primes`, which must contain every prime
  /// up to floor(sqrt(hi)) in ascending order.
  static SieveCache build(std::uint64_t lo, std::uint64_t hi,
                          std::span<const std::uint64_t> base_primes);
  static SieveCache build(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  bool contains(std::uint64_t n) const noexcept { return n >= lo_ && n <= hi_; }

  bool is_prime(std::uint64_t n) const noexcept {
    const std::uint64_t i = n - lo_;
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }

  /// Number of primes in [a, b] ∩ [lo, hi].
  std::uint64_t count(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t count() const noexcept { return count(lo_, hi_); }

  /// Calls f(p) for each prime p in [a, b] ∩ [lo, hi], ascending.
  template <class F>
  void for_each_prime(std::uint64_t a, std::uint64_t b, F&& f) const {
    if (a < lo_) a = lo_;
    if (b > hi_) b = hi_;
    if (a > b) return;
    const std::uint64_t first = a - lo_;
    const std::uint64_t last = b - lo_;
    for (std::uint64_t w = first >> 6; w <= (last >> 6); ++w) {
      std::uint64_t word = bits_[w];
      if (w == (first >> 6)) word &= ~std::uint64_t{0} << (first & 63);
      if (w == (last >> 6) && (last & 63) != 63) word &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
      while (word != 0) {
        const int bit = std::countr_zero(word);
        f(lo_ + (w << 6) + static_cast<std::uint64_t>(bit));
        word &= word - 1;
      }
    }
  }

  /// Binary layout: 32-byte header (magic "PLSV", u32 version, u64 lo,
  /// u64 hi, u64 word count; little-endian) followed by the flag words.
  void save(const std::filesystem::path& path) const;

  /// Returns nullopt when the file is missing or was written by another
  /// format version. Throws ParseError when the file is truncated or the
  /// magic does not match.
  static std::optional<SieveCache> load(const std::filesystem::path& path);

  friend bool operator==(const SieveCache&, const SieveCache&) = default;

 private:
  SieveCache(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> bits)
      : lo_(lo), hi_(hi), bits_(std::move(bits)) {}

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_deterministic(std::uint64_t n) noexcept;

/// Largest r with r^k <= n, verified in integer arithmetic.
std::uint64_t integer_root(std::uint64_t n, unsigned k) noexcept;

struct PrimePower {
  std::uint64_t base;
  unsigned exponent;
};

/// Tiled segmented sieve over [0, limit].
///
/// Queries above the limit fall back to deterministic Miller-Rabin, so
/// is_prime and von_mangoldt answer for every n below 2^63. Enumeration
/// (primes_up_to, for_each_prime, count_primes) is capacity checked.
class Sieve {
 public:
  explicit Sieve(std::uint64_t limit, SieveOptions options = {});

  std::uint64_t limit() const noexcept { return limit_; }
  const SieveOptions& options() const noexcept { return options_; }
  std::span<const SieveCache> segments() const noexcept { return segments_; }

  bool is_prime(std::uint64_t n) const;

  /// p and k when n = p^k for a prime p and k >= 1.
  std::optional<PrimePower> prime_power(std::uint64_t n) const;

  /// log p for n = p^k, else 0.
  double von_mangoldt(std::uint64_t n) const;

  std::vector<std::uint64_t> primes_up_to(std::uint64_t n) const;
  std::uint64_t count_primes(std::uint64_t n) const;

  /// Calls f(p) for each prime in [a, b], ascending; throws CapacityError
  /// if b exceeds the limit.
  template <class F>
  void for_each_prime(std::uint64_t a, std::uint64_t b, F&& f) const {
    require_within(b);
    if (a > b) return;
    for (std::size_t s = segment_index(a); s < segments_.size() && segments_[s].lo() <= b; ++s) {
      segments_[s].for_each_prime(a, b, f);
    }
  }

  void require_within(std::uint64_t n) const;

 private:
  std::size_t segment_index(std::uint64_t n) const noexcept {
    return static_cast<std::size_t>(n / options_.segment_size);
  }

  std::uint64_t limit_;
  SieveOptions options_;
  std::vector<SieveCache> segments_;
};

/// All primes <= n; throws CapacityError above `max_limit`.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n, std::uint64_t max_limit = kDefaultMaxLimit);

/// Primality for any n < 2^63 (deterministic Miller-Rabin).
bool is_prime(std::uint64_t n);

/// Λ(n) for any 1 <= n < 2^63, with exact prime-power detection.
double von_mangoldt(std::uint64_t n);

}  // namespace pairlab
