// Copyright 2026 The selectit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cctype>
#include <cstdint>
#include <ctime>
#include <stdexcept>
#include <string>
#include <string_view>

namespace selectit {

enum class Errc {
  file_not_found,
  malformed_json,
  schema_violation,
  io_failure,
  unsupported_k,
  placeholder_missing,
  placeholder_duplicated,
  count_mismatch,
  transport_error,
  http_status_error,
  protocol_error,
  degenerate_sample,
  length_mismatch,
  missing_cell,
  missing_score,
  empty_input,
  unknown_sample_id,
  mismatched_universe,
  hash_collision,
  config_error,
  invalid_argument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::malformed_json: return "MalformedJson";
    case Errc::schema_violation: return "SchemaViolation";
    case Errc::io_failure: return "IoFailure";
    case Errc::unsupported_k: return "UnsupportedK";
    case Errc::placeholder_missing: return "PlaceholderMissing";
    case Errc::placeholder_duplicated: return "PlaceholderDuplicated";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::transport_error: return "TransportError";
    case Errc::http_status_error: return "HttpStatusError";
    case Errc::protocol_error: return "ProtocolError";
    case Errc::degenerate_sample: return "DegenerateSample";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::missing_cell: return "MissingCell";
    case Errc::missing_score: return "MissingScore";
    case Errc::empty_input: return "EmptyInput";
    case Errc::unknown_sample_id: return "UnknownSampleId";
    case Errc::mismatched_universe: return "MismatchedUniverse";
    case Errc::hash_collision: return "HashCollision";
    case Errc::config_error: return "ConfigError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// --- hashing ---------------------------------------------------------------

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline std::string to_hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// Deterministic PRNG with identical output on every platform. Used wherever
// reproducibility across standard libraries matters (seeded shuffles, test
// corpora); std engines leave distribution output implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound), bound > 0; rejection sampling keeps it unbiased
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// --- number formatting -----------------------------------------------------

// Shortest decimal that round-trips to the same double. All numeric text we
// emit (CSV cells, fingerprints) goes through here so replay is bit-exact.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

// Parses the decimal text of a fraction into numerator/denominator. Accepts
// the forms to_chars produces: "0.2", "1", "2.5e-08".
struct Rational {
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;
  bool overflow = false;  // fraction too small to matter; treat as 0
};

inline Rational parse_decimal_fraction(std::string_view text) {
  Rational r;
  std::uint64_t digits = 0;
  int frac_digits = 0;
  int exponent = 0;
  std::size_t i = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + static_cast<std::uint64_t>(c - '0');
      if (seen_dot) ++frac_digits;
    } else if (c == '.') {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      int e = 0;
      bool neg = false;
      ++i;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
      }
      for (; i < text.size(); ++i) e = e * 10 + (text[i] - '0');
      exponent = neg ? -e : e;
      break;
    } else {
      throw Error(Errc::invalid_argument, "not a decimal fraction: " + std::string(text));
    }
  }
  int den_pow = frac_digits - exponent;
  r.num = digits;
  if (den_pow < 0) {
    for (int p = 0; p < -den_pow; ++p) r.num *= 10;
    r.den = 1;
  } else if (den_pow > 30) {
    r.overflow = true;  // < 1e-13 of anything we select from
  } else {
    r.den = 1;
    for (int p = 0; p < den_pow; ++p) r.den *= 10;
  }
  return r;
}

}  // namespace detail

// floor(fraction * n) computed exactly. The fraction is interpreted as the
// shortest decimal that round-trips to the given double, so 0.7 * 90 yields
// 63 even though the double product is 62.999...
inline std::uint64_t floor_fraction_count(std::uint64_t n, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw Error(Errc::invalid_argument, "fraction must be in (0,1], got " + format_double(fraction));
  auto r = detail::parse_decimal_fraction(format_double(fraction));
  if (r.overflow) return 0;
  unsigned __int128 prod = static_cast<unsigned __int128>(n) * r.num;
  return static_cast<std::uint64_t>(prod / r.den);
}

// --- small text utilities ----------------------------------------------------

inline std::string_view trim_view(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::size_t ws_token_count(std::string_view s) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : s) {
    bool ws = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!ws && !in_token) ++count;
    in_token = !ws;
  }
  return count;
}

inline std::string iso8601_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline constexpr const char* kFrozenTimestamp = "1970-01-01T00:00:00Z";

}  // namespace selectit
