#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

namespace assocarray {

/// Signed index type used for matrix coordinates and index maps.
using index_t = std::int64_t;

/// Row or column label: a finite number or a string.
///
/// Keys are totally ordered: every number sorts before every string,
/// numbers compare numerically and strings compare by code unit.
/// NaN is rejected on construction and -0.0 is stored as 0.0.
class Key {
 public:
  Key() : value_(0.0) {}
  Key(double number);  // NOLINT(google-explicit-constructor)
  Key(int number) : Key(static_cast<double>(number)) {}  // NOLINT
  Key(long number) : Key(static_cast<double>(number)) {}  // NOLINT
  Key(long long number) : Key(static_cast<double>(number)) {}  // NOLINT
  Key(std::string text) : value_(std::move(text)) {}  // NOLINT
  Key(std::string_view text) : value_(std::string(text)) {}  // NOLINT
  Key(const char* text) : value_(std::string(text)) {}  // NOLINT

  bool is_number() const { return value_.index() == 0; }
  bool is_text() const { return value_.index() == 1; }

  /// Throws std::logic_error when the key holds the other kind.
  double number() const;
  const std::string& text() const;

  /// Integral numbers render without a fractional part ("5", not "5.0");
  /// other numbers use the shortest text that round-trips.
  std::string to_string() const;

  friend bool operator==(const Key& a, const Key& b) = default;
  friend std::strong_ordering operator<=>(const Key& a, const Key& b);

 private:
  std::variant<double, std::string> value_;
};

/// Shortest round-trip decimal rendering; integral values print without ".0".
std::string format_number(double value);

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

}  // namespace assocarray
