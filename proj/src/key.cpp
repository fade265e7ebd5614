#include "assocarray/key.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace assocarray {

Key::Key(double number) : value_(number) {
  if (std::isnan(number)) {
    throw std::invalid_argument("NaN is not a valid key");
  }
  if (number == 0.0) value_ = 0.0;  // fold -0.0
}

double Key::number() const {
  if (!is_number()) throw std::logic_error("key is not a number: " + text());
  return std::get<0>(value_);
}

const std::string& Key::text() const {
  if (!is_text()) throw std::logic_error("key is not text");
  return std::get<1>(value_);
}

std::string Key::to_string() const {
  return is_number() ? format_number(std::get<0>(value_)) : std::get<1>(value_);
}

std::strong_ordering operator<=>(const Key& a, const Key& b) {
  if (a.value_.index() != b.value_.index()) {
    return a.value_.index() <=> b.value_.index();
  }
  if (a.is_number()) {
    const double x = std::get<0>(a.value_);
    const double y = std::get<0>(b.value_);
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const int c = std::get<1>(a.value_).compare(std::get<1>(b.value_));
  return c <=> 0;
}

std::string format_number(double value) {
  // Integral values within the exactly-representable range print as integers.
  if (std::isfinite(value) && value == std::trunc(value) &&
      std::fabs(value) < 9.007199254740992e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  return std::string(buf, end);
}

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  if (k.is_number()) return std::hash<double>{}(k.number());
  return std::hash<std::string>{}(k.text()) ^ 0x9e3779b97f4a7c15ULL;
}

}  // namespace assocarray
