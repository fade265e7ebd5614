#include "assocarray/semiring.hpp"

#include <limits>

#include "assocarray/key.hpp"

namespace assocarray {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NumericSemiring plus_times() {
  return {"plus_times",
          [](const double& a, const double& b) { return a + b; },
          [](const double& a, const double& b) { return a * b; },
          0.0,
          1.0,
          SemiringKind::plus_times};
}

NumericSemiring max_plus() {
  return {"max_plus",
          [](const double& a, const double& b) { return std::max(a, b); },
          [](const double& a, const double& b) { return a + b; },
          -kInf,
          0.0,
          SemiringKind::max_plus};
}

NumericSemiring max_min() {
  return {"max_min",
          [](const double& a, const double& b) { return std::max(a, b); },
          [](const double& a, const double& b) { return std::min(a, b); },
          -kInf,
          kInf,
          SemiringKind::max_min};
}

bool dictionary_less(const std::string& a, const std::string& b, const CharOrder& order) {
  if (!order) return a < b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), order);
}

StringAlgebra string_algebra(CharOrder order) {
  StringAlgebra s;
  s.name = "string";
  s.add = [order](const std::string& a, const std::string& b) {
    return dictionary_less(b, a, order) ? b : a;
  };
  s.mul = [](const std::string& a, const std::string& b) { return a + b; };
  s.zero = std::string();
  s.one = std::nullopt;
  return s;
}

namespace detail {

std::string describe(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

std::string describe(const std::string& v) { return "\"" + v + "\""; }

}  // namespace detail

AxiomReport check_string_algebra_laws(const StringAlgebra& s, std::span<const std::string> samples) {
  AxiomReport report;
  const std::string& eps = s.zero;
  for (const auto& u : samples) {
    if (s.add(u, u) != u) report.push_back({"min idempotence", detail::describe(u)});
    if (s.mul(eps, u) != u || s.mul(u, eps) != u) {
      report.push_back({"empty string neutral for concatenation", detail::describe(u)});
    }
    if (s.add(u, eps) != eps || s.add(eps, u) != eps) {
      report.push_back({"empty string absorbing for min", detail::describe(u)});
    }
    for (const auto& v : samples) {
      if (s.add(u, v) != s.add(v, u)) {
        report.push_back({"min commutativity", detail::describe(u) + ", " + detail::describe(v)});
      }
      for (const auto& w : samples) {
        const std::string triple =
            detail::describe(u) + ", " + detail::describe(v) + ", " + detail::describe(w);
        if (s.add(u, s.add(v, w)) != s.add(s.add(u, v), w)) {
          report.push_back({"min associativity", triple});
        }
        if (s.mul(u, s.mul(v, w)) != s.mul(s.mul(u, v), w)) {
          report.push_back({"concatenation associativity", triple});
        }
        if (s.mul(u, s.add(v, w)) != s.add(s.mul(u, v), s.mul(u, w))) {
          report.push_back({"left distributivity", triple});
        }
      }
    }
  }
  return report;
}

}  // namespace assocarray
