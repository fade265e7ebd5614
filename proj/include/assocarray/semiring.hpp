#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace assocarray {

/// Named algebras get a tag so kernels can pick a specialised inner loop.
enum class SemiringKind { plus_times, max_plus, max_min, custom };

/**
 * Value-level semiring (V, add, mul, zero, one).
 *
 * `one` is empty for nonunital algebras. The object is immutable once
 * built and may be shared freely across threads.
 */
template <typename T>
struct Semiring {
  using value_type = T;
  using BinaryOp = std::function<T(const T&, const T&)>;

  std::string name;
  BinaryOp add;
  BinaryOp mul;
  T zero{};
  std::optional<T> one;
  SemiringKind kind = SemiringKind::custom;
};

using NumericSemiring = Semiring<double>;

/// Concatenation / dictionary-minimum algebra over strings.
///
/// `add` is the dictionary minimum and `mul` is concatenation, with the
/// empty string as `zero` and no multiplicative identity. The empty string
/// is the least string, so it absorbs under `add` and is neutral under
/// `mul`; this structure is not a semiring, and check_axioms says so.
using StringAlgebra = Semiring<std::string>;

/// Strict weak order on single characters; the induced dictionary order is
/// used by the string algebra's minimum.
using CharOrder = std::function<bool(char, char)>;

NumericSemiring plus_times();
NumericSemiring max_plus();
NumericSemiring max_min();

/// Default order compares characters as unsigned code units.
StringAlgebra string_algebra(CharOrder order = {});

/// Dictionary order induced by `order` (code-unit order when empty).
bool dictionary_less(const std::string& a, const std::string& b, const CharOrder& order = {});

struct AxiomViolation {
  std::string axiom;
  std::string detail;
};

using AxiomReport = std::vector<AxiomViolation>;

namespace detail {

inline bool approx_equal(double a, double b, double rel_tol) {
  if (a == b) return true;
  if (std::isnan(a) || std::isnan(b)) return false;
  if (rel_tol <= 0.0) return false;
  return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b));
}

inline bool approx_equal(const std::string& a, const std::string& b, double) { return a == b; }

std::string describe(double v);
std::string describe(const std::string& v);

}  // namespace detail

/**
 * Brute-force check of the semiring axioms over every pair and triple of
 * sample values.
 *
 * Checked families: associativity of add and mul, commutativity of add,
 * zero as additive identity, one as multiplicative identity (skipped when
 * `one` is absent), zero as annihilator on both sides, and left and right
 * distributivity. Floating-point comparisons accept a relative difference
 * up to `rel_tol` (0 means exact). Each violated instance is reported once.
 */
template <typename T>
AxiomReport check_axioms(const Semiring<T>& s, std::span<const T> samples, double rel_tol = 0.0) {
  AxiomReport report;
  auto eq = [&](const T& a, const T& b) { return detail::approx_equal(a, b, rel_tol); };
  auto fail = [&](const char* axiom, std::initializer_list<const T*> operands) {
    std::string detail = "(";
    bool first = true;
    for (const T* v : operands) {
      if (!first) detail += ", ";
      detail += detail::describe(*v);
      first = false;
    }
    detail += ")";
    report.push_back({axiom, std::move(detail)});
  };

  for (const T& u : samples) {
    if (!eq(s.add(u, s.zero), u) || !eq(s.add(s.zero, u), u)) fail("additive identity", {&u});
    if (!eq(s.mul(u, s.zero), s.zero) || !eq(s.mul(s.zero, u), s.zero)) fail("annihilator", {&u});
    if (s.one && (!eq(s.mul(u, *s.one), u) || !eq(s.mul(*s.one, u), u))) {
      fail("multiplicative identity", {&u});
    }
    for (const T& v : samples) {
      if (!eq(s.add(u, v), s.add(v, u))) fail("additive commutativity", {&u, &v});
      for (const T& w : samples) {
        if (!eq(s.add(u, s.add(v, w)), s.add(s.add(u, v), w))) {
          fail("additive associativity", {&u, &v, &w});
        }
        if (!eq(s.mul(u, s.mul(v, w)), s.mul(s.mul(u, v), w))) {
          fail("multiplicative associativity", {&u, &v, &w});
        }
        if (!eq(s.mul(u, s.add(v, w)), s.add(s.mul(u, v), s.mul(u, w)))) {
          fail("left distributivity", {&u, &v, &w});
        }
        if (!eq(s.mul(s.add(v, w), u), s.add(s.mul(v, u), s.mul(w, u)))) {
          fail("right distributivity", {&u, &v, &w});
        }
      }
    }
  }
  return report;
}

template <typename T>
AxiomReport check_axioms(const Semiring<T>& s, const std::vector<T>& samples, double rel_tol = 0.0) {
  return check_axioms(s, std::span<const T>(samples), rel_tol);
}

/// Laws the string algebra does satisfy: min is associative, commutative and
/// idempotent, concatenation is associative, the empty string is neutral for
/// concatenation and absorbing for min, and concatenation distributes over
/// min from the left.
AxiomReport check_string_algebra_laws(const StringAlgebra& s, std::span<const std::string> samples);

}  // namespace assocarray
