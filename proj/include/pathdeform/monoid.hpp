#pragma once

// Partial monoids with zero, their cochains and coboundaries, formal sums and
// the coherent (cocycle-twisted) product on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pathdeform/coeffs.hpp"

namespace pathdeform {

/// Product of two elements that cannot be concatenated.
struct Zero {
  friend bool operator==(Zero, Zero) = default;
};

/// Product that exists in principle but is left out of the algebra (no unique
/// shortest geodesic, or an explicit "?" in a finite table).
struct Undefined {
  friend bool operator==(Undefined, Undefined) = default;
};

template <class T>
using Outcome = std::variant<T, Zero, Undefined>;

template <class T>
bool is_value(const Outcome<T>& o) {
  return o.index() == 0;
}
template <class T>
bool is_zero(const Outcome<T>& o) {
  return std::holds_alternative<Zero>(o);
}
template <class T>
bool is_undefined(const Outcome<T>& o) {
  return std::holds_alternative<Undefined>(o);
}

template <class M>
concept PartialMonoid = requires(const M& m, const typename M::Element& a) {
  { m.multiply(a, a) } -> std::same_as<Outcome<typename M::Element>>;
};

/// A map from n-tuples of (nonzero) monoid elements to V. Evaluations that are
/// not defined return nullopt.
template <class E, class V>
struct Cochain {
  std::size_t arity = 1;
  std::function<std::optional<V>(std::span<const E>)> eval;

  std::optional<V> operator()(std::span<const E> args) const { return eval(args); }
  std::optional<V> operator()(std::initializer_list<E> args) const {
    return eval(std::span<const E>(args.begin(), args.size()));
  }
};

template <class E>
using AdditiveCochain = Cochain<E, ModReal>;
template <class E>
using MultiplicativeCochain = Cochain<E, Weight>;

namespace detail {

template <PartialMonoid M>
std::optional<typename M::Element> defined_product(const M& m, const typename M::Element& a,
                                                   const typename M::Element& b) {
  auto p = m.multiply(a, b);
  if (!is_value(p)) return std::nullopt;
  return std::get<0>(std::move(p));
}

}  // namespace detail

/// dF(a1..an+1) = F(a2..an+1) + sum_i (-1)^i F(.., a_i a_{i+1}, ..) + (-1)^{n+1} F(a1..an).
/// Undefined whenever an adjacent product is Zero/Undefined or a term of F is.
template <PartialMonoid M>
AdditiveCochain<typename M::Element> coboundary_additive(
    AdditiveCochain<typename M::Element> F, M monoid) {
  using E = typename M::Element;
  const std::size_t n = F.arity;
  return {n + 1, [F = std::move(F), monoid = std::move(monoid),
                  n](std::span<const E> a) -> std::optional<ModReal> {
            if (a.size() != n + 1) return std::nullopt;
            std::vector<E> args;
            args.reserve(n);

            auto first = F(a.subspan(1));
            if (!first) return std::nullopt;
            double modulus = first->modulus;
            double sum = first->value;

            for (std::size_t i = 0; i + 1 < a.size(); ++i) {
              auto prod = detail::defined_product(monoid, a[i], a[i + 1]);
              if (!prod) return std::nullopt;
              args.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
              args.push_back(*prod);
              args.insert(args.end(), a.begin() + static_cast<std::ptrdiff_t>(i) + 2, a.end());
              auto term = F(std::span<const E>(args));
              if (!term) return std::nullopt;
              // i is zero based, so the sign of the (i+1)-th term is (-1)^(i+1).
              sum += (i % 2 == 0) ? -term->value : term->value;
            }

            auto last = F(a.first(n));
            if (!last) return std::nullopt;
            sum += (n % 2 == 0) ? -last->value : last->value;
            return canonicalize(sum, modulus);
          }};
}

/// (dg)(a,b) = g(a) g(b) / g(ab).
template <PartialMonoid M>
MultiplicativeCochain<typename M::Element> coboundary_multiplicative(
    MultiplicativeCochain<typename M::Element> g, M monoid) {
  using E = typename M::Element;
  return {2, [g = std::move(g), monoid = std::move(monoid)](
                 std::span<const E> a) -> std::optional<Weight> {
            if (a.size() != 2) return std::nullopt;
            auto ab = detail::defined_product(monoid, a[0], a[1]);
            if (!ab) return std::nullopt;
            auto ga = g({a[0]});
            auto gb = g({a[1]});
            auto gab = g({*ab});
            if (!ga || !gb || !gab) return std::nullopt;
            return (*ga) * (*gb) / (*gab);
          }};
}

struct CocycleVerdict {
  bool holds = true;
  double worst = 0.0;       // worst relative violation seen
  std::size_t checked = 0;  // triples where every factor was defined
  std::size_t skipped = 0;  // triples with a Zero/Undefined product or value
};

/// Checks f(a,b) f(ab,c) = f(b,c) f(a,bc) on each sampled triple.
template <PartialMonoid M, class Triples>
CocycleVerdict is_cocycle_multiplicative(const MultiplicativeCochain<typename M::Element>& f,
                                         const M& monoid, const Triples& triples,
                                         double rel_tol = kDefaultTolerance) {
  CocycleVerdict v;
  for (const auto& [a, b, c] : triples) {
    auto ab = detail::defined_product(monoid, a, b);
    auto bc = detail::defined_product(monoid, b, c);
    if (!ab || !bc) {
      ++v.skipped;
      continue;
    }
    auto abc = detail::defined_product(monoid, *ab, c);
    auto fab = f({a, b});
    auto fab_c = f({*ab, c});
    auto fbc = f({b, c});
    auto fa_bc = f({a, *bc});
    if (!abc || !fab || !fab_c || !fbc || !fa_bc) {
      ++v.skipped;
      continue;
    }
    const Weight lhs = (*fab) * (*fab_c);
    const Weight rhs = (*fbc) * (*fa_bc);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    const double err = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
    v.worst = std::max(v.worst, err);
    ++v.checked;
  }
  v.holds = v.worst <= rel_tol;
  return v;
}

/// A finite linear combination of basis elements with complex coefficients.
template <class E>
class FormalSum {
 public:
  using Coefficient = std::complex<double>;

  FormalSum() = default;
  FormalSum(std::initializer_list<std::pair<E, Coefficient>> terms) {
    for (const auto& [e, c] : terms) add(e, c);
  }

  void add(const E& e, Coefficient c) {
    if (c == Coefficient{}) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coefficient{}) terms_.erase(it);
    }
  }

  FormalSum scaled(Coefficient s) const {
    FormalSum out;
    for (const auto& [e, c] : terms_) out.add(e, s * c);
    return out;
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }

  Coefficient coefficient(const E& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient{} : it->second;
  }

  const std::map<E, Coefficient>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Largest coefficient-wise difference over the union of supports.
  friend double max_coefficient_diff(const FormalSum& a, const FormalSum& b) {
    double worst = 0.0;
    for (const auto& [e, c] : a.terms_) worst = std::max(worst, std::abs(c - b.coefficient(e)));
    for (const auto& [e, c] : b.terms_) worst = std::max(worst, std::abs(c - a.coefficient(e)));
    return worst;
  }

 private:
  std::map<E, Coefficient> terms_;
};

template <class E>
struct ProductResult {
  FormalSum<E> sum;
  /// Basis pairs whose product or weight was undefined; nonempty means the
  /// whole product is Undefined.
  std::vector<std::pair<E, E>> undefined_pairs;

  bool defined() const { return undefined_pairs.empty(); }
};

/// Bilinear extension of a * b = f(a,b) ab.
template <PartialMonoid M>
ProductResult<typename M::Element> deformed_product(
    const FormalSum<typename M::Element>& x, const FormalSum<typename M::Element>& y,
    const MultiplicativeCochain<typename M::Element>& f, const M& monoid) {
  ProductResult<typename M::Element> out;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      auto ab = monoid.multiply(a, b);
      if (is_zero(ab)) continue;
      if (is_undefined(ab)) {
        out.undefined_pairs.emplace_back(a, b);
        continue;
      }
      auto w = f({a, b});
      if (!w) {
        out.undefined_pairs.emplace_back(a, b);
        continue;
      }
      out.sum.add(std::get<0>(ab), ca * cb * (*w));
    }
  }
  if (!out.defined()) out.sum = {};
  return out;
}

/// Identity weight, f == 1.
template <class E>
MultiplicativeCochain<E> unit_cochain(std::size_t arity) {
  return {arity, [](std::span<const E>) -> std::optional<Weight> { return Weight{1.0, 0.0}; }};
}

// ---------------------------------------------------------------------------
// Finite partial monoids

struct FiniteElement {
  std::size_t id = 0;
  friend auto operator<=>(const FiniteElement&, const FiniteElement&) = default;
};

class FiniteMonoid {
 public:
  using Element = FiniteElement;

  enum class Entry : unsigned char { Value, Zero, Undefined };

  FiniteMonoid() = default;
  /// table[i * n + j] is the product of elements i and j.
  FiniteMonoid(std::vector<std::string> names, std::vector<Outcome<Element>> table);

  /// Parses the fixture JSON. Throws FixtureError naming the offending key.
  static FiniteMonoid from_json(std::string_view text);
  static FiniteMonoid from_file(const std::string& path);

  Outcome<Element> multiply(const Element& a, const Element& b) const;

  std::size_t size() const { return names_.size(); }
  std::vector<Element> elements() const;
  const std::string& name(const Element& e) const { return names_.at(e.id); }
  std::optional<Element> find(std::string_view name) const;

  /// Triples where (ab)c and a(bc) are both nonzero elements but differ.
  std::vector<std::array<Element, 3>> associativity_violations() const;

  /// All pairs (a, b) whose product is a nonzero element.
  std::vector<std::pair<Element, Element>> composable_pairs() const;
  /// All (a, b, c) with ab, bc, (ab)c all nonzero elements.
  std::vector<std::array<Element, 3>> composable_triples() const;

 private:
  std::vector<std::string> names_;
  std::vector<Outcome<Element>> table_;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive-real 2-cochain read from the optional "cocycle" block of a fixture
/// (keys "a,b", optional "default", which itself defaults to 1). nullopt when
/// the fixture has no such block.
std::optional<MultiplicativeCochain<FiniteElement>> cocycle_from_json(const FiniteMonoid& m,
                                                       std::string_view text);

struct TrivialitySolution {
  bool trivial = false;
  /// g(e) for each element, indexed by element id (meaningful when trivial).
  std::vector<double> g;
  /// max |log f(a,b) - (x_a + x_b - x_ab)| of the least-squares solution.
  double residual = 0.0;
  std::size_t equations = 0;
};

inline constexpr double kTrivialityResidual = 1e-8;

/// Solves log f = d(log g) in the least-squares sense. f must be positive and
/// defined on every composable pair; otherwise throws std::invalid_argument.
TrivialitySolution solve_triviality(const MultiplicativeCochain<FiniteElement>& f,
                                    const FiniteMonoid& m,
                                    double threshold = kTrivialityResidual);

}  // namespace pathdeform
