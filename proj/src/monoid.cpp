#include "pathdeform/monoid.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace pathdeform {

namespace {

using json = nlohmann::json;

constexpr std::string_view kZeroToken = "0";
constexpr std::string_view kUndefinedToken = "?";
constexpr std::string_view kDefaultKey = "default";

json parse_fixture(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FixtureError(std::string("fixture is not valid JSON: ") + e.what());
  }
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
    throw FixtureError("table key \"" + key + "\" must have the form \"a,b\"");
  }
  return {key.substr(0, comma), key.substr(comma + 1)};
}

}  // namespace

FiniteMonoid::FiniteMonoid(std::vector<std::string> names, std::vector<Outcome<Element>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  if (table_.size() != names_.size() * names_.size()) {
    throw std::invalid_argument("multiplication table must be n*n");
  }
  for (const auto& entry : table_) {
    if (is_value(entry) && std::get<0>(entry).id >= names_.size()) {
      throw std::invalid_argument("multiplication table refers to an unknown element");
    }
  }
}

FiniteMonoid FiniteMonoid::from_json(std::string_view text) {
  const json doc = parse_fixture(text);
  if (!doc.is_object()) throw FixtureError("fixture must be a JSON object");
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    throw FixtureError("fixture key \"elements\" must be an array of names");
  }
  if (!doc.contains("table") || !doc["table"].is_object()) {
    throw FixtureError("fixture key \"table\" must be an object");
  }

  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) throw FixtureError("fixture key \"elements\" holds a non-string entry");
    const auto name = e.get<std::string>();
    if (name == kZeroToken || name == kUndefinedToken || name == kDefaultKey ||
        name.find(',') != std::string::npos || name.empty()) {
      throw FixtureError("element name \"" + name + "\" is reserved or malformed");
    }
    if (!index.emplace(name, names.size()).second) {
      throw FixtureError("element \"" + name + "\" is listed twice");
    }
    names.push_back(name);
  }

  const auto& table = doc["table"];
  auto parse_value = [&](const std::string& key, const json& v) -> Outcome<Element> {
    if (!v.is_string()) throw FixtureError("table entry \"" + key + "\" must be a string");
    const auto s = v.get<std::string>();
    if (s == kZeroToken) return Zero{};
    if (s == kUndefinedToken) return Undefined{};
    auto it = index.find(s);
    if (it == index.end()) {
      throw FixtureError("table entry \"" + key + "\" names unknown element \"" + s + "\"");
    }
    return Element{it->second};
  };

  Outcome<Element> fallback = Zero{};
  if (table.contains(std::string(kDefaultKey))) {
    fallback = parse_value(std::string(kDefaultKey), table[std::string(kDefaultKey)]);
  }

  const std::size_t n = names.size();
  std::vector<Outcome<Element>> cells(n * n, fallback);
  for (const auto& [key, value] : table.items()) {
    if (key == kDefaultKey) continue;
    const auto [left, right] = split_key(key);
    auto li = index.find(left);
    auto ri = index.find(right);
    if (li == index.end() || ri == index.end()) {
      throw FixtureError("table key \"" + key + "\" names an unknown element");
    }
    cells[li->second * n + ri->second] = parse_value(key, value);
  }
  return FiniteMonoid(std::move(names), std::move(cells));
}

FiniteMonoid FiniteMonoid::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_json(ss.str());
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

Outcome<FiniteElement> FiniteMonoid::multiply(const Element& a, const Element& b) const {
  return table_.at(a.id * names_.size() + b.id);
}

std::vector<FiniteElement> FiniteMonoid::elements() const {
  std::vector<Element> out(names_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Element{i};
  return out;
}

std::optional<FiniteElement> FiniteMonoid::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return Element{i};
  }
  return std::nullopt;
}

std::vector<std::array<FiniteElement, 3>> FiniteMonoid::associativity_violations() const {
  std::vector<std::array<Element, 3>> bad;
  const auto els = elements();
  for (const auto& a : els) {
    for (const auto& b : els) {
      for (const auto& c : els) {
        auto ab = multiply(a, b);
        auto bc = multiply(b, c);
        // Zero absorbs; Undefined is outside every identity.
        if (is_undefined(ab) || is_undefined(bc)) continue;
        Outcome<Element> left = is_zero(ab) ? Outcome<Element>{Zero{}} : multiply(std::get<0>(ab), c);
        Outcome<Element> right =
            is_zero(bc) ? Outcome<Element>{Zero{}} : multiply(a, std::get<0>(bc));
        if (is_undefined(left) || is_undefined(right)) continue;
        if (left != right) bad.push_back({a, b, c});
      }
    }
  }
  return bad;
}

std::vector<std::pair<FiniteElement, FiniteElement>> FiniteMonoid::composable_pairs() const {
  std::vector<std::pair<Element, Element>> out;
  const auto els = elements();
  for (const auto& a : els) {
    for (const auto& b : els) {
      if (is_value(multiply(a, b))) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::array<FiniteElement, 3>> FiniteMonoid::composable_triples() const {
  std::vector<std::array<Element, 3>> out;
  const auto els = elements();
  for (const auto& a : els) {
    for (const auto& b : els) {
      auto ab = multiply(a, b);
      if (!is_value(ab)) continue;
      for (const auto& c : els) {
        if (is_value(multiply(b, c)) && is_value(multiply(std::get<0>(ab), c))) {
          out.push_back({a, b, c});
        }
      }
    }
  }
  return out;
}

std::optional<MultiplicativeCochain<FiniteElement>> cocycle_from_json(const FiniteMonoid& m,
                                                                      std::string_view text) {
  const json doc = parse_fixture(text);
  if (!doc.is_object() || !doc.contains("cocycle")) return std::nullopt;
  const auto& block = doc["cocycle"];
  if (!block.is_object()) throw FixtureError("fixture key \"cocycle\" must be an object");

  auto read_weight = [](const std::string& key, const json& v) {
    if (!v.is_number()) throw FixtureError("cocycle entry \"" + key + "\" must be a number");
    const double w = v.get<double>();
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw FixtureError("cocycle entry \"" + key + "\" must be positive");
    }
    return w;
  };

  double fallback = 1.0;
  if (block.contains(std::string(kDefaultKey))) {
    fallback = read_weight(std::string(kDefaultKey), block[std::string(kDefaultKey)]);
  }
  const std::size_t n = m.size();
  auto values = std::make_shared<std::vector<double>>(n * n, fallback);
  for (const auto& [key, value] : block.items()) {
    if (key == kDefaultKey) continue;
    const auto [left, right] = split_key(key);
    auto a = m.find(left);
    auto b = m.find(right);
    if (!a || !b) throw FixtureError("cocycle key \"" + key + "\" names an unknown element");
    (*values)[a->id * n + b->id] = read_weight(key, value);
  }
  return MultiplicativeCochain<FiniteElement>{
      2, [values, n](std::span<const FiniteElement> a) -> std::optional<Weight> {
        if (a.size() != 2) return std::nullopt;
        return Weight{(*values)[a[0].id * n + a[1].id], 0.0};
      }};
}

TrivialitySolution solve_triviality(const MultiplicativeCochain<FiniteElement>& f,
                                    const FiniteMonoid& m, double threshold) {
  const auto pairs = m.composable_pairs();
  const auto n = static_cast<Eigen::Index>(m.size());
  const auto rows = static_cast<Eigen::Index>(pairs.size());

  TrivialitySolution out;
  out.equations = pairs.size();
  out.g.assign(m.size(), 1.0);
  if (rows == 0 || n == 0) {
    out.trivial = true;
    return out;
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, n);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& [a, b] = pairs[static_cast<std::size_t>(r)];
    const auto ab = std::get<0>(m.multiply(a, b));
    const auto w = f({a, b});
    if (!w) throw std::invalid_argument("cochain undefined on a composable pair");
    if (!(w->real() > 0.0) || std::abs(w->imag()) > 1e-12 * w->real()) {
      throw std::invalid_argument("triviality solving needs positive real weights");
    }
    A(r, static_cast<Eigen::Index>(a.id)) += 1.0;
    A(r, static_cast<Eigen::Index>(b.id)) += 1.0;
    A(r, static_cast<Eigen::Index>(ab.id)) -= 1.0;
    rhs(r) = std::log(w->real());
  }

  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(rhs);
  out.residual = (A * x - rhs).cwiseAbs().maxCoeff();
  out.trivial = out.residual <= threshold;
  for (Eigen::Index i = 0; i < n; ++i) out.g[static_cast<std::size_t>(i)] = std::exp(x(i));
  return out;
}

}  // namespace pathdeform
