#include "recip/group_model.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_set>

namespace recip {

using nlohmann::json;

template <class Scalar>
double GroupSpec<Scalar>::covolume_value() const {
  if (covolume) return *covolume;
  if (!euler_char) throw DomainError("group '" + name + "' has infinite covolume");
  return 2.0 * std::numbers::pi * std::abs(euler_char->convert_to<double>());
}

template <class Scalar>
std::vector<Moebius<Scalar>> GroupSpec<Scalar>::symmetric_generators() const {
  std::vector<Moebius<Scalar>> out;
  std::unordered_set<ElementKey<Scalar>, ElementKeyHash> seen;
  auto push = [&](const Moebius<Scalar>& g) {
    if (seen.insert(element_key(g)).second) out.push_back(g);
  };
  for (const auto& g : generators) {
    push(g);
    push(invert(g));
  }
  return out;
}

Moebius<Rational> modular_S() { return Moebius<Rational>(0, -1, 1, 0); }
Moebius<Rational> modular_T() { return Moebius<Rational>(1, 1, 0, 1); }

GroupSpec<Rational> modular_group() {
  GroupSpec<Rational> g;
  g.name = "psl2z";
  g.generators = {modular_T(), modular_S()};
  g.involution_classes.emplace_back(modular_S(), 2);
  g.euler_char = Rational(-1, 6);
  return g;
}

GroupSpec<double> triangle_237() {
  // x: rotation by pi about i; y: trace 1 (order 3); tr(xy) = 2 cos(pi/7) (order 7).
  const double lambda = 2.0 * std::cos(std::numbers::pi / 7.0);
  const double root = std::sqrt(lambda * lambda - 3.0);
  const Moebius<double> x(0.0, -1.0, 1.0, 0.0);
  const Moebius<double> y(0.5, 0.5 * (lambda + root), -0.5 * (lambda - root), 0.5);
  GroupSpec<double> g;
  g.name = "triangle237";
  g.generators = {x, y};
  g.involution_classes.emplace_back(x, 2);
  g.euler_char = Rational(-1, 42);
  return g;
}

AnyGroupSpec builtin_group(const std::string& name) {
  if (name == "psl2z") return modular_group();
  if (name == "triangle237") return triangle_237();
  throw ValidationError("name", "unknown built-in group '" + name + "' (expected psl2z or triangle237)");
}

bool is_integral(const GroupSpec<Rational>& spec) {
  for (const auto& g : spec.generators) {
    for (const auto* v : {&g.a(), &g.b(), &g.c(), &g.d()}) {
      if (!is_integer(*v)) return false;
    }
  }
  return true;
}

bool is_full_modular(const GroupSpec<Rational>& spec) {
  if (!is_integral(spec)) return false;
  bool has_s = false, has_t = false;
  for (const auto& g : spec.symmetric_generators()) {
    has_s = has_s || g == modular_S();
    has_t = has_t || g == modular_T();
  }
  return has_s && has_t;
}

template <class Scalar>
std::vector<Moebius<Scalar>> word_ball(const GroupSpec<Scalar>& spec, int word_bound) {
  const auto gens = spec.symmetric_generators();
  std::vector<Moebius<Scalar>> ball{Moebius<Scalar>()};
  std::unordered_set<ElementKey<Scalar>, ElementKeyHash> seen{element_key(ball.front())};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= word_bound; ++len) {
    const std::size_t layer_end = ball.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        Moebius<Scalar> next = ball[i] * s;
        if (seen.insert(element_key(next)).second) ball.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  return ball;
}

template <class Scalar>
std::vector<Moebius<Scalar>> stabilizer_elements(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                                 int word_bound) {
  std::vector<Moebius<Scalar>> out;
  for (const auto& g : word_ball(spec, word_bound)) {
    if (apply(g, p) == p) out.push_back(g);
  }
  return out;
}

template <class Scalar>
int verify_normalizer_order(const GroupSpec<Scalar>& spec, std::size_t k, int word_bound) {
  if (k >= spec.involution_classes.size()) throw DomainError("involution class index out of range");
  return static_cast<int>(
      stabilizer_elements(spec, spec.involution_classes[k].fixed_point, std::max(0, word_bound)).size());
}

template <class Scalar>
std::vector<Moebius<Scalar>> normalizer_elements(const GroupSpec<Scalar>& spec, std::size_t k,
                                                 int max_word_bound) {
  const auto& cls = spec.involution_classes.at(k);
  for (int bound = 1; bound <= max_word_bound; ++bound) {
    auto found = stabilizer_elements(spec, cls.fixed_point, bound);
    if (static_cast<int>(found.size()) == cls.normalizer_order) return found;
    if (static_cast<int>(found.size()) > cls.normalizer_order)
      throw ValidationError("involutions[" + std::to_string(k) + "].normalizer_order",
                            "stabilizer has at least " + std::to_string(found.size()) + " elements");
  }
  throw ValidationError("involutions[" + std::to_string(k) + "].normalizer_order",
                        "could not find " + std::to_string(cls.normalizer_order) +
                            " stabilizer elements within word length " + std::to_string(max_word_bound));
}

template <class Scalar>
void validate(const GroupSpec<Scalar>& spec, int conjugacy_word_bound) {
  if (spec.generators.empty()) throw ValidationError("generators", "at least one generator is required");
  if (spec.involution_classes.empty())
    throw ValidationError("involutions", "at least one involution class is required");
  for (std::size_t i = 0; i < spec.involution_classes.size(); ++i) {
    const auto& cls = spec.involution_classes[i];
    const std::string field = "involutions[" + std::to_string(i) + "]";
    if (!is_involution(cls.rep)) throw ValidationError(field + ".rep", "involution representative is not order 2");
    if (cls.normalizer_order < 2 || cls.normalizer_order % 2 != 0)
      throw ValidationError(field + ".normalizer_order", "normalizer order must be a positive even integer");
  }
  if (spec.euler_char) {
    if (*spec.euler_char >= 0)
      throw ValidationError("euler_char", "orbifold Euler characteristic must be negative");
    if (spec.covolume) {
      const double expected = 2.0 * std::numbers::pi * std::abs(spec.euler_char->template convert_to<double>());
      if (std::abs(*spec.covolume - expected) > kTolerance)
        throw ValidationError("covolume", "covolume disagrees with 2 pi |euler_char|");
    }
  }
  for (std::size_t i = 0; i < spec.involution_classes.size(); ++i) {
    const int found = verify_normalizer_order(spec, i, conjugacy_word_bound);
    if (found > spec.involution_classes[i].normalizer_order)
      throw ValidationError("involutions[" + std::to_string(i) + "].normalizer_order",
                            "stabilizer of the fixed point has at least " + std::to_string(found) + " elements");
  }
  if (spec.involution_classes.size() > 1) {
    const auto ball = word_ball(spec, conjugacy_word_bound);
    for (std::size_t i = 0; i < spec.involution_classes.size(); ++i) {
      for (std::size_t j = i + 1; j < spec.involution_classes.size(); ++j) {
        for (const auto& g : ball) {
          if (apply(g, spec.involution_classes[i].fixed_point) == spec.involution_classes[j].fixed_point)
            throw ValidationError("involutions", "classes " + std::to_string(i) + " and " + std::to_string(j) +
                                                     " are conjugate");
        }
      }
    }
  }
}

namespace {

Rational rational_entry(const json& v, const std::string& field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ValidationError(field, "exact-mode entries must be \"p/q\" strings or integers");
}

double floating_entry(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).convert_to<double>();
  throw ValidationError(field, "floating-mode entries must be numbers");
}

template <class Scalar>
Moebius<Scalar> parse_matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 4) throw ValidationError(field, "expected [a, b, c, d]");
  std::array<Scalar, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    if constexpr (is_exact_v<Scalar>) {
      e[i] = rational_entry(v[i], field);
    } else {
      e[i] = floating_entry(v[i], field);
    }
  }
  try {
    return Moebius<Scalar>(e[0], e[1], e[2], e[3]);
  } catch (const DomainError& err) {
    throw ValidationError(field, err.what());
  }
}

template <class Scalar>
GroupSpec<Scalar> parse_typed(const json& doc) {
  GroupSpec<Scalar> spec;
  spec.name = doc.at("name").get<std::string>();
  const auto& gens = doc.at("generators");
  if (!gens.is_array()) throw ValidationError("generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i)
    spec.generators.push_back(parse_matrix<Scalar>(gens[i], "generators[" + std::to_string(i) + "]"));
  const auto& invs = doc.at("involutions");
  if (!invs.is_array()) throw ValidationError("involutions", "expected an array");
  for (std::size_t i = 0; i < invs.size(); ++i) {
    const std::string field = "involutions[" + std::to_string(i) + "]";
    auto rep = parse_matrix<Scalar>(invs[i].at("rep"), field + ".rep");
    if (!is_involution(rep)) throw ValidationError(field + ".rep", "involution representative is not order 2");
    const auto& order = invs[i].at("normalizer_order");
    if (!order.is_number_integer()) throw ValidationError(field + ".normalizer_order", "expected an integer");
    spec.involution_classes.emplace_back(std::move(rep), order.get<int>());
  }
  const bool lattice = doc.value("lattice", true);
  if (doc.contains("euler_char") && !doc.at("euler_char").is_null()) {
    const auto& e = doc.at("euler_char");
    spec.euler_char = e.is_string() ? parse_rational(e.get<std::string>()) : rational_entry(e, "euler_char");
  } else if (lattice) {
    throw ValidationError("euler_char", "required for lattices");
  }
  if (doc.contains("covolume") && !doc.at("covolume").is_null()) {
    if (!doc.at("covolume").is_number()) throw ValidationError("covolume", "expected a number");
    spec.covolume = doc.at("covolume").get<double>();
  }
  spec.free_product_of_involutions = doc.value("free_product_of_involutions", false);
  validate(spec);
  return spec;
}

}  // namespace

AnyGroupSpec parse_group(const json& doc) {
  try {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "exact") return parse_typed<Rational>(doc);
    if (mode == "floating") return parse_typed<double>(doc);
    throw ValidationError("mode", "expected \"exact\" or \"floating\"");
  } catch (const json::exception& err) {
    throw ValidationError("", std::string("malformed group spec: ") + err.what());
  }
}

AnyGroupSpec load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "cannot open group spec '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw ValidationError("", "cannot parse '" + path.string() + "': " + err.what());
  }
  return parse_group(doc);
}

template <class Scalar>
json to_json(const GroupSpec<Scalar>& spec) {
  auto matrix = [](const Moebius<Scalar>& g) {
    json m = json::array();
    for (const auto* v : {&g.a(), &g.b(), &g.c(), &g.d()}) {
      if constexpr (is_exact_v<Scalar>) {
        m.push_back(v->str());
      } else {
        m.push_back(*v);
      }
    }
    return m;
  };
  json doc;
  doc["name"] = spec.name;
  doc["mode"] = std::string(to_string(spec.mode));
  doc["generators"] = json::array();
  for (const auto& g : spec.generators) doc["generators"].push_back(matrix(g));
  doc["involutions"] = json::array();
  for (const auto& cls : spec.involution_classes)
    doc["involutions"].push_back({{"rep", matrix(cls.rep)}, {"normalizer_order", cls.normalizer_order}});
  if (spec.euler_char) {
    doc["euler_char"] = spec.euler_char->str();
  } else {
    doc["lattice"] = false;
  }
  if (spec.covolume) doc["covolume"] = *spec.covolume;
  if (spec.free_product_of_involutions) doc["free_product_of_involutions"] = true;
  return doc;
}

#define RECIP_INSTANTIATE(S)                                                                          \
  template struct GroupSpec<S>;                                                                       \
  template void validate(const GroupSpec<S>&, int);                                                   \
  template json to_json(const GroupSpec<S>&);                                                         \
  template std::vector<Moebius<S>> word_ball(const GroupSpec<S>&, int);                               \
  template std::vector<Moebius<S>> stabilizer_elements(const GroupSpec<S>&, const Point<S>&, int);    \
  template int verify_normalizer_order(const GroupSpec<S>&, std::size_t, int);                        \
  template std::vector<Moebius<S>> normalizer_elements(const GroupSpec<S>&, std::size_t, int);

RECIP_INSTANTIATE(Rational)
RECIP_INSTANTIATE(double)

}  // namespace recip
