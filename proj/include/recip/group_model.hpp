#pragma once

#include "recip/hyp_core.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace recip {

/// A declared conjugacy class of involutions: representative, its fixed point, |N(sigma)|.
template <class Scalar>
struct InvolutionClass {
  Moebius<Scalar> rep;
  Point<Scalar> fixed_point;
  int normalizer_order = 2;

  InvolutionClass(Moebius<Scalar> r, int order)
      : rep(std::move(r)), fixed_point(involution_fixed_point(rep)), normalizer_order(order) {}
};

/// A finitely generated Fuchsian group with 2-torsion, described as data.
template <class Scalar>
struct GroupSpec {
  static constexpr Mode mode = ScalarTraits<Scalar>::mode;

  std::string name;
  std::vector<Moebius<Scalar>> generators;
  std::vector<InvolutionClass<Scalar>> involution_classes;
  /// Orbifold Euler characteristic; empty for groups of infinite covolume.
  std::optional<Rational> euler_char;
  std::optional<double> covolume;
  /// Set when the group is a free product of its involution generators (enables reduced-word walks).
  bool free_product_of_involutions = false;

  bool is_lattice() const { return euler_char.has_value(); }

  /// Area of the quotient: declared covolume or 2 pi |chi| by Gauss-Bonnet.
  double covolume_value() const;

  /// Generators together with their inverses, without duplicates.
  std::vector<Moebius<Scalar>> symmetric_generators() const;
};

using AnyGroupSpec = std::variant<GroupSpec<Rational>, GroupSpec<double>>;

/// The modular group PSL(2,Z) in exact mode.
GroupSpec<Rational> modular_group();

/// The (2,3,7) triangle group in floating mode.
GroupSpec<double> triangle_237();

/// Built-in groups by name: "psl2z" or "triangle237".
AnyGroupSpec builtin_group(const std::string& name);

/// Checks every structural invariant; throws ValidationError naming the field.
template <class Scalar>
void validate(const GroupSpec<Scalar>& spec, int conjugacy_word_bound = 4);

AnyGroupSpec parse_group(const nlohmann::json& doc);
AnyGroupSpec load_group(const std::filesystem::path& path);

template <class Scalar>
nlohmann::json to_json(const GroupSpec<Scalar>& spec);

/// All distinct elements reachable by words of length <= word_bound in the symmetric generators.
template <class Scalar>
std::vector<Moebius<Scalar>> word_ball(const GroupSpec<Scalar>& spec, int word_bound);

/// Elements of word length <= word_bound fixing p.
template <class Scalar>
std::vector<Moebius<Scalar>> stabilizer_elements(const GroupSpec<Scalar>& spec, const Point<Scalar>& p,
                                                 int word_bound);

/// Counts the elements of word length <= word_bound fixing the fixed point of class k.
template <class Scalar>
int verify_normalizer_order(const GroupSpec<Scalar>& spec, std::size_t k, int word_bound);

/// The full stabilizer of the fixed point of class k, searched with growing word bounds.
template <class Scalar>
std::vector<Moebius<Scalar>> normalizer_elements(const GroupSpec<Scalar>& spec, std::size_t k,
                                                 int max_word_bound = 16);

/// True when every generator is integral and the set contains S and T, i.e. the group is PSL(2,Z).
bool is_full_modular(const GroupSpec<Rational>& spec);

/// True when every generator has integer entries, so the group sits inside PSL(2,Z).
bool is_integral(const GroupSpec<Rational>& spec);

inline bool is_full_modular(const GroupSpec<double>&) { return false; }
inline bool is_integral(const GroupSpec<double>&) { return false; }

Moebius<Rational> modular_S();
Moebius<Rational> modular_T();

}  // namespace recip
