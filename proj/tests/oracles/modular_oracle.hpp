#pragma once

// Brute-force reference computations for PSL(2,Z), written without the library's
// reduction, R/L peeling or orbit code.

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Mat = std::array<std::int64_t, 4>;  // a, b, c, d

Mat mul(const Mat& x, const Mat& y);
Mat inv(const Mat& x);
/// Same element of PSL(2,Z): equal up to sign.
bool same(const Mat& x, const Mat& y);
std::int64_t trace(const Mat& m);

/// R/L word of a hyperbolic matrix from the continued fraction period of its attracting fixed point.
std::string cf_word(const Mat& m);

/// Least rotation by exhaustive comparison.
std::string least_rotation(const std::string& w);
std::string unoriented(const std::string& w);

/// Product of R = [[1,1],[0,1]] and L = [[1,0],[1,1]] letters.
Mat word_matrix(const std::string& w);

/// True if some g of word length <= max_len in S, T, T^-1 conjugates a rotation of w(R,L) to its inverse.
bool reciprocal_by_search(const std::string& w, int max_len = 12);

struct OracleClass {
  std::string word;     // unoriented canonical R/L word of t_D
  std::int64_t trace;   // |tr t_D|
  bool maximal;
  bool operator<(const OracleClass& o) const {
    return std::tie(word, trace, maximal) < std::tie(o.word, o.trace, o.maximal);
  }
  bool operator==(const OracleClass& o) const = default;
};

/// Conjugacy classes of infinite dihedral subgroups of PSL(2,Z) with |tr t_D| <= X, as a sorted multiset.
std::vector<OracleClass> dihedral_classes(std::int64_t X);

/// Orbit points gamma i with a^2 + b^2 + c^2 + d^2 <= norm_bound, by scanning every matrix with
/// entries in [-E, E]; returned as (x numerator, x denominator, y denominator) triples, sorted.
std::vector<std::array<std::int64_t, 3>> orbit_of_i(std::int64_t norm_bound, bool punctured);

}  // namespace oracle
