#pragma once

#include "recip/hyp_core.hpp"

#include <cstdint>
#include <string>

namespace recip {

using IntMatrix = Eigen::Matrix<std::int64_t, 2, 2>;

/// R = [[1,1],[0,1]], L = [[1,0],[1,1]].
IntMatrix letter_matrix(char letter);

/// Product of the letters of w, left to right.
IntMatrix evaluate_word(const std::string& w);

/// Integer matrix of an exact element; throws DomainError on non-integral entries.
IntMatrix to_int_matrix(const Moebius<Rational>& g);

/// A positive R/L word whose product is conjugate in PSL(2,Z) to g (up to sign).
/// Throws DomainError unless g is integral and hyperbolic.
std::string rl_word(const IntMatrix& g);
std::string rl_word(const Moebius<Rational>& g);

/// Lexicographically least rotation.
std::string canonical_cyclic(const std::string& w);

/// Reversed word with R and L exchanged: the word of the inverse class.
std::string reverse_swap(const std::string& w);

/// Least rotation of w or of reverse_swap(w); the key of the unoriented class.
std::string canonical_unoriented(const std::string& w);

bool is_reciprocal(const std::string& w);

/// Shortest u with w = u^k.
std::string primitive_root(const std::string& w);

bool is_primitive(const std::string& w);

}  // namespace recip
