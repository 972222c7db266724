#include "helpers.hpp"

#include "modular_oracle.hpp"
#include "recip/rl_word.hpp"

#include <doctest.h>

using namespace recip;
using namespace th;

namespace {

oracle::Mat as_oracle(const IntMatrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

}  // namespace

TEST_CASE("letters and evaluation") {
  CHECK(evaluate_word("RL") == (IntMatrix() << 2, 1, 1, 1).finished());
  CHECK(evaluate_word("LR") == (IntMatrix() << 1, 1, 1, 2).finished());
  CHECK(evaluate_word("") == IntMatrix::Identity());
  CHECK_THROWS_AS(letter_matrix('X'), DomainError);
}

TEST_CASE("rl_word examples") {
  CHECK(canonical_cyclic(rl_word(M(2, 1, 1, 1))) == "LR");
  CHECK(canonical_cyclic(rl_word(M(1, 1, 1, 2))) == "LR");
  const Moebius<Q> g = M(2, 1, 1, 1);
  const std::string w = rl_word(g);
  CHECK(canonical_cyclic(rl_word(g * g)) == canonical_cyclic(w + w));
  CHECK_THROWS_AS(rl_word(S()), DomainError);
  CHECK_THROWS_AS(rl_word(T()), DomainError);
  CHECK_THROWS_AS(rl_word(Moebius<Q>(Q(2), Q(1, 2), Q(2), Q(1))), DomainError);
}

TEST_CASE("rl_word agrees with the continued fraction oracle") {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 400) {
    const Moebius<Q> g = random_modular(rng, 14);
    if (classify(g) != IsometryKind::Hyperbolic || abs_value(g.trace()) > 5000) continue;
    const IntMatrix m = to_int_matrix(g);
    const std::string w = rl_word(m);
    CHECK(std::abs(evaluate_word(w).trace()) == std::abs(m.trace()));
    CHECK(canonical_cyclic(w) == oracle::least_rotation(oracle::cf_word(as_oracle(m))));
    // power law
    const Moebius<Q> g3 = power(g, 3);
    if (abs_value(g3.trace()) < Q(1'000'000'000)) CHECK(canonical_cyclic(rl_word(g3)) == canonical_cyclic(w + w + w));
    ++checked;
  }
}

TEST_CASE("conjugation invariance") {
  std::mt19937_64 rng(5);
  const Moebius<Q> base = M(7, 5, 4, 3);
  const std::string key = canonical_cyclic(rl_word(base));
  for (int n = 0; n < 100; ++n) {
    const Moebius<Q> h = random_modular(rng, 6);
    CHECK(canonical_cyclic(rl_word(conjugate(h, base))) == key);
  }
  CHECK(canonical_cyclic(rl_word(invert(base))) == canonical_cyclic(reverse_swap(rl_word(base))));
}

TEST_CASE("cyclic canonical forms") {
  CHECK(canonical_cyclic("RLL") == "LLR");
  CHECK(canonical_cyclic("LRL") == "LLR");
  CHECK(reverse_swap("RRL") == "RLL");
  CHECK(canonical_unoriented("RRL") == "LLR");
  CHECK(canonical_unoriented("RLL") == "LLR");
  CHECK(primitive_root("RLRL") == "RL");
  CHECK(primitive_root("RRLRRL") == "RRL");
  CHECK(primitive_root("RRL") == "RRL");
  CHECK(is_primitive("RL"));
  CHECK_FALSE(is_primitive("RLRL"));
  for (const std::string w : {"RRRLRL", "LRRLRLRRL", "RLLRLLRRRL", "RRRRRL"}) {
    CHECK(canonical_cyclic(w) == oracle::least_rotation(w));
    CHECK(canonical_unoriented(w) == oracle::unoriented(w));
  }
}

TEST_CASE("reciprocity against conjugator search") {
  CHECK(is_reciprocal("RL"));
  CHECK(oracle::reciprocal_by_search("RL"));
  CHECK_FALSE(is_reciprocal("RRL"));
  CHECK_FALSE(oracle::reciprocal_by_search("RRL"));
  for (const std::string w : {"RRLL", "RRRLLL", "RLRRLL", "RRLRL", "RRRL", "RRLLRL", "RRRLLRLL", "RRLRLL"}) {
    CHECK(is_reciprocal(w) == oracle::reciprocal_by_search(w));
    CHECK(is_reciprocal(w + w) == is_reciprocal(w));
  }
}
