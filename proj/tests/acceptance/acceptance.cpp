// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "../unit/helpers.hpp"

#include "modular_oracle.hpp"
#include "recip/census.hpp"
#include "recip/equidist.hpp"
#include "recip/lowlying.hpp"
#include "recip/rl_word.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace recip;
using namespace th;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Check = std::function<void(Outcome&)>;

// count_by_trace(psl2z, X) against (3/8) X
void modular_constant(Outcome& o) {
  const auto g = modular_group();
  auto ratio = [&](long X) {
    return static_cast<double>(count_by_trace(g, Q(X), false)) / (0.375 * static_cast<double>(X));
  };
  const double r2 = ratio(100), r4 = ratio(10000);
  o.detail << "ratio(1e2)=" << r2 << " ratio(1e4)=" << r4;
  o.require(r4 >= 0.85 && r4 <= 1.15, "ratio(1e4) in [0.85, 1.15]");
  o.require(std::abs(r4 - 1) < std::abs(r2 - 1), "deviation shrinks from 1e2 to 1e4");
}

std::vector<oracle::OracleClass> census_classes(const Census<Rational>& c) {
  std::vector<oracle::OracleClass> out;
  for (const auto& d : c.classes) out.push_back({d.rl, to_int64(d.trace), d.maximal});
  std::sort(out.begin(), out.end());
  return out;
}

// census class list equals the brute-force oracle for X <= 50
void small_trace_oracle(Outcome& o) {
  const auto g = modular_group();
  std::size_t total = 0;
  for (long X : {3L, 7L, 17L, 30L, 50L}) {
    const auto mine = census_classes(census(g, Radius::from_trace(Q(X))));
    const auto want = oracle::dihedral_classes(X);
    o.require(mine == want, "multiset equality at X=" + std::to_string(X));
    total = mine.size();
  }
  std::size_t reciprocal = 0;
  for (const auto& c : oracle::dihedral_classes(50)) {
    const bool by_search = oracle::reciprocal_by_search(c.word, 12);
    o.require(by_search, "conjugator search finds a reciprocal conjugator for " + c.word);
    o.require(is_reciprocal(c.word), "is_reciprocal(" + c.word + ")");
    reciprocal += by_search;
  }
  o.require(!oracle::reciprocal_by_search("RRL", 12), "RRL is not reciprocal");
  o.detail << total << " classes at X=50, " << reciprocal << " reciprocal by search";
}

void delsarte(Outcome& o) {
  const auto g = modular_group();
  double prev = INFINITY;
  for (double R : {8.0, 10.0, 12.0}) {
    const auto r = delsarte_ratio(g, I(), I(), R);
    o.detail << "R=" << R << ":" << r.ratio << " ";
    o.require(std::abs(r.ratio - 1) < prev, "|ratio-1| decreasing");
    prev = std::abs(r.ratio - 1);
    if (R == 12.0) o.require(r.ratio >= 0.9 && r.ratio <= 1.1, "ratio(12) in [0.9, 1.1]");
  }
}

void constant_identities(Outcome& o) {
  const auto m = constant_C(modular_group());
  o.require(m.square_form == Q(1, 16) && m.double_sum_form == Q(1, 16), "C(psl2z) = 1/16");
  o.require(m.slope && *m.slope == Q(3, 8), "slope = 3/8");
  o.require(std::abs(m.square_value - m.double_sum_value) <= 1e-12, "psl2z forms agree");
  const auto t = constant_C(triangle_237());
  o.require(std::abs(t.square_value - t.double_sum_value) <= 1e-12, "triangle237 forms agree");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> count(1, 8), half(1, 30);
  std::uniform_int_distribution<long> den(1, 500);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    std::vector<int> orders(static_cast<std::size_t>(count(rng)));
    for (auto& v : orders) v = 2 * half(rng);
    const auto r = constant_C(orders, Q(-1, den(rng)));
    worst = std::max(worst, std::abs(r.square_value - r.double_sum_value));
    o.require(r.square_form == r.double_sum_form, "exact forms agree on a synthetic spec");
  }
  o.require(worst <= 1e-12, "synthetic forms agree to 1e-12");
  o.detail << "C=" << m.square_form << " slope=" << *m.slope << " worst synthetic gap=" << worst;
}

void fiber_sandwich(Outcome& o) {
  const auto g = modular_group();
  std::size_t classes = 0;
  for (double L = 0.5; L <= 8.0 + 1e-9; L += 0.5) {
    const auto c = census(g, L);
    const auto b = census_bounds(c);
    const auto n = c.classes.size();
    o.require(b.lower <= static_cast<double>(n) && n <= b.upper, "lower <= count <= upper at L=" + std::to_string(L));
    for (const auto& d : c.classes) {
      o.require(d.fiber_count <= 4, "fiber <= 4");
      if (d.maximal) o.require(d.fiber_count == 4, "maximal fiber = 4");
    }
    classes = n;
  }
  o.detail << "16 censuses, " << classes << " classes at L=8";
}

void expansion(Outcome& o) {
  const auto g = modular_group();
  for (double L = 1.0; L <= 6.0 + 1e-9; L += 0.5) {
    const auto c = census(g, L);
    std::map<std::string, int> direct, expanded;
    for (const auto& d : c.classes) ++direct[d.rl];
    for (const auto& d : c.classes) {
      if (!d.maximal) continue;
      std::string w;
      for (const auto& [len, mult] : expand_maximal(d, L)) {
        w += d.rl;
        expanded[canonical_unoriented(w)] += mult;
      }
    }
    o.require(direct == expanded, "expansion identity at L=" + std::to_string(L));
  }
  const auto c = census(g, 6.0);
  for (const auto& d : c.classes) {
    if (!d.maximal) continue;
    for (int k = 1; k <= 8; ++k) {
      int total = 0;
      for (const auto& [len, mult] : expand_maximal(d, k * d.length * (1 + 1e-12))) total += mult;
      o.require(total == 3 * k / 2, "floor(3k/2) at k=" + std::to_string(k));
    }
  }
  o.detail << "L in [1,6] step 0.5, " << c.maximal_count() << " maximal classes x k<=8";
}

void lowlying(Outcome& o) {
  const auto r3 = lowlying_census(3, 10.0);
  const auto r1 = lowlying_census(1, 10.0);
  o.detail << "count(k=3)=" << r3.class_count << " height=" << r3.height_bound;
  o.require(static_cast<double>(r3.class_count) > std::exp(5.0), "count > e^5");
  o.require(std::isfinite(r3.height_bound), "finite height bound");
  o.require(r1.delta_hat && r3.delta_hat, "delta_hat available");
  if (r1.delta_hat && r3.delta_hat) {
    o.detail << " delta_hat(1)=" << *r1.delta_hat << " delta_hat(3)=" << *r3.delta_hat;
    o.require(*r1.delta_hat < *r3.delta_hat && *r3.delta_hat < 1.0, "delta_hat(1) < delta_hat(3) < 1");
  }
}

void equidistribution(Outcome& o) {
  EquidistOptions opts;
  opts.grid = parse_grid("12x12x8");
  opts.step = 0.02;
  double prev_mu = 2.0, prev_seg = 2.0, last_mu = 1.0;
  for (double L : {5.0, 7.0, 9.0}) {
    const double mu = discrepancy(mu_L_histogram(L, opts));
    const double seg = discrepancy(segment_histogram(I(), I(), L, opts));
    o.detail << "L=" << L << ": mu " << mu << ", seg " << seg << "; ";
    o.require(mu < prev_mu, "mu_L discrepancy decreasing");
    o.require(seg < prev_seg, "segment discrepancy decreasing");
    prev_mu = mu;
    prev_seg = seg;
    last_mu = mu;
  }
  o.require(last_mu < 0.25, "mu_L discrepancy at L=9 below 0.25");
}

void exactness(Outcome& o) {
  std::mt19937_64 rng(99);
  std::size_t checks = 0, failures = 0;
  while (checks < 100000) {
    const Moebius<Q> g = random_modular(rng), h = random_modular(rng);
    switch (checks % 3) {
      case 0: {
        const Point<Q> p = random_point(rng), q = random_point(rng);
        failures += cosh_dist(apply(g, p), apply(g, q)) != cosh_dist(p, q);
        break;
      }
      case 1: {
        const Moebius<Q> s = conjugate(g, S()), t = conjugate(h, S());
        if (s == t) continue;
        failures += abs_value((s * t).trace()) != 2 * cosh_dist(involution_fixed_point(s), involution_fixed_point(t));
        break;
      }
      default: {
        const Moebius<Q> sigma = conjugate(h, S());
        failures += involution_fixed_point(conjugate(g, sigma)) != apply(g, involution_fixed_point(sigma));
        break;
      }
    }
    ++checks;
  }
  o.detail << checks << " checks, " << failures << " failures";
  o.require(failures == 0, "zero failures");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"1 modular counting constant", modular_constant},
      {"2 exact small-trace oracle", small_trace_oracle},
      {"3 Delsarte ratio", delsarte},
      {"4 constant identities", constant_identities},
      {"5 fiber and sandwich laws", fiber_sandwich},
      {"6 expansion identity", expansion},
      {"7 low-lying growth", lowlying},
      {"8 equidistribution trend", equidistribution},
      {"9 exactness regression", exactness},
  };
  std::cout << std::setprecision(6);
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    o.detail << std::setprecision(6);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << name << "  (" << std::fixed << std::setprecision(1)
              << secs << "s)  " << std::defaultfloat << std::setprecision(6) << o.detail.str() << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
