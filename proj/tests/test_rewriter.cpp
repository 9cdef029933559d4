#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tbraid/lemmas.hpp"

using namespace tbraid;
using oracle::M2;

namespace {

FreeWord random_free(std::mt19937& rng, int gens, int len) {
  std::uniform_int_distribution<int> g(1, gens), s(0, 1);
  FreeWord w;
  for (int i = 0; i < len; ++i) w.letters.push_back(s(rng) ? g(rng) : -g(rng));
  return w;
}

using Images = std::vector<std::optional<M2>>;

M2 at(const Images& img, int g) { return *img[static_cast<std::size_t>(g)]; }

// Forward elimination done in matrices: y0 = A, x1 = B.
Images forward_images(const ExtendedCycle& e) {
  const auto& d = e.params;
  Images img(e.pres.generators.size());
  img[static_cast<std::size_t>(e.y(0))] = oracle::sanov_a();
  img[static_cast<std::size_t>(e.x(1))] = oracle::sanov_b();
  auto solve = [&](int target, int rel) {
    img[static_cast<std::size_t>(target)] =
        oracle::solve_in_matrices(e.pres.relators[static_cast<std::size_t>(rel)], target, img);
  };
  solve(e.x(0), e.alias0());
  for (int i = 1; i < d.m; ++i) solve(e.x(i + 1), e.rx(i));
  for (int j = 0; j < d.c_n(); ++j) solve(e.y(j + 1), e.ry(j));
  return img;
}

// Backward elimination: y_{c_n} = A, x_{m-1} = B.
Images backward_images(const ExtendedCycle& e) {
  const auto& d = e.params;
  Images img(e.pres.generators.size());
  img[static_cast<std::size_t>(e.y(d.c_n()))] = oracle::sanov_a();
  img[static_cast<std::size_t>(e.x(d.m - 1))] = oracle::sanov_b();
  auto solve = [&](int target, int rel) {
    img[static_cast<std::size_t>(target)] =
        oracle::solve_in_matrices(e.pres.relators[static_cast<std::size_t>(rel)], target, img);
  };
  solve(e.x(d.m), e.aliasm());
  for (int i = d.m - 1; i >= 1; --i) solve(e.x(i - 1), e.rx(i));
  for (int j = d.c_n(); j >= 1; --j) solve(e.y(j - 1), e.ry(j));
  return img;
}

}  // namespace

TEST_CASE("reduction agrees with rescanning") {
  std::mt19937 rng(1);
  for (int t = 0; t < 500; ++t) {
    const auto w = random_free(rng, 3, 14);
    const auto r = reduce(w);
    CHECK(r.letters == oracle::naive_reduce(w.letters));
    CHECK(is_reduced(r));
    CHECK(reduce(w * inverse(w)).empty());
    CHECK(exponent_sum(w, 0) == exponent_sum(r, 0));
  }
}

TEST_CASE("powers and cyclic forms") {
  const FreeWord ab({1, 2});
  CHECK(power(ab, 3).letters == std::vector<int>{1, 2, 1, 2, 1, 2});
  CHECK(power(ab, -1) == inverse(ab));
  CHECK(power(ab, 0).empty());
  CHECK(cyclic_reduce(FreeWord({-1, 2, 1})) == FreeWord({2}));
  CHECK(cyclic_rotation_equal(FreeWord({1, 2, 3}), FreeWord({3, 1, 2})));
  CHECK_FALSE(cyclic_rotation_equal(FreeWord({1, 2, 3}), FreeWord({1, 3, 2})));
  CHECK(same_relator(FreeWord({1, 2, 3}), FreeWord({-2, -1, -3})));
  CHECK(occurrences(FreeWord({1, -1, 2, 1}), 0) == 3);
}

TEST_CASE("parse and print in group notation") {
  const std::vector<std::string> names{"x1", "y0"};
  const auto w = parse_free_word("x1 y0^-2 (x1 y0)^3", names);
  CHECK(parse_free_word(to_string(w, names), names) == w);
  CHECK(to_string(FreeWord(), names) == "1");
  CHECK(parse_free_word("1", names).empty());
  CHECK_THROWS(parse_free_word("q", names));
  CHECK_THROWS(parse_free_word("(x1", names));
}

TEST_CASE("solving a relator for one generator") {
  const FreeWord a = FreeWord::generator(0), g = FreeWord::generator(1), b = FreeWord::generator(2);
  // r = a g^-1 b gives g = b a
  const auto r = a * inverse(g) * b;
  const auto sol = solve_relation(r, 1);
  CHECK(sol == b * a);
  std::vector<std::optional<FreeWord>> table(3);
  table[1] = sol;
  CHECK(substitute_all(r, table).empty());
  // r = a g b gives g = a^-1 b^-1
  const auto r2 = a * g * b;
  table[1] = solve_relation(r2, 1);
  CHECK(substitute_all(r2, table).empty());
  CHECK_THROWS_AS(solve_relation(g * a * g, 1), SolveError);
  CHECK_THROWS_AS(solve_relation(a * b, 1), SolveError);
}

TEST_CASE("random relators solve and substitute back to 1") {
  std::mt19937 rng(4);
  for (int t = 0; t < 200; ++t) {
    auto w = random_free(rng, 3, 8);
    std::erase_if(w.letters, [](int l) { return std::abs(l) == 4; });
    auto r = reduce(w * FreeWord::generator(3, t % 2 ? 1 : -1) * random_free(rng, 3, 5));
    if (occurrences(r, 3) != 1) continue;
    std::vector<std::optional<FreeWord>> table(4);
    table[3] = solve_relation(r, 3);
    CHECK_FALSE(mentions(*table[3], 3));
    CHECK(substitute_all(r, table).empty());
  }
}

TEST_CASE("elimination order must be acyclic") {
  EliminationScheme s{"s", {{1, FreeWord({1}), -1}, {2, FreeWord({2}), -1}}};
  CHECK_NOTHROW(s.check_acyclic(3));
  EliminationScheme bad{"bad", {{1, FreeWord({3}), -1}, {2, FreeWord({1}), -1}}};
  CHECK_THROWS_AS(bad.check_acyclic(3), std::logic_error);
  EliminationScheme twice{"twice", {{1, FreeWord({1}), -1}, {1, FreeWord({1}), -1}}};
  CHECK_THROWS_AS(twice.check_acyclic(3), std::logic_error);
  EliminationScheme self{"self", {{1, FreeWord({2, 1}), -1}}};
  CHECK_THROWS_AS(self.check_acyclic(3), std::logic_error);
  const Expander ex(s, 3);
  CHECK(ex(FreeWord({3})) == FreeWord({1}));
}

TEST_CASE("lemma x closed forms up to m = 8") {
  for (int m = 1; m <= 8; ++m) {
    const auto t = verify_lemma_x(m);
    CHECK(replay_proof(t).ok);
    // oracle: x_{i+1} = x_i x_{i-1}^-1 x_i in matrices, against (x1 x0^-1)^{i-1} x1
    std::vector<M2> x{oracle::sanov_a(), oracle::sanov_b()};
    for (int i = 1; i < m; ++i) x.push_back(x[static_cast<std::size_t>(i)] * oracle::inv(x[static_cast<std::size_t>(i) - 1]) * x[static_cast<std::size_t>(i)]);
    for (int i = 0; i <= m; ++i)
      CHECK(x[static_cast<std::size_t>(i)] == oracle::mpow(x[1] * oracle::inv(x[0]), i - 1) * x[1]);
  }
}

TEST_CASE("left and right lemma words in a faithful representation") {
  oracle::for_each_cycle(3, 4, 2, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    const auto e = extended_cycle(d);
    const int n = d.n();
    {
      const auto img = forward_images(e);
      const M2 u = at(img, e.y(0));
      const M2 v = at(img, e.x(1)) * oracle::mpow(u, d.a[0] - 1);
      M2 P = u, Q = v;
      M2 product = oracle::mpow(P, d.a[0]);
      for (int k = 0; k <= n; ++k) {
        const auto K = static_cast<std::size_t>(k);
        if (k > 0) {
          P = oracle::mpow(Q, d.b[K - 1]) * P;
          product = product * oracle::mpow(P, d.a[K]);
          if (k < n) Q = Q * oracle::mpow(P, d.a[K]);
        }
        CHECK(P == at(img, e.y(d.c(k))));
        if (k < n) CHECK(Q == at(img, e.y(d.c(k) + 1)) * oracle::inv(at(img, e.y(d.c(k)))));
      }
      const auto rz = oracle::eval(e.pres.relators[static_cast<std::size_t>(e.rz())], img);
      REQUIRE(rz);
      CHECK(product == oracle::inv(*rz));
      // lemma x inside the cycle
      for (int i = 0; i <= d.m; ++i)
        CHECK(at(img, e.x(i)) == oracle::mpow(at(img, e.x(1)) * oracle::inv(at(img, e.x(0))), i - 1) * at(img, e.x(1)));
    }
    {
      const auto img = backward_images(e);
      const M2 s = at(img, e.y(d.c_n()));
      const M2 t = oracle::mpow(s, d.a.back() - 1) * at(img, e.x(d.m - 1));
      M2 P = s, Q = t;
      for (int k = n; k >= 0; --k) {
        const auto K = static_cast<std::size_t>(k);
        if (k < n) {
          P = P * oracle::mpow(Q, d.b[K]);
          if (k >= 1) Q = oracle::mpow(P, d.a[K]) * Q;
        }
        CHECK(P == at(img, e.y(d.c(k))));
        if (k > 0) CHECK(Q == oracle::inv(at(img, e.y(d.c(k)))) * at(img, e.y(d.c(k) - 1)));
      }
    }
  });
}

TEST_CASE("library lemma words match the matrix recurrences") {
  oracle::for_each_cycle(2, 3, 2, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    const auto c = lemma_context(d);
    Images img(c.pres.generators.size());
    img[static_cast<std::size_t>(c.u)] = oracle::sanov_a();
    img[static_cast<std::size_t>(c.v)] = oracle::sanov_b();
    img[static_cast<std::size_t>(c.s)] = oracle::sanov_a();
    img[static_cast<std::size_t>(c.t)] = oracle::sanov_b();
    const auto L = left_words(c);
    M2 P = oracle::sanov_a(), Q = oracle::sanov_b();
    for (int k = 0; k <= d.n(); ++k) {
      const auto K = static_cast<std::size_t>(k);
      if (k > 0) {
        P = oracle::mpow(Q, d.b[K - 1]) * P;
        if (k < d.n()) Q = Q * oracle::mpow(P, d.a[K]);
      }
      CHECK(*oracle::eval(L.P[K], img) == P);
      if (k < d.n()) CHECK(*oracle::eval(L.Q[K], img) == Q);
    }
    const auto R = right_words(c);
    P = oracle::sanov_a();
    Q = oracle::sanov_b();
    for (int k = d.n(); k >= 0; --k) {
      const auto K = static_cast<std::size_t>(k);
      if (k < d.n()) {
        P = P * oracle::mpow(Q, d.b[K]);
        if (k >= 1) Q = oracle::mpow(P, d.a[K]) * Q;
      }
      CHECK(*oracle::eval(R.P[K], img) == P);
      if (k > 0) CHECK(*oracle::eval(R.Q[K], img) == Q);
    }
  });
}

TEST_CASE("lemma transcripts replay") {
  for (const DecoratedCycleGraph& d : {DecoratedCycleGraph{3, {1, 1, 1}, {1, 1}}, DecoratedCycleGraph{1, {3, 4}, {1}},
                                       DecoratedCycleGraph{2, {2, 1, 3, 1}, {3, 1, 2}}}) {
    CAPTURE(d.to_string());
    for (const auto& t : {verify_lemma_y(d), verify_lemma_left(d).transcript, verify_lemma_right(d).transcript,
                          verify_product_relation(d)}) {
      CHECK(replay_proof(t).ok);
      const auto back = proof_from_json(nlohmann::json::parse(to_json(t).dump()));
      CHECK(replay_proof(back).ok);
    }
    CHECK(verify_all_lemmas(d, true) > 0);
  }
}

TEST_CASE("replay rejects forged steps") {
  const auto t = verify_lemma_left({2, {1, 2, 1}, {1, 2}}).transcript;
  REQUIRE(replay_proof(t).ok);
  bool forged_expand = false, forged_solve = false;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (!forged_expand && t.steps[i].kind == ProofStep::Kind::Expand && !t.steps[i].after.empty()) {
      auto bad = t;
      bad.steps[i].after.letters.push_back(1);
      CHECK_FALSE(replay_proof(bad).ok);
      forged_expand = true;
    }
    if (!forged_solve && t.steps[i].kind == ProofStep::Kind::Solve) {
      auto bad = t;
      bad.steps[i].after = bad.steps[i].after * FreeWord::generator(0);
      CHECK_FALSE(replay_proof(bad).ok);
      forged_solve = true;
    }
  }
  CHECK(forged_expand);
  CHECK(forged_solve);
  // an Equal step between different expansions
  auto bad = t;
  for (auto& s : bad.steps)
    if (s.kind == ProofStep::Kind::Equal) {
      std::swap(s.lhs, s.rhs);
      s.rhs = 0;
      break;
    }
  CHECK_FALSE(replay_proof(bad).ok);
}

TEST_CASE("schemes solve from the relators they name") {
  const auto e = extended_cycle({3, {2, 1, 2}, {1, 2}});
  for (const auto& s : {forward_scheme(e), backward_scheme(e), xpath_scheme(e), alias_scheme(e)}) {
    CAPTURE(s.name);
    CHECK_NOTHROW(s.check_acyclic(e.pres.generators.size()));
    for (const auto& r : s.rules) {
      REQUIRE(r.relator >= 0);
      CHECK(r.replacement == solve_relation(e.pres.relators[static_cast<std::size_t>(r.relator)], r.target));
    }
  }
}
