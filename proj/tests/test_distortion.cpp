#include <catch_amalgamated.hpp>

#include <map>

#include "oracles.hpp"
#include "submon/automata.hpp"
#include "submon/builtins.hpp"
#include "submon/distortion.hpp"
#include "submon/engines.hpp"
#include "submon/errors.hpp"

using namespace submon;

namespace {
  std::vector<Letters> parse_all(Alphabet const&                 A,
                                 std::vector<std::string> const& texts) {
    std::vector<Letters> out;
    for (auto const& t : texts) {
      out.push_back(parse_letters(A, t));
    }
    return out;
  }

  // L' by brute force: one breadth-first sweep over products from the
  // identity, recording the first depth at which each reduced word of the
  // ball of radius L+1 appears. Intermediate words are capped in length.
  std::size_t brute_L_prime(std::size_t rank, std::vector<Letters> const& W,
                            std::size_t L) {
    std::size_t cap = 3 * (L + 1) + 6;
    std::map<Letters, std::size_t> depth{{Letters{}, 0}};
    std::vector<Letters>           layer{Letters{}};
    for (std::size_t d = 1; d <= 16 && !layer.empty(); ++d) {
      std::vector<Letters> next;
      for (auto const& p : layer) {
        for (auto const& x : W) {
          Letters q = oracle::reduce(oracle::concat(p, x));
          if (q.size() <= cap && depth.emplace(q, d).second) {
            next.push_back(std::move(q));
          }
        }
      }
      layer = std::move(next);
    }
    std::size_t best = 0;
    for (auto const& u : oracle::ball(rank, L + 1)) {
      if (auto it = depth.find(u); it != depth.end()) {
        best = std::max(best, it->second);
      }
    }
    return best;
  }
}  // namespace

TEST_CASE("budget composition", "[distortion]") {
  DistortionBudget id{1, 0, "n", BudgetSemantics::upper_distortion};
  auto S2 = builtin_presentation("S2");
  auto F  = make_alphabet({"x"});
  // S2 -> Z sending a, b, c, d to x: C = 1
  GroupHom flat(S2.alphabet(), F, {{1}, {1}, {1}, {1}});
  auto     X = parse_all(*S2.alphabet(), {"a", "ab"});
  CHECK(compose_budget(id, flat, X)(7) == 7);
  auto rho = prefix_retraction();
  CHECK(rho.max_image_length() == 3);
  auto P = prefix_generators(S2, 2, true);
  CHECK(compose_budget(id, rho, P)(5) == 15);
  auto same = compose_budget(id, GroupHom::identity(S2.alphabet()), X);
  CHECK(same.a == 1);
  CHECK(same.b == 0);
  // an image equal to 1 is refused
  CHECK_THROWS_AS(compose_budget(id, rho, parse_all(*S2.alphabet(), {"bC"})),
                  PreconditionError);
  // monotone in C
  DistortionBudget affine{2, 3, "2n+3", BudgetSemantics::upper_distortion};
  CHECK(compose_budget(affine, rho, P)(4) >= compose_budget(affine, flat, X)(4));
}

TEST_CASE("undistorted constants", "[distortion]") {
  auto sq = undistorted_constants(2, {{1, 1}});
  CHECK(sq.L == 2);
  CHECK(sq.L_prime == 1);
  CHECK(sq.delta(10) == 15);
  CHECK(brute_L_prime(2, {{1, 1}}, 2) == 1);

  auto one = undistorted_constants(2, {{1}});
  CHECK(one.L == 1);
  CHECK(one.L_prime == 2);
  CHECK(one.delta(10) == 25);
  CHECK(brute_L_prime(2, {{1}}, 1) == 2);

  auto none = undistorted_constants(2, {});
  CHECK(none.L == 0);
  CHECK(none.L_prime == 0);
  CHECK(none.delta(10) == 1);
}

TEST_CASE("the distortion inequality on random W", "[distortion][property]") {
  std::mt19937_64 rng(41);
  auto            A = make_alphabet({"x", "y"});
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Letters> W;
    for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i) {
      W.push_back(oracle::reduce(oracle::random_word(rng, 2, 3)));
    }
    auto c = undistorted_constants(2, W);
    REQUIRE(c.L_prime == brute_L_prime(2, W, c.L));
    std::vector<Word> WW;
    for (auto const& x : W) {
      WW.emplace_back(A, x);
    }
    for (auto const& w : oracle::ball(2, 6)) {
      if (rng() % 8) {
        continue;
      }
      auto k = min_generator_length(WW, Word(A, w));
      if (k != kInfinity) {
        REQUIRE(k <= c.delta(w.size()));
      }
    }
  }
}

TEST_CASE("midpoint certificate reproduces the worked table", "[distortion]") {
  auto A     = make_alphabet({"a", "b"});
  auto alpha = parse_all(*A, {"aBB", "bAA", "abABBaabaBA", "abABAbbbaBA"});
  auto t     = midpoint_table(alpha);
  std::vector<std::string> s;
  for (auto const& x : t.suffixes) {
    s.push_back(format_letters(*A, x));
  }
  CHECK(s == std::vector<std::string>{"BB", "AA", "aabaBA", "bbbaBA"});
  // (p, l) per row, in the order s1 alpha1, s1 alpha2, ...
  std::vector<std::pair<std::string, std::string>> const golden{
      {"BB", "aBB"},      {"B", "AA"},          {"BB", "abABBaabaBA"},
      {"BB", "abABAbbbaBA"},
      {"A", "BB"},        {"AA", "bAA"},        {"A", "bABBaabaBA"},
      {"A", "bABAbbbaBA"},
      {"aabaB", "BB"},    {"aabaBA", "bAA"},    {"aa", "BaabaBA"},
      {"a", "bbbaBA"},
      {"bbbaB", "BB"},    {"bbbaBA", "bAA"},    {"b", "aabaBA"},
      {"bb", "AbbbaBA"}};
  REQUIRE(t.rows.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) {
    auto const& r = t.rows[k];
    CHECK(format_letters(*A, r.p) == golden[k].first);
    CHECK(format_letters(*A, r.l) == golden[k].second);
    CHECK(r.product == oracle::reduce(oracle::concat(t.suffixes[r.i], alpha[r.j])));
    CHECK(r.ok);
  }
  CHECK(t.pass);
  auto cert = midpoint_certificate(alpha);
  REQUIRE(cert.has_value());
  CHECK(cert->kind == CertificateKind::midpoint);
  CHECK(cert->budget(9) == 9);
}

TEST_CASE("midpoint certificate failures", "[distortion]") {
  auto A = make_alphabet({"a", "b"});
  CHECK_FALSE(midpoint_certificate(parse_all(*A, {"a", "A"})).has_value());
  auto prefixes = parse_all(*A, {"a", "ab", "abA", "abAB", "abABA"});
  CHECK_FALSE(midpoint_certificate(prefixes).has_value());
  // ab = (abABA)^k (ab) (a)^k: unbounded factorization lengths
  for (int k = 1; k <= 5; ++k) {
    Letters w;
    for (int i = 0; i < k; ++i) {
      w = oracle::concat(w, prefixes[4]);
    }
    w = oracle::concat(w, prefixes[1]);
    for (int i = 0; i < k; ++i) {
      w = oracle::concat(w, prefixes[0]);
    }
    CHECK(format_letters(*A, reduce(w)) == "ab");
  }
}

TEST_CASE("midpoint pass bounds product lengths", "[distortion][property]") {
  auto A     = make_alphabet({"a", "b"});
  auto alpha = parse_all(*A, {"aBB", "bAA", "abABBaabaBA", "abABAbbbaBA"});
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::size_t> path;
    std::size_t              k = 1 + rng() % 8;
    for (std::size_t i = 0; i < k; ++i) {
      path.push_back(rng() % 4);
    }
    REQUIRE(oracle::evaluate(alpha, path).size() >= k);
  }
}

TEST_CASE("positive functionals", "[distortion]") {
  auto S2  = builtin_presentation("S2");
  auto psi = positive_functional(S2, parse_all(*S2.alphabet(), {"a", "ab", "bbc"}));
  REQUIRE(psi.has_value());
  CHECK(*psi == std::vector<long>{1, 1, 1, 1});
  CHECK(apply_functional(*psi, parse_letters(*S2.alphabet(), "bbc")) == 3);

  CHECK_FALSE(positive_functional(S2, prefix_generators(S2, 2, true)).has_value());

  auto N3 = builtin_presentation("N3");
  auto f  = positive_functional(N3, parse_all(*N3.alphabet(), {"a1", "a2"}));
  REQUIRE(f.has_value());
  CHECK((*f)[0] >= 1);
  CHECK((*f)[1] >= 1);
  CHECK((*f)[0] + (*f)[1] + (*f)[2] == 0);
  CHECK(*f == std::vector<long>{1, 1, -2});
}

TEST_CASE("functional values grow with factor count", "[distortion][property]") {
  auto S2  = builtin_presentation("S2");
  auto X   = parse_all(*S2.alphabet(), {"a", "ab", "bbc", "cdC"});
  auto psi = positive_functional(S2, X);
  REQUIRE(psi.has_value());
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::size_t> path;
    std::size_t              k = rng() % 10;
    for (std::size_t i = 0; i < k; ++i) {
      path.push_back(rng() % X.size());
    }
    REQUIRE(apply_functional(*psi, oracle::evaluate(X, path))
            >= static_cast<long>(k));
  }
}

TEST_CASE("Dehn twist homomorphisms", "[distortion]") {
  auto S2 = builtin_presentation("S2");
  auto A  = S2.alphabet();
  auto h1 = dehn_twist_hom(2, 1);
  auto F  = *h1.target();
  CHECK(format_letters(F, h1.image(0)) == "a");
  CHECK(format_letters(F, h1.image(1)) == "b");
  CHECK(format_letters(F, h1.image(2)) == "abAbaBA");
  CHECK(format_letters(F, h1.image(3)) == "abABabaBA");
  auto h0 = dehn_twist_hom(2, 0);
  CHECK(format_letters(F, h0.image(2)) == "b");
  CHECK(format_letters(F, h0.image(3)) == "a");
  std::vector<std::string> images;
  for (auto const& x : parse_all(*A, {"aBB", "bAA", "Cdd", "Dcc"})) {
    images.push_back(format_letters(F, h1.apply(x)));
  }
  CHECK(images
        == std::vector<std::string>{"aBB", "bAA", "abABBaabaBA", "abABAbbbaBA"});
  CHECK_THROWS_AS(dehn_twist_hom(3, 1), PreconditionError);
  // the twist kills the relator
  CHECK(h1.apply(S2.relator().letters()).empty());
}

TEST_CASE("free images", "[distortion]") {
  auto S2  = builtin_presentation("S2");
  auto rho = prefix_retraction();
  auto P   = prefix_generators(S2, 2, true);
  auto res = free_image_graded(rho, P);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->kind == CertificateKind::code);
  auto const& X = *rho.target();
  std::vector<std::string> basis;
  for (auto const& b : res.certificate->basis) {
    basis.push_back(format_letters(X, b));
  }
  std::sort(basis.begin(), basis.end());
  CHECK(basis == std::vector<std::string>{"x", "y", "yXYx"});
  CHECK(res.certificate->budget(4) == 12);

  // u = u' with u = abABA: the prefix images cancel and the image monoid
  // is not graded
  auto D = parse_presentation_text("gens: a b c d\nrel: a b a' b' a' d c d' c' c\n");
  auto f = GroupHom::from_strings(D.alphabet(), make_alphabet({"a", "b"}),
                                  {{"c", "a"}, {"d", "b"}});
  auto Q = parse_all(*D.alphabet(), {"a", "ab", "abA", "abAB", "abABA", "c",
                                     "cd", "cdC", "cdCD", "cdCDC"});
  CHECK_FALSE(free_image_graded(f, Q).certificate.has_value());

  auto one = free_image_graded(rho, parse_all(*S2.alphabet(), {"a", "bC"}));
  CHECK_FALSE(one.certificate.has_value());
  CHECK_FALSE(one.failure.empty());
}

TEST_CASE("bounded search", "[distortion]") {
  auto S2 = builtin_presentation("S2");
  auto A  = S2.alphabet();
  auto P  = prefix_generators(S2, 2, true);
  std::vector<std::string> names;
  for (auto const& p : P) {
    names.push_back(format_letters(*A, p));
  }
  auto e = make_engine(S2);
  SearchLimits lim;
  lim.max_factors = 6;
  auto v = bounded_search(*e, P, names, parse_letters(*A, "ab"), lim);
  REQUIRE(v.member());
  CHECK(v.witness.size() == 1);
  auto n = bounded_search(*e, P, names, parse_letters(*A, "A"), lim,
                          {true, "lambda(C n) = 3"});
  CHECK(n.non_member());
  auto u = bounded_search(*e, P, names, parse_letters(*A, "A"), lim);
  CHECK(u.unknown());
  auto z = bounded_search(*e, P, names, {}, lim);
  CHECK(z.member());
  CHECK(z.witness.empty());
}

TEST_CASE("search witnesses verify", "[distortion][property]") {
  auto S2 = builtin_presentation("S2");
  auto A  = S2.alphabet();
  auto X  = parse_all(*A, {"a", "bC", "cdB"});
  std::vector<std::string> names{"a", "bC", "cdB"};
  auto            e = make_engine(S2);
  DehnEngine      dehn(S2);
  std::mt19937_64 rng(53);
  SearchLimits    lim;
  lim.max_factors = 5;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> path;
    for (std::size_t i = 0, k = rng() % 5; i < k; ++i) {
      path.push_back(rng() % X.size());
    }
    Letters w = oracle::evaluate(X, path);
    auto    v = bounded_search(*e, X, names, w, lim);
    REQUIRE(v.member());
    REQUIRE(dehn.is_trivial(oracle::concat(oracle::evaluate(X, v.witness),
                                           oracle::invert(w))));
  }
}

TEST_CASE("parallel and serial batches agree", "[distortion][property]") {
  auto            S2 = builtin_presentation("S2");
  auto            e  = make_engine(S2);
  std::mt19937_64 rng(59);
  std::vector<Letters> words;
  for (int i = 0; i < 500; ++i) {
    words.push_back(oracle::random_word(rng, 4, 16));
    if (i % 3 == 0) {
      words.back() = oracle::concat(words.back(), S2.relator().letters());
      words.back() = oracle::concat(words.back(), oracle::invert(oracle::random_word(rng, 4, 0)));
    }
  }
  CHECK(batch_is_trivial(*e, words) == batch_is_trivial_serial(*e, words));
  CHECK(batch_keys(*e, words, true) == batch_keys(*e, words, false));
}
