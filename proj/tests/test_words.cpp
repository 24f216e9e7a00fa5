#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "submon/builtins.hpp"
#include "submon/distortion.hpp"
#include "submon/errors.hpp"
#include "submon/words.hpp"

using namespace submon;

namespace {
  AlphabetPtr abt() {
    return make_alphabet({"a", "b", "t"});
  }
}  // namespace

TEST_CASE("alphabet validation", "[words]") {
  CHECK_THROWS_AS(make_alphabet({"a", "a"}), PreconditionError);
  CHECK_THROWS_AS(make_alphabet({}), PreconditionError);
  CHECK_THROWS(make_alphabet({"a-b"}));
  auto A = make_alphabet({"a1", "b1"});
  CHECK_FALSE(A->compact());
  CHECK(make_alphabet({"a", "b"})->compact());
}

TEST_CASE("free reduction", "[words]") {
  auto A = make_alphabet({"a", "b"});
  CHECK(parse_word(A, "aA").size() == 2);  // parsing keeps letters
  CHECK(free_reduce(parse_word(A, "aA")).empty());
  CHECK(to_string(free_reduce(parse_word(A, "AAaBB"))) == "ABB");
  // (abABA)(ab)(a) = ab
  CHECK(to_string(parse_word(A, "abABA") * parse_word(A, "ab")
                  * parse_word(A, "a"))
        == "ab");
}

TEST_CASE("identity prints as 1", "[words]") {
  auto A = make_alphabet({"a", "b"});
  CHECK(to_string(Word(A)) == "1");
  CHECK(parse_word(A, "1").empty());
  CHECK(parse_word(A, "").empty());
}

TEST_CASE("token grammar", "[words]") {
  auto A = make_alphabet({"a1", "b1", "x"});
  CHECK(parse_word(A, "a1 b1' a1^2 x^-2").letters()
        == Letters{1, -2, 1, 1, -3, -3});
  CHECK(to_string(free_reduce(parse_word(A, "a1 a1'"))) == "1");
  CHECK(to_string(parse_word(A, "a1 b1'")) == "a1 b1'");
  CHECK_THROWS_AS(parse_word(A, "a1 q"), ParseError);
  try {
    parse_word(A, "a1 q");
  } catch (ParseError const& e) {
    CHECK(e.position() == 3);
  }
  // compact alphabets accept both forms
  auto B = make_alphabet({"a", "b"});
  CHECK(parse_word(B, "a b' a'").letters() == parse_word(B, "aBA").letters());
}

TEST_CASE("cross-alphabet products are refused", "[words]") {
  auto A = make_alphabet({"a", "b"});
  auto B = make_alphabet({"a", "c"});
  CHECK_THROWS(parse_word(A, "a") * parse_word(B, "a"));
  // structurally equal alphabets are compatible
  auto C = make_alphabet({"a", "b"});
  CHECK(to_string(parse_word(A, "a") * parse_word(C, "b")) == "ab");
}

TEST_CASE("cyclic reduction", "[words]") {
  auto A = make_alphabet({"a", "b"});
  auto r = cyclic_reduce(parse_word(A, "Aba"));
  CHECK(to_string(r.word) == "b");
  CHECK(to_string(r.conjugator) == "A");

  auto S2 = builtin_presentation("S2");
  auto rr = cyclic_reduce(S2.relator());
  CHECK(to_string(rr.word) == "abABcdCD");
  CHECK(rr.conjugator.empty());

  auto X = make_alphabet({"a", "x"});
  auto s = cyclic_reduce(parse_word(X, "a a x A x A"));
  CHECK(to_string(s.word) == "axAx");
  CHECK(to_string(s.conjugator) == "a");
}

TEST_CASE("exponent sums", "[words]") {
  auto w = parse_word(abt(), "BTAAttbTa");
  CHECK(exponent_sum(w, "t") == 0);
  CHECK(exponent_sum(w, "a") == -1);
  CHECK(exponent_sum(Word(abt()), "b") == 0);
  CHECK_THROWS(exponent_sum(w, "z"));
}

TEST_CASE("homomorphisms", "[words]") {
  auto S2  = builtin_presentation("S2");
  auto rho = prefix_retraction();
  CHECK(to_string(apply_hom(rho, parse_word(S2.alphabet(), "ab"))) == "yx");
  auto id = GroupHom::identity(S2.alphabet());
  CHECK(to_string(apply_hom(id, parse_word(S2.alphabet(), "abAcd")))
        == "abAcd");
  auto h = dehn_twist_hom(2, 1);
  CHECK(to_string(apply_hom(h, parse_word(S2.alphabet(), "aBB"))) == "aBB");
  // mismatched alphabets
  auto other = make_alphabet({"p", "q"});
  CHECK_THROWS(apply_hom(rho, parse_word(other, "pq")));
}

TEST_CASE("presentation grammar", "[words]") {
  auto p = parse_presentation_text("gens: a b\nrel: a b a' b'\n");
  CHECK(p.alphabet()->size() == 2);
  CHECK(p.one_relator());
  CHECK(to_string(p.relator()) == "abAB");
  CHECK_THROWS_AS(parse_presentation_text("gens: a a\n"), Error);
  CHECK_THROWS_AS(parse_presentation_text("gens: a b\nrel: a c\n"),
                  ParseError);
  auto q = parse_presentation_text(format_presentation(p));
  CHECK(q.alphabet()->names() == p.alphabet()->names());
  CHECK(to_string(q.relator()) == to_string(p.relator()));
}

TEST_CASE("builtin presentations", "[words]") {
  CHECK(to_string(builtin_presentation("S2").relator()) == "abABcdCD");
  CHECK(to_token_string(builtin_presentation("N3").relator())
        == "a1 a1 a2 a2 a3 a3");
  CHECK(to_string(builtin_presentation("N2").relator()) == "ccdd");
  CHECK(to_string(builtin_presentation("BS 2 3").relator()) == "taaTAAA");
  CHECK(to_string(builtin_presentation("BS(2,-3)").relator()) == "taaTaaa");
  CHECK(to_string(builtin_presentation("burns").relator()) == "tatATaTA");
  CHECK(to_token_string(builtin_presentation("S3").relator())
        == "a1 b1 a1' b1' a2 b2 a2' b2' a3 b3 a3' b3'");
  CHECK_THROWS(builtin_presentation("Q7"));
}

TEST_CASE("word properties on random words", "[words][property]") {
  std::mt19937_64 rng(7);
  auto            A = make_alphabet({"a", "b", "c"});
  auto            h = GroupHom::from_strings(
      A, A, {{"a", "bc"}, {"b", "Ca"}, {"c", "abA"}});
  for (int trial = 0; trial < 2000; ++trial) {
    Letters u = oracle::random_word(rng, 3, 20);
    Letters v = oracle::random_word(rng, 3, 20);
    Word    U(A, u), V(A, v);
    // reduction: idempotent, length nonincreasing, agrees with the oracle
    Word r = free_reduce(U);
    REQUIRE(r.letters() == oracle::reduce(u));
    REQUIRE(free_reduce(r) == r);
    REQUIRE(r.size() <= U.size());
    REQUIRE((U * U.inverse()).empty());
    // exponent sums: additive, negated by inversion
    for (auto const& g : A->names()) {
      REQUIRE(exponent_sum(U.concat(V), g)
              == exponent_sum(U, g) + exponent_sum(V, g));
      REQUIRE(exponent_sum(U.inverse(), g) == -exponent_sum(U, g));
    }
    // homomorphisms commute with reduction and are multiplicative
    REQUIRE(apply_hom(h, r) == apply_hom(h, U));
    REQUIRE(apply_hom(h, U * V) == apply_hom(h, U) * apply_hom(h, V));
    // cyclic reduction gives a conjugate
    auto c = cyclic_reduce(U);
    REQUIRE(is_cyclically_reduced(c.word.letters()));
    REQUIRE(c.conjugator * c.word * c.conjugator.inverse() == free_reduce(U));
  }
}
