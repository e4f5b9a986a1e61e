#include <set>

#include "doctest.h"
#include "madic/errors.hpp"
#include "madic/geodesics.hpp"
#include "support.hpp"

using namespace madic;

TEST_CASE("ball of radius 1 has the identity and 2s generators") {
  const GroupParams p(2, 3);
  const CayleyBall ball = enumerate_ball(p, 1);
  CHECK(ball.size() == 7);
  CHECK(ball.length_of(Word()) == 0);
  CHECK(ball.length_of(Word::generator(2, -1)) == 1);
}

TEST_CASE("ball elements are distinct and lengths match brute force") {
  const GroupParams p(2, 2);
  const CayleyBall ball = enumerate_ball(p, 4);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      CHECK_FALSE(equal_elements(p, ball.elements()[i].geodesic, ball.elements()[j].geodesic));
    }
  }
  // Every reduced word of length <= 4 is found with length at most its own.
  for (const Word& w : testing_support::all_words(2, 4)) {
    const auto len = ball.length_of(w);
    REQUIRE(len.has_value());
    CHECK(*len <= static_cast<int>(w.size()));
  }
  CHECK(ball.length_of(power(Word::generator(0), 5)) == std::nullopt);
}

TEST_CASE("geodesic length") {
  const GroupParams p(2, 2);
  CHECK(geodesic_length(p, Word(), 3) == 0);
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);
  // a_1 commutes with a_0 a_1 a_0^-1, so this word of length 8 is shorter.
  const Word conj = compose(compose(a, b), a.inverse());
  const Word w = compose(compose(b, conj), compose(b.inverse(), conj.inverse()));
  CHECK(geodesic_length(p, w, 8) == 0);
  CHECK(geodesic_length(p, power(a, 3), 2) == std::nullopt);
  CHECK(geodesic_length(p, power(a, 3), 3) == 3);
  CHECK_THROWS_AS(geodesic_length(p, a, -1), PreconditionError);
}

TEST_CASE("ball cap raises a resource error") {
  BallOptions options;
  options.element_cap = 20;
  CHECK_THROWS_AS(enumerate_ball(GroupParams(2, 2), 5, options), ResourceError);
}

TEST_CASE("length lemmas hold on small balls") {
  for (auto [m, s, r] : {std::tuple{2, 2, 5}, {3, 2, 4}, {2, 3, 4}}) {
    for (const LemmaReport& report : verify_length_lemmas(GroupParams(m, s), r)) {
      INFO(report.lemma);
      CHECK(report.ok());
      CHECK(report.instances_checked > 0);
    }
  }
}

TEST_CASE("strict drop holds for every geodesic word, not only the stored one") {
  LengthLemmaOptions options;
  options.all_geodesics = true;
  for (const LemmaReport& report : verify_length_lemmas(GroupParams(2, 2), 4, options)) {
    INFO(report.lemma);
    CHECK(report.ok());
  }
  CHECK_THROWS_AS(verify_length_lemmas(GroupParams(2, 2), 5, options), PreconditionError);
}

TEST_CASE("all geodesics of an element are geodesic words for it") {
  const GroupParams p(2, 2);
  BallOptions options;
  options.record_all_geodesics = true;
  const CayleyBall ball = enumerate_ball(p, 4, options);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto words = ball.all_geodesics(i);
    CHECK_FALSE(words.empty());
    std::set<Word> distinct(words.begin(), words.end());
    CHECK(distinct.size() == words.size());
    for (const Word& w : words) {
      CHECK(static_cast<int>(w.size()) == ball.elements()[i].length);
      CHECK(equal_elements(p, w, ball.elements()[i].geodesic));
    }
  }
}
