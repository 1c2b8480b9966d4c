#include <random>

#include "doctest.h"
#include "longalign/core.hpp"
#include "support.hpp"

using namespace longalign;

TEST_CASE("validate_scheme recomputes the maximum substitution score") {
  const auto s = testsupport::dna_scheme(2, -1, 3, 1);
  CHECK(s.max_substitution_score() == 2);
  CHECK(s.substitution_chars('A', 'A') == 2);
  CHECK(s.substitution_chars('a', 'C') == -1);
  CHECK(s.substitution_chars('N', 'A') == 0);
  CHECK(s.substitution_chars('N', 'N') == 0);
}

TEST_CASE("validate_scheme rejects non-positive and incomplete schemes") {
  const auto dna = Alphabet::dna(true);
  auto zero = [](char, char) -> std::optional<Score> { return 0; };
  try {
    validate_scheme(dna, zero, 1, 1);
    FAIL("expected NonPositiveMaxScore");
  } catch (const AlignError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveMaxScore);
  }
  auto partial = [](char a, char b) -> std::optional<Score> {
    if (a == 'T' || b == 'T') return std::nullopt;
    return a == b ? 1 : -1;
  };
  try {
    validate_scheme(dna, partial, 1, 1);
    FAIL("expected IncompleteMatrix");
  } catch (const AlignError& e) {
    CHECK(e.code() == ErrorCode::IncompleteMatrix);
  }
  CHECK_THROWS_AS(validate_scheme(dna, match_mismatch(1, -1), -1, 1), AlignError);
  CHECK_THROWS_AS(validate_scheme(dna, match_mismatch(1, -1), 1, 0), AlignError);
}

TEST_CASE("maximum substitution bounds every pair") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = testsupport::random_case(rng, 5, trial % 2 == 1);
    const auto& sym = c.scheme.alphabet().symbols();
    Score seen = std::numeric_limits<Score>::min();
    for (char a : sym) {
      for (char b : sym) {
        CHECK(c.scheme.substitution_chars(a, b) <= c.scheme.max_substitution_score());
        seen = std::max(seen, c.scheme.substitution_chars(a, b));
      }
    }
    CHECK(seen == c.scheme.max_substitution_score());
  }
}

TEST_CASE("alphabet encoding reports the offset of an illegal residue") {
  const auto dna = Alphabet::dna(true);
  CHECK(dna.encode("acgT") == std::vector<std::uint8_t>{0, 1, 2, 3});
  try {
    dna.encode("ACNT");
    FAIL("expected IllegalResidue");
  } catch (const AlignError& e) {
    CHECK(e.code() == ErrorCode::IllegalResidue);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
}

TEST_CASE("score_of_path follows the affine gap convention") {
  const auto s1 = testsupport::dna_scheme(1, -3, 5, 2);
  CHECK(score_of_path(AlignmentPath{{0, 0}, std::vector<Op>(4, Op::Match)}, Sequence{"a", "ACGT"},
                      Sequence{"b", "ACGT"}, s1) == 4);

  const auto s2 = testsupport::dna_scheme(2, -1, 2, 1);
  const AlignmentPath p{{0, 0}, {Op::Match, Op::Delete, Op::Delete, Op::Match}};
  CHECK(score_of_path(p, Sequence{"a", "AGGC"}, Sequence{"b", "AC"}, s2) == 0);
  CHECK(p.end() == Coord{4, 2});

  const AlignmentPath split_runs{{0, 0}, {Op::Match, Op::Delete, Op::Insert, Op::Delete, Op::Match}};
  CHECK(score_of_path(split_runs, Sequence{"a", "AGGC"}, Sequence{"b", "ATC"}, s2) == 2 + 2 - 3 * 3);
}

TEST_CASE("score_of_path rejects inconsistent labels and overruns") {
  const auto s = testsupport::dna_scheme(1, -1, 1, 1);
  const Sequence a{"a", "AC"}, b{"b", "AG"};
  try {
    score_of_path(AlignmentPath{{0, 0}, {Op::Match, Op::Match}}, a, b, s);
    FAIL("expected PathInconsistent");
  } catch (const AlignError& e) {
    CHECK(e.code() == ErrorCode::PathInconsistent);
  }
  CHECK_THROWS_AS(score_of_path(AlignmentPath{{1, 1}, {Op::Mismatch, Op::Match}}, a, b, s), AlignError);
  CHECK(score_of_path(AlignmentPath{{0, 0}, {Op::Match, Op::Mismatch}}, a, b, s) == 0);
}

TEST_CASE("cigar encoding") {
  CHECK(path_to_cigar(std::vector<Op>(3, Op::Match)) == "3=");
  const std::vector<Op> mixed{Op::Match, Op::Mismatch, Op::Insert, Op::Insert, Op::Match};
  CHECK(path_to_cigar(mixed) == "1=1X2I1=");
  CHECK(path_to_cigar(std::vector<Op>{}) == "");
  CHECK_THROWS_AS(cigar_to_ops("3"), AlignError);
  CHECK_THROWS_AS(cigar_to_ops("=3"), AlignError);
  CHECK_THROWS_AS(cigar_to_ops("2M"), AlignError);
}

TEST_CASE("cigar round trip on random op lists") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> op(0, 3), len(0, 200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Op> ops(static_cast<std::size_t>(len(rng)));
    for (auto& o : ops) o = static_cast<Op>(op(rng));
    CHECK(cigar_to_ops(path_to_cigar(ops)) == ops);
  }
}
