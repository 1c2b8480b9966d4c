#include <random>

#include "doctest.h"
#include "longalign/oracle.hpp"
#include "longalign/pipeline.hpp"
#include "longalign/split.hpp"
#include "support.hpp"

using namespace longalign;

namespace {

MidCombine combine(Score up, Score lo, Score mid) {
  MidCombine mc;
  mc.upper.score = up;
  mc.lower.score = lo;
  mc.mid.score = mid;
  return mc;
}

struct Planted {
  Sequence seq1, seq2;
};

// Noise sequences with one exact copy of a 60-residue motif planted at the
// given row offset of seq1.
Planted plant(std::mt19937_64& rng, std::size_t row_offset) {
  const std::string motif = testsupport::random_residues(rng, "ACGT", 60);
  std::string a = testsupport::random_residues(rng, "ACGT", 400);
  std::string b = testsupport::random_residues(rng, "ACGT", 300);
  a.replace(row_offset, motif.size(), motif);
  b.replace(120, motif.size(), motif);
  // Flanks that cannot extend the planted match.
  a[row_offset - 1] = 'A';
  b[119] = 'C';
  a[row_offset + 60] = 'G';
  b[180] = 'T';
  return Planted{Sequence{"t", a}, Sequence{"q", b}};
}

}  // namespace

TEST_CASE("classify_midcase is an argmax with fixed tie order") {
  CHECK(classify_midcase(combine(10, 3, 7)) == MidCase::Upper);
  CHECK(classify_midcase(combine(5, 5, 5)) == MidCase::Upper);
  CHECK(classify_midcase(combine(2, 3, 9)) == MidCase::Midpoint);
  CHECK(classify_midcase(combine(2, 9, 9)) == MidCase::Midpoint);
  CHECK(classify_midcase(combine(2, 9, 3)) == MidCase::Lower);
}

TEST_CASE("constructed instances reach each split case and match the single pipeline") {
  const auto s = testsupport::dna_scheme(1, -3, 5, 2);
  std::mt19937_64 rng(61);
  const struct {
    std::size_t offset;
    MidCase expected;
  } cases[] = {{20, MidCase::Upper}, {300, MidCase::Lower}, {170, MidCase::Midpoint}};
  for (const auto& c : cases) {
    const Planted p = plant(rng, c.offset);
    AlignOptions single;
    single.engine.block = BlockDims{32, 32};
    AlignOptions two = single;
    two.split = 2;
    two.engine.workers = 2;
    const auto r1 = align(p.seq1, p.seq2, s, single);
    const auto r2 = align(p.seq1, p.seq2, s, two);
    REQUIRE(r2.stats.split_case.has_value());
    CHECK(*r2.stats.split_case == c.expected);
    CHECK(r2.summary == r1.summary);
    CHECK(r2.path == r1.path);
    CHECK(r1.summary.score == 60);
    CHECK(r1.summary.start == Coord{static_cast<std::int64_t>(c.offset), 120});
  }
}

TEST_CASE("a gap spanning the split row is charged one opening") {
  const auto s = testsupport::dna_scheme(2, -3, 6, 1);
  std::mt19937_64 rng(62);
  const std::string m1 = testsupport::random_residues(rng, "ACGT", 50);
  const std::string m2 = testsupport::random_residues(rng, "ACGT", 50);
  const std::string skipped = testsupport::random_residues(rng, "ACGT", 8);
  // seq1 rows: 146 noise, m1 [146,196), skipped [196,204), m2 [204,254), noise.
  std::string a = testsupport::random_residues(rng, "ACGT", 146) + m1 + skipped + m2 +
                  testsupport::random_residues(rng, "ACGT", 146);
  const std::string b = testsupport::random_residues(rng, "ACGT", 40) + m1 + m2 +
                        testsupport::random_residues(rng, "ACGT", 40);
  REQUIRE(a.size() == 400);
  const Sequence sa{"t", a}, sb{"q", b};
  AlignOptions two;
  two.split = 2;
  two.engine.block = BlockDims{16, 16};
  const auto r2 = align(sa, sb, s, two);
  const auto want = oracle::oracle_local(sa, sb, s).first;
  CHECK(r2.summary.score == want.score);
  CHECK(want.score >= 200 - (6 + 8));
  CHECK(*r2.stats.split_case == MidCase::Midpoint);
  CHECK(score_of_path(r2.path, sa, sb, s) == want.score);
}

TEST_CASE("halves cover the score matrix exactly once") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = testsupport::random_case(rng, 300, trial % 2 == 1);
    AlignOptions opt;
    opt.split = 2;
    opt.prune = false;
    opt.engine.block = BlockDims{1 + static_cast<std::int64_t>(rng() % 50), 1 + static_cast<std::int64_t>(rng() % 50)};
    const auto r = align(c.seq1, c.seq2, c.scheme, opt);
    if (c.seq1.length() < 2) continue;
    CHECK(r.stats.upper_cells + r.stats.lower_cells ==
          static_cast<std::int64_t>(c.seq1.length() * c.seq2.length()));
    CHECK(r.stats.upper_cells == static_cast<std::int64_t>((c.seq1.length() / 2) * c.seq2.length()));
  }
}

TEST_CASE("split and single pipelines agree with the oracle on random instances") {
  std::mt19937_64 rng(64);
  int seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 600; ++trial) {
    auto c = testsupport::random_case(rng, 200, trial % 4 == 0);
    const auto want = oracle::oracle_local(c.seq1, c.seq2, c.scheme).first;
    AlignOptions opt;
    opt.split = 2;
    opt.engine.workers = 1 + trial % 4;
    opt.engine.block = BlockDims{1 + static_cast<std::int64_t>(rng() % 40), 1 + static_cast<std::int64_t>(rng() % 40)};
    opt.leaf_limit = 16 * 16;
    opt.prune = trial % 2 == 0;
    const auto r = align(c.seq1, c.seq2, c.scheme, opt);
    INFO(c.label << " trial " << trial);
    CHECK(r.summary.score == want.score);
    CHECK(score_of_path(r.path, c.seq1, c.seq2, c.scheme) == want.score);
    CHECK(r.path.start == r.summary.start);
    CHECK(r.path.end() == r.summary.end);
    if (r.stats.split_case && want.score > 0) ++seen[static_cast<int>(*r.stats.split_case)];
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("only two-way splits are accepted") {
  const auto s = testsupport::dna_scheme(1, -1, 1, 1);
  const auto a = testsupport::encode(s, "ACGTACGT");
  CHECK_THROWS_AS(split_align(a, a, s, AlignOptions{}, 3), AlignError);
}

TEST_CASE("a half may begin or end with an insertion at the crossing") {
  const auto s = testsupport::dna_scheme(3, -4, 4, 4);
  const std::pair<std::string, std::string> pairs[] = {
      {"GAGTTTCAACGGC", "GAGTTTTCAACGGC"},
      {"CGGCAACTTTGAG", "CGGCAACTTTTGAG"},
      {"ACGTCAGGTTTA", "ACGTCAAAGGTTTA"},
  };
  for (const auto& [a, b] : pairs) {
    const Sequence sa{"t", a}, sb{"q", b};
    const auto want = oracle::oracle_local(sa, sb, s).first;
    for (const std::int64_t leaf : {1, 4, 16384}) {
      AlignOptions two;
      two.split = 2;
      two.leaf_limit = leaf;
      two.engine.block = BlockDims{4, 4};
      const auto r = align(sa, sb, s, two);
      CHECK(r.summary.score == want.score);
      CHECK(score_of_path(r.path, sa, sb, s) == want.score);
    }
  }
}
