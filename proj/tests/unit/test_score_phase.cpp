#include <random>

#include "doctest.h"
#include "longalign/oracle.hpp"
#include "longalign/score_phase.hpp"
#include "support.hpp"

using namespace longalign;

TEST_CASE("prune_verdict examples") {
  CHECK(prune_verdict(PruneContext{100, 2, 1000, 20 + 500}, 10, Coord{980, 500}));
  CHECK_FALSE(prune_verdict(PruneContext{100, 2, 1000, 520}, 90, Coord{980, 500}));
  CHECK_FALSE(prune_verdict(PruneContext{0, 2, 1000, 1000}, 0, Coord{999, 999}));
  // Equal bound is kept: strict comparison.
  CHECK_FALSE(prune_verdict(PruneContext{50, 2, 1000, 1000}, 10, Coord{980, 900}));
  CHECK(prune_verdict(PruneContext{51, 2, 1000, 1000}, 10, Coord{980, 900}));
  // Negative input maxima are clamped to zero.
  CHECK_FALSE(prune_verdict(PruneContext{40, 2, 1000, 1000}, -100, Coord{980, 900}));
}

TEST_CASE("best_local fixed instances") {
  const auto s = testsupport::dna_scheme(1, -3, 5, 2);
  const auto r = best_local(Sequence{"a", "ACGT"}, Sequence{"b", "ACGT"}, s, EngineConfig{}, true);
  CHECK(r.score == 4);
  CHECK(r.end == Coord{4, 4});
  const auto z = best_local(Sequence{"a", "GGG"}, Sequence{"b", "CCC"}, s, EngineConfig{}, true);
  CHECK(z.score == 0);
  CHECK(z.end == Coord{0, 0});
}

TEST_CASE("best_local matches the oracle on random instances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    auto c = testsupport::random_case(rng, 300, trial % 4 == 0);
    const auto want = oracle::oracle_local(c.seq1, c.seq2, c.scheme).first;
    EngineConfig cfg{1 + trial % 3, BlockDims{1 + static_cast<std::int64_t>(rng() % 64), 1 + static_cast<std::int64_t>(rng() % 64)}};
    const auto got = best_local(c.seq1, c.seq2, c.scheme, cfg, trial % 2 == 0);
    INFO(c.label << " trial " << trial);
    CHECK(got.score == want.score);
    CHECK(got.end == want.end);
  }
}

TEST_CASE("pruning never changes score or endpoint") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = testsupport::dna_scheme(1 + trial % 3, -2 - trial % 3, trial % 6, 1 + trial % 2);
    const std::string base = testsupport::random_residues(rng, "ACGT", 400 + rng() % 800);
    const Sequence a{"a", base}, b{"b", testsupport::mutate(rng, base, "ACGT", 0.02 + 0.01 * (trial % 5))};
    const EngineConfig cfg{2, BlockDims{32, 32}};
    const auto on = best_local(a, b, s, cfg, true);
    const auto off = best_local(a, b, s, cfg, false);
    CHECK(on.score == off.score);
    CHECK(on.end == off.end);
    CHECK(off.stats.pruned == 0);
    CHECK(on.stats.max_observed_best <= on.score);
    CHECK(on.stats.executed + on.stats.pruned == on.stats.blocks_total);
  }
}

TEST_CASE("a similar pair prunes a positive fraction of blocks") {
  std::mt19937_64 rng(33);
  const auto s = testsupport::dna_scheme(1, -3, 5, 2);
  const std::string base = testsupport::random_residues(rng, "ACGT", 8000);
  const Sequence a{"a", base}, b{"b", testsupport::mutate(rng, base, "ACGT", 0.01)};
  const auto r = best_local(a.residues.size() ? s.alphabet().encode(a.residues) : std::vector<std::uint8_t>{},
                            s.alphabet().encode(b.residues), s, EngineConfig{1, BlockDims{128, 128}}, true, true);
  CHECK(r.stats.pruned > 0);
  CHECK(r.stats.pruned_fraction() > 0.0);
  const std::string grid = render_fates(r.grid, r.fates);
  CHECK(std::count(grid.begin(), grid.end(), '.') == r.stats.pruned);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == r.grid.grid_rows);
  // The block holding the endpoint is never pruned.
  const auto bi = (r.end.i - 1) / r.grid.block_rows, bj = (r.end.j - 1) / r.grid.block_cols;
  CHECK(r.fates[static_cast<std::size_t>(bi * r.grid.grid_cols + bj)] == BlockFate::Executed);
}
