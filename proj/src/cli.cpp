#include "longalign/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "longalign/io.hpp"
#include "longalign/pipeline.hpp"

namespace longalign {
namespace {

struct RunConfig {
  std::string target_path;
  std::string query_path;
  std::optional<Score> match;
  std::optional<Score> mismatch;
  std::string matrix_path;
  Score gap_open = 5;
  Score gap_extend = 2;
  std::string alphabet = "auto";
  bool strict = false;
  int workers = 1;
  std::int64_t block_rows = 512;
  std::int64_t block_cols = 512;
  std::int64_t leaf_limit = 128 * 128;
  bool no_prune = false;
  bool no_band = false;
  int split = 1;
  std::string format = "stat";
  std::string output;
  std::string isa = "auto";
  bool verbose = false;
};

bool only_nucleotides(const std::string& symbols) {
  return symbols.find_first_not_of("ACGTN") == std::string::npos;
}

ScoringScheme build_scheme(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.matrix_path.empty()) {
    const auto matrix = io::parse_matrix(io::read_file(cfg.matrix_path));
    if (!matrix.symmetric) err << "warning: substitution matrix is not symmetric\n";
    Alphabet alphabet =
        cfg.alphabet == "dna"       ? Alphabet::dna(cfg.strict)
        : cfg.alphabet == "protein" ? Alphabet::protein()
                                    : Alphabet(only_nucleotides(matrix.symbols) ? AlphabetKind::Nucleotide
                                                                                : AlphabetKind::Protein,
                                               matrix.symbols);
    return validate_scheme(alphabet, matrix.function(), cfg.gap_open, cfg.gap_extend);
  }
  const Score match = cfg.match.value_or(1);
  const Score mismatch = cfg.mismatch.value_or(-3);
  if (cfg.alphabet == "protein") {
    return validate_scheme(Alphabet::protein(), match_mismatch(match, mismatch), cfg.gap_open,
                           cfg.gap_extend);
  }
  const Alphabet dna = Alphabet::dna(cfg.strict);
  return validate_scheme(dna, match_mismatch(match, mismatch, dna.wildcard()), cfg.gap_open,
                         cfg.gap_extend);
}

Sequence load_first(const std::string& path, const Alphabet& alphabet) {
  auto records = io::parse_fasta(io::read_file(path), alphabet);
  return std::move(records.front());
}

void report(std::ostream& err, const AlignResult& r) {
  const auto& s = r.stats.score_pass;
  err << "score pass: " << s.executed << " executed, " << s.pruned << " pruned of "
      << s.blocks_total << " blocks (" << std::fixed << std::setprecision(4)
      << s.pruned_fraction() << " pruned), " << s.cells << " cells\n";
  err << "start search: " << r.stats.locate_pass.cells << " cells, "
      << r.stats.locate_pass.out_of_band << " blocks outside the band\n";
  err << "reconstruction: " << r.stats.reconstruct.splits << " splits, "
      << r.stats.reconstruct.leaves << " leaves\n";
  if (r.stats.split_case) err << "split case: " << to_string(*r.stats.split_case) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact local alignment of two long sequences"};
  app.option_defaults()->always_capture_default();
  app.name("align");
  app.add_option("target", cfg.target_path, "FASTA file with the first sequence")->required();
  app.add_option("query", cfg.query_path, "FASTA file with the second sequence")->required();
  auto* match = app.add_option("--match", cfg.match, "Match score (default 1)");
  auto* mismatch = app.add_option("--mismatch", cfg.mismatch, "Mismatch score (default -3)");
  auto* matrix = app.add_option("--matrix", cfg.matrix_path, "Substitution matrix file");
  matrix->excludes(match)->excludes(mismatch);
  app.add_option("--gap-open", cfg.gap_open, "Gap open penalty")->check(CLI::NonNegativeNumber);
  app.add_option("--gap-extend", cfg.gap_extend, "Gap extend penalty")->check(CLI::PositiveNumber);
  app.add_option("--alphabet", cfg.alphabet, "Residue alphabet")
      ->check(CLI::IsMember({"auto", "dna", "protein"}));
  app.add_flag("--strict", cfg.strict, "Reject the N wildcard in DNA input");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--block-rows", cfg.block_rows, "Block height")->check(CLI::PositiveNumber);
  app.add_option("--block-cols", cfg.block_cols, "Block width")->check(CLI::PositiveNumber);
  app.add_option("--leaf-limit", cfg.leaf_limit, "Cells below which reconstruction stops splitting")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-prune", cfg.no_prune, "Disable block pruning");
  app.add_flag("--no-band", cfg.no_band, "Disable banded searches");
  app.add_option("--split", cfg.split, "Matrix parts (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--out", cfg.format, "Output format")->check(CLI::IsMember({"stat", "cigar", "pair"}));
  app.add_option("--output", cfg.output, "Write the result to this file instead of stdout");
  app.add_option("--isa", cfg.isa, "Block kernel")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.add_flag("--verbose", cfg.verbose, "Print phase statistics to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "align: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  AlignOptions options;
  options.engine.workers = cfg.workers;
  options.engine.block = BlockDims{cfg.block_rows, cfg.block_cols};
  options.engine.isa = cfg.isa == "scalar" ? kernel::Isa::Scalar
                       : cfg.isa == "avx2" ? kernel::Isa::Avx2
                                           : kernel::Isa::Auto;
  options.prune = !cfg.no_prune;
  options.band = !cfg.no_band;
  options.split = cfg.split;
  options.leaf_limit = cfg.leaf_limit;
  if (options.engine.isa == kernel::Isa::Avx2 && !kernel::avx2_available()) {
    err << "align: the avx2 kernel is not available on this machine\n";
    return kExitUsage;
  }

  std::optional<ScoringScheme> scheme;
  Sequence target, query;
  try {
    scheme.emplace(build_scheme(cfg, err));
    target = load_first(cfg.target_path, scheme->alphabet());
    query = load_first(cfg.query_path, scheme->alphabet());
  } catch (const AlignError& e) {
    err << "align: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const AlignResult result = align(target, query, *scheme, options);
    if (cfg.verbose) report(err, result);
    const std::string text =
        io::write_output(*io::parse_format(cfg.format), result.summary, result.path, target, query);
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!(file << text)) {
        err << "align: cannot write '" << cfg.output << "'\n";
        return kExitInput;
      }
    }
  } catch (const AlignError& e) {
    err << "align: " << to_string(e.code()) << ": " << e.what() << "\n";
    if (is_internal_error(e.code())) {
      err << "this is a bug in align; please file a report with the inputs and flags used\n";
    }
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "align: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace longalign
