#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "picky/verify.hpp"

namespace picky::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kViolation = 2,
  kUnknownGroup = 3,
  kBadCycles = 4,
  kCapacity = 5,
};

/// Runs one command line (argv[0] is the program name) and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

/// One sweep entry. `primes` empty means every odd prime dividing |G|;
/// `elements` empty means every picky p-element class.
struct CorpusEntry {
  std::string group;
  std::vector<std::uint64_t> primes;
  std::vector<std::string> elements;
  Mode mode = Mode::kAll;
  bool allow_p2 = false;
  bool all_chief_factors = false;
};

struct CorpusSpec {
  std::vector<CorpusEntry> entries;
  /// Directory against which relative group files are resolved.
  std::filesystem::path base_dir;
};

/// {"entries": [{"group": src, "primes": "odd" | [p, ...], "elements": "picky" |
///  ["(1,2,3)", ...], "mode": "all", "allow_p2": false, "all_chief_factors": false}]}.
/// Throws InputError on malformed documents.
CorpusSpec parse_corpus_spec(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Runs every (group, p, element) triple of the spec on `jobs` worker threads
/// and writes one report per triple plus summary.json into out_dir. Output
/// bytes do not depend on `jobs`. Returns the exit code of the sweep.
int run_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir, unsigned jobs, std::ostream& log);

}  // namespace picky::cli
