#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "diachrona/corpus.hpp"
#include "diachrona/error.hpp"

namespace diachrona {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomainError = 1, kExitUsage = 2 };

/// Runs the `diachrona` command line. Data goes to `out` (or the file named
/// by a subcommand's --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses one --filter expression: "date=LO..HI", "typology=NAME", "dated"
/// or "undated". Throws Error on anything else.
DocPredicate parse_filter(const std::string& expr);

/// Documents matching every expression (all documents when none are given).
DocSet select_documents(const CorpusIndex& index, const std::vector<std::string>& filters);

}  // namespace diachrona
