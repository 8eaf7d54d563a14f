#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dki::cli {

/// Parses and executes one command line (without the program name).
/// Reads permutations from `--perm`, `--file` or, with `--stdin`, from `in`;
/// writes results to `out` and diagnostics to `err`.
///
/// Exit codes: 0 success or all-pass, 1 negative verdict (unsorted,
/// unsortable, failed verification), 2 usage or parse error, 3 a documented
/// resource limit refused the request.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace dki::cli
