#pragma once

#include "excouple/document.hpp"

#include <string>

namespace excouple {

/// Exit-code contract: 0 = all checks pass, 1 = input error,
/// 2 = a mathematical check failed.
struct CliResult {
    int exit_code = 0;
    std::string output;
};

/// "Z ⊕ Z/2" invariant-factor rendering; "0" for the trivial group.
std::string render_group(const PresentedGroup& g);

/// Group element as a generator combination: "2·e" in a one-generator
/// group, "e0 - 2·e1" otherwise, "0" when zero.
std::string render_element(const PresentedGroup& g, const IntVec& coords);

CliResult cmd_pages(const Document& doc, int max_r, const std::string& format);
CliResult cmd_pairing(const Document& doc, const std::string& format);
CliResult cmd_converge(const Document& doc, const std::string& format);

/// Full front end: subcommands pages | pairing | converge, input path or "-"
/// for stdin, flags --r / --format / --indexing, EXCOUPLE_MAX_PAGE cap.
int run_cli(int argc, char** argv);

}  // namespace excouple
