#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "quadsuite/fock.hpp"

namespace quadsuite {

/// State documents are JSON objects
///   {"dim": D, "matrix": [[re, im], ...]}   (D*D pairs, row-major)
/// and must satisfy the TruncatedState invariants.
TruncatedState read_state(std::istream& in);
TruncatedState read_state_file(const std::string& path);
void write_state(std::ostream& out, const TruncatedState& state);

/// Mini-grammar used on the command line:
///   vacuum | number:<n> | coherent:<re>,<im> | squeezed:<r>,<phi> | file:<path>
/// `dim` applies to every form except file:, which carries its own.
TruncatedState parse_state_spec(std::string_view spec, int dim);

}  // namespace quadsuite
