#pragma once

#include "podsum/weights.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace podsum {

using FamilySpec = std::variant<PODSpec, SPODSpec>;

/// Parses a weight-family document. A document with an "alpha" member is an
/// SPOD family, otherwise a POD family. Schema (see README):
///
///   POD:  {"gamma": GAMMA, "upsilon": UPSILON}
///   SPOD: {"alpha": k, "gamma": GAMMA, "upsilon": [UPSILON, ... (k entries)]}
///   GAMMA:   {"kind": "factorial_power", "sigma": s}
///          | {"kind": "explicit", "values": [G0, G1, ...]}
///   UPSILON: {"kind": "poly_decay", "c": c, "rho": rho}
///          | {"kind": "explicit", "values": [U1, U2, ...]}
///          | {"kind": "zero"}
///
/// Throws ConfigError naming the offending JSON pointer. A poly_decay law with
/// rho <= 1 and c > 0 is well-formed but throws NotSummable.
FamilySpec parse_family(std::string_view json_text);
FamilySpec load_family(const std::filesystem::path& path);

} // namespace podsum
