#pragma once

#include <string>

#include "mps/pb_model.hpp"

namespace mps {

/// Pseudo-Boolean competition text format. The maximization objective is
/// negated into the mandatory "min:" line; "<=" constraints are negated into
/// ">=" form; variables are written as x1..xN by id. Models with a lazy
/// separator gain a header comment naming the families whose constraints are
/// only partially listed. Byte-deterministic for a fixed model.
std::string export_opb(const PBModel& m);

/// LP text format with Maximize / Subject To / Binary / End sections and the
/// model's own variable names. Byte-deterministic for a fixed model.
std::string export_lp(const PBModel& m);

/// Parses text produced by export_lp back into a model (without separator).
/// Throws ParseError on malformed input.
PBModel parse_lp(const std::string& text);

} // namespace mps
