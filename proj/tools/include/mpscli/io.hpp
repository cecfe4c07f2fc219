#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mps/graph.hpp"

namespace mps {

enum class GraphFormat { Edgelist, Gml, Dimacs };

/// "edgelist", "gml" or "dimacs"; nullopt otherwise.
std::optional<GraphFormat> parse_graph_format(std::string_view name);
const char* graph_format_name(GraphFormat f);

/// .gml -> Gml; .col / .dimacs -> Dimacs; anything else -> Edgelist.
GraphFormat deduce_graph_format(const std::filesystem::path& path);

/// Parses one instance file.
///
/// Edgelist: one edge per line as "u v [w]" (0-based ids, weight defaults to
/// 1); blank lines, lines starting with '#' or '%', and lines whose first
/// token is not an integer (column headers) are skipped. There is no count
/// header; the node count is max id + 1.
///
/// GML: a "graph [ ... ]" block with node [ id ... ] and
/// edge [ source ... target ... (weight w)? ] entries; other keys are
/// ignored. Node ids are remapped densely in ascending order.
///
/// DIMACS: "c" comment lines, one "p edge <n> <m>" header, then m lines
/// "e u v [w]" with 1-based endpoints.
///
/// Throws FormatMismatch when the content is not in the requested format at
/// all, and ParseError (with a line number) for anything locally wrong:
/// unreadable tokens, self loops, duplicate edges, non-positive weights,
/// ids out of range, or count mismatches. A missing file is a ParseError.
WeightedGraph ingest(const std::filesystem::path& path, GraphFormat format);

/// Same parser over in-memory text (the file-based overload reads and
/// delegates here).
WeightedGraph ingest_text(const std::string& text, GraphFormat format);

} // namespace mps
