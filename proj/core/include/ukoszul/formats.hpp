#pragma once

// Line-oriented text formats: algebra descriptions, group presentations and
// limit configuration files. The grammars are documented in docs/formats.md.

#include <optional>
#include <string>
#include <string_view>

#include "ukoszul/errors.hpp"
#include "ukoszul/group.hpp"
#include "ukoszul/qalg.hpp"

namespace ukoszul {

struct AlgebraDescription {
  QuadraticPresentation presentation;
  std::optional<Graph> graph;  // set when the file used `graph =`
};

/// Throws ParseError (offset into `text`) on malformed lines, InputError on
/// inconsistent content, LimitError if p or d exceed `limits`.
AlgebraDescription parse_algebra(std::string_view text, const Limits& limits = {});
/// Canonical description: p, d, class and one `relation = [...]` line per RREF row of Omega.
std::string format_algebra(const QuadraticPresentation& pres);

GroupPresentation parse_presentation(std::string_view text, const Limits& limits = {});
std::string format_presentation(const GroupPresentation& pres);

/// `key = value` lines naming Limits fields; unknown keys are errors.
Limits parse_limits(std::string_view text, Limits base = {});
/// Sets one field by name. Throws InputError for unknown keys or bad values.
void set_limit(Limits& limits, std::string_view key, std::string_view value);

/// Relation polynomial such as "a1*a2 - 2*a2*a1" as a vector in V (x) V.
Vector parse_relation(std::string_view text, const PrimeField& field, std::size_t d);

}  // namespace ukoszul
