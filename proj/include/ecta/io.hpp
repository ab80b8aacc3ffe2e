// Text formats: automaton files, timed words, and exports of analysis results.
#pragma once

#include "ecta/analysis.hpp"
#include "ecta/automaton.hpp"
#include "ecta/region_automaton.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ecta {

struct EctaFile {
  Ecta automaton;
  std::optional<Integer> cmax;
};

/// JSON object with alphabet, locations, initial, accepting, edges
/// [{from, letter, guard, to}] and an optional cmax.
EctaFile parse_ecta(std::string_view json);
EctaFile load_ecta(const std::string& path);
std::string print_ecta(const Ecta& a, const std::optional<Integer>& cmax = std::nullopt);

/// Largest guard constant, raised to the declared or requested value.
/// Lowering it is rejected with CmaxTooSmall.
Integer effective_cmax(const EctaFile& file, const std::optional<Integer>& requested = std::nullopt);

/// JSON array of [letter, time] pairs; times are strings ("3/2", "0.5") or numbers.
TimedWord parse_timed_word(std::string_view json, const Alphabet& alphabet);

std::string to_dot(const RegionAutomaton& r);
std::string to_json(const RegionAutomaton& r);
std::string to_json(const AnalysisResult& result, const Ecta& a);

}  // namespace ecta
