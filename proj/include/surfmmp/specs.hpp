#pragma once

#include <string_view>
#include <vector>

#include "surfmmp/dualgraph.hpp"
#include "surfmmp/pairs.hpp"

namespace surfmmp {

// "C:1,E:2" (multiplicities are positive integers).
PointSpec parse_point(std::string_view text);
// Points separated by ';'. Later points may name the chain exceptionals F1, F2, ...
Chain parse_chain(std::string_view text);
// "C:1/2,E:1" (rational coefficients).
CurveCombination parse_combination(std::string_view text);
// "-2,-4"
std::vector<int> parse_weights(std::string_view text);
// {"weights": [...], "edges": [[i, j], ...]}
DualGraph parse_graph(std::string_view json_text);

// Linear expression such as "-K - Delta", "C + 2E", "1/2*C - 3H". Symbols are K, Delta,
// tracked curve names, then basis names.
DivisorClass parse_divisor(const PairModel& pair, std::string_view text);

}  // namespace surfmmp
