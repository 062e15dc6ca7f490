#pragma once

#include <string>

#include "godel/dual.hpp"
#include "godel/poset.hpp"
#include "godel/translate.hpp"

namespace godel {

// Hasse diagram: one node per element, one edge lower -> upper per cover,
// elements of equal depth on the same rank.
std::string dot_poset(const Poset& p, const std::string& name = "poset");
std::string dot_forest(const Forest& f, const std::string& name = "forest");

// Operation diagram in the style of the translation figures: solid arrows
// for the total operation, dashed for the index-1 partial operation, dotted
// for index 2, bold for index 3; beyond that the cycle repeats with the
// operation name attached as an edge label.
std::string dot_structure(const DualStructure& x, const std::string& name = "structure");

// Both sides of a translation; the quotient classes appear as labelled
// clusters around the structure's points.
std::string dot_translation(const DualStructure& x, const QuotientForest& q,
                            const std::string& name = "translation");

// Minimal syntactic check used by tests: graph header plus balanced
// braces, brackets and quotes.
bool dot_is_valid(const std::string& text);

}  // namespace godel
