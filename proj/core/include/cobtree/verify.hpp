#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobtree/optimizer_oracle.hpp"

namespace cobtree {

/// golden, analytic, recurrences, minimizers, cuts, translate, normalization,
/// alternation, closure, simulator, bench, and "all".
const std::vector<std::string>& verify_suite_names();

/// Runs a named suite. `h_max` bounds the exhaustive checks. Throws LookupError
/// for an unknown suite.
std::vector<CheckResult> run_verify_suite(const std::string& suite, int h_max, std::uint64_t seed);

}  // namespace cobtree
