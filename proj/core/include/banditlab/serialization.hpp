#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "banditlab/problem.hpp"

namespace banditlab {

/// Shortest decimal string that round-trips back to exactly `value`.
std::string format_double(double value);

/// Strict double parser; the whole token must be consumed.
double parse_double(std::string_view token);

/// Write a finite problem as a line-oriented text file. Continuous
/// problems hold arbitrary callables and cannot be serialized; passing
/// one throws std::invalid_argument.
void save_problem(const ContextualProblem& problem, std::ostream& os);
void save_problem_file(const ContextualProblem& problem, const std::string& path);

/// Parse a problem file produced by save_problem. Any deviation from the
/// format (unknown keyword, wrong count, trailing data) throws
/// std::invalid_argument with a line number.
ContextualProblem load_problem(std::istream& is);
ContextualProblem load_problem_file(const std::string& path);

}  // namespace banditlab
