#pragma once

#include <stdexcept>
#include <string>

namespace dagorder {

// Input files that cannot be opened or parsed.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Violated preconditions or invalid produced artifacts (bad orders,
// cyclic inputs where a DAG is required, inconsistent partitions, ...).
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dagorder
