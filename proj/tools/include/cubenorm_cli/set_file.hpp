#pragma once

// Text format for subsets of {0,1}^n:
//
//   n=<int>
//   0110...        one record per line; character i is coordinate i+1
//
// or, instead of explicit records, exactly one directive "sphere <n> <k>" or
// "ball <n> <k>". Blank lines are ignored.

#include "cubenorm/cube.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubenorm::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

SupportSet parse_set_file(std::string_view text);
SupportSet read_set_file(const std::string& path);

/// Explicit-record form of a set, suitable for parse_set_file.
std::string format_set_file(const SupportSet& a);

std::string mask_to_bits(Mask m, int n);

}  // namespace cubenorm::cli
