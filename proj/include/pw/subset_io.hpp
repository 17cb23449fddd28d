#pragma once

// Subset files:
//
//   q 3 model pw-v1
//   0
//   17
//   coords
//   1 0 0 0 0 0
//
// A header opens a set; indices refer to the sorted X.  After `coords` each
// line holds six base-p encoded coordinates of a normalized point.  Lines
// starting with '#' are comments; `# key: value` carries summaries.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pw/intriguing.hpp"

namespace pw {

inline constexpr const char* kModelTag = "pw-v1";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedSet {
  std::uint32_t q = 0;
  std::size_t header_line = 0;
  PointSubset set;
};

/// q from the first header, if any.  Throws ParseError on a malformed header.
std::optional<std::uint32_t> peek_q(std::istream& in);
std::optional<std::uint32_t> peek_q_file(const std::string& path);

/// Every set in the stream.  Throws ParseError.
std::vector<ParsedSet> parse_subsets(std::istream& in, const QuadraticSpace& space);
std::vector<ParsedSet> read_subset_file(const std::string& path, const QuadraticSpace& space);

std::string encode_point(const ProjPoint& p);

using Summary = std::vector<std::pair<std::string, std::string>>;

/// Header, then `# key: value` lines, then one index (or coordinate line) per point.
void write_subset(std::ostream& out, std::uint32_t q, const PointSubset& y, const Summary& summary = {},
                  const QuadraticSpace* coords = nullptr);

}  // namespace pw
