#pragma once

// Text formats of the CLI surface.
//
// Instance file ("mssc 1"):
//   line 1:      mssc 1
//   line 2:      n <int> T <int>
//   line 3:      pi0 <n space-separated element ids>
//   lines 4..:   req <k> <k space-separated element ids>   (one per round)
// Set-cover file ("setcover 1"):
//   line 1:      setcover 1
//   line 2:      elements <n_sc> sets <m>
//   lines 3..:   set <k> <k space-separated member ids>
// Lines starting with '#' are comments in both formats.
//
// serialize -> parse is the identity on the in-memory value.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mssc/core.hpp"
#include "mssc/exact.hpp"

namespace mssc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string serialize_instance(const Instance& inst);

SetCoverInstance parse_setcover(std::istream& in);
SetCoverInstance parse_setcover_text(const std::string& text);
std::string serialize_setcover(const SetCoverInstance& sc);

// Deterministic instance generation (the CLI's `gen`).
//   uniform-r: every request is a uniform random r-subset;
//   mixed:     request sizes are uniform in [1, r].
enum class GenDistribution { UniformR, Mixed };

Instance generate_instance(int n, int T, int r, GenDistribution dist,
                           std::uint64_t seed);

}  // namespace mssc
