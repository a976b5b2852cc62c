#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cohomkit/groups/group.hpp"

namespace cohomkit::cli {

// Text format, one directive per line, '#' starts a comment:
//   group NAME
//   degree N                      (optional for perm; default is the largest point)
//   perm (1 2 3)(4 5)             (one generator; "()" is the identity)
//   field P [E [poly C0+C1x+...]] (matrix groups; poly is monic of degree E)
//   dim D
//   matrix                        (followed by D rows of D entries)
// Matrix entries are polynomials in the field generator x, such as 1+x^2 or 2x.
struct GroupSpec {
  enum class Kind { Perm, Mat };
  std::string name;
  Kind kind = Kind::Perm;
  // perm: 1-based points, gens[g][c] is a cycle
  size_t degree = 0;
  std::vector<std::vector<std::vector<uint32_t>>> cycles;
  // mat: entries as field codes (sum c_i p^i)
  uint32_t p = 0, e = 1;
  std::vector<uint8_t> poly;  // low to high, monic of degree e; empty for e = 1 without poly
  size_t dim = 0;
  std::vector<std::vector<uint32_t>> matrices;  // row-major dim x dim each
  bool operator==(const GroupSpec&) const = default;
};

// Throws InputError "line L, column C: ..." on malformed input.
GroupSpec parse_group_spec(const std::string& text);
std::string emit_group_spec(const GroupSpec& spec);
groups::GroupPtr build_group(const GroupSpec& spec);
// Reads a file; a bare name without a path is also looked up in the bundled data directory.
GroupSpec load_group_spec(const std::string& path);
std::string bundled_data_dir();

}  // namespace cohomkit::cli
