#pragma once
#include <string>
#include <vector>

#include "cohomkit/cohom/resolution.hpp"
#include "cohomkit/gmod/module.hpp"

namespace cohomkit::cohom {

using gmod::GModule;

enum class Method { Resolution, Oracle, SylowBound, Kunneth, Shapiro };
const char* method_name(Method m);

struct CohomologyDims {
  std::string group;
  uint32_t p = 2;
  std::string module;
  std::vector<size_t> h;  // h[i] = dim H^i, or an upper bound for SylowBound
  Method method = Method::Resolution;
};

// dim H^i(G, M) for i <= maxdeg from the hom complex of the resolution.
CohomologyDims cohomology_dims(const GModule& M, size_t maxdeg, uint64_t seed, ResolutionOptions opts = {});
CohomologyDims cohomology_dims(const Resolution& R, const GModule& M, size_t maxdeg);

// Independent computation from the 1- and 2-cocycle conditions, maxdeg <= 2.
// 2-cochains are gauge-fixed to vanish on the edges of a spanning tree of the
// Cayley graph, which leaves them determined by their values f(s, h) on
// generators s.
CohomologyDims bar_oracle(const GModule& M, size_t maxdeg);

// Upper bounds from restriction to a Sylow p-subgroup.
CohomologyDims sylow_upper_bound(const GModule& M, size_t maxdeg, uint64_t seed);

// dim H^r of a direct product with outer tensor coefficients; factor_dims[i][e]
// is dim H^e(H_i, M_i).
size_t kunneth_dim(const std::vector<std::vector<size_t>>& factor_dims, size_t r);

struct ShapiroResult {
  std::vector<size_t> induced;    // dim H^j(G, V induced)
  std::vector<size_t> subgroup;   // dim H^j(H, V)
  bool equal = false;
};
ShapiroResult shapiro_check(const Subgroup& H, const GModule& V, size_t k, uint64_t seed);

}  // namespace cohomkit::cohom
