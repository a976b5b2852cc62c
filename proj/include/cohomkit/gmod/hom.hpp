#pragma once
#include <vector>

#include "cohomkit/gmod/module.hpp"

namespace cohomkit::gmod {

struct HomSpace {
  size_t source_dim = 0;
  size_t target_dim = 0;
  // Each basis element is target_dim x source_dim and intertwines the actions.
  std::vector<FpMatrix> basis;
  size_t dim() const { return basis.size(); }
};

// Maps are determined by the images of spin generators of the source; the
// intertwining constraints on the remaining spin edges cut out Hom_G(M, N).
// With dim_only the basis is not materialized (dimension still exact).
HomSpace hom_space(const GModule& M, const GModule& N, bool dim_only = false);
size_t hom_dim(const GModule& M, const GModule& N);
// Stops as soon as a nonzero map is certain or excluded.
bool hom_nonzero(const GModule& M, const GModule& N);

}  // namespace cohomkit::gmod
