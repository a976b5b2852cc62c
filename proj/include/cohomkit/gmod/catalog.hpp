#pragma once
#include <string>
#include <vector>

#include "cohomkit/gmod/meataxe.hpp"
#include "cohomkit/gmod/module.hpp"

namespace cohomkit::gmod {

struct CatalogEntry {
  GModule module;
  size_t multiplicity = 0;  // composition multiplicity in the regular module
  size_t endo_degree = 0;
};

struct IrreducibleCatalog {
  GroupPtr group;
  uint32_t p = 2;
  std::vector<CatalogEntry> entries;
  // "regular-chop" or "seeded" (seed modules plus multiplicities from peak elements).
  std::string method;
  size_t expected_count = 0;
};

// Trivial module first, then by dimension. Cached per (group, p, seed).
IrreducibleCatalog irreducible_catalog(const GroupPtr& G, uint32_t p, uint64_t seed);

// dim End_G(M) for irreducible M, with field-structure sanity checks.
size_t endo_field_degree(const GModule& M, uint64_t seed = 1);

struct ModuleGenerators {
  size_t count = 0;
  bool certified = false;  // a generating set of this size was exhibited
};
ModuleGenerators min_module_generators(const GModule& M, const IrreducibleCatalog& catalog, uint64_t seed);

struct TrivialCfResult {
  size_t count = 0;      // trivial composition factors of M
  size_t fixed_dim = 0;  // dim M^J
  bool coprime = false;  // p does not divide |J|
  bool bound_holds = true;
};
TrivialCfResult trivial_cf_count(const GModule& M, const Subgroup& J, uint64_t seed);

// Generalized nullity of left multiplication by a group-algebra element on FG.
size_t regular_generalized_nullity(const GroupPtr& G, uint32_t p, const std::vector<uint8_t>& y);

}  // namespace cohomkit::gmod
