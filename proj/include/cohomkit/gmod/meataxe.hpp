#pragma once
#include <vector>

#include "cohomkit/gmod/module.hpp"

namespace cohomkit::gmod {

enum class IrrStatus { Irreducible, Reducible, Undecided };

struct IrreducibleResult {
  IrrStatus status = IrrStatus::Undecided;
  FpMatrix submodule;  // rows spanning a proper nonzero submodule when reducible
};

IrreducibleResult is_irreducible(const GModule& M, uint64_t seed);

struct CompositionFactor {
  GModule module;
  size_t multiplicity = 0;
};

// Irreducible factors up to isomorphism, with multiplicities; throws Undecided.
std::vector<CompositionFactor> composition_factors(const GModule& M, uint64_t seed);

// For irreducible modules: isomorphic iff a nonzero homomorphism exists.
bool isomorphic_irreducibles(const GModule& A, const GModule& B);

}  // namespace cohomkit::gmod
