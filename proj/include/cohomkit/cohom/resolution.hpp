#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cohomkit/ffla/matrix.hpp"
#include "cohomkit/groups/group.hpp"

namespace cohomkit::cohom {

using ffla::FpMatrix;
using ffla::FpVector;
using groups::GroupPtr;
using groups::Subgroup;

// One term P_i = sum over summands of F_p[G/Q_j], each Q_j a p'-subgroup, so
// every summand is projective; with Q_j trivial the summand is F_pG.
struct ResolutionTerm {
  std::vector<uint32_t> summands;  // index into Resolution::subgroups
  std::vector<size_t> offsets;     // first coordinate of each summand
  size_t dim = 0;
  size_t rank() const { return summands.size(); }
};

struct ResolutionOptions {
  bool free_only = false;  // use only the trivial subgroup, giving a free resolution
};

class Resolution;

// Span of the columns of the boundary P_k -> P_{k-1}, a subspace of the
// coordinate space of P_k. A linear map on P_k vanishes on the kernel of the
// boundary exactly when each of its coordinate functions lies in this span.
class BoundaryImage {
 public:
  BoundaryImage(const Resolution& R, size_t k);
  size_t dim() const { return pivots_.size(); }
  // Coordinates of v off the pivots after reduction; zero exactly when v lies in the span.
  FpVector residual(FpVector v) const;
  size_t residual_size() const { return n_ - pivots_.size(); }

 private:
  uint32_t p_;
  size_t n_;
  std::vector<size_t> pivots_;
  std::vector<size_t> free_;
  ffla::Gf2Matrix packed_;  // p = 2
  FpMatrix rows_;           // p odd
};

class Resolution {
 public:
  GroupPtr group;
  uint32_t p = 2;
  bool free_only = false;
  std::vector<Subgroup> subgroups;  // p'-subgroups, largest first, trivial last
  std::vector<std::shared_ptr<const groups::CosetSpace>> cosets;
  std::vector<ResolutionTerm> terms;  // P_0 .. P_k
  // images[i] has one row per summand of P_i: the image of its base coset in
  // P_{i-1}. images[0] is empty; the augmentation sends every coset to 1.
  std::vector<FpMatrix> images;
  // boundary_t[i] has dim P_i rows, row c the image of basis coset c. Built for
  // i < k only, since the top boundary is needed solely through its images.
  std::vector<FpMatrix> boundary_t;
  // kernel_dims[i] = dim of the kernel of the boundary on P_i, for i < k.
  std::vector<size_t> kernel_dims;

  size_t length() const { return terms.size() - 1; }
  std::vector<size_t> ranks() const;
  const uint8_t* generator_image(size_t i, size_t l) const { return images[i].data.data() + l * images[i].cols; }
  // Action of group generator s on a vector of P_i.
  FpVector act(size_t i, size_t s, const FpVector& x) const;
  // Built on first use and shared by copies.
  const BoundaryImage& boundary_image(size_t k) const;

 private:
  struct ImageCache {
    std::mutex mu;
    std::map<size_t, std::unique_ptr<BoundaryImage>> images;
  };
  std::shared_ptr<ImageCache> image_cache_ = std::make_shared<ImageCache>();
};

// p'-subgroups used as stabilizers: largest found first, trivial subgroup last.
std::vector<Subgroup> pprime_subgroups(const GroupPtr& G, uint32_t p, uint64_t seed);

// Resolution of the trivial module up to P_k, verified exact at every degree.
// Cached per (group, p, options); longer cached resolutions are reused.
std::shared_ptr<const Resolution> build_resolution(const GroupPtr& G, uint32_t p, size_t k, uint64_t seed,
                                                   ResolutionOptions opts = {});

}  // namespace cohomkit::cohom
