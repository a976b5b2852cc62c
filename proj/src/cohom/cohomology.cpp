#include "cohomkit/cohom/cohomology.hpp"

#include <algorithm>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

namespace cohomkit::cohom {

const char* method_name(Method m) {
  switch (m) {
    case Method::Resolution: return "resolution";
    case Method::Oracle: return "oracle";
    case Method::SylowBound: return "sylow-bound";
    case Method::Kunneth: return "kunneth";
    case Method::Shapiro: return "shapiro";
  }
  return "?";
}

namespace {

// Hom_G(F_p[G/Q], M) = M^Q. For each subgroup used: a basis B of M^Q as
// columns, and rho(rep_k) B for every coset representative.
struct FixedData {
  size_t f = 0;
  std::vector<FpMatrix> translates;
};

FixedData fixed_data(const Resolution& R, const GModule& M, uint32_t q) {
  FixedData D;
  FpMatrix B = ffla::transpose(gmod::fixed_points(M, R.subgroups[q]));
  D.f = B.cols;
  const auto& C = *R.cosets[q];
  D.translates.resize(C.size());
  D.translates[0] = std::move(B);
  for (size_t k = 1; k < C.size(); ++k) D.translates[k] = ffla::multiply(M.gen(C.via(k)), D.translates[C.parent(k)]);
  return D;
}

}  // namespace

CohomologyDims cohomology_dims(const Resolution& R, const GModule& M, size_t maxdeg) {
  if (M.group() != R.group || M.p() != R.p) throw InputError("module does not match the resolution");
  if (R.length() < std::max<size_t>(maxdeg, 1)) throw InputError("resolution too short for the requested degree");
  // With P_{maxdeg+1} absent the top cocycles are tested against the boundary image.
  size_t top = std::min(R.length(), maxdeg + 1);
  const auto& F = ffla::PrimeField::get(M.p());
  size_t d = M.dim();
  std::vector<FixedData> fd(R.subgroups.size());
  std::vector<bool> have(R.subgroups.size(), false);
  auto data = [&](uint32_t q) -> const FixedData& {
    if (!have[q]) {
      fd[q] = fixed_data(R, M, q);
      have[q] = true;
    }
    return fd[q];
  };
  // C^i = sum over summands of P_i of M^{Q}; delta_i : C^{i-1} -> C^i with the
  // target written in ambient coordinates M^{r_i}.
  std::vector<size_t> cdim(maxdeg + 2, 0), rank(maxdeg + 3, 0);
  for (size_t i = 0; i <= top; ++i)
    for (uint32_t q : R.terms[i].summands) cdim[i] += data(q).f;
  for (size_t i = 1; i <= top; ++i) {
    const ResolutionTerm& Pi = R.terms[i];
    const ResolutionTerm& Pm = R.terms[i - 1];
    FpMatrix delta(M.p(), Pi.rank() * d, cdim[i - 1]);
    for (size_t l = 0; l < Pi.rank(); ++l) {
      const uint8_t* v = R.generator_image(i, l);
      size_t col = 0;
      for (size_t j = 0; j < Pm.rank(); ++j) {
        const FixedData& D = data(Pm.summands[j]);
        if (D.f) {
          FpMatrix block(M.p(), d, D.f);
          for (size_t k = 0; k < D.translates.size(); ++k)
            if (uint8_t c = v[Pm.offsets[j] + k])
              F.axpy(block.data.data(), D.translates[k].data.data(), c, block.data.size());
          for (size_t r = 0; r < d; ++r)
            std::copy(block.data.begin() + r * D.f, block.data.begin() + (r + 1) * D.f,
                      delta.data.begin() + (l * d + r) * delta.cols + col);
        }
        col += D.f;
      }
    }
    rank[i] = ffla::rank(delta);
  }
  if (top == maxdeg) {
    // A cochain is a cocycle when every coordinate of the induced map on P_k
    // lies in the span of the columns of the boundary P_k -> P_{k-1}.
    const BoundaryImage& img = R.boundary_image(maxdeg);
    const ResolutionTerm& T = R.terms[maxdeg];
    size_t width = d * img.residual_size();
    if (double(cdim[maxdeg]) * double(width) > double(caps().memory_budget))
      throw CapacityError("memory_budget", caps().memory_budget, "cocycle system of width " + std::to_string(width));
    FpMatrix Z(M.p(), cdim[maxdeg], width);
    size_t row = 0;
    for (size_t l = 0; l < T.rank(); ++l) {
      const FixedData& D = data(T.summands[l]);
      for (size_t t = 0; t < D.f; ++t, ++row)
        for (size_t a = 0; a < d; ++a) {
          FpVector v(T.dim, 0);
          for (size_t c = 0; c < D.translates.size(); ++c) v[T.offsets[l] + c] = D.translates[c](a, t);
          FpVector res = img.residual(std::move(v));
          std::copy(res.begin(), res.end(), Z.data.begin() + row * width + a * res.size());
        }
    }
    // rank[maxdeg + 1] stands for the rank of the next coboundary.
    rank[maxdeg + 1] = ffla::rank(Z);
  }
  CohomologyDims out;
  out.group = M.group()->name();
  out.p = M.p();
  out.module = M.label();
  out.method = Method::Resolution;
  for (size_t i = 0; i <= maxdeg; ++i) out.h.push_back(cdim[i] - rank[i + 1] - rank[i]);
  return out;
}

CohomologyDims cohomology_dims(const GModule& M, size_t maxdeg, uint64_t seed, ResolutionOptions opts) {
  auto R = build_resolution(M.group(), M.p(), std::max<size_t>(maxdeg, 1), seed, opts);
  if (R->length() <= maxdeg && R->terms[maxdeg].dim <= caps().top_extend_cap)
    R = build_resolution(M.group(), M.p(), maxdeg + 1, seed, opts);
  return cohomology_dims(*R, M, maxdeg);
}

CohomologyDims sylow_upper_bound(const GModule& M, size_t maxdeg, uint64_t seed) {
  CohomologyDims out;
  out.group = M.group()->name();
  out.p = M.p();
  out.module = M.label();
  out.method = Method::SylowBound;
  if (M.group()->order() % M.p() != 0) {
    out.h.assign(maxdeg + 1, 0);
    out.h[0] = gmod::fixed_points(M).rows;
    return out;
  }
  Subgroup P = groups::sylow_subgroup(M.group(), M.p(), seed);
  GModule MP = gmod::restrict(M, P);
  out.h = cohomology_dims(MP, maxdeg, seed).h;
  return out;
}

size_t kunneth_dim(const std::vector<std::vector<size_t>>& factor_dims, size_t r) {
  // poly[e] = number of ways to reach total degree e over the factors so far
  std::vector<size_t> acc(r + 1, 0);
  acc[0] = 1;
  for (const auto& f : factor_dims) {
    if (f.size() < r + 1) throw InputError("Kunneth factor data missing degree " + std::to_string(f.size()));
    std::vector<size_t> next(r + 1, 0);
    for (size_t a = 0; a <= r; ++a)
      for (size_t b = 0; a + b <= r; ++b) next[a + b] += acc[a] * f[b];
    acc = std::move(next);
  }
  return acc[r];
}

ShapiroResult shapiro_check(const Subgroup& H, const GModule& V, size_t k, uint64_t seed) {
  if (V.group() != H.group) throw InputError("module is not over the subgroup");
  ShapiroResult r;
  r.induced = cohomology_dims(gmod::induce(V, H), k, seed).h;
  r.subgroup = cohomology_dims(V, k, seed).h;
  r.equal = r.induced == r.subgroup;
  return r;
}

}  // namespace cohomkit::cohom
