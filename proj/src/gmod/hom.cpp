#include "cohomkit/gmod/hom.hpp"

#include "cohomkit/errors.hpp"

namespace cohomkit::gmod {

namespace {

struct SpinBasis {
  std::vector<FpVector> vecs;
  // seed index, or -1 with (from, gen) when vecs[j] = gen(s) * vecs[from]
  std::vector<int> seed;
  std::vector<size_t> from, gen;
  size_t nseeds = 0;
};

SpinBasis spin_basis(const GModule& M) {
  size_t m = M.dim();
  SpinBasis B;
  ffla::Echelon E(M.p(), m);
  for (size_t e = 0; e < m && E.dim() < m; ++e) {
    FpVector v(m, 0);
    v[e] = 1;
    if (!E.add(v)) continue;
    B.vecs.push_back(v);
    B.seed.push_back(int(B.nseeds++));
    B.from.push_back(0);
    B.gen.push_back(0);
    for (size_t k = B.vecs.size() - 1; k < B.vecs.size() && E.dim() < m; ++k)
      for (size_t s = 0; s < M.ngens() && E.dim() < m; ++s) {
        FpVector w = ffla::vecmat(B.vecs[k], M.gen_t(s));
        if (E.add(w)) {
          B.vecs.push_back(std::move(w));
          B.seed.push_back(-1);
          B.from.push_back(k);
          B.gen.push_back(s);
        }
      }
  }
  return B;
}

}  // namespace

HomSpace hom_space(const GModule& M, const GModule& N, bool dim_only) {
  check_compatible(M, N);
  HomSpace H;
  size_t m = M.dim(), n = N.dim();
  H.source_dim = m;
  H.target_dim = n;
  if (m == 0 || n == 0) return H;
  uint32_t p = M.p();
  const ffla::PrimeField& F = ffla::PrimeField::get(p);
  SpinBasis B = spin_basis(M);
  size_t r = B.nseeds, u = r * n;
  // L[j] (n x u): phi(b_j) = L[j] x for the unknown seed images x.
  std::vector<FpMatrix> L(m);
  for (size_t j = 0; j < m; ++j) {
    if (B.seed[j] >= 0) {
      L[j] = FpMatrix(p, n, u);
      for (size_t i = 0; i < n; ++i) L[j](i, size_t(B.seed[j]) * n + i) = 1;
    } else {
      L[j] = ffla::multiply(N.gen(B.gen[j]), L[B.from[j]]);
    }
  }
  FpMatrix Bmat = FpMatrix::from_vectors(p, m, B.vecs);  // rows b_j
  auto Binv = ffla::inverse(Bmat);
  if (!Binv) throw InternalError("spin basis is singular");
  ffla::Echelon E(p, u);
  std::vector<std::vector<bool>> is_edge(m, std::vector<bool>(M.ngens(), false));
  for (size_t j = 0; j < m; ++j)
    if (B.seed[j] < 0) is_edge[B.from[j]][B.gen[j]] = true;
  FpVector row(u);
  for (size_t j = 0; j < m && E.dim() < u; ++j)
    for (size_t s = 0; s < M.ngens() && E.dim() < u; ++s) {
      if (is_edge[j][s]) continue;
      // gen(s) b_j = sum_l c_l b_l with c = (b_j gen_t(s)) Binv.
      FpVector c = ffla::vecmat(ffla::vecmat(B.vecs[j], M.gen_t(s)), *Binv);
      FpMatrix C = ffla::scale(ffla::multiply(N.gen(s), L[j]), uint8_t(p - 1));
      for (size_t l = 0; l < m; ++l)
        if (c[l]) F.axpy(C.data.data(), L[l].data.data(), c[l], C.data.size());
      for (size_t i = 0; i < n && E.dim() < u; ++i) E.add(C.row(i));
    }
  size_t hdim = u - E.dim();
  if (dim_only) {
    H.basis.assign(hdim, FpMatrix());
    return H;
  }
  if (hdim == 0) return H;
  FpMatrix X = ffla::nullspace(E.basis());
  // T = Phi (B^T)^{-1} where Phi has columns L[j] x.
  FpMatrix BtInv = ffla::transpose(*Binv);
  for (size_t t = 0; t < X.rows; ++t) {
    FpVector x = X.row_vector(t);
    FpMatrix Phi(p, n, m);
    for (size_t j = 0; j < m; ++j) {
      FpVector col = ffla::matvec(L[j], x);
      for (size_t i = 0; i < n; ++i) Phi(i, j) = col[i];
    }
    H.basis.push_back(ffla::multiply(Phi, BtInv));
  }
  return H;
}

size_t hom_dim(const GModule& M, const GModule& N) { return hom_space(M, N, true).dim(); }

bool hom_nonzero(const GModule& M, const GModule& N) { return hom_dim(M, N) > 0; }

}  // namespace cohomkit::gmod
