#include <stdexcept>

#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

namespace cohomkit::cohom {

namespace {

// Linear forms in U unknowns with values in M: d rows of length U.
using Form = std::vector<uint8_t>;

struct FormOps {
  const ffla::PrimeField& F;
  size_t d, U;
  // out += A * x, with A a d x d matrix and x a form.
  void add_mat(uint8_t* out, const FpMatrix& A, const uint8_t* x, uint8_t scale = 1) const {
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c)
        if (uint8_t a = A(r, c)) F.axpy(out + r * U, x + c * U, F.mul(a, scale), U);
  }
  void add_form(uint8_t* out, const uint8_t* x, uint8_t scale) const { F.axpy(out, x, scale, d * U); }
  // out += scale * (identity block for unknown block b)
  void add_unit(uint8_t* out, size_t b, uint8_t scale) const {
    for (size_t r = 0; r < d; ++r) out[r * U + b * d + r] = F.add(out[r * U + b * d + r], scale);
  }
};

size_t solution_dim(ffla::Echelon& E, size_t U) { return U - E.dim(); }

}  // namespace

CohomologyDims bar_oracle(const GModule& M, size_t maxdeg) {
  const GroupPtr& G = M.group();
  if (maxdeg > 2) throw InputError("cocycle oracle supports degrees up to 2");
  if (G->order() > caps().oracle_cap) throw CapacityError("oracle_cap", caps().oracle_cap, "group order " + std::to_string(G->order()));
  const auto& T = G->table();
  const auto& F = ffla::PrimeField::get(M.p());
  uint32_t p = M.p();
  size_t n = T.size(), d = M.dim(), S = G->ngens();
  uint8_t minus1 = uint8_t(p - 1);
  CohomologyDims out;
  out.group = G->name();
  out.p = p;
  out.module = M.label();
  out.method = Method::Oracle;

  // H^0: common fixed vectors of the generators.
  FpMatrix stacked(p, 0, d);
  for (size_t s = 0; s < S; ++s) stacked = ffla::vstack(stacked, ffla::sub(M.gen(s), FpMatrix::identity(p, d)));
  size_t h0 = d - ffla::rank(stacked);
  out.h.push_back(h0);
  if (maxdeg == 0) return out;
  if (n == 1 || d == 0) {
    out.h.resize(maxdeg + 1, 0);
    return out;
  }

  // Z^1: unknowns c_s; c(e_i) = rho(s) c(e_parent) + c_s along the tree.
  size_t U1 = S * d;
  FormOps O1{F, d, U1};
  std::vector<Form> c(n, Form(d * U1, 0));
  for (size_t i = 1; i < n; ++i) {
    size_t s = T.via(i);
    O1.add_mat(c[i].data(), M.gen(s), c[T.parent(i)].data());
    O1.add_unit(c[i].data(), s, 1);
  }
  ffla::Echelon E1(p, U1);
  for (size_t s = 0; s < S && E1.dim() < U1; ++s)
    for (size_t j = 0; j < n && E1.dim() < U1; ++j) {
      Form r = c[T.left(s, j)];
      O1.add_mat(r.data(), M.gen(s), c[j].data(), minus1);
      O1.add_unit(r.data(), s, minus1);
      for (size_t k = 0; k < d; ++k) E1.add(r.data() + k * U1);
    }
  size_t z1 = solution_dim(E1, U1);
  out.h.push_back(z1 - (d - h0));
  if (maxdeg == 1) return out;
  c.clear();

  // Only distinct non-identity generators carry 2-cochain unknowns; a repeated
  // generator would add a block the cocycle identity leaves unconstrained.
  std::vector<bool> use(S, false);
  for (size_t s = 0; s < S; ++s) {
    size_t e = T.left(s, 0);
    use[s] = e != 0;
    for (size_t t = 0; t < s && use[s]; ++t) use[s] = T.left(t, 0) != e;
  }
  // Z^2 with f(s, parent(i)) = 0 on tree edges; unknown blocks f(s, h) otherwise.
  std::vector<int64_t> block(S * n, -1);
  std::vector<bool> tree(S * n, false);
  for (size_t i = 1; i < n; ++i) {
    if (!use[T.via(i)]) throw std::logic_error("oracle: tree edge uses a redundant generator");
    tree[T.via(i) * n + T.parent(i)] = true;
  }
  size_t nb = 0;
  for (size_t x = 0; x < S * n; ++x)
    if (use[x / n] && !tree[x]) block[x] = int64_t(nb++);
  size_t U2 = nb * d;
  FormOps O2{F, d, U2};
  std::vector<Form> f(n * n);  // f[i * n + h]
  for (size_t h = 0; h < n; ++h) f[h].assign(d * U2, 0);
  for (size_t i = 1; i < n; ++i) {
    size_t s = T.via(i), par = T.parent(i);
    for (size_t h = 0; h < n; ++h) {
      Form& v = f[i * n + h];
      v.assign(d * U2, 0);
      O2.add_mat(v.data(), M.gen(s), f[par * n + h].data());
      if (int64_t b = block[s * n + T.mul(par, h)]; b >= 0) O2.add_unit(v.data(), size_t(b), 1);
      if (int64_t b = block[s * n + par]; b >= 0) O2.add_unit(v.data(), size_t(b), minus1);
    }
  }
  ffla::Echelon E2(p, U2);
  Form r(d * U2);
  for (size_t s = 0; s < S && E2.dim() < U2; ++s)
    for (size_t j = 0; j < n && E2.dim() < U2; ++j) {
      if (!use[s] || tree[s * n + j]) continue;
      size_t sj = T.left(s, j);
      for (size_t h = 0; h < n && E2.dim() < U2; ++h) {
        r = f[sj * n + h];
        O2.add_mat(r.data(), M.gen(s), f[j * n + h].data(), minus1);
        if (int64_t b = block[s * n + T.mul(j, h)]; b >= 0) O2.add_unit(r.data(), size_t(b), minus1);
        if (int64_t b = block[s * n + j]; b >= 0) O2.add_unit(r.data(), size_t(b), 1);
        for (size_t k = 0; k < d; ++k) E2.add(r.data() + k * U2);
      }
    }
  size_t z2 = solution_dim(E2, U2);
  f.clear();

  // 1-cochains preserving the gauge: rho(s) c(parent) - c(i) + c(s) = 0 on tree edges.
  FpMatrix G1(p, (n - 1) * d, n * d);
  for (size_t i = 1; i < n; ++i) {
    size_t s = T.via(i), par = T.parent(i), se = T.left(s, 0);
    for (size_t r0 = 0; r0 < d; ++r0) {
      size_t row = (i - 1) * d + r0;
      for (size_t c0 = 0; c0 < d; ++c0) G1(row, par * d + c0) = F.add(G1(row, par * d + c0), M.gen(s)(r0, c0));
      G1(row, i * d + r0) = F.add(G1(row, i * d + r0), minus1);
      G1(row, se * d + r0) = F.add(G1(row, se * d + r0), 1);
    }
  }
  size_t cg = n * d - ffla::rank(G1);
  out.h.push_back(z2 - (cg - z1));
  return out;
}

}  // namespace cohomkit::cohom
