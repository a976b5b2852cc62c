#include "cohomkit/cli/groupspec.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/field.hpp"
#include "cohomkit/ffla/fq.hpp"
#include "cohomkit/ffla/poly.hpp"

namespace cohomkit::cli {

namespace {

[[noreturn]] void fail(size_t line, size_t col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// Cursor over one line with 1-based columns.
struct Cursor {
  const std::string& s;
  size_t line;
  size_t i = 0;
  size_t col() const { return i + 1; }
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
  std::string word() {
    skip_ws();
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(b, i - b);
  }
  uint64_t number(const char* what) {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail(line, col(), std::string("expected ") + what);
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + uint64_t(s[i] - '0');
      if (v > 1000000000ull) fail(line, col(), std::string(what) + " is too large");
      ++i;
    }
    return v;
  }
};

// Polynomial in x with coefficients reduced mod p, low to high.
ffla::Poly parse_poly(Cursor& c, uint32_t p, bool allow_x) {
  c.skip_ws();
  ffla::Poly f;
  bool first = true;
  while (true) {
    if (!first) {
      if (!c.peek('+')) break;
      ++c.i;
    }
    first = false;
    c.skip_ws();
    size_t start = c.col();
    uint64_t coef = 1;
    bool have_coef = false;
    if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
      coef = c.number("coefficient");
      have_coef = true;
      if (c.i < c.s.size() && c.s[c.i] == '*') ++c.i;
    }
    size_t k = 0;
    if (c.i < c.s.size() && c.s[c.i] == 'x') {
      if (!allow_x) fail(c.line, c.col(), "x is not defined over a prime field");
      ++c.i;
      k = 1;
      if (c.i < c.s.size() && c.s[c.i] == '^') {
        ++c.i;
        k = c.number("exponent");
        if (k > 64) fail(c.line, c.col(), "exponent is too large");
      }
    } else if (!have_coef) {
      fail(c.line, start, "expected a polynomial term");
    }
    if (f.size() <= k) f.resize(k + 1, 0);
    f[k] = uint8_t((f[k] + coef % p) % p);
    if (c.i < c.s.size() && !std::isspace(static_cast<unsigned char>(c.s[c.i])) && c.s[c.i] != '+')
      fail(c.line, c.col(), std::string("unexpected character '") + c.s[c.i] + "'");
  }
  ffla::poly_trim(f);
  return f;
}

std::string poly_str(const std::vector<uint8_t>& f) {
  std::string out;
  for (size_t k = 0; k < f.size(); ++k) {
    if (!f[k]) continue;
    if (!out.empty()) out += "+";
    std::string c = f[k] == 1 && k > 0 ? "" : std::to_string(f[k]);
    if (k == 0) out += c;
    else if (k == 1) out += c + "x";
    else out += c + "x^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::vector<uint8_t> code_coeffs(uint32_t code, uint32_t p, uint32_t e) {
  std::vector<uint8_t> c(e);
  for (uint32_t k = 0; k < e; ++k) {
    c[k] = uint8_t(code % p);
    code /= p;
  }
  return c;
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  GroupSpec s;
  bool have_name = false, have_field = false, have_degree = false;
  size_t max_point = 0;
  std::istringstream in(text);
  std::string raw;
  std::vector<std::string> lines;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto h = raw.find('#');
    lines.push_back(h == std::string::npos ? raw : raw.substr(0, h));
  }
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c{lines[ln], ln + 1};
    if (c.done()) continue;
    size_t dcol = c.col();
    std::string d = c.word();
    if (d == "group") {
      c.skip_ws();
      if (c.done()) fail(c.line, c.col(), "expected a group name");
      s.name = c.s.substr(c.i);
      while (!s.name.empty() && std::isspace(static_cast<unsigned char>(s.name.back()))) s.name.pop_back();
      have_name = true;
      continue;
    }
    if (d == "degree") {
      if (s.kind == GroupSpec::Kind::Mat && have_field) fail(c.line, dcol, "degree applies to permutation groups");
      s.degree = c.number("degree");
      if (s.degree == 0) fail(c.line, dcol, "degree must be positive");
      have_degree = true;
    } else if (d == "perm") {
      if (have_field) fail(c.line, dcol, "perm in a matrix group spec");
      std::vector<std::vector<uint32_t>> gen;
      std::set<uint32_t> seen;
      if (c.done()) fail(c.line, c.col(), "expected cycles");
      while (!c.done()) {
        size_t ccol = c.col();
        if (!c.peek('(')) fail(c.line, c.col(), "malformed cycle: expected '('");
        ++c.i;
        std::vector<uint32_t> cyc;
        while (true) {
          if (c.peek(')')) {
            ++c.i;
            break;
          }
          if (c.peek(',')) ++c.i;
          if (c.done()) fail(c.line, ccol, "malformed cycle: missing ')'");
          uint64_t x = c.number("a point");
          if (x == 0) fail(c.line, c.col(), "malformed cycle: points are numbered from 1");
          if (!seen.insert(uint32_t(x)).second)
            fail(c.line, ccol, "malformed cycle: point " + std::to_string(x) + " is repeated");
          cyc.push_back(uint32_t(x));
          max_point = std::max<size_t>(max_point, x);
        }
        if (!cyc.empty()) gen.push_back(std::move(cyc));
      }
      s.cycles.push_back(std::move(gen));
      continue;
    } else if (d == "field") {
      if (!s.cycles.empty()) fail(c.line, dcol, "field in a permutation group spec");
      if (have_field) fail(c.line, dcol, "field given twice");
      s.kind = GroupSpec::Kind::Mat;
      have_field = true;
      size_t pc = c.col();
      uint64_t p = c.number("a prime");
      if (!ffla::is_prime(p) || p > 251) fail(c.line, pc, "field characteristic must be a prime below 256");
      s.p = uint32_t(p);
      s.e = 1;
      if (!c.done() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        size_t ec = c.col();
        s.e = uint32_t(c.number("extension degree"));
        if (s.e == 0 || s.e > 16) fail(c.line, ec, "extension degree must lie in 1..16");
      }
      if (!c.done()) {
        size_t wc = c.col();
        if (c.word() != "poly") fail(c.line, wc, "expected 'poly'");
        size_t fc = c.col();
        ffla::Poly f = parse_poly(c, s.p, true);
        if (ffla::poly_degree(f) != int(s.e) || f.back() != 1)
          fail(c.line, fc, "defining polynomial must be monic of degree " + std::to_string(s.e));
        if (!ffla::poly_is_irreducible(s.p, f)) fail(c.line, fc, "reducible polynomial " + poly_str(f));
        if (s.e > 1) s.poly = f;
      } else if (s.e > 1) {
        s.poly = ffla::FqField::standard(s.p, s.e)->poly();
      }
      uint64_t q = 1;
      for (uint32_t k = 0; k < s.e; ++k) q *= s.p;
      if (q > 65536) fail(c.line, pc, "field order exceeds 65536");
    } else if (d == "dim") {
      if (!have_field) fail(c.line, dcol, "dim before field");
      s.dim = c.number("dimension");
      if (s.dim == 0 || s.dim > 16) fail(c.line, dcol, "dimension must lie in 1..16");
    } else if (d == "matrix") {
      if (!have_field || s.dim == 0) fail(c.line, dcol, "matrix before field and dim");
      if (!c.done()) fail(c.line, c.col(), "rows start on the next line");
      std::vector<uint32_t> m;
      ffla::FieldPtr F = s.e == 1 ? nullptr : ffla::FqField::with_poly(s.p, s.poly);
      for (size_t r = 0; r < s.dim; ++r) {
        ++ln;
        while (ln < lines.size() && Cursor{lines[ln], ln + 1}.done()) ++ln;
        if (ln >= lines.size()) fail(lines.size(), 1, "matrix has fewer than " + std::to_string(s.dim) + " rows");
        Cursor rc{lines[ln], ln + 1};
        for (size_t col = 0; col < s.dim; ++col) {
          if (rc.done()) fail(rc.line, rc.col(), "row has fewer than " + std::to_string(s.dim) + " entries");
          ffla::Poly f = parse_poly(rc, s.p, s.e > 1);
          if (s.e > 1 && ffla::poly_degree(f) >= int(s.e)) f = ffla::poly_mod(s.p, f, s.poly);
          std::vector<uint8_t> co(s.e, 0);
          for (size_t k = 0; k < f.size() && k < s.e; ++k) co[k] = f[k];
          m.push_back(F ? F->from_coeffs(co) : co[0]);
        }
        if (!rc.done()) fail(rc.line, rc.col(), "row has more than " + std::to_string(s.dim) + " entries");
      }
      s.matrices.push_back(std::move(m));
      continue;
    } else {
      fail(c.line, dcol, "unknown directive '" + d + "'");
    }
    if (!c.done()) fail(c.line, c.col(), "unexpected text after " + d);
  }
  if (!have_name) fail(lines.size() + 1, 1, "missing group directive");
  if (s.kind == GroupSpec::Kind::Perm) {
    if (s.cycles.empty()) fail(lines.size() + 1, 1, "no generators");
    if (have_degree && max_point > s.degree)
      fail(lines.size() + 1, 1, "a point exceeds the declared degree " + std::to_string(s.degree));
    if (!have_degree) s.degree = std::max<size_t>(max_point, 1);
  } else {
    if (s.dim == 0) fail(lines.size() + 1, 1, "missing dim");
    if (s.matrices.empty()) fail(lines.size() + 1, 1, "no generators");
  }
  return s;
}

std::string emit_group_spec(const GroupSpec& s) {
  std::ostringstream o;
  o << "group " << s.name << "\n";
  if (s.kind == GroupSpec::Kind::Perm) {
    o << "degree " << s.degree << "\n";
    for (const auto& g : s.cycles) {
      o << "perm ";
      if (g.empty()) o << "()";
      for (const auto& cyc : g) {
        o << "(";
        for (size_t i = 0; i < cyc.size(); ++i) o << (i ? " " : "") << cyc[i];
        o << ")";
      }
      o << "\n";
    }
    return o.str();
  }
  o << "field " << s.p << " " << s.e;
  if (s.e > 1) o << " poly " << poly_str(s.poly);
  o << "\ndim " << s.dim << "\n";
  for (const auto& m : s.matrices) {
    o << "matrix\n";
    for (size_t r = 0; r < s.dim; ++r) {
      for (size_t c = 0; c < s.dim; ++c) o << (c ? " " : "") << poly_str(code_coeffs(m[r * s.dim + c], s.p, s.e));
      o << "\n";
    }
  }
  return o.str();
}

groups::GroupPtr build_group(const GroupSpec& s) {
  if (s.kind == GroupSpec::Kind::Perm) {
    std::vector<groups::Perm> gens;
    for (const auto& g : s.cycles) {
      std::vector<std::vector<groups::Point>> cyc;
      for (const auto& c : g) {
        std::vector<groups::Point> z;
        for (uint32_t x : c) z.push_back(x - 1);
        cyc.push_back(std::move(z));
      }
      gens.push_back(groups::Perm::from_cycles(s.degree, cyc));
    }
    return groups::Group::from_perms(s.degree, std::move(gens), s.name);
  }
  ffla::FieldPtr F = s.e == 1 ? ffla::FqField::standard(s.p, 1) : ffla::FqField::with_poly(s.p, s.poly);
  return groups::Group::from_matrices(F, s.dim, s.matrices, s.name);
}

std::string bundled_data_dir() {
  if (const char* d = std::getenv("COHOMTOOL_DATA")) return d;
#ifdef COHOMKIT_DATA_DIR
  return COHOMKIT_DATA_DIR;
#else
  return "data";
#endif
}

GroupSpec load_group_spec(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<std::string> candidates{path};
  if (path.find('/') == std::string::npos) {
    std::string base = bundled_data_dir() + "/groups/" + path;
    candidates.push_back(base);
    candidates.push_back(base + ".grp");
  }
  for (const auto& c : candidates) {
    std::error_code ec;
    if (!fs::is_regular_file(c, ec)) continue;
    std::ifstream in(c);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return parse_group_spec(ss.str());
    } catch (const InputError& e) {
      throw InputError(c + ": " + e.what());
    }
  }
  throw InputError("group file not found: " + path);
}

}  // namespace cohomkit::cli
