#include "pkdyn/family_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pkdyn {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LineReader {
  std::istringstream in;
  int lineno = 0;
  std::vector<std::string> tokens;

  explicit LineReader(const std::string& text) : in(text) {}

  bool next() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("family parse error (line " + std::to_string(lineno) + "): " + msg);
  }

  int as_int(const std::string& s) const {
    try {
      std::size_t pos = 0;
      int v = std::stoi(s, &pos);
      if (pos != s.size()) fail("bad integer '" + s + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("bad integer '" + s + "'");
    } catch (const std::out_of_range&) {
      fail("integer out of range '" + s + "'");
    }
  }

  double as_double(const std::string& s) const {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) fail("bad float '" + s + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("bad float '" + s + "'");
    } catch (const std::out_of_range&) {
      fail("float out of range '" + s + "'");
    }
  }
};

} // namespace

FamilySpec parse_family(const std::string& text) {
  LineReader rd(text);
  if (!rd.next() || rd.tokens[0] != "pkdyn-family") rd.fail("missing pkdyn-family header");
  FamilySpec spec;
  bool have_k = false, have_d = false, have_m = false, have_domain = false;
  int cur_component = -1;
  FiberPoly::Term* cur_monomial = nullptr;

  while (rd.next()) {
    const auto& t = rd.tokens;
    const std::string& key = t[0];
    if (key == "name") {
      spec.name = t.size() > 1 ? t[1] : "";
    } else if (key == "k") {
      spec.k = rd.as_int(t.at(1));
      have_k = true;
    } else if (key == "d") {
      spec.d = rd.as_int(t.at(1));
      have_d = true;
    } else if (key == "m") {
      spec.m = rd.as_int(t.at(1));
      have_m = true;
    } else if (key == "component") {
      if (!(have_k && have_d && have_m)) rd.fail("component before k/d/m");
      int idx = rd.as_int(t.at(1));
      if (idx != cur_component + 1) rd.fail("components must appear in order");
      cur_component = idx;
      spec.components.emplace_back();
      cur_monomial = nullptr;
    } else if (key == "monomial") {
      if (cur_component < 0) rd.fail("monomial outside component");
      if (static_cast<int>(t.size()) != spec.k + 2) rd.fail("monomial needs k+1 exponents");
      FiberPoly::Term term;
      for (int j = 0; j <= spec.k; ++j) term.expo.push_back(rd.as_int(t[1 + j]));
      spec.components[cur_component].terms.push_back(std::move(term));
      cur_monomial = &spec.components[cur_component].terms.back();
    } else if (key == "coeff") {
      if (!cur_monomial) rd.fail("coeff outside monomial");
      if (static_cast<int>(t.size()) != spec.m + 3) rd.fail("coeff needs m exponents plus re im");
      LambdaPoly::Term lt;
      for (int j = 0; j < spec.m; ++j) lt.expo.push_back(rd.as_int(t[1 + j]));
      lt.coeff = cplx(rd.as_double(t[1 + spec.m]), rd.as_double(t[2 + spec.m]));
      cur_monomial->coeff.terms.push_back(std::move(lt));
    } else if (key == "domain") {
      if (!have_m) rd.fail("domain before m");
      have_domain = true;
      cur_monomial = nullptr;
    } else if (key == "center") {
      if (!have_domain) rd.fail("center outside domain");
      if (static_cast<int>(t.size()) != 2 * spec.m + 1) rd.fail("center needs m re/im pairs");
      spec.domain.center.resize(spec.m);
      for (int j = 0; j < spec.m; ++j)
        spec.domain.center[j] = cplx(rd.as_double(t[1 + 2 * j]), rd.as_double(t[2 + 2 * j]));
    } else if (key == "radii") {
      if (!have_domain) rd.fail("radii outside domain");
      if (t.size() != 4) rd.fail("radii needs r_U r_V r_W");
      spec.domain.r_U = rd.as_double(t[1]);
      spec.domain.r_V = rd.as_double(t[2]);
      spec.domain.r_W = rd.as_double(t[3]);
    } else if (key == "mesh") {
      if (!have_domain) rd.fail("mesh outside domain");
      spec.domain.mesh_per_axis = rd.as_int(t.at(1));
    } else if (key == "end") {
      break;
    } else {
      rd.fail("unknown directive '" + key + "'");
    }
  }
  if (spec.domain.center.size() == 0) rd.fail("missing domain center");
  spec.check_shape();
  return spec;
}

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family spec: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family(ss.str());
}

std::string serialize_family(const FamilySpec& spec) {
  std::ostringstream out;
  out << "pkdyn-family 1\n";
  if (!spec.name.empty()) out << "name " << spec.name << "\n";
  out << "k " << spec.k << "\nd " << spec.d << "\nm " << spec.m << "\n";
  for (int i = 0; i <= spec.k; ++i) {
    out << "component " << i << "\n";
    for (const auto& term : spec.components[i].terms) {
      out << "monomial";
      for (int e : term.expo) out << " " << e;
      out << "\n";
      for (const auto& lt : term.coeff.terms) {
        out << "coeff";
        for (int e : lt.expo) out << " " << e;
        out << " " << fmt_double(lt.coeff.real()) << " " << fmt_double(lt.coeff.imag()) << "\n";
      }
    }
  }
  out << "domain\ncenter";
  for (int j = 0; j < spec.m; ++j)
    out << " " << fmt_double(spec.domain.center[j].real()) << " "
        << fmt_double(spec.domain.center[j].imag());
  out << "\nradii " << fmt_double(spec.domain.r_U) << " " << fmt_double(spec.domain.r_V)
      << " " << fmt_double(spec.domain.r_W) << "\n";
  out << "mesh " << spec.domain.mesh_per_axis << "\nend\n";
  return out.str();
}

void save_family(const FamilySpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write family spec: " + path);
  out << serialize_family(spec);
}

FamilySpec family_power_map(int d) {
  FamilySpec spec;
  spec.k = 1;
  spec.d = d;
  spec.m = 1;
  spec.name = "z^" + std::to_string(d);
  FiberPoly c0, c1;
  c0.terms.push_back({{d, 0}, lp_const(1.0, 1)});
  c1.terms.push_back({{0, d}, lp_const(1.0, 1)});
  spec.components = {c0, c1};
  spec.domain.center = CVec::Zero(1);
  spec.domain.r_U = 0.1;
  spec.domain.r_V = 0.2;
  spec.domain.r_W = 0.4;
  spec.domain.mesh_per_axis = 3;
  return spec;
}

FamilySpec family_quadratic() { return family_quadratic_at(cplx(0, 0), 0.2, 0.3, 0.45, 9); }

FamilySpec family_quadratic_at(cplx center, double rU, double rV, double rW, int mesh) {
  FamilySpec spec;
  spec.k = 1;
  spec.d = 2;
  spec.m = 1;
  spec.name = "z2+c";
  FiberPoly c0, c1;
  FiberPoly::Term t_z2{{2, 0}, lp_const(1.0, 1)};
  LambdaPoly c;
  c.terms.push_back({{1}, cplx(1.0, 0.0)});
  FiberPoly::Term t_cw2{{0, 2}, c};
  c0.terms = {t_z2, t_cw2};
  c1.terms.push_back({{0, 2}, lp_const(1.0, 1)});
  spec.components = {c0, c1};
  spec.domain.center = CVec::Constant(1, center);
  spec.domain.r_U = rU;
  spec.domain.r_V = rV;
  spec.domain.r_W = rW;
  spec.domain.mesh_per_axis = mesh;
  return spec;
}

FamilySpec family_product_squares() {
  FamilySpec spec;
  spec.k = 2;
  spec.d = 2;
  spec.m = 1;
  spec.name = "p2-product-squares";
  FiberPoly c0, c1, c2;
  c0.terms.push_back({{2, 0, 0}, lp_const(1.0, 1)});
  c1.terms.push_back({{0, 2, 0}, lp_const(1.0, 1)});
  c2.terms.push_back({{0, 0, 2}, lp_const(1.0, 1)});
  spec.components = {c0, c1, c2};
  spec.domain.center = CVec::Zero(1);
  spec.domain.r_U = 0.1;
  spec.domain.r_V = 0.2;
  spec.domain.r_W = 0.4;
  spec.domain.mesh_per_axis = 3;
  return spec;
}

} // namespace pkdyn
