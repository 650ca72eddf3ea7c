#include "pkdyn/family.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pkdyn/roots.hpp"

namespace pkdyn {

namespace {
cplx ipow(cplx base, int e) {
  cplx r = 1.0;
  while (e-- > 0) r *= base;
  return r;
}
} // namespace

cplx LambdaPoly::eval(const CVec& lambda) const {
  cplx s = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coeff;
    for (std::size_t i = 0; i < t.expo.size(); ++i)
      if (t.expo[i]) v *= ipow(lambda[static_cast<Eigen::Index>(i)], t.expo[i]);
    s += v;
  }
  return s;
}

bool LambdaPoly::constant() const {
  for (const auto& t : terms)
    for (int e : t.expo)
      if (e != 0 && std::abs(t.coeff) != 0.0) return false;
  return true;
}

LambdaPoly lp_const(cplx value, int m) {
  LambdaPoly p;
  p.terms.push_back({std::vector<int>(m, 0), value});
  return p;
}

static LambdaPoly lp_merge(std::map<std::vector<int>, cplx>& acc) {
  LambdaPoly out;
  for (auto& [e, c] : acc)
    if (std::abs(c) != 0.0) out.terms.push_back({e, c});
  if (out.terms.empty() && !acc.empty())
    out.terms.push_back({acc.begin()->first, cplx(0.0, 0.0)});
  return out;
}

LambdaPoly lp_add(const LambdaPoly& a, const LambdaPoly& b) {
  std::map<std::vector<int>, cplx> acc;
  for (const auto& t : a.terms) acc[t.expo] += t.coeff;
  for (const auto& t : b.terms) acc[t.expo] += t.coeff;
  return lp_merge(acc);
}

LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b) {
  std::map<std::vector<int>, cplx> acc;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      std::vector<int> e = ta.expo;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += tb.expo[i];
      acc[e] += ta.coeff * tb.coeff;
    }
  return lp_merge(acc);
}

LambdaPoly lp_scale(const LambdaPoly& a, cplx s) {
  LambdaPoly out = a;
  for (auto& t : out.terms) t.coeff *= s;
  return out;
}

int FiberPoly::degree() const {
  int d = 0;
  for (const auto& t : terms) {
    int s = 0;
    for (int e : t.expo) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool DomainSpec::in_U0(const CVec& lambda) const {
  for (Eigen::Index i = 0; i < center.size(); ++i)
    if (std::abs(lambda[i] - center[i]) > r_U + 1e-12) return false;
  return true;
}
bool DomainSpec::in_V0(const CVec& lambda) const {
  for (Eigen::Index i = 0; i < center.size(); ++i)
    if (std::abs(lambda[i] - center[i]) > r_V + 1e-12) return false;
  return true;
}
bool DomainSpec::in_W0(const CVec& lambda) const {
  for (Eigen::Index i = 0; i < center.size(); ++i)
    if (std::abs(lambda[i] - center[i]) > r_W + 1e-12) return false;
  return true;
}

std::vector<int> MeshGrid::unrank(std::size_t idx) const {
  std::vector<int> c(dims_.size());
  for (std::size_t a = dims_.size(); a-- > 0;) {
    c[a] = static_cast<int>(idx % dims_[a]);
    idx /= dims_[a];
  }
  return c;
}

std::size_t MeshGrid::rank(const std::vector<int>& c) const {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) idx = idx * dims_[a] + c[a];
  return idx;
}

std::vector<std::size_t> MeshGrid::neighbors(std::size_t idx) const {
  std::vector<std::size_t> out;
  std::vector<int> c = unrank(idx);
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    for (int s : {-1, 1}) {
      int v = c[a] + s;
      if (v < 0 || v >= dims_[a]) continue;
      std::vector<int> cc = c;
      cc[a] = v;
      out.push_back(rank(cc));
    }
  }
  return out;
}

std::size_t MeshGrid::nearest(const CVec& lambda) const {
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double d = (nodes[i] - lambda).norm();
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

MeshGrid make_mesh(const CVec& center, double radius, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("make_mesh: per_axis >= 1 required");
  MeshGrid g;
  g.center = center;
  g.radius = radius;
  g.m = static_cast<int>(center.size());
  g.per_axis = per_axis;
  g.dims_.assign(2 * g.m, per_axis);
  std::size_t total = 1;
  for (int dim : g.dims_) total *= dim;
  g.nodes.reserve(total);
  g.inside.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<int> c = g.unrank(idx);
    CVec lam = center;
    for (int i = 0; i < g.m; ++i) {
      double re = per_axis == 1 ? 0.0 : -radius + 2.0 * radius * c[2 * i] / (per_axis - 1);
      double im = per_axis == 1 ? 0.0 : -radius + 2.0 * radius * c[2 * i + 1] / (per_axis - 1);
      lam[i] += cplx(re, im);
    }
    bool ins = true;
    for (int i = 0; i < g.m; ++i)
      if (std::abs(lam[i] - center[i]) > radius + 1e-12) ins = false;
    g.nodes.push_back(std::move(lam));
    g.inside.push_back(ins);
  }
  return g;
}

void FamilySpec::check_shape() const {
  if (k < 1 || k > 2) throw std::invalid_argument("family: only k in {1,2} supported");
  if (d < 2) throw std::invalid_argument("family: degree must be >= 2");
  if (m < 1) throw std::invalid_argument("family: parameter dimension must be >= 1");
  if (static_cast<int>(components.size()) != k + 1)
    throw std::invalid_argument("family: need k+1 components");
  if (domain.center.size() != m)
    throw std::invalid_argument("family: domain center dimension mismatch");
  if (!(domain.r_U < domain.r_V && domain.r_V < domain.r_W))
    throw std::invalid_argument("family: radii must satisfy r_U < r_V < r_W");
  for (const auto& comp : components) {
    if (comp.terms.empty()) throw std::invalid_argument("family: empty component");
    for (const auto& t : comp.terms) {
      if (static_cast<int>(t.expo.size()) != k + 1)
        throw std::invalid_argument("family: fiber exponent arity mismatch");
      for (int e : t.expo)
        if (e < 0) throw std::invalid_argument("family: negative exponent");
      for (const auto& lt : t.coeff.terms)
        if (static_cast<int>(lt.expo.size()) != m)
          throw std::invalid_argument("family: lambda exponent arity mismatch");
    }
  }
}

FiberMap::FiberMap(const FamilySpec& spec, const CVec& lambda) {
  spec.check_shape();
  k_ = spec.k;
  d_ = spec.d;
  lambda_ = lambda;
  comps_.resize(k_ + 1);
  partials_.assign(k_ + 1, std::vector<NumPoly>(k_ + 1));
  for (int i = 0; i <= k_; ++i) {
    for (const auto& t : spec.components[i].terms) {
      cplx c = t.coeff.eval(lambda);
      std::array<int, 3> e{0, 0, 0};
      for (int j = 0; j <= k_; ++j) e[j] = t.expo[j];
      if (std::abs(c) != 0.0) comps_[i].push_back({e, c});
      for (int j = 0; j <= k_; ++j) {
        if (e[j] == 0) continue;
        std::array<int, 3> ed = e;
        ed[j] -= 1;
        cplx cd = c * double(e[j]);
        if (std::abs(cd) != 0.0) partials_[i][j].push_back({ed, cd});
      }
    }
  }
}

cplx FiberMap::eval_poly(const NumPoly& p, const CVec& x) const {
  cplx s = 0.0;
  for (const auto& t : p) {
    cplx v = t.coeff;
    for (int j = 0; j <= k_; ++j) {
      int e = t.expo[j];
      cplx b = x[j];
      while (e-- > 0) v *= b;
    }
    s += v;
  }
  return s;
}

CVec FiberMap::eval_raw(const CVec& x) const {
  CVec out(k_ + 1);
  for (int i = 0; i <= k_; ++i) out[i] = eval_poly(comps_[i], x);
  return out;
}

CMat FiberMap::hom_jacobian(const CVec& x) const {
  CMat j(k_ + 1, k_ + 1);
  for (int i = 0; i <= k_; ++i)
    for (int c = 0; c <= k_; ++c) j(i, c) = eval_poly(partials_[i][c], x);
  return j;
}

std::vector<cplx> FiberMap::binary_coeffs(int i) const {
  if (k_ != 1) throw std::logic_error("binary_coeffs: k must be 1");
  std::vector<cplx> a(d_ + 1, cplx(0.0, 0.0));
  for (const auto& t : comps_[i]) a[t.expo[0]] += t.coeff;
  return a;
}

ProjPoint evaluate(const FiberMap& f, const ProjPoint& p) {
  ProjPoint pn = normalize(p);
  CVec b = f.eval_raw(pn.coords);
  double bn = b.norm();
  if (!(bn > 1e-11))
    throw std::runtime_error("evaluate: image lift collapsed (parameter outside the endomorphism locus?)");
  return normalize(ProjPoint(std::move(b)));
}

ProjPoint evaluate(const FamilySpec& spec, const CVec& lambda, const ProjPoint& p) {
  return evaluate(FiberMap(spec, lambda), p);
}

JacobianSample jacobian_chart(const FiberMap& f, const ProjPoint& p) {
  const int k = f.k();
  JacobianSample out;
  out.point = normalize(p);
  out.lambda = f.lambda();

  Chart cp(out.point);
  CVec a0 = cp.lift_origin();
  CMat da = cp.lift_jacobian();

  CVec b0 = f.eval_raw(a0);
  const double s = b0.norm();
  if (!(s > 1e-300)) throw std::runtime_error("jacobian_chart: image lift collapsed");
  b0 /= s;
  out.image = normalize(ProjPoint(b0));

  CMat jh = f.hom_jacobian(a0);
  CMat db = (jh * da) / s;

  Chart cq(out.image);
  CVec w = cq.apply_house(b0);
  CMat dw(k + 1, k);
  for (int j = 0; j < k; ++j) dw.col(j) = cq.apply_house(db.col(j));

  out.df.resize(k, k);
  const cplx w0 = w[0];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.df(i, j) = (dw(i + 1, j) * w0 - w[i + 1] * dw(0, j)) / (w0 * w0);

  out.det = out.df.determinant();
  Eigen::JacobiSVD<CMat> svd(out.df);
  out.delta = svd.singularValues()(k - 1);
  return out;
}

JacobianSample jacobian_chart(const FamilySpec& spec, const CVec& lambda, const ProjPoint& p) {
  return jacobian_chart(FiberMap(spec, lambda), p);
}

std::vector<ProjPoint> forward_orbit(const FiberMap& f, const ProjPoint& p, int n) {
  std::vector<ProjPoint> pts;
  pts.reserve(n + 1);
  pts.push_back(normalize(p));
  for (int j = 0; j < n; ++j) pts.push_back(evaluate(f, pts.back()));
  return pts;
}

CMat orbit_jacobian(const FiberMap& f, const std::vector<ProjPoint>& pts) {
  const int k = f.k();
  CMat acc = CMat::Identity(k, k);
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    JacobianSample js = jacobian_chart(f, pts[j]);
    acc = js.df * acc;
  }
  return acc;
}

CMat iterate_jacobian_chart(const FiberMap& f, const ProjPoint& p, int n) {
  const int k = f.k();
  ProjPoint pn = normalize(p);
  Chart cp(pn);
  CVec x = cp.lift_origin();
  CMat dx = cp.lift_jacobian(); // (k+1) x k, chain runs in homogeneous space
  for (int j = 0; j < n; ++j) {
    CMat jh = f.hom_jacobian(x);
    CVec y = f.eval_raw(x);
    const double s = y.norm();
    if (!(s > 1e-300)) throw std::runtime_error("iterate_jacobian_chart: lift collapsed");
    dx = (jh * dx) / s;
    x = y / s;
  }
  Chart cq(normalize(ProjPoint(x)));
  CVec w = cq.apply_house(x);
  CMat dw(k + 1, k);
  for (int j = 0; j < k; ++j) dw.col(j) = cq.apply_house(dx.col(j));
  CMat df(k, k);
  const cplx w0 = w[0];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      df(i, j) = (dw(i + 1, j) * w0 - w[i + 1] * dw(0, j)) / (w0 * w0);
  return df;
}

CriticalDet critical_det(const FiberMap& f, const ProjPoint& p) {
  CriticalDet out;
  out.chart_det = jacobian_chart(f, p).det;
  ProjPoint pn = normalize(p);
  out.hom_det = f.hom_jacobian(pn.coords).determinant();
  return out;
}

static FiberPoly fp_mul(const FiberPoly& a, const FiberPoly& b) {
  std::map<std::vector<int>, LambdaPoly> acc;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      std::vector<int> e = ta.expo;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += tb.expo[i];
      LambdaPoly prod = lp_mul(ta.coeff, tb.coeff);
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(std::move(e), std::move(prod));
      else
        it->second = lp_add(it->second, prod);
    }
  FiberPoly out;
  for (auto& [e, c] : acc) out.terms.push_back({e, std::move(c)});
  return out;
}

static FiberPoly fp_axpy(FiberPoly acc, const FiberPoly& x, cplx s) {
  std::map<std::vector<int>, LambdaPoly> m;
  for (auto& t : acc.terms) m.emplace(t.expo, t.coeff);
  for (const auto& t : x.terms) {
    LambdaPoly scaled = lp_scale(t.coeff, s);
    auto it = m.find(t.expo);
    if (it == m.end())
      m.emplace(t.expo, std::move(scaled));
    else
      it->second = lp_add(it->second, scaled);
  }
  FiberPoly out;
  for (auto& [e, c] : m) out.terms.push_back({e, std::move(c)});
  return out;
}

static FiberPoly fp_partial(const FiberPoly& p, int j) {
  FiberPoly out;
  for (const auto& t : p.terms) {
    if (t.expo[j] == 0) continue;
    auto e = t.expo;
    cplx mult = double(e[j]);
    e[j] -= 1;
    out.terms.push_back({e, lp_scale(t.coeff, mult)});
  }
  return out;
}

FiberPoly hom_jacobian_det(const FamilySpec& spec) {
  spec.check_shape();
  const int n = spec.k + 1;
  std::vector<std::vector<FiberPoly>> jac(n, std::vector<FiberPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac[i][j] = fp_partial(spec.components[i], j);
  if (n == 2) {
    FiberPoly det = fp_mul(jac[0][0], jac[1][1]);
    return fp_axpy(det, fp_mul(jac[0][1], jac[1][0]), cplx(-1.0, 0.0));
  }
  // 3x3 cofactor expansion
  FiberPoly det;
  int sign = 1;
  for (int c = 0; c < 3; ++c) {
    int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    if (c1 > c2) std::swap(c1, c2);
    FiberPoly minor = fp_axpy(fp_mul(jac[1][c1], jac[2][c2]),
                              fp_mul(jac[1][c2], jac[2][c1]), cplx(-1.0, 0.0));
    det = fp_axpy(det, fp_mul(jac[0][c], minor), cplx(double(sign), 0.0));
    sign = -sign;
  }
  return det;
}

std::vector<ProjPoint> critical_points_k1(const FamilySpec& spec, const CVec& lambda) {
  if (spec.k != 1) throw std::logic_error("critical_points_k1: k must be 1");
  FiberPoly det = hom_jacobian_det(spec);
  const int deg = 2 * (spec.d - 1);
  std::vector<cplx> form(deg + 1, cplx(0.0, 0.0));
  for (const auto& t : det.terms) form[t.expo[0]] += t.coeff.eval(lambda);
  return binary_form_roots(form);
}

std::vector<ProjPoint> sample_critical_set(const FamilySpec& spec, const CVec& lambda,
                                           int budget, std::uint64_t seed) {
  if (spec.k == 1) return critical_points_k1(spec, lambda);
  // k == 2: the critical curve is the zero set of the degree-3(d-1)
  // Jacobian form; sample it by random line sections.
  FiberPoly detp = hom_jacobian_det(spec);
  FiberMap f(spec, lambda);
  const int deg = 3 * (spec.d - 1);
  Rng rng(seed);
  std::vector<ProjPoint> samples;
  samples.reserve(budget);
  auto eval_det = [&](const CVec& x) {
    cplx s = 0.0;
    for (const auto& t : detp.terms) {
      cplx v = t.coeff.eval(lambda);
      for (int j = 0; j < 3; ++j) {
        int e = t.expo[j];
        while (e-- > 0) v *= x[j];
      }
      s += v;
    }
    return s;
  };
  while (static_cast<int>(samples.size()) < budget) {
    CVec a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = cplx(rng.normal(), rng.normal());
      b[i] = cplx(rng.normal(), rng.normal());
    }
    a /= a.norm();
    b /= b.norm();
    // restrict to the line a + s b: interpolate the univariate polynomial
    const int n = deg + 1;
    CMat vand(n, n);
    CVec rhs(n);
    for (int r = 0; r < n; ++r) {
      cplx s = std::polar(1.0, 2.0 * M_PI * r / n);
      cplx pw = 1.0;
      for (int c = 0; c < n; ++c) {
        vand(r, c) = pw;
        pw *= s;
      }
      rhs[r] = eval_det(a + s * b);
    }
    CVec coef = vand.partialPivLu().solve(rhs);
    std::vector<cplx> poly(coef.data(), coef.data() + n);
    double scale = 0.0;
    for (auto& c : poly) scale = std::max(scale, std::abs(c));
    if (!(scale > 1e-14)) continue; // degenerate line, retry
    for (cplx s : poly_roots(poly)) {
      if (!std::isfinite(std::abs(s)) || std::abs(s) > 1e8) continue;
      samples.push_back(normalize(ProjPoint(a + s * b)));
      if (static_cast<int>(samples.size()) >= budget) break;
    }
  }
  return samples;
}

double resultant_score(const std::vector<cplx>& p, const std::vector<cplx>& q) {
  const int n = static_cast<int>(p.size()) - 1;
  const int m = static_cast<int>(q.size()) - 1;
  if (n < 1 || m < 1) throw std::invalid_argument("resultant_score: need degrees >= 1");
  double sp = 0.0, sq = 0.0;
  for (auto& c : p) sp = std::max(sp, std::abs(c));
  for (auto& c : q) sq = std::max(sq, std::abs(c));
  if (!(sp > 0.0) || !(sq > 0.0)) return 0.0;
  CMat syl = CMat::Zero(n + m, n + m);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) syl(r, r + j) = p[n - j] / sp;
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) syl(m + r, r + j) = q[m - j] / sq;
  return std::abs(syl.partialPivLu().determinant());
}

ValidationReport validate_family(const FamilySpec& spec, int mesh_override, std::uint64_t seed) {
  ValidationReport rep;
  try {
    spec.check_shape();
  } catch (const std::exception& e) {
    rep.shape_ok = false;
    rep.issues.push_back(e.what());
    return rep;
  }
  for (int i = 0; i <= spec.k; ++i) {
    for (const auto& t : spec.components[i].terms) {
      int s = 0;
      for (int e : t.expo) s += e;
      bool coeff_nonzero = false;
      for (const auto& lt : t.coeff.terms)
        if (std::abs(lt.coeff) != 0.0) coeff_nonzero = true;
      if (s != spec.d && coeff_nonzero) {
        rep.homogeneous_ok = false;
        rep.issues.push_back("component " + std::to_string(i) +
                             ": monomial of degree " + std::to_string(s) +
                             " (expected " + std::to_string(spec.d) + ")");
      }
    }
  }
  if (!rep.homogeneous_ok) return rep;

  int per_axis = mesh_override > 0 ? mesh_override : std::min(spec.domain.mesh_per_axis, 7);
  MeshGrid mesh = make_mesh(spec.domain.center, spec.domain.r_U, per_axis);
  Rng rng(seed);
  constexpr double kDegenerate = 1e-10;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    if (!mesh.inside[i]) continue;
    FiberMap f(spec, mesh.nodes[i]);
    double score = 1.0;
    if (spec.k == 1) {
      score = resultant_score(f.binary_coeffs(0), f.binary_coeffs(1));
    } else {
      // min over random lines of the max pairwise resultant: a
      // positive-dimensional common zero set meets every line.
      score = 1e300;
      for (int line = 0; line < 4; ++line) {
        CVec a(3), b(3);
        for (int t = 0; t < 3; ++t) {
          a[t] = cplx(rng.normal(), rng.normal());
          b[t] = cplx(rng.normal(), rng.normal());
        }
        a /= a.norm();
        b /= b.norm();
        const int n = spec.d + 1;
        std::vector<std::vector<cplx>> restr(3, std::vector<cplx>(n));
        CMat vand(n, n);
        std::vector<CVec> rhs(3, CVec(n));
        for (int r = 0; r < n; ++r) {
          cplx s = std::polar(1.0, 2.0 * M_PI * r / n);
          cplx pw = 1.0;
          for (int c = 0; c < n; ++c) {
            vand(r, c) = pw;
            pw *= s;
          }
          CVec val = f.eval_raw(a + s * b);
          for (int comp = 0; comp < 3; ++comp) rhs[comp][r] = val[comp];
        }
        auto lu = vand.partialPivLu();
        for (int comp = 0; comp < 3; ++comp) {
          CVec c = lu.solve(rhs[comp]);
          for (int j = 0; j < n; ++j) restr[comp][j] = c[j];
        }
        double line_score = 0.0;
        for (int p1 = 0; p1 < 3; ++p1)
          for (int p2 = p1 + 1; p2 < 3; ++p2)
            line_score = std::max(line_score, resultant_score(restr[p1], restr[p2]));
        score = std::min(score, line_score);
      }
    }
    if (score < kDegenerate) rep.failing.push_back({mesh.nodes[i], score});
  }
  return rep;
}

} // namespace pkdyn
