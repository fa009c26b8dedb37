#include "classify.hpp"

#include <algorithm>

namespace hq {

const char* etype_name(EType t) {
  switch (t) {
    case EType::Identity: return "Identity";
    case EType::A: return "A";
    case EType::B1: return "B1";
    case EType::B2: return "B2";
    case EType::B3: return "B3";
    case EType::C: return "C";
    case EType::D: return "D";
    case EType::E: return "E";
  }
  return "?";
}

namespace {

// rank of a 3x3 matrix over the table: 3 iff det != 0, 2 iff det = 0 and some
// 2x2 minor != 0, 1 iff all minors vanish but A != 0
int rank3(const FieldTable& T, const Mat3& A) {
  if (m3::det(T, A) != 0) return 3;
  Mat3 adj = m3::adjugate(T, A);
  for (auto v : adj.a)
    if (v != 0) return 2;
  for (auto v : A.a)
    if (v != 0) return 1;
  return 0;
}

// kernel line of a rank-2 matrix: cross product of two independent rows
P3 kernel_vector(const FieldTable& T, const Mat3& A) {
  auto row = [&](int i) { return P3{{A.at(i, 0), A.at(i, 1), A.at(i, 2)}}; };
  auto cross = [&](const P3& a, const P3& b) {
    return P3{{T.sub(T.mul(a.v[1], b.v[2]), T.mul(a.v[2], b.v[1])),
               T.sub(T.mul(a.v[2], b.v[0]), T.mul(a.v[0], b.v[2])),
               T.sub(T.mul(a.v[0], b.v[1]), T.mul(a.v[1], b.v[0]))}};
  };
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& pr : pairs) {
    P3 v = cross(row(pr[0]), row(pr[1]));
    if (v.v[0] || v.v[1] || v.v[2]) return m3::canonical_point(T, v);
  }
  throw Error(Errc::internal, "kernel_vector: matrix has rank < 2");
}

// kernel plane of a rank-1 matrix: two independent solutions of r.v = 0
std::array<P3, 2> kernel_plane(const FieldTable& T, const Mat3& A) {
  std::array<fcode, 3> r{};
  for (int i = 0; i < 3 && !(r[0] || r[1] || r[2]); ++i)
    r = {A.at(i, 0), A.at(i, 1), A.at(i, 2)};
  if (!(r[0] || r[1] || r[2])) throw Error(Errc::internal, "kernel_plane: zero matrix");
  if (r[0] != 0) {
    fcode ic = T.inv(r[0]);
    return {P3{{T.neg(T.mul(r[1], ic)), T.one(), 0}},
            P3{{T.neg(T.mul(r[2], ic)), 0, T.one()}}};
  }
  if (r[1] != 0) {
    fcode ic = T.inv(r[1]);
    return {P3{{T.one(), T.neg(T.mul(r[0], ic)), 0}},
            P3{{0, T.neg(T.mul(r[2], ic)), T.one()}}};
  }
  return {P3{{T.one(), 0, 0}}, P3{{0, T.one(), 0}}};
}

std::uint64_t pack_poly(const std::array<fcode, 4>& p) {
  return (std::uint64_t)p[0] | ((std::uint64_t)p[1] << 21) | ((std::uint64_t)p[2] << 42);
}

}  // namespace

std::array<fcode, 4> Classifier::char_poly(const Mat3& g) const {
  const FieldTable& T = ctx_->F();
  fcode tr = T.add(T.add(g.at(0, 0), g.at(1, 1)), g.at(2, 2));
  auto minor = [&](int i, int j, int k, int l) {
    return T.sub(T.mul(g.at(i, i), g.at(j, j)), T.mul(g.at(k, l), g.at(l, k)));
  };
  // principal 2x2 minors
  fcode s = 0;
  s = T.add(s, T.sub(T.mul(g.at(0, 0), g.at(1, 1)), T.mul(g.at(0, 1), g.at(1, 0))));
  s = T.add(s, T.sub(T.mul(g.at(0, 0), g.at(2, 2)), T.mul(g.at(0, 2), g.at(2, 0))));
  s = T.add(s, T.sub(T.mul(g.at(1, 1), g.at(2, 2)), T.mul(g.at(1, 2), g.at(2, 1))));
  (void)minor;
  fcode d = m3::det(T, g);
  return {T.neg(d), s, T.neg(tr), T.one()};
}

std::vector<fcode> Classifier::eigenvalues_q6(const std::array<fcode, 4>& poly) const {
  std::uint64_t key = pack_poly(poly);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = root_cache_.find(key);
    if (it != root_cache_.end()) return it->second;
  }
  std::vector<fcode> coeffs(poly.begin(), poly.end());
  std::vector<fcode> roots = ctx_->tw().roots_in_level(coeffs, Level::Q6);
  {
    std::lock_guard<std::mutex> lk(mu_);
    root_cache_.emplace(key, roots);
  }
  return roots;
}

i64 Classifier::axis_curve_count(const P3& u, const P3& v) const {
  const FieldTable& T6 = ctx_->tw().q6();
  // memo key: the line through u and v, identified by its dual functional
  auto cross = [&](const P3& a, const P3& b) {
    return P3{{T6.sub(T6.mul(a.v[1], b.v[2]), T6.mul(a.v[2], b.v[1])),
               T6.sub(T6.mul(a.v[2], b.v[0]), T6.mul(a.v[0], b.v[2])),
               T6.sub(T6.mul(a.v[0], b.v[1]), T6.mul(a.v[1], b.v[0]))}};
  };
  P3 dual = m3::canonical_point(T6, cross(u, v));
  std::uint64_t key = (std::uint64_t)dual.v[0] | ((std::uint64_t)dual.v[1] << 21) |
                      ((std::uint64_t)dual.v[2] << 42);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = axis_cache_.find(key);
    if (it != axis_cache_.end()) return it->second;
  }
  const Mat3& H = ctx_->model().form;
  i64 cnt = 0;
  if (on_curve(ctx_->tw(), H, v, Level::Q6)) ++cnt;
  for (i64 t = 0; t < T6.size; ++t) {
    P3 pt{{T6.add(u.v[0], T6.mul((fcode)t, v.v[0])),
           T6.add(u.v[1], T6.mul((fcode)t, v.v[1])),
           T6.add(u.v[2], T6.mul((fcode)t, v.v[2]))}};
    if (on_curve(ctx_->tw(), H, pt, Level::Q6)) ++cnt;
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    axis_cache_.emplace(key, cnt);
  }
  return cnt;
}

ElementReport Classifier::classify(const Mat3& g_in) const {
  const GroupCtx& G = *ctx_;
  const FieldTower& tw = G.tw();
  const FieldTable& T2 = tw.q2();
  const FieldTable& T6 = tw.q6();
  const i64 q = tw.params.q;
  const i64 p = tw.params.p;

  Mat3 g = G.canon(g_in);
  G.require_unitary(g, "classify");

  ElementReport rep;
  if (g == m3::identity(T2)) return rep;

  rep.order = G.element_order(g);
  auto poly = char_poly(g);
  auto roots = eigenvalues_q6(poly);
  if (roots.size() != 3)
    throw Error(Errc::internal, "classify: eigenvalues not all rational over F_{q^6}");

  const bool wild = rep.order % p == 0;
  auto make_fp = [&](const P3& pt) {
    FixedPointInfo f;
    f.coords = m3::canonical_point(T6, pt);
    f.on_curve = on_curve(tw, G.model().form, f.coords, Level::Q6);
    f.rational_q2 = true;
    for (fcode c : f.coords.v)
      if (!T6.in_subfield(c, T2.size)) f.rational_q2 = false;
    return f;
  };
  auto shifted = [&](fcode lambda) {
    Mat3 A = g;
    for (int i = 0; i < 3; ++i) A.at(i, i) = T6.sub(A.at(i, i), lambda);
    return A;
  };

  if (roots[0] != roots[1] && roots[1] != roots[2] && roots[0] != roots[2]) {
    // three isolated fixed points
    if (wild) throw Error(Errc::internal, "classify: wild element with simple spectrum");
    for (fcode lam : roots) rep.fixed_points.push_back(make_fp(kernel_vector(T6, shifted(lam))));
    int on = 0, rat = 0;
    for (auto& f : rep.fixed_points) {
      on += f.on_curve;
      rat += f.rational_q2;
    }
    if (on == 0 && rat == 3) {
      rep.type = EType::B1;
      if ((q + 1) % rep.order != 0) throw Error(Errc::internal, "B1 order inconsistency");
      rep.i_sigma = 0;
    } else if (on == 2 && rat == 3) {
      rep.type = EType::B2;
      if ((q * q - 1) % rep.order != 0 || (q + 1) % rep.order == 0)
        throw Error(Errc::internal, "B2 order inconsistency");
      rep.i_sigma = 2;
    } else if (on == 3 && rat == 0) {
      rep.type = EType::B3;
      if ((q * q - q + 1) % rep.order != 0) throw Error(Errc::internal, "B3 order inconsistency");
      rep.i_sigma = 3;
    } else {
      throw Error(Errc::internal, "classify: unexpected triangle profile");
    }
    return rep;
  }

  // repeated eigenvalue
  fcode lam, mu = 0;
  bool triple = false;
  if (roots[0] == roots[1] && roots[1] == roots[2]) {
    lam = roots[0];
    triple = true;
  } else if (roots[0] == roots[1]) {
    lam = roots[0];
    mu = roots[2];
  } else if (roots[1] == roots[2]) {
    lam = roots[1];
    mu = roots[0];
  } else {
    lam = roots[0];  // roots[0] == roots[2]
    mu = roots[1];
  }

  Mat3 Alam = shifted(lam);
  int rk = rank3(T6, Alam);

  if (!wild) {
    // tame homology
    if (triple || rk != 1) throw Error(Errc::internal, "classify: tame non-semisimple element");
    rep.fixes_line = true;
    rep.axis = kernel_plane(T6, Alam);
    P3 center = kernel_vector(T6, shifted(mu));
    FixedPointInfo cf = make_fp(center);
    if (cf.on_curve) throw Error(Errc::internal, "classify: tame homology with center on curve");
    rep.fixed_points.push_back(cf);
    rep.type = EType::A;
    if ((q + 1) % rep.order != 0) throw Error(Errc::internal, "A order inconsistency");
    rep.i_sigma = q + 1;
    rep.jordan = {1, 1, 1};
    return rep;
  }

  if (rep.order == p) {
    if (!triple) throw Error(Errc::internal, "classify: order-p element with two eigenvalues");
    if (rk == 1) {
      // elation: axis fixed pointwise, center on the axis
      rep.type = EType::C;
      rep.fixes_line = true;
      rep.axis = kernel_plane(T6, Alam);
      // center spans the image of (g - lam I): first nonzero column
      P3 center{};
      for (int jc = 0; jc < 3; ++jc) {
        P3 col{{Alam.at(0, jc), Alam.at(1, jc), Alam.at(2, jc)}};
        if (col.v[0] || col.v[1] || col.v[2]) {
          center = col;
          break;
        }
      }
      FixedPointInfo cf = make_fp(center);
      if (!cf.on_curve) throw Error(Errc::internal, "classify: elation center off curve");
      rep.fixed_points.push_back(cf);
      rep.i_sigma = q + 2;
      rep.jordan = {2, 1, 0};
    } else if (rk == 2) {
      rep.type = EType::D;
      FixedPointInfo f = make_fp(kernel_vector(T6, Alam));
      if (!f.on_curve) throw Error(Errc::internal, "classify: type D fixed point off curve");
      rep.fixed_points.push_back(f);
      rep.i_sigma = 2;
      rep.jordan = {3, 0, 0};
    } else {
      throw Error(Errc::internal, "classify: degenerate order-p element");
    }
    return rep;
  }

  // wild with order p*d, d > 1
  {
    i64 d = rep.order;
    while (d % p == 0) d /= p;
    if (d * p != rep.order || d <= 1 || (q + 1) % d != 0)
      throw Error(Errc::internal, "classify: wild order is not p*d with d | q+1");
    if (triple) throw Error(Errc::internal, "classify: type E with a single eigenvalue");
    rep.type = EType::E;
    // two fixed points: the kernel of (g - mu) and of (g - lam)
    FixedPointInfo f1 = make_fp(kernel_vector(T6, shifted(mu)));
    if (rank3(T6, Alam) != 2)
      throw Error(Errc::internal, "classify: type E eigenspace dimension");
    FixedPointInfo f2 = make_fp(kernel_vector(T6, Alam));
    rep.fixed_points.push_back(f1);
    rep.fixed_points.push_back(f2);
    if (f1.on_curve == f2.on_curve)
      throw Error(Errc::internal, "classify: type E fixed points both on/off curve");
    rep.i_sigma = 1;
    rep.jordan = {2, 1, 0};
  }
  return rep;
}

i64 Classifier::tame_oracle(const Mat3& g_in) const {
  const GroupCtx& G = *ctx_;
  const FieldTable& T2 = G.F();
  const FieldTable& T6 = G.tw().q6();
  const i64 p = G.tw().params.p;

  Mat3 g = G.canon(g_in);
  if (g == m3::identity(T2))
    throw Error(Errc::invalid_argument, "tame_oracle: identity has no defined count");
  i64 ord = G.element_order(g);
  if (ord % p == 0) throw Error(Errc::invalid_argument, "tame_oracle: wild element");

  auto poly = char_poly(g);
  auto roots = eigenvalues_q6(poly);
  std::vector<fcode> distinct = roots;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  i64 total = 0;
  for (fcode lam : distinct) {
    Mat3 A = g;
    for (int i = 0; i < 3; ++i) A.at(i, i) = T6.sub(A.at(i, i), lam);
    int rk = rank3(T6, A);
    if (rk == 2) {
      P3 v = kernel_vector(T6, A);
      if (on_curve(G.tw(), G.model().form, v, Level::Q6)) ++total;
    } else if (rk == 1) {
      auto span = kernel_plane(T6, A);
      total += axis_curve_count(span[0], span[1]);
    } else {
      throw Error(Errc::internal, "tame_oracle: unexpected eigenspace rank");
    }
  }
  return total;
}

Census Classifier::census(const std::vector<Mat3>& G) const {
  Census c;
  const FieldTable& T2 = ctx_->F();
  Mat3 id = m3::identity(T2);
  for (const Mat3& g : G) {
    Mat3 cg = ctx_->canon(g);
    if (cg == id) continue;
    c[classify(cg).type] += 1;
  }
  return c;
}

}  // namespace hq
