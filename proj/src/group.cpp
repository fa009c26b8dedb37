#include "group.hpp"

#include <algorithm>
#include <queue>

namespace hq {

i64 expected_pgu_order(i64 q) { return (q * q * q + 1) * q * q * q * (q * q - 1); }
i64 expected_mq_order(i64 q) { return q * (q - 1) * (q + 1) * (q + 1); }

std::shared_ptr<GroupCtx> make_group_ctx(i64 p, int n, bool strict, ModelId model) {
  auto params = make_params(p, n, strict);
  std::shared_ptr<const FieldTower> tw = build_tower(params);
  return std::make_shared<GroupCtx>(tw, model);
}

GroupCtx::GroupCtx(std::shared_ptr<const FieldTower> tower, ModelId model)
    : tower_(std::move(tower)) {
  m1_ = make_model(*tower_, ModelId::M1);
  m2_ = make_model(*tower_, ModelId::M2);
  model_ = (model == ModelId::M1) ? m1_ : m2_;
  build_standard_copies();
  build_conversion();
}

void GroupCtx::require_unitary(const Mat3& A, const char* what) const {
  if (!unitary(A))
    throw Error(Errc::not_unitary, std::string(what) + ": matrix does not preserve the form");
}

i64 GroupCtx::element_order(const Mat3& A) const {
  const FieldTable& Fq2 = F();
  Mat3 id = m3::identity(Fq2);
  Mat3 a = canon(A);
  Mat3 cur = a;
  i64 q = tower_->params.q;
  i64 cap = q * q + q + 2;
  for (i64 k = 1; k <= cap; ++k) {
    if (cur == id) return k;
    cur = canon(mul(cur, a));
  }
  throw Error(Errc::internal, "element order exceeds group exponent bound");
}

void GroupCtx::build_standard_copies() {
  const FieldTable& Fq2 = F();
  i64 q = tower_->params.q;
  auto zetas = Fq2.kth_roots(Fq2.one(), q + 1);
  mq_.reserve((size_t)expected_mq_order(q));
  for (i64 ac = 0; ac < Fq2.size; ++ac) {
    fcode a = (fcode)ac;
    fcode na = tower_->norm_q2(a);
    fcode target = Fq2.sub(na, Fq2.one());  // c^{q+1} = a^{q+1} - 1
    std::vector<fcode> cs;
    if (target == 0)
      cs.push_back(0);
    else
      cs = Fq2.kth_roots(target, q + 1);
    for (fcode c : cs) {
      for (fcode z : zetas) {
        Mat3 m;
        m.at(0, 0) = a;
        m.at(0, 1) = Fq2.mul(z, tower_->conj_q2(c));
        m.at(1, 0) = c;
        m.at(1, 1) = Fq2.mul(z, tower_->conj_q2(a));
        m.at(2, 2) = Fq2.one();
        Mat3 cm = m3::canonical(Fq2, m);
        mq_.push_back(cm);
        MatKey k = mat_key(cm);
        mq_set_.insert(k);
        if (z == Fq2.one()) h_set_.insert(k);
        if (z == Fq2.one() || z == Fq2.neg(Fq2.one())) supm_set_.insert(k);
      }
    }
  }
  if ((i64)mq_set_.size() != expected_mq_order(q))
    throw Error(Errc::internal, "M_q enumeration size mismatch");
  std::sort(mq_.begin(), mq_.end(),
            [](const Mat3& x, const Mat3& y) { return mat_key(x) < mat_key(y); });
  mq_.erase(std::unique(mq_.begin(), mq_.end()), mq_.end());

  for (fcode a : Fq2.kth_roots(Fq2.one(), q + 1)) {
    Mat3 m;
    m.at(0, 0) = a;
    m.at(1, 1) = a;
    m.at(2, 2) = Fq2.one();
    MatKey k = mat_key(m3::canonical(Fq2, m));
    z_set_.insert(k);
  }
  for (fcode a : Fq2.kth_roots(Fq2.one(), (q + 1) / 2)) {
    Mat3 m;
    m.at(0, 0) = a;
    m.at(1, 1) = a;
    m.at(2, 2) = Fq2.one();
    omega_set_.insert(mat_key(m3::canonical(Fq2, m)));
  }

  // Off-curve points of PG(2,q^2) in the M1 frame, canonical order.
  for (i64 y = 0; y < Fq2.size; ++y)
    for (i64 z = 0; z < Fq2.size; ++z) {
      P3 pt{{Fq2.one(), (fcode)y, (fcode)z}};
      if (herm_value(*tower_, m1_.form, pt, Level::Q2) != 0) offcurve_.push_back(pt);
    }
  for (i64 z = 0; z < Fq2.size; ++z) {
    P3 pt{{0, Fq2.one(), (fcode)z}};
    if (herm_value(*tower_, m1_.form, pt, Level::Q2) != 0) offcurve_.push_back(pt);
  }
  {
    P3 pt{{0, 0, Fq2.one()}};
    if (herm_value(*tower_, m1_.form, pt, Level::Q2) != 0) offcurve_.push_back(pt);
  }
  std::sort(offcurve_.begin(), offcurve_.end());
  i64 expected_off = q * q * (q * q - q + 1);
  if ((i64)offcurve_.size() != expected_off)
    throw Error(Errc::internal, "off-curve point count mismatch");
}

std::vector<P3> GroupCtx::curve_points(Level lv) const {
  const FieldTable& Fq2 = F();
  i64 q = tower_->params.q;
  std::vector<P3> out;
  if (lv == Level::Q2) {
    for (i64 y = 0; y < Fq2.size; ++y)
      for (i64 z = 0; z < Fq2.size; ++z) {
        P3 pt{{Fq2.one(), (fcode)y, (fcode)z}};
        if (on_curve(*tower_, model_.form, pt, Level::Q2)) out.push_back(pt);
      }
    for (i64 z = 0; z < Fq2.size; ++z) {
      P3 pt{{0, Fq2.one(), (fcode)z}};
      if (on_curve(*tower_, model_.form, pt, Level::Q2)) out.push_back(pt);
    }
    P3 pt{{0, 0, Fq2.one()}};
    if (on_curve(*tower_, model_.form, pt, Level::Q2)) out.push_back(pt);
    std::sort(out.begin(), out.end());
    return out;
  }
  if (lv != Level::Q6) throw Error(Errc::invalid_argument, "curve_points: level must be q2 or q6");

  // Model M1 over F_{q^6}: x^{q+1} = 1 + y^{q+1} (z = 1) plus x^{q+1} = 1 at
  // z = 0; solutions of x^{q+1} = t read off the discrete logs.
  const FieldTable& F6 = tower_->q6();
  i64 m = F6.mod / (q + 1);
  auto push_norm_fiber = [&](fcode t, fcode y, fcode z, std::vector<P3>& dst) {
    if (t == 0) {
      dst.push_back(m3::canonical_point(F6, P3{{0, y, z}}));
      return;
    }
    i64 lt = F6.log(t);
    if (lt % (q + 1) != 0) return;
    i64 base = lt / (q + 1);
    for (i64 j = 0; j <= q; ++j)
      dst.push_back(m3::canonical_point(F6, P3{{F6.exp(base + j * m), y, z}}));
  };
  std::vector<P3> m1pts;
  for (i64 y = 0; y < F6.size; ++y) {
    fcode t = F6.add(F6.one(), F6.pow((fcode)y, q + 1));
    push_norm_fiber(t, (fcode)y, F6.one(), m1pts);
  }
  push_norm_fiber(F6.one(), F6.one(), 0, m1pts);
  if (model_.id == ModelId::M1) {
    out = std::move(m1pts);
  } else {
    out.reserve(m1pts.size());
    for (const P3& v : m1pts)
      out.push_back(m3::canonical_point(F6, m3::apply(F6, conv_, v)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Mat3> GroupCtx::closure(const std::vector<Mat3>& gens, i64 cap) const {
  return closure_m(gens, cap, model_.id);
}

std::vector<Mat3> GroupCtx::closure_m(const std::vector<Mat3>& gens, i64 cap,
                                      ModelId m) const {
  const FieldTable& Fq2 = F();
  std::vector<Mat3> cgens;
  for (const Mat3& g : gens) {
    if (!unitary_m(g, m))
      throw Error(Errc::not_unitary, "closure: generator does not preserve the form");
    cgens.push_back(canon(g));
  }
  MatSet seen;
  std::vector<Mat3> elems;
  std::queue<Mat3> todo;
  Mat3 id = m3::identity(Fq2);
  seen.insert(mat_key(id));
  elems.push_back(id);
  todo.push(id);
  while (!todo.empty()) {
    Mat3 cur = todo.front();
    todo.pop();
    for (const Mat3& g : cgens) {
      Mat3 nxt = canon(mul(cur, g));
      if (seen.insert(mat_key(nxt)).second) {
        if ((i64)seen.size() > cap)
          throw Error(Errc::cap_exceeded, "closure exceeded cap " + std::to_string(cap));
        elems.push_back(nxt);
        todo.push(nxt);
      }
    }
  }
  std::sort(elems.begin(), elems.end(),
            [](const Mat3& x, const Mat3& y) { return mat_key(x) < mat_key(y); });
  return elems;
}

SubgroupDecomposition GroupCtx::decompose_in_mq(const std::vector<Mat3>& G) const {
  SubgroupDecomposition d;
  for (const Mat3& g : G) {
    MatKey k = mat_key(canon(g));
    if (!mq_set_.count(k))
      throw Error(Errc::invalid_argument,
                  "decompose_in_mq: element outside the standard M_q copy");
    ++d.size;
    if (h_set_.count(k)) ++d.size_h;
    if (supm_set_.count(k)) ++d.size_pm;
    if (omega_set_.count(k)) ++d.omega;
  }
  i64 half = (tower_->params.q + 1) / 2;
  if (d.omega == 0 || half % d.omega != 0)
    throw Error(Errc::internal, "omega does not divide (q+1)/2");
  return d;
}

Mat3 GroupCtx::frame_to_point(const P3& target) const {
  const FieldTable& Fq2 = F();
  i64 q = tower_->params.q;
  P3 Q = m3::canonical_point(Fq2, target);
  P3 p0{{0, 0, Fq2.one()}};
  if (Q == p0) return m3::identity(Fq2);
  fcode nQ = herm_value(*tower_, m1_.form, Q, Level::Q2);
  if (nQ == 0) throw Error(Errc::invalid_argument, "frame_to_point: point lies on the curve");
  fcode lambda = Fq2.neg(nQ);

  // coefficients of v -> <Q, v>
  std::array<fcode, 3> c{};
  for (int j = 0; j < 3; ++j) {
    fcode s = 0;
    for (int i = 0; i < 3; ++i)
      s = Fq2.add(s, Fq2.mul(tower_->conj_q2(Q.v[(size_t)i]), m1_.form.at(i, j)));
    c[(size_t)j] = s;
  }
  P3 b1, b2;
  if (c[0] != 0) {
    fcode ic = Fq2.inv(c[0]);
    b1 = P3{{Fq2.neg(Fq2.mul(c[1], ic)), Fq2.one(), 0}};
    b2 = P3{{Fq2.neg(Fq2.mul(c[2], ic)), 0, Fq2.one()}};
  } else if (c[1] != 0) {
    fcode ic = Fq2.inv(c[1]);
    b1 = P3{{Fq2.one(), Fq2.neg(Fq2.mul(c[0], ic)), 0}};
    b2 = P3{{0, Fq2.neg(Fq2.mul(c[2], ic)), Fq2.one()}};
  } else {
    b1 = P3{{Fq2.one(), 0, 0}};
    b2 = P3{{0, Fq2.one(), 0}};
  }

  auto norm_of = [&](const P3& v) { return herm_value(*tower_, m1_.form, v, Level::Q2); };
  auto scaled_to = [&](const P3& v, fcode targetNorm) -> P3 {
    fcode nv = norm_of(v);
    fcode ratio = Fq2.mul(targetNorm, Fq2.inv(nv));
    auto roots = Fq2.kth_roots(ratio, q + 1);
    if (roots.empty()) throw Error(Errc::internal, "frame_to_point: norm equation unsolvable");
    P3 r;
    for (int i = 0; i < 3; ++i) r.v[(size_t)i] = Fq2.mul(v.v[(size_t)i], roots[0]);
    return r;
  };

  P3 u{};
  bool found = false;
  if (norm_of(b1) != 0) {
    u = b1;
    found = true;
  } else if (norm_of(b2) != 0) {
    u = b2;
    found = true;
  } else {
    for (i64 t = 1; t < Fq2.size && !found; ++t) {
      P3 cand;
      for (int i = 0; i < 3; ++i)
        cand.v[(size_t)i] = Fq2.add(b1.v[(size_t)i], Fq2.mul((fcode)t, b2.v[(size_t)i]));
      if (norm_of(cand) != 0) {
        u = cand;
        found = true;
      }
    }
  }
  if (!found) throw Error(Errc::internal, "frame_to_point: no anisotropic vector in perp");
  P3 c1 = scaled_to(u, lambda);

  // third vector: orthogonal to both Q and c1 (cross product of the two
  // Hermitian functionals)
  std::array<fcode, 3> r1{}, r2{};
  for (int j = 0; j < 3; ++j) {
    fcode s1 = 0, s2 = 0;
    for (int i = 0; i < 3; ++i) {
      s1 = Fq2.add(s1, Fq2.mul(tower_->conj_q2(Q.v[(size_t)i]), m1_.form.at(i, j)));
      s2 = Fq2.add(s2, Fq2.mul(tower_->conj_q2(c1.v[(size_t)i]), m1_.form.at(i, j)));
    }
    r1[(size_t)j] = s1;
    r2[(size_t)j] = s2;
  }
  P3 w{{Fq2.sub(Fq2.mul(r1[1], r2[2]), Fq2.mul(r1[2], r2[1])),
        Fq2.sub(Fq2.mul(r1[2], r2[0]), Fq2.mul(r1[0], r2[2])),
        Fq2.sub(Fq2.mul(r1[0], r2[1]), Fq2.mul(r1[1], r2[0]))}};
  P3 c2 = scaled_to(w, nQ);  // <c2,c2> = -lambda = nQ

  Mat3 T;
  for (int i = 0; i < 3; ++i) {
    T.at(i, 0) = c1.v[(size_t)i];
    T.at(i, 1) = c2.v[(size_t)i];
    T.at(i, 2) = Q.v[(size_t)i];
  }
  if (!is_unitary(*tower_, m1_, T))
    throw Error(Errc::internal, "frame_to_point: constructed frame is not unitary");
  return T;
}

void GroupCtx::for_each_element(const std::function<bool(const Mat3&)>& fn) const {
  for (const P3& Q : offcurve_) {
    Mat3 T = frame_to_point(Q);
    for (const Mat3& m : mq_) {
      Mat3 g = canon(mul(T, m));
      if (!fn(g)) return;
    }
  }
}

std::vector<Mat3> GroupCtx::enumerate_group(i64 q_cap) const {
  i64 q = tower_->params.q;
  if (q > q_cap)
    throw Error(Errc::cap_exceeded,
                "enumerate_group: q = " + std::to_string(q) + " exceeds cap " +
                    std::to_string(q_cap));
  std::vector<Mat3> out;
  out.reserve((size_t)expected_pgu_order(q));
  for_each_element([&](const Mat3& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

P3 GroupCtx::common_fixed_offcurve_point(const std::vector<Mat3>& gens) const {
  const FieldTable& Fq2 = F();
  for (const P3& P : offcurve_) {
    bool ok = true;
    for (const Mat3& g : gens) {
      if (!m3::proportional(Fq2, m3::apply(Fq2, g, P), P)) {
        ok = false;
        break;
      }
    }
    if (ok) return P;
  }
  throw Error(Errc::invalid_argument, "no common off-curve fixed point");
}

std::vector<Mat3> GroupCtx::conjugate_into_standard(const std::vector<Mat3>& G) const {
  const FieldTable& Fq2 = F();
  P3 p0{{0, 0, Fq2.one()}};
  P3 fix = common_fixed_offcurve_point(G);
  std::vector<Mat3> out;
  out.reserve(G.size());
  if (fix == p0) {
    for (const Mat3& g : G) out.push_back(canon(g));
  } else {
    Mat3 T = frame_to_point(fix);
    Mat3 Ti = inv(T);
    for (const Mat3& g : G) out.push_back(canon(mul(mul(Ti, g), T)));
  }
  std::sort(out.begin(), out.end(),
            [](const Mat3& x, const Mat3& y) { return mat_key(x) < mat_key(y); });
  return out;
}

void GroupCtx::build_conversion() {
  const FieldTable& Fq2 = F();
  i64 q = tower_->params.q;
  auto h2val = [&](const P3& v) { return herm_value(*tower_, m2_.form, v, Level::Q2); };
  // f1 with <f1,f1>_{H2} = 1: (1,0,t) has value t + t^q
  P3 f1{};
  bool got = false;
  for (i64 t = 0; t < Fq2.size && !got; ++t) {
    P3 cand{{Fq2.one(), 0, (fcode)t}};
    if (h2val(cand) == Fq2.one()) {
      f1 = cand;
      got = true;
    }
  }
  if (!got) throw Error(Errc::internal, "model conversion: no norm-1 vector");

  auto functional = [&](const P3& v, std::array<fcode, 3>& row) {
    for (int j = 0; j < 3; ++j) {
      fcode s = 0;
      for (int i = 0; i < 3; ++i)
        s = Fq2.add(s, Fq2.mul(tower_->conj_q2(v.v[(size_t)i]), m2_.form.at(i, j)));
      row[(size_t)j] = s;
    }
  };
  std::array<fcode, 3> r1{};
  functional(f1, r1);
  P3 b1, b2;
  if (r1[0] != 0) {
    fcode ic = Fq2.inv(r1[0]);
    b1 = P3{{Fq2.neg(Fq2.mul(r1[1], ic)), Fq2.one(), 0}};
    b2 = P3{{Fq2.neg(Fq2.mul(r1[2], ic)), 0, Fq2.one()}};
  } else if (r1[1] != 0) {
    fcode ic = Fq2.inv(r1[1]);
    b1 = P3{{Fq2.one(), Fq2.neg(Fq2.mul(r1[0], ic)), 0}};
    b2 = P3{{0, Fq2.neg(Fq2.mul(r1[2], ic)), Fq2.one()}};
  } else {
    b1 = P3{{Fq2.one(), 0, 0}};
    b2 = P3{{0, Fq2.one(), 0}};
  }
  fcode mone = Fq2.neg(Fq2.one());
  auto rescale = [&](const P3& v, fcode target) -> P3 {
    fcode nv = h2val(v);
    auto roots = Fq2.kth_roots(Fq2.mul(target, Fq2.inv(nv)), q + 1);
    if (roots.empty()) throw Error(Errc::internal, "model conversion: norm unsolvable");
    P3 r;
    for (int i = 0; i < 3; ++i) r.v[(size_t)i] = Fq2.mul(v.v[(size_t)i], roots[0]);
    return r;
  };
  P3 f2{};
  got = false;
  if (h2val(b1) != 0) {
    f2 = rescale(b1, mone);
    got = true;
  } else if (h2val(b2) != 0) {
    f2 = rescale(b2, mone);
    got = true;
  } else {
    for (i64 t = 1; t < Fq2.size && !got; ++t) {
      P3 cand;
      for (int i = 0; i < 3; ++i)
        cand.v[(size_t)i] = Fq2.add(b1.v[(size_t)i], Fq2.mul((fcode)t, b2.v[(size_t)i]));
      if (h2val(cand) != 0) {
        f2 = rescale(cand, mone);
        got = true;
      }
    }
    if (!got) throw Error(Errc::internal, "model conversion: no second basis vector");
  }
  std::array<fcode, 3> r2{};
  functional(f2, r2);
  P3 w{{Fq2.sub(Fq2.mul(r1[1], r2[2]), Fq2.mul(r1[2], r2[1])),
        Fq2.sub(Fq2.mul(r1[2], r2[0]), Fq2.mul(r1[0], r2[2])),
        Fq2.sub(Fq2.mul(r1[0], r2[1]), Fq2.mul(r1[1], r2[0]))}};
  P3 f3 = rescale(w, mone);
  Mat3 C;
  for (int i = 0; i < 3; ++i) {
    C.at(i, 0) = f1.v[(size_t)i];
    C.at(i, 1) = f2.v[(size_t)i];
    C.at(i, 2) = f3.v[(size_t)i];
  }
  Mat3 G = m3::mul(Fq2, m3::mul(Fq2, conj_transpose(*tower_, C), m2_.form), C);
  if (!(G == m1_.form)) throw Error(Errc::internal, "model conversion: frame Gram mismatch");
  conv_ = C;
}

Mat3 GroupCtx::convert_m2_to_m1(const Mat3& A_m2) const {
  if (!is_unitary(*tower_, m2_, A_m2))
    throw Error(Errc::not_unitary, "convert_m2_to_m1: input not unitary for model M2");
  Mat3 r = canon(mul(mul(inv(conv_), A_m2), conv_));
  if (!is_unitary(*tower_, m1_, r))
    throw Error(Errc::internal, "convert_m2_to_m1: conversion failed");
  return r;
}

// ---------------------------------------------------------------------------
// subgroup lattice

namespace {

struct BitVec {
  std::vector<std::uint64_t> w;
  bool operator==(const BitVec&) const = default;
  bool operator<(const BitVec& o) const { return w < o.w; }
  void resize(size_t n) { w.assign((n + 63) / 64, 0); }
  void set(size_t i) { w[i >> 6] |= (1ull << (i & 63)); }
  bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  i64 count() const {
    i64 c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
};

struct BitVecHash {
  size_t operator()(const BitVec& b) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : b.w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

}  // namespace

std::vector<LatticeClass> GroupCtx::subgroup_lattice(const std::vector<Mat3>& G,
                                                     const LatticeLimits& lim) const {
  const i64 n = (i64)G.size();
  if (n > lim.max_group_order)
    throw Error(Errc::cap_exceeded, "subgroup_lattice: group order exceeds cap");
  std::vector<Mat3> elems;
  elems.reserve((size_t)n);
  for (const Mat3& g : G) elems.push_back(canon(g));
  std::sort(elems.begin(), elems.end(),
            [](const Mat3& x, const Mat3& y) { return mat_key(x) < mat_key(y); });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if ((i64)elems.size() != n)
    throw Error(Errc::invalid_argument, "subgroup_lattice: duplicate elements in input");

  std::unordered_map<MatKey, int, MatKeyHash> index;
  for (i64 i = 0; i < n; ++i) index[mat_key(elems[(size_t)i])] = (int)i;

  std::vector<std::uint16_t> mult((size_t)(n * n));
  for (i64 i = 0; i < n; ++i)
    for (i64 j = 0; j < n; ++j) {
      Mat3 p = canon(mul(elems[(size_t)i], elems[(size_t)j]));
      auto it = index.find(mat_key(p));
      if (it == index.end())
        throw Error(Errc::invalid_argument, "subgroup_lattice: input set is not closed");
      mult[(size_t)(i * n + j)] = (std::uint16_t)it->second;
    }
  int id_idx = index.at(mat_key(m3::identity(F())));
  std::vector<int> invidx((size_t)n);
  for (i64 i = 0; i < n; ++i)
    for (i64 j = 0; j < n; ++j)
      if (mult[(size_t)(i * n + j)] == id_idx) invidx[(size_t)i] = (int)j;

  // cyclic subgroups; extension candidates are generators of the
  // prime-power ones (every subgroup is reachable through those)
  struct Sub {
    BitVec bits;
    std::vector<int> gens;
    i64 size;
  };
  std::vector<Sub> subs;
  std::unordered_map<BitVec, int, BitVecHash> seen;
  auto add_sub = [&](BitVec&& b, std::vector<int>&& gens, i64 size) -> int {
    auto it = seen.find(b);
    if (it != seen.end()) return -1;
    int sid = (int)subs.size();
    seen.emplace(b, sid);
    subs.push_back(Sub{std::move(b), std::move(gens), size});
    if ((i64)subs.size() > lim.max_subgroups)
      throw Error(Errc::cap_exceeded, "subgroup_lattice: subgroup count exceeds cap");
    return sid;
  };

  std::vector<int> ppcands;  // one generator per prime-power cyclic subgroup
  {
    std::unordered_map<BitVec, int, BitVecHash> cyc_seen;
    for (i64 x = 0; x < n; ++x) {
      BitVec b;
      b.resize((size_t)n);
      int cur = (int)x;
      i64 ord = 0;
      do {
        b.set((size_t)cur);
        cur = mult[(size_t)((i64)cur * n + x)];
        ++ord;
      } while (cur != (int)x);
      // ord here is the element order; the loop walked x, x^2, ..., x^ord=id? no:
      // starting at x and multiplying by x lands back at x after ord steps and
      // has visited x..x^{ord}; ensure identity present
      b.set((size_t)id_idx);
      i64 size = b.count();
      bool isppow = false;
      {
        auto f = factorize(size);
        isppow = (size == 1) ? false : f.size() == 1;
      }
      auto it = cyc_seen.find(b);
      if (it == cyc_seen.end()) {
        cyc_seen.emplace(b, (int)x);
        if (isppow) ppcands.push_back((int)x);
        add_sub(std::move(b), std::vector<int>{(int)x}, size);
      }
    }
    // ensure the trivial subgroup is present (x = identity covers it)
  }

  // layered closure
  for (size_t head = 0; head < subs.size(); ++head) {
    // copy gens since subs may reallocate
    std::vector<int> base_gens = subs[head].gens;
    BitVec base_bits = subs[head].bits;
    for (int c : ppcands) {
      if (base_bits.get((size_t)c)) continue;
      // closure of <base_gens, c>
      BitVec b;
      b.resize((size_t)n);
      std::vector<int> stack;
      std::vector<int> gens = base_gens;
      gens.push_back(c);
      b.set((size_t)id_idx);
      stack.push_back(id_idx);
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int g : gens) {
          int y = mult[(size_t)((i64)x * n + g)];
          if (!b.get((size_t)y)) {
            b.set((size_t)y);
            stack.push_back(y);
          }
        }
      }
      i64 size = b.count();
      add_sub(std::move(b), std::move(gens), size);
    }
  }

  // conjugacy classes
  std::vector<char> done(subs.size(), 0);
  std::vector<LatticeClass> out;
  for (size_t s = 0; s < subs.size(); ++s) {
    if (done[s]) continue;
    // orbit under conjugation
    std::vector<int> members;
    BitVec best = subs[s].bits;
    {
      std::unordered_set<int> orb;
      for (i64 g = 0; g < n; ++g) {
        BitVec b;
        b.resize((size_t)n);
        int gi = invidx[(size_t)g];
        for (i64 x = 0; x < n; ++x)
          if (subs[s].bits.get((size_t)x)) {
            int y = mult[(size_t)((i64)mult[(size_t)(g * n + x)] * n + gi)];
            b.set((size_t)y);
          }
        auto it = seen.find(b);
        if (it == seen.end())
          throw Error(Errc::internal, "subgroup_lattice: conjugate subgroup missing");
        if (orb.insert(it->second).second) {
          if (b < best) best = b;
          members.push_back(it->second);
        }
      }
      for (int m : members) done[(size_t)m] = 1;
    }
    LatticeClass cls;
    cls.class_size = (i64)members.size();
    for (i64 x = 0; x < n; ++x)
      if (best.get((size_t)x)) cls.rep.push_back(elems[(size_t)x]);
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const LatticeClass& a, const LatticeClass& b) {
    if (a.rep.size() != b.rep.size()) return a.rep.size() < b.rep.size();
    for (size_t i = 0; i < a.rep.size(); ++i) {
      MatKey x = mat_key(a.rep[i]), y = mat_key(b.rep[i]);
      if (!(x == y)) return x < y;
    }
    return false;
  });
  return out;
}

std::vector<Mat3> GroupCtx::center_of(const std::vector<Mat3>& G) const {
  // greedy generating set
  std::vector<Mat3> gens;
  {
    MatSet have;
    std::vector<Mat3> cur{m3::identity(F())};
    have.insert(mat_key(cur[0]));
    for (const Mat3& g : G) {
      if (have.count(mat_key(canon(g)))) continue;
      gens.push_back(canon(g));
      cur = closure(gens, (i64)G.size() + 1);
      have.clear();
      for (const Mat3& x : cur) have.insert(mat_key(x));
      if (cur.size() == G.size()) break;
    }
  }
  std::vector<Mat3> out;
  for (const Mat3& x : G) {
    Mat3 cx = canon(x);
    bool central = true;
    for (const Mat3& g : gens)
      if (!(canon(mul(cx, g)) == canon(mul(g, cx)))) {
        central = false;
        break;
      }
    if (central) out.push_back(cx);
  }
  std::sort(out.begin(), out.end(),
            [](const Mat3& x, const Mat3& y) { return mat_key(x) < mat_key(y); });
  return out;
}

std::vector<Mat3> GroupCtx::commutator_subgroup(const std::vector<Mat3>& G) const {
  // generating set of G
  std::vector<Mat3> gens;
  {
    MatSet have;
    std::vector<Mat3> cur{m3::identity(F())};
    have.insert(mat_key(cur[0]));
    for (const Mat3& g : G) {
      if (have.count(mat_key(canon(g)))) continue;
      gens.push_back(canon(g));
      cur = closure(gens, (i64)G.size() + 1);
      have.clear();
      for (const Mat3& x : cur) have.insert(mat_key(x));
      if (cur.size() == G.size()) break;
    }
  }
  std::vector<Mat3> kgens;
  for (const Mat3& a : gens)
    for (const Mat3& b : gens) {
      Mat3 comm = canon(mul(mul(a, b), inv(canon(mul(b, a)))));
      kgens.push_back(comm);
    }
  std::vector<Mat3> K = closure(kgens, (i64)G.size() + 1);
  // normal closure under conjugation by the generators
  bool grew = true;
  while (grew) {
    grew = false;
    MatSet kset;
    for (const Mat3& x : K) kset.insert(mat_key(x));
    for (const Mat3& g : gens) {
      Mat3 gi = inv(g);
      for (const Mat3& x : K) {
        Mat3 cxg = canon(mul(mul(gi, x), g));
        if (!kset.count(mat_key(cxg))) {
          kgens.push_back(cxg);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (grew) K = closure(kgens, (i64)G.size() + 1);
  }
  return K;
}

}  // namespace hq
