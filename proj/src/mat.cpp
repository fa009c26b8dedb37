#include "mat.hpp"

namespace hq {

const char* model_name(ModelId m) { return m == ModelId::M1 ? "m1" : "m2"; }

ModelId model_from_name(const std::string& s) {
  if (s == "m1" || s == "M1") return ModelId::M1;
  if (s == "m2" || s == "M2") return ModelId::M2;
  throw Error(Errc::invalid_argument, "unknown model: " + s);
}

MatKey mat_key(const Mat3& m) {
  MatKey k;
  for (int i = 0; i < 9; ++i) k.k[(size_t)i] = (std::uint16_t)m.a[(size_t)i];
  return k;
}

Mat3 mat_from_key(const MatKey& k) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.a[(size_t)i] = k.k[(size_t)i];
  return m;
}

namespace m3 {

Mat3 identity(const FieldTable& F) {
  Mat3 m;
  m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = F.one();
  return m;
}

Mat3 mul(const FieldTable& F, const Mat3& A, const Mat3& B) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      fcode s = 0;
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

fcode det(const FieldTable& F, const Mat3& A) {
  fcode t0 = F.mul(A.at(0, 0), F.sub(F.mul(A.at(1, 1), A.at(2, 2)), F.mul(A.at(1, 2), A.at(2, 1))));
  fcode t1 = F.mul(A.at(0, 1), F.sub(F.mul(A.at(1, 0), A.at(2, 2)), F.mul(A.at(1, 2), A.at(2, 0))));
  fcode t2 = F.mul(A.at(0, 2), F.sub(F.mul(A.at(1, 0), A.at(2, 1)), F.mul(A.at(1, 1), A.at(2, 0))));
  return F.add(F.sub(t0, t1), t2);
}

Mat3 adjugate(const FieldTable& F, const Mat3& A) {
  auto cof = [&](int r0, int c0, int r1, int c1) {
    return F.sub(F.mul(A.at(r0, c0), A.at(r1, c1)), F.mul(A.at(r0, c1), A.at(r1, c0)));
  };
  Mat3 r;
  r.at(0, 0) = cof(1, 1, 2, 2);
  r.at(0, 1) = F.neg(cof(0, 1, 2, 2));
  r.at(0, 2) = cof(0, 1, 1, 2);
  r.at(1, 0) = F.neg(cof(1, 0, 2, 2));
  r.at(1, 1) = cof(0, 0, 2, 2);
  r.at(1, 2) = F.neg(cof(0, 0, 1, 2));
  r.at(2, 0) = cof(1, 0, 2, 1);
  r.at(2, 1) = F.neg(cof(0, 0, 2, 1));
  r.at(2, 2) = cof(0, 0, 1, 1);
  return r;
}

Mat3 inverse(const FieldTable& F, const Mat3& A) {
  fcode d = det(F, A);
  if (d == 0) throw Error(Errc::invalid_argument, "singular matrix");
  return scale(F, adjugate(F, A), F.inv(d));
}

Mat3 scale(const FieldTable& F, const Mat3& A, fcode s) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[(size_t)i] = F.mul(A.a[(size_t)i], s);
  return r;
}

Mat3 canonical(const FieldTable& F, const Mat3& A) {
  for (int i = 0; i < 9; ++i)
    if (A.a[(size_t)i] != 0) return scale(F, A, F.inv(A.a[(size_t)i]));
  throw Error(Errc::invalid_argument, "zero matrix");
}

bool is_identity_proj(const FieldTable& F, const Mat3& A) {
  return canonical(F, A) == identity(F);
}

P3 apply(const FieldTable& F, const Mat3& A, const P3& p) {
  P3 r;
  for (int i = 0; i < 3; ++i) {
    fcode s = 0;
    for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A.at(i, k), p.v[(size_t)k]));
    r.v[(size_t)i] = s;
  }
  return r;
}

P3 canonical_point(const FieldTable& F, const P3& p) {
  for (int i = 0; i < 3; ++i)
    if (p.v[(size_t)i] != 0) {
      fcode s = F.inv(p.v[(size_t)i]);
      P3 r;
      for (int j = 0; j < 3; ++j) r.v[(size_t)j] = F.mul(p.v[(size_t)j], s);
      return r;
    }
  throw Error(Errc::invalid_argument, "zero vector is not a point");
}

bool proportional(const FieldTable& F, const P3& a, const P3& b) {
  return canonical_point(F, a) == canonical_point(F, b);
}

}  // namespace m3

HermitianModel make_model(const FieldTower& tw, ModelId id) {
  const FieldTable& F = tw.q2();
  HermitianModel M;
  M.id = id;
  fcode one = F.one();
  fcode mone = F.neg(one);
  if (id == ModelId::M1) {
    M.form.at(0, 0) = one;
    M.form.at(1, 1) = mone;
    M.form.at(2, 2) = mone;
  } else {
    M.form.at(0, 2) = one;
    M.form.at(2, 0) = one;
    M.form.at(1, 1) = mone;
  }
  return M;
}

fcode herm_pair_q2(const FieldTower& tw, const Mat3& H, const P3& v, const P3& w) {
  const FieldTable& F = tw.q2();
  fcode s = 0;
  for (int i = 0; i < 3; ++i) {
    if (v.v[(size_t)i] == 0) continue;
    fcode ci = tw.conj_q2(v.v[(size_t)i]);
    for (int j = 0; j < 3; ++j)
      s = F.add(s, F.mul(ci, F.mul(H.at(i, j), w.v[(size_t)j])));
  }
  return s;
}

fcode herm_value(const FieldTower& tw, const Mat3& H, const P3& v, Level lv) {
  const FieldTable& F = tw.table(lv);
  i64 q = tw.params.q;
  fcode s = 0;
  for (int i = 0; i < 3; ++i) {
    if (v.v[(size_t)i] == 0) continue;
    fcode ci = F.pow(v.v[(size_t)i], q);
    for (int j = 0; j < 3; ++j)
      s = F.add(s, F.mul(ci, F.mul(H.at(i, j), v.v[(size_t)j])));
  }
  return s;
}

bool on_curve(const FieldTower& tw, const Mat3& H, const P3& v, Level lv) {
  return herm_value(tw, H, v, lv) == 0;
}

Mat3 conj_transpose(const FieldTower& tw, const Mat3& A) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = tw.conj_q2(A.at(j, i));
  return r;
}

bool is_unitary(const FieldTower& tw, const HermitianModel& M, const Mat3& A) {
  const FieldTable& F = tw.q2();
  if (m3::det(F, A) == 0) return false;
  Mat3 G = m3::mul(F, m3::mul(F, conj_transpose(tw, A), M.form), A);
  // G must equal lambda * H for lambda in F_q^*.
  fcode lambda = 0;
  for (int i = 0; i < 9; ++i) {
    fcode h = M.form.a[(size_t)i];
    fcode g = G.a[(size_t)i];
    if (h == 0) {
      if (g != 0) return false;
    } else if (lambda == 0) {
      if (g == 0) return false;
      lambda = F.mul(g, F.inv(h));
    }
  }
  if (lambda == 0) return false;
  if (!F.in_subfield(lambda, tw.params.q)) return false;
  for (int i = 0; i < 9; ++i)
    if (G.a[(size_t)i] != F.mul(lambda, M.form.a[(size_t)i])) return false;
  return true;
}

}  // namespace hq
