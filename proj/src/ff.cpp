#include "ff.hpp"

#include <algorithm>
#include <sstream>

namespace hq {

bool is_prime(i64 v) {
  if (v < 2) return false;
  for (i64 d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::pair<i64, int>> factorize(i64 v) {
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      int e = 0;
      while (v % d == 0) v /= d, ++e;
      out.push_back({d, e});
    }
  }
  if (v > 1) out.push_back({v, 1});
  return out;
}

std::vector<i64> divisors(i64 v) {
  std::vector<i64> out;
  for (i64 d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CurveParams make_params(i64 p, int n, bool strict) {
  if (p < 3 || !is_prime(p))
    throw Error(Errc::invalid_argument, "p must be an odd prime, got " + std::to_string(p));
  if (n < 1) throw Error(Errc::invalid_argument, "n must be positive");
  i64 q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > (1 << 20)) throw Error(Errc::cap_exceeded, "q too large");
  }
  if (strict && q % 4 != 1)
    throw Error(Errc::hypothesis_violation,
                "q = " + std::to_string(q) + " is not 1 mod 4 (strict mode)");
  CurveParams cp;
  cp.p = p;
  cp.n = n;
  cp.q = q;
  cp.strict = strict;
  return cp;
}

const char* level_name(Level lv) {
  switch (lv) {
    case Level::P: return "p";
    case Level::Q: return "q";
    case Level::Q2: return "q2";
    case Level::Q6: return "q6";
  }
  return "?";
}

int level_degree_over_p(Level lv, int n) {
  switch (lv) {
    case Level::P: return 1;
    case Level::Q: return n;
    case Level::Q2: return 2 * n;
    case Level::Q6: return 6 * n;
  }
  return 0;
}

fcode FieldTable::add_raw(fcode a, fcode b) const {
  fcode r = 0;
  fcode place = 1;
  while (a != 0 || b != 0) {
    i64 s = (i64)(a % p) + (i64)(b % p);
    if (s >= p) s -= p;
    r += (fcode)s * place;
    a /= (fcode)p;
    b /= (fcode)p;
    place *= (fcode)p;
  }
  return r;
}

i64 FieldTable::order(fcode a) const {
  if (a == 0) throw Error(Errc::invalid_argument, "order of zero");
  i64 l = log_[a];
  i64 g = std::gcd(l, mod);
  return mod / g;
}

std::vector<fcode> FieldTable::kth_roots(fcode a, i64 k) const {
  std::vector<fcode> out;
  if (k < 1) throw Error(Errc::invalid_argument, "kth_roots: k < 1");
  if (a == 0) {
    out.push_back(0);
    return out;
  }
  i64 la = log_[a];
  i64 g = std::gcd(k % mod == 0 ? mod : k % mod, mod);
  if (g == 0) g = mod;
  if (la % g != 0) return out;
  // Solve k*x = la (mod mod): x0 = (k/g)^{-1} * la/g mod (mod/g).
  i64 m = mod / g;
  i64 kk = (k / g) % m;
  i64 inv = 1;
  {  // modular inverse by extended Euclid
    i64 t = 0, newt = 1, r = m, newr = kk % m;
    while (newr != 0) {
      i64 qq = r / newr;
      std::swap(t -= qq * newt, newt);
      std::swap(r -= qq * newr, newr);
    }
    inv = ((t % m) + m) % m;
  }
  i64 x0 = (i64)((__int128)(la / g) * inv % m);
  for (i64 j = 0; j < g; ++j) out.push_back(exp_[(x0 + j * m) % mod]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Polynomial helpers over a finite field, little-endian coefficient codes.
// Only used while building tables; no performance requirements.
using Poly = std::vector<fcode>;

struct PolyOps {
  const FieldTable& F;
  // raw code multiply via tables when available, else base-p convolution
  std::vector<std::vector<fcode>>* mul_fallback = nullptr;

  Poly trim(Poly a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return trim(r);
  }
  // remainder of a by monic b
  Poly rem(Poly a, const Poly& b) const {
    a = trim(a);
    while (a.size() >= b.size()) {
      fcode c = a.back();
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
      a = trim(a);
    }
    return a;
  }
  fcode eval(const Poly& a, fcode x) const {
    fcode r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
  }
};

// Monic polynomial of degree deg with non-leading coefficients decoded from
// idx, base = field size, coefficient of x^i = digit i.
Poly decode_monic(const FieldTable& F, int deg, i64 idx) {
  Poly f((size_t)deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[(size_t)i] = (fcode)(idx % F.size);
    idx /= F.size;
  }
  f[(size_t)deg] = F.one();
  return f;
}

bool is_irreducible(const PolyOps& ops, const Poly& f) {
  const FieldTable& F = ops.F;
  int deg = (int)f.size() - 1;
  if (deg <= 1) return deg == 1;
  if (deg <= 3) {  // cubic/quadratic: irreducible iff rootless
    for (i64 c = 0; c < F.size; ++c)
      if (ops.eval(f, (fcode)c) == 0) return false;
    return true;
  }
  // general small degree: trial division by monic factors up to deg/2
  for (int d = 1; d <= deg / 2; ++d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= F.size;
    for (i64 idx = 0; idx < count; ++idx) {
      Poly g = decode_monic(F, d, idx);
      if (ops.rem(f, g).empty()) return false;
    }
  }
  return true;
}

// Least monic irreducible of the given degree, coefficients compared
// high-degree-first by code.
Poly least_irreducible(const FieldTable& F, int deg) {
  PolyOps ops{F};
  i64 count = 1;
  for (int i = 0; i < deg; ++i) count *= F.size;
  // reorder enumeration so the x^{deg-1} coefficient is most significant
  for (i64 hi = 0; hi < count; ++hi) {
    // digits of hi, most significant digit first -> coefficient of x^{deg-1}
    Poly f((size_t)deg + 1, 0);
    i64 t = hi;
    for (int i = 0; i < deg; ++i) {
      f[(size_t)i] = (fcode)(t % F.size);
      t /= F.size;
    }
    f[(size_t)deg] = F.one();
    if (is_irreducible(ops, f)) return f;
  }
  throw Error(Errc::internal, "no irreducible polynomial found");
}

void finish_tables(FieldTable& T, const std::vector<Poly>& elem_of_code_unused) {
  (void)elem_of_code_unused;
}

// Build log/exp/zech given a multiplication-on-codes functor.
template <typename MulFn>
void build_log_exp(FieldTable& T, MulFn&& mul_codes) {
  T.mod = T.size - 1;
  auto pow_codes = [&](fcode a, i64 e) {
    fcode r = 1;  // code 1 is the field one by construction (constant poly 1)
    fcode b = a;
    while (e > 0) {
      if (e & 1) r = mul_codes(r, b);
      b = mul_codes(b, b);
      e >>= 1;
    }
    return r;
  };
  auto fac = factorize(T.mod);
  fcode g = 0;
  for (i64 cand = 2; cand < T.size; ++cand) {
    bool ok = true;
    for (auto& [pr, e] : fac)
      if (pow_codes((fcode)cand, T.mod / pr) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = (fcode)cand;
      break;
    }
  }
  if (g == 0) throw Error(Errc::internal, "no generator found");
  T.gen = g;
  T.exp_.assign((size_t)T.mod, 0);
  T.log_.assign((size_t)T.size, 0);
  fcode cur = 1;
  for (i64 k = 0; k < T.mod; ++k) {
    T.exp_[(size_t)k] = cur;
    T.log_[cur] = (std::int32_t)k;
    cur = mul_codes(cur, g);
  }
  if (cur != 1) throw Error(Errc::internal, "generator order mismatch");
  T.zech_.assign((size_t)T.mod, FieldTable::kZechZero);
  for (i64 k = 0; k < T.mod; ++k) {
    fcode s = T.add_raw(1, T.exp_[(size_t)k]);
    if (s != 0) T.zech_[(size_t)k] = T.log_[s];
  }
  T.half_ = (T.mod % 2 == 0) ? T.mod / 2 : 0;  // log(-1); p odd => mod even
}

FieldTable build_prime_field(i64 p) {
  FieldTable T;
  T.p = p;
  T.deg = 1;
  T.size = p;
  auto mul_codes = [p](fcode a, fcode b) { return (fcode)(((i64)a * b) % p); };
  build_log_exp(T, mul_codes);
  return T;
}

// Extension of degree e over `base` modulo monic irreducible f (codes over
// base). Element codes are little-endian vectors of base codes.
FieldTable build_extension(const FieldTable& base, const Poly& f) {
  int e = (int)f.size() - 1;
  FieldTable T;
  T.p = base.p;
  T.deg = base.deg * e;
  T.size = 1;
  for (int i = 0; i < e; ++i) T.size *= base.size;

  const i64 S = base.size;
  auto decode = [&](fcode c, std::vector<fcode>& v) {
    for (int i = 0; i < e; ++i) {
      v[(size_t)i] = (fcode)(c % S);
      c /= (fcode)S;
    }
  };
  auto encode = [&](const std::vector<fcode>& v) {
    fcode c = 0;
    fcode place = 1;
    for (int i = 0; i < e; ++i) {
      c += v[(size_t)i] * place;
      place *= (fcode)S;
    }
    return c;
  };
  std::vector<fcode> va((size_t)e), vb((size_t)e), prod((size_t)2 * e - 1);
  auto mul_codes = [&](fcode a, fcode b) -> fcode {
    decode(a, va);
    decode(b, vb);
    std::fill(prod.begin(), prod.end(), 0);
    for (int i = 0; i < e; ++i) {
      if (va[(size_t)i] == 0) continue;
      for (int j = 0; j < e; ++j)
        prod[(size_t)(i + j)] =
            base.add(prod[(size_t)(i + j)], base.mul(va[(size_t)i], vb[(size_t)j]));
    }
    for (int k = 2 * e - 2; k >= e; --k) {
      fcode c = prod[(size_t)k];
      if (c == 0) continue;
      prod[(size_t)k] = 0;
      for (int i = 0; i < e; ++i)
        prod[(size_t)(k - e + i)] =
            base.sub(prod[(size_t)(k - e + i)], base.mul(c, f[(size_t)i]));
    }
    std::vector<fcode> out(prod.begin(), prod.begin() + e);
    return encode(out);
  };
  build_log_exp(T, mul_codes);
  return T;
}

}  // namespace

std::unique_ptr<FieldTower> build_tower(const CurveParams& params) {
  auto tw = std::unique_ptr<FieldTower>(new FieldTower());
  tw->params = params;
  i64 q6 = 1;
  for (int i = 0; i < 6 * params.n; ++i) {
    q6 *= params.p;
    if (q6 > (i64)1 << 26)
      throw Error(Errc::cap_exceeded, "q^6 exceeds the supported coefficient width");
  }
  tw->P_ = build_prime_field(params.p);
  if (params.n == 1) {
    tw->Q_ = tw->P_;
  } else {
    Poly f1 = least_irreducible(tw->P_, params.n);
    tw->f1 = f1;
    tw->Q_ = build_extension(tw->P_, f1);
  }
  Poly f2 = least_irreducible(tw->Q_, 2);
  tw->f2 = f2;
  tw->Q2_ = build_extension(tw->Q_, f2);
  Poly f3 = least_irreducible(tw->Q2_, 3);
  tw->f3 = f3;
  tw->Q6_ = build_extension(tw->Q2_, f3);
  return tw;
}

fcode FieldTower::embed(Level from, Level to, fcode a) const {
  if ((int)from > (int)to)
    throw Error(Errc::invalid_argument, "embed: target level below source");
  if (a >= (fcode)table(from).size)
    throw Error(Errc::invalid_argument, "embed: code out of range");
  return a;  // nested bases: the code is unchanged
}

bool FieldTower::fits_level(Level big, Level small, fcode a) const {
  const FieldTable& B = table(big);
  const FieldTable& S = table(small);
  if (a == 0) return true;
  return B.in_subfield(a, S.size);
}

std::vector<fcode> FieldTower::roots_in_level(const std::vector<fcode>& coeffs,
                                              Level lv) const {
  if (coeffs.size() > 4)
    throw Error(Errc::invalid_argument, "roots_in_level: degree > 3 not supported");
  const FieldTable& F = table(lv);
  std::vector<fcode> poly = coeffs;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.size() <= 1)
    throw Error(Errc::invalid_argument, "roots_in_level: degenerate polynomial");
  for (fcode c : poly)
    if (c >= (fcode)F.size)
      throw Error(Errc::invalid_argument, "roots_in_level: coefficient outside level");

  std::vector<fcode> roots;
  // Exhaustive scan, then peel multiplicities by synthetic division.
  std::vector<fcode> distinct;
  for (i64 x = 0; x < F.size; ++x) {
    fcode r = 0;
    for (size_t i = poly.size(); i-- > 0;) r = F.add(F.mul(r, (fcode)x), poly[i]);
    if (r == 0) {
      distinct.push_back((fcode)x);
      if (distinct.size() == poly.size() - 1) break;  // all possible roots found
    }
  }
  for (fcode r0 : distinct) {
    std::vector<fcode> cur = poly;
    while (true) {
      // divide cur by (x - r0)
      std::vector<fcode> qt(cur.size() - 1, 0);
      fcode carry = 0;
      for (size_t i = cur.size(); i-- > 1;) {
        carry = F.add(cur[i], F.mul(carry, r0));
        qt[i - 1] = carry;
      }
      fcode rem = F.add(cur[0], F.mul(carry, r0));
      if (rem != 0) break;
      roots.push_back(r0);
      cur = qt;
      if (cur.size() <= 1) break;
      // keep dividing only if r0 is still a root
      fcode v = 0;
      for (size_t i = cur.size(); i-- > 0;) v = F.add(F.mul(v, r0), cur[i]);
      if (v != 0) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  auto poly_str = [&](const std::vector<fcode>& f) {
    std::ostringstream ps;
    ps << "[";
    for (size_t i = 0; i < f.size(); ++i) ps << (i ? "," : "") << f[i];
    ps << "]";
    return ps.str();
  };
  os << "p=" << params.p << " n=" << params.n << " q=" << params.q;
  if (!f1.empty()) os << " f1=" << poly_str(f1);
  os << " f2=" << poly_str(f2) << " f3=" << poly_str(f3);
  return os.str();
}

}  // namespace hq
