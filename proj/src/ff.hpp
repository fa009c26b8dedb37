#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hq {

using i64 = std::int64_t;

/// Packed field element: the coefficient vector over F_p in the defining
/// basis, little-endian base p. Code 0 is the zero element at every level.
using fcode = std::uint32_t;

/// Error category used across the library; the C API maps these to codes.
enum class Errc {
  invalid_argument,
  hypothesis_violation,
  cap_exceeded,
  parse_error,
  not_unitary,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Errc code;
};

struct CurveParams {
  i64 p = 0;           // odd prime
  int n = 1;           // q = p^n
  i64 q = 0;           // derived
  bool strict = true;  // require q == 1 (mod 4)
};

CurveParams make_params(i64 p, int n, bool strict);

enum class Level { P, Q, Q2, Q6 };

const char* level_name(Level);
int level_degree_over_p(Level, int n);

/// Arithmetic tables for one field in the tower. Elements are codes;
/// multiplication runs on discrete logs, addition through the Zech table.
/// Immutable once built.
class FieldTable {
 public:
  i64 p = 0;
  int deg = 0;   // degree over F_p
  i64 size = 0;  // p^deg
  i64 mod = 0;   // size - 1
  fcode gen = 0; // distinguished generator: least code of full order

  static constexpr std::int32_t kZechZero = -1;

  fcode add(fcode a, fcode b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    i64 la = log_[a], lb = log_[b];
    i64 d = lb - la;
    if (d < 0) d += mod;
    std::int32_t z = zech_[d];
    if (z == kZechZero) return 0;
    i64 s = la + z;
    if (s >= mod) s -= mod;
    return exp_[s];
  }
  fcode neg(fcode a) const {
    if (a == 0) return 0;
    i64 s = log_[a] + half_;
    if (s >= mod) s -= mod;
    return exp_[s];
  }
  fcode sub(fcode a, fcode b) const { return add(a, neg(b)); }
  fcode mul(fcode a, fcode b) const {
    if (a == 0 || b == 0) return 0;
    i64 s = log_[a] + log_[b];
    if (s >= mod) s -= mod;
    return exp_[s];
  }
  fcode inv(fcode a) const {
    if (a == 0) throw Error(Errc::invalid_argument, "division by zero");
    i64 l = log_[a];
    return exp_[l == 0 ? 0 : mod - l];
  }
  /// a^e for e >= 0 (also accepts negative e for nonzero a).
  fcode pow(fcode a, i64 e) const {
    if (a == 0) {
      if (e == 0) return one();
      if (e < 0) throw Error(Errc::invalid_argument, "0^negative");
      return 0;
    }
    i64 l = (i64)((__int128)log_[a] * (e % mod) % mod);
    if (l < 0) l += mod;
    return exp_[l];
  }
  fcode one() const { return exp_[0]; }
  i64 log(fcode a) const {
    if (a == 0) throw Error(Errc::invalid_argument, "log of zero");
    return log_[a];
  }
  fcode exp(i64 l) const { return exp_[((l % mod) + mod) % mod]; }
  i64 order(fcode a) const;  // multiplicative order, a != 0

  /// True when a lies in the subfield of the given size (sub-1 must divide mod).
  bool in_subfield(fcode a, i64 sub_size) const {
    if (a == 0) return true;
    return log_[a] % (mod / (sub_size - 1)) == 0;
  }

  /// Coefficientwise sum mod p of packed codes; table-free, used during build.
  fcode add_raw(fcode a, fcode b) const;
  fcode from_int(i64 v) const {  // embed an integer (element of F_p)
    v %= p;
    if (v < 0) v += p;
    return (fcode)v;
  }

  /// All x with x^k = a (k >= 1); empty when a is not a k-th power.
  std::vector<fcode> kth_roots(fcode a, i64 k) const;

  std::vector<fcode> exp_;          // size mod
  std::vector<std::int32_t> log_;   // size `size`
  std::vector<std::int32_t> zech_;  // size mod
  i64 half_ = 0;                    // log(-1)
};

/// Compatible arithmetic for F_p < F_q < F_{q^2} < F_{q^6}. Defining
/// polynomials are the least monic irreducible of the required degree over
/// the next-lower level, coefficients compared high-degree first by their
/// integer codes. Embeddings between levels are the identity on codes.
class FieldTower {
 public:
  CurveParams params;

  const FieldTable& table(Level lv) const {
    switch (lv) {
      case Level::P: return P_;
      case Level::Q: return Q_;
      case Level::Q2: return Q2_;
      case Level::Q6: return Q6_;
    }
    throw Error(Errc::internal, "bad level");
  }
  const FieldTable& q2() const { return Q2_; }
  const FieldTable& q6() const { return Q6_; }

  /// x -> x^q at level Q2 (the Hermitian conjugation).
  fcode conj_q2(fcode a) const {
    if (a == 0) return 0;
    return Q2_.exp(Q2_.log(a) * (params.q % Q2_.mod) % Q2_.mod);
  }
  /// x -> x^(q^2) at level Q6 (Frobenius fixing the embedded F_{q^2}).
  fcode frob_q2_on_q6(fcode a) const {
    if (a == 0) return 0;
    i64 e = (params.q * params.q) % Q6_.mod;
    return Q6_.exp((i64)((__int128)Q6_.log(a) * e % Q6_.mod));
  }
  /// x -> x^q at level Q6.
  fcode pow_q_q6(fcode a) const {
    if (a == 0) return 0;
    return Q6_.exp((i64)((__int128)Q6_.log(a) * (params.q % Q6_.mod) % Q6_.mod));
  }

  /// Level embeddings are the identity on codes (bases are nested); these
  /// helpers only check the element is valid for the move.
  fcode embed(Level from, Level to, fcode a) const;
  bool fits_level(Level big, Level small, fcode a) const;

  /// Norm and trace from Q2 to Q: N(x) = x^(q+1), T(x) = x + x^q.
  fcode norm_q2(fcode a) const { return Q2_.mul(a, conj_q2(a)); }
  fcode trace_q2(fcode a) const { return Q2_.add(a, conj_q2(a)); }

  /// Roots (with multiplicity) of a monic-or-not polynomial of degree <= 3.
  /// Coefficients little-endian at the requested level; exhaustive scan.
  std::vector<fcode> roots_in_level(const std::vector<fcode>& coeffs, Level lv) const;

  /// Defining polynomials, little-endian coefficient codes over their base
  /// level (f1 over P, absent when n == 1; f2 over Q; f3 over Q2).
  std::vector<fcode> f1, f2, f3;

  std::string describe() const;  // human-readable tower summary

 private:
  friend std::unique_ptr<FieldTower> build_tower(const CurveParams&);
  FieldTable P_, Q_, Q2_, Q6_;
};

std::unique_ptr<FieldTower> build_tower(const CurveParams& params);

/// Prime factorization by trial division (values fit desk scale).
std::vector<std::pair<i64, int>> factorize(i64 v);
std::vector<i64> divisors(i64 v);
bool is_prime(i64 v);

}  // namespace hq
