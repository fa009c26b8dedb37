#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "ff.hpp"

namespace hq {

enum class ModelId { M1, M2 };

const char* model_name(ModelId);
ModelId model_from_name(const std::string&);

/// 3x3 matrix over F_{q^2}, row-major codes.
struct Mat3 {
  std::array<fcode, 9> a{};
  fcode& at(int r, int c) { return a[(size_t)(3 * r + c)]; }
  fcode at(int r, int c) const { return a[(size_t)(3 * r + c)]; }
  bool operator==(const Mat3&) const = default;
};

/// Projective point, 3 coordinate codes at some level.
struct P3 {
  std::array<fcode, 3> v{};
  bool operator==(const P3&) const = default;
  bool operator<(const P3& o) const { return v < o.v; }
};

/// Canonical-form matrix key for hashing (codes fit in 16 bits at desk scale).
struct MatKey {
  std::array<std::uint16_t, 9> k{};
  bool operator==(const MatKey&) const = default;
  bool operator<(const MatKey& o) const { return k < o.k; }
};

struct MatKeyHash {
  size_t operator()(const MatKey& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m.k) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

MatKey mat_key(const Mat3& m);
Mat3 mat_from_key(const MatKey& k);

/// Matrix algebra over one field table (level Q2 in practice).
namespace m3 {

Mat3 identity(const FieldTable& F);
Mat3 mul(const FieldTable& F, const Mat3& A, const Mat3& B);
fcode det(const FieldTable& F, const Mat3& A);
Mat3 adjugate(const FieldTable& F, const Mat3& A);
Mat3 inverse(const FieldTable& F, const Mat3& A);  // throws on singular
Mat3 scale(const FieldTable& F, const Mat3& A, fcode s);
/// Scale so the first nonzero row-major entry is 1 (projective canonical form).
Mat3 canonical(const FieldTable& F, const Mat3& A);
bool is_identity_proj(const FieldTable& F, const Mat3& A);
P3 apply(const FieldTable& F, const Mat3& A, const P3& p);
P3 canonical_point(const FieldTable& F, const P3& p);
bool proportional(const FieldTable& F, const P3& a, const P3& b);

}  // namespace m3

/// The two plane models and their Hermitian forms.
struct HermitianModel {
  ModelId id;
  Mat3 form;  // H with H* = H; the curve is v*Hv = 0
};

HermitianModel make_model(const FieldTower& tw, ModelId id);

/// v* H w with conjugation (x -> x^q) in the first argument, at level Q2.
fcode herm_pair_q2(const FieldTower& tw, const Mat3& H, const P3& v, const P3& w);
/// v* H v evaluated at an arbitrary level (conjugation is x -> x^q there).
fcode herm_value(const FieldTower& tw, const Mat3& H, const P3& v, Level lv);
bool on_curve(const FieldTower& tw, const Mat3& H, const P3& v, Level lv);

/// Conjugate-transpose at level Q2.
Mat3 conj_transpose(const FieldTower& tw, const Mat3& A);

/// True iff A* H A = lambda H for some nonzero lambda in F_q.
bool is_unitary(const FieldTower& tw, const HermitianModel& M, const Mat3& A);

}  // namespace hq
