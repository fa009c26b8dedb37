#pragma once

#include <map>
#include <mutex>
#include <unordered_map>

#include "group.hpp"

namespace hq {

enum class EType { Identity, A, B1, B2, B3, C, D, E };

const char* etype_name(EType);

struct FixedPointInfo {
  P3 coords;         // level Q6, canonical
  bool on_curve;
  bool rational_q2;  // lies in PG(2,q^2)
};

struct ElementReport {
  EType type = EType::Identity;
  i64 order = 1;
  i64 i_sigma = 0;
  std::vector<FixedPointInfo> fixed_points;  // isolated fixed points
  bool fixes_line = false;                   // perspectivity (axis fixed pointwise)
  std::array<P3, 2> axis{};                  // span of the axis when fixes_line
  std::array<int, 3> jordan{{1, 1, 1}};      // eigenvalue block partition, descending
};

using Census = std::map<EType, i64>;

/// Element classifier per the fixed-point geometry over F_{q^6}, with the
/// ramification contribution i(sigma) read off the type. Char-poly root
/// scans are memoized; instances are safe to share across threads.
class Classifier {
 public:
  explicit Classifier(std::shared_ptr<const GroupCtx> ctx) : ctx_(std::move(ctx)) {}

  const GroupCtx& ctx() const { return *ctx_; }

  ElementReport classify(const Mat3& g) const;

  /// Independent check for tame elements: counts fixed points on the curve
  /// over F_{q^6} directly from the fixed locus (no type table involved).
  i64 tame_oracle(const Mat3& g) const;

  Census census(const std::vector<Mat3>& G) const;

  /// Characteristic polynomial coefficients (little-endian, monic) at Q2.
  std::array<fcode, 4> char_poly(const Mat3& g) const;

  /// Roots of the characteristic polynomial at level Q6, with multiplicity.
  std::vector<fcode> eigenvalues_q6(const std::array<fcode, 4>& poly) const;

 private:
  i64 axis_curve_count(const P3& u, const P3& v) const;

  std::shared_ptr<const GroupCtx> ctx_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::vector<fcode>> root_cache_;
  mutable std::unordered_map<std::uint64_t, i64> axis_cache_;
};

}  // namespace hq
