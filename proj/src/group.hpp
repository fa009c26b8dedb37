#pragma once

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mat.hpp"

namespace hq {

using MatSet = std::unordered_set<MatKey, MatKeyHash>;

struct SubgroupDecomposition {
  i64 size = 0;      // |G|
  i64 size_h = 0;    // |G ∩ H|
  i64 size_pm = 0;   // |G ∩ SU^±(2,q)|
  i64 omega = 0;     // |G ∩ Ω|
};

struct LatticeClass {
  std::vector<Mat3> rep;  // representative subgroup, canonical elements sorted
  i64 class_size = 0;     // number of conjugates in the ambient group
};

struct LatticeLimits {
  i64 max_group_order = 1000;
  i64 max_subgroups = 300000;
};

i64 expected_pgu_order(i64 q);
i64 expected_mq_order(i64 q);

/// Working context for PGU(3,q) over a fixed tower and model. The standard
/// M_q copy (model M1, fixed point (0,0,1), polar line Z=0) is built eagerly;
/// everything is immutable afterwards.
class GroupCtx {
 public:
  GroupCtx(std::shared_ptr<const FieldTower> tower, ModelId model);

  const FieldTower& tw() const { return *tower_; }
  const FieldTable& F() const { return tower_->q2(); }
  const HermitianModel& model() const { return model_; }
  ModelId model_id() const { return model_.id; }
  const HermitianModel& model_of(ModelId m) const { return m == ModelId::M1 ? m1_ : m2_; }

  Mat3 canon(const Mat3& A) const { return m3::canonical(F(), A); }
  Mat3 mul(const Mat3& A, const Mat3& B) const { return m3::mul(F(), A, B); }
  Mat3 inv(const Mat3& A) const { return m3::inverse(F(), A); }
  bool unitary(const Mat3& A) const { return is_unitary(tw(), model_, A); }
  bool unitary_m(const Mat3& A, ModelId m) const { return is_unitary(tw(), model_of(m), A); }
  void require_unitary(const Mat3& A, const char* what) const;

  /// Projective order (least k >= 1 with A^k scalar).
  i64 element_order(const Mat3& A) const;

  /// All points of the curve rational over the level. Level Q2 or Q6.
  std::vector<P3> curve_points(Level lv) const;

  /// Closure of a generator list under multiplication; throws when the size
  /// would exceed cap. Elements come back canonical and sorted. Generators
  /// must be unitary for the given model (primary model by default).
  std::vector<Mat3> closure(const std::vector<Mat3>& gens, i64 cap) const;
  std::vector<Mat3> closure_m(const std::vector<Mat3>& gens, i64 cap, ModelId m) const;

  /// The standard maximal subgroup M_q (model M1 frame), sorted canonical.
  const std::vector<Mat3>& mq_elements() const { return mq_; }
  const MatSet& mq_set() const { return mq_set_; }
  bool in_mq(const Mat3& A) const { return mq_set_.count(mat_key(canon(A))) != 0; }
  const MatSet& h_set() const { return h_set_; }
  const MatSet& supm_set() const { return supm_set_; }
  const MatSet& omega_set() const { return omega_set_; }
  const MatSet& z_set() const { return z_set_; }

  SubgroupDecomposition decompose_in_mq(const std::vector<Mat3>& G) const;

  /// Visit every element of PGU(3,q) exactly once (coset sweep over the
  /// off-curve point orbit; model M1 only). Return false from the visitor to
  /// stop early.
  void for_each_element(const std::function<bool(const Mat3&)>& fn) const;
  /// Materializes the full group; guarded by cap on q.
  std::vector<Mat3> enumerate_group(i64 q_cap = 9) const;

  /// Unitary matrix sending (0,0,1) to the given off-curve point (model M1).
  Mat3 frame_to_point(const P3& target) const;

  /// First off-curve F_{q^2}-point fixed by every generator, or throws.
  P3 common_fixed_offcurve_point(const std::vector<Mat3>& gens) const;

  /// Conjugates a subgroup into the standard M_q frame (fixed point to
  /// (0,0,1)). Input elements must share an off-curve fixed point.
  std::vector<Mat3> conjugate_into_standard(const std::vector<Mat3>& G) const;

  /// Change-of-frame projectivity C with C* H_m2 C = H_m1; conjugation by it
  /// carries model-M2 unitaries to model-M1 unitaries.
  const Mat3& m2_to_m1_frame() const { return conv_; }
  Mat3 convert_m2_to_m1(const Mat3& A_m2) const;

  /// All subgroups of G up to conjugacy in G (layered closure over
  /// prime-power cyclic extensions).
  std::vector<LatticeClass> subgroup_lattice(const std::vector<Mat3>& G,
                                             const LatticeLimits& lim = {}) const;

  std::vector<Mat3> center_of(const std::vector<Mat3>& G) const;
  std::vector<Mat3> commutator_subgroup(const std::vector<Mat3>& G) const;

  /// Off-curve points of PG(2,q^2), canonical, sorted (orbit of M_q's pole).
  const std::vector<P3>& offcurve_points() const { return offcurve_; }

 private:
  void build_standard_copies();
  void build_conversion();

  std::shared_ptr<const FieldTower> tower_;
  HermitianModel model_;
  HermitianModel m1_, m2_;
  std::vector<Mat3> mq_;
  MatSet mq_set_, h_set_, supm_set_, omega_set_, z_set_;
  std::vector<P3> offcurve_;  // model M1
  Mat3 conv_;                 // M2 -> M1 frame
};

std::shared_ptr<GroupCtx> make_group_ctx(i64 p, int n, bool strict, ModelId model);

}  // namespace hq
