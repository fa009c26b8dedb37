#pragma once

#include <map>
#include <string>

#include "group.hpp"

namespace hq {

using ParamMap = std::map<std::string, i64>;

struct NamedGroup {
  std::string family;
  ParamMap params;
  ModelId model = ModelId::M1;  // frame the elements live in
  std::vector<Mat3> elements;   // closed, canonical, sorted
};

/// Builds the named subgroup families from their explicit generator
/// matrices. Field constants are searched deterministically (smallest code
/// first); a missing constant or a failed divisibility hypothesis throws.
///
/// Families and parameters:
///   mq                 {omit}              the full standard M_q copy (M1)
///   elation            {k, d, omega?}      E_{p^k} x| C_{2d}, model M2
///   cyclic2d-qm1       {d, omega?}         C_{2d omega}, d | q-1, model M2
///   cyclic2d-qp1       {d}                 C_{2d}, 2d | q+1, model M1
///   cdxc2              {d, omega?}         C_d x C_2, d | q+1 even, model M1
///   dihedral-qm1       {d, omega?}         order 2d, d | q-1, model M2
///   dihedral-qp1       {d, omega?}         order 2d, d | q+1, model M1
///   dicyclic-qm1       {m, omega?}         Dic_m, m | (q-1)/2, model M2
///   dicyclic-qp1       {m, omega?}         Dic_m, m | (q+1)/2, model M1
///   dicyclic-hat       {m, omega?}         order 8m, m | (q-1)/2 not (q-1)/4, M2
///   c2mxc2c4           {m, omega?}         (C_2m x C_2) C_4, 2m | q+1, model M1
///   sl23               {omega?}            SL(2,3), p >= 5, model M2
///   sl23x2             {omega?}            SL(2,3) x| C_2 of order 48, model M2
///   sl25               {omega?}            SL(2,5) inside H, q^2 = 1 mod 5 (search)
///   sl2-subfield       {k, omega?}         SL(2,p^k) <= H, k | n
///   tl2-subfield       {k, omega?}         TL(2,p^k), k | n, n/k even (search)
///   su-subfield        {k, omega?}         SU+-(2,p^k), k | n, n/k odd, model M1
///   singer             {nu}                C_nu, nu | q^2-q+1
///   singer-normalizer  {nu}                C_nu x| C_3
///   selfpolar-torus    {i1,j1,i2?,j2?,i3?,j3?}  subgroup of C_{q+1} x C_{q+1}
///   selfpolar-idx2     {i1,j1,...}         torus part + point swap
///   selfpolar-idx3     {i1,j1,...}         torus part + triangle rotation
///   selfpolar-idx6     {i1,j1,...}         torus part + both
///   fixed-point        {g1, g2, g3}        curve-point stabilizer, model M2
NamedGroup named_subgroup(const GroupCtx& ctx, const std::string& family,
                          const ParamMap& params);

/// Elements of a named group carried to the M1 frame (no-op when already M1).
std::vector<Mat3> to_model_m1(const GroupCtx& ctx, const NamedGroup& g);

/// M1-frame subgroup conjugated so its fixed off-curve point is (0,0,1).
std::vector<Mat3> into_standard_mq(const GroupCtx& ctx, const std::vector<Mat3>& g);

}  // namespace hq
