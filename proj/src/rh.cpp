#include "rh.hpp"

namespace hq {

QuotientResult quotient_genus(const Classifier& cls, const std::vector<Mat3>& G) {
  const GroupCtx& ctx = cls.ctx();
  const FieldTable& F = ctx.F();
  const i64 q = ctx.tw().params.q;

  if (G.empty()) throw Error(Errc::invalid_argument, "quotient_genus: empty set");
  MatSet keys;
  std::vector<Mat3> elems;
  for (const Mat3& g : G) {
    Mat3 c = ctx.canon(g);
    if (keys.insert(mat_key(c)).second) elems.push_back(c);
  }
  if (elems.size() != G.size())
    throw Error(Errc::invalid_argument, "quotient_genus: duplicate elements");
  if (!keys.count(mat_key(m3::identity(F))))
    throw Error(Errc::invalid_argument, "quotient_genus: identity missing");
  // spot-check closure on a deterministic sample of products
  size_t n = elems.size();
  size_t stride = n <= 24 ? 1 : n / 24;
  for (size_t i = 0; i < n; i += stride)
    for (size_t j = 0; j < n; j += stride) {
      Mat3 pr = ctx.canon(ctx.mul(elems[i], elems[j]));
      if (!keys.count(mat_key(pr)))
        throw Error(Errc::invalid_argument, "quotient_genus: set is not closed under products");
    }

  QuotientResult r;
  r.group_size = (i64)n;
  Mat3 id = m3::identity(F);
  for (const Mat3& g : elems) {
    if (g == id) continue;
    ElementReport rep = cls.classify(g);
    r.census[rep.type] += 1;
    r.delta += rep.i_sigma;
  }
  i64 lhs = q * q - q - 2;  // 2 g(H_q) - 2
  i64 numer = lhs - r.delta;
  if (numer % (2 * r.group_size) != 0)
    throw Error(Errc::internal, "quotient_genus: non-integral genus (delta = " +
                                    std::to_string(r.delta) + ")");
  r.genus = numer / (2 * r.group_size) + 1;
  if (r.genus < 0 || r.genus > q * (q - 1) / 2)
    throw Error(Errc::internal, "quotient_genus: genus out of range");
  return r;
}

}  // namespace hq
