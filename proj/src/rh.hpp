#pragma once

#include "classify.hpp"

namespace hq {

struct QuotientResult {
  i64 group_size = 0;
  i64 delta = 0;  // degree of the different
  i64 genus = 0;
  Census census;
};

/// Genus of the quotient curve by a concrete subgroup, from the sum of the
/// per-element ramification contributions. Exact; a non-integral genus is an
/// internal error (a classification bug), never a data condition.
QuotientResult quotient_genus(const Classifier& cls, const std::vector<Mat3>& G);

}  // namespace hq
