#include "elastica/types.hpp"

#include <cmath>
#include <numbers>

namespace elastica {

void GridFunction::validate() const {
  if (n() < 5) throw InvalidInput("GridFunction needs at least 5 nodes");
  if (!(hi > lo)) throw InvalidInput("GridFunction interval must satisfy hi > lo");
  if (!values.allFinite()) throw InvalidInput("GridFunction values must be finite");
  if (nonneg && values.minCoeff() < 0.0)
    throw InvalidInput("GridFunction flagged nonnegative has negative values");
}

double PeriodicProfile::h() const { return 2.0 * std::numbers::pi / n(); }

void PeriodicProfile::validate() const {
  if (n() < 8) throw InvalidInput("PeriodicProfile needs at least 8 nodes");
  if (!values.allFinite()) throw InvalidInput("PeriodicProfile values must be finite");
  if (values.maxCoeff() >= 1.0)
    throw InvalidInput("PeriodicProfile values must stay below 1");
}

void SampledCurve::validate() const {
  if (dim != 2 && dim != 3) throw InvalidInput("SampledCurve dimension must be 2 or 3");
  if (points.cols() != dim) throw InvalidInput("SampledCurve points have wrong width");
  if (n() < 8) throw InvalidInput("SampledCurve needs at least 8 nodes");
  if (!points.allFinite()) throw InvalidInput("SampledCurve points must be finite");
  const int m = periodic ? n() : n() - 1;
  for (int i = 0; i < m; ++i) {
    if ((points.row((i + 1) % n()) - points.row(i)).norm() == 0.0)
      throw InvalidInput("SampledCurve has repeated consecutive points");
  }
}

}  // namespace elastica
