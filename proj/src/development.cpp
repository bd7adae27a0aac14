#include "curvlab/development.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace curvlab {

DevelopedCurve develop(const Space& s, const Path& curve, const SpacePoint& p, Kappa k, int n) {
  if (n < 2) throw std::invalid_argument("develop: n >= 2");
  const double L = curve.length();
  DevelopedCurve dev;
  dev.k = k;
  dev.params.reserve(n + 1);
  dev.radial.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = L * i / n;
    dev.params.push_back(t);
    dev.radial.push_back(s.distance(p, curve.at(t)));
  }
  const double guard = 1e-7 + 4 * s.distance_error_estimate();
  for (double d : dev.radial)
    if (d <= guard) throw std::invalid_argument("develop: base point lies on the curve");
  if (k.k > 0) {
    const double bound = M_PI / std::sqrt(k.k);
    for (double d : dev.radial)
      if (d >= bound) throw std::invalid_argument("develop: curve beyond the model diameter");
  }

  dev.base_angle.assign(n + 1, 0.0);
  const double chord_tol = 1e-9 + 4 * s.distance_error_estimate();
  for (int i = 0; i < n; ++i) {
    const double dt = dev.params[i + 1] - dev.params[i];
    double da = dev.radial[i], db = dev.radial[i + 1];
    // the model triangle needs |da - db| <= dt; clamp noise, reject more
    if (std::abs(da - db) > dt + chord_tol)
      throw std::runtime_error("develop: radial/chord data inconsistent beyond tolerance");
    if (std::abs(da - db) > dt) {
      const double mid = 0.5 * (da + db), half = 0.5 * dt;
      da = mid - (da < db ? half : -half) * 0.0 - (da < db ? half : half) * 0.0;  // keep means
      da = mid + ((dev.radial[i] < dev.radial[i + 1]) ? -half : half);
      db = mid + ((dev.radial[i] < dev.radial[i + 1]) ? half : -half);
    }
    const double step = angle_from_sides(k, da, db, dt);
    dev.base_angle[i + 1] = dev.base_angle[i] + step;  // left turning side
  }
  return dev;
}

std::vector<double> DevelopedCurve::turning_margins() const {
  std::vector<double> out;
  const std::size_t m = size();
  if (m < 3) return out;
  out.reserve(m - 2);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double dt_in = params[i] - params[i - 1];
    const double dt_out = params[i + 1] - params[i];
    // angle at the sample between the chord to its neighbour and the radius
    const double a_in = angle_from_sides(k, dt_in, radial[i], radial[i - 1]);
    const double a_out = angle_from_sides(k, dt_out, radial[i], radial[i + 1]);
    out.push_back(M_PI - a_in - a_out);
  }
  return out;
}

ConcavityReport is_convex_development(const DevelopedCurve& dev, double tol) {
  ConcavityReport rep;
  rep.tol = tol;
  rep.h = dev.size() > 1 ? dev.params[1] - dev.params[0] : 0.0;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const auto margins = dev.turning_margins();
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (margins[i] < rep.worst_margin) {
      rep.worst_margin = margins[i];
      rep.witness_index = static_cast<int>(i) + 1;
    }
  }
  if (margins.empty()) rep.worst_margin = 0.0;
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

void write_development_csv(const DevelopedCurve& dev, std::ostream& out) {
  out << "t,x,y,radial_distance,turning_angle\n";
  const auto margins = dev.turning_margins();
  for (std::size_t i = 0; i < dev.size(); ++i) {
    const double x = dev.radial[i] * std::cos(dev.base_angle[i]);
    const double y = dev.radial[i] * std::sin(dev.base_angle[i]);
    const double turn = (i >= 1 && i + 1 < dev.size()) ? margins[i - 1] : 0.0;
    out << dev.params[i] << ',' << x << ',' << y << ',' << dev.radial[i] << ',' << turn << '\n';
  }
}

}  // namespace curvlab
