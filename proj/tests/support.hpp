#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ftp/configuration.hpp"
#include "ftp/geom.hpp"

namespace ftp::test {

// Side-1 equilateral triangle centered at the origin.
inline Configuration equilateral(double radius = 0.1, std::vector<double> w = {1, 1, 1}) {
  const double R = 1.0 / std::sqrt(3.0);
  std::vector<Circle> circles;
  for (int k = 0; k < 3; ++k) {
    const double a = kPi / 2 + k * kTwoPi / 3;
    circles.push_back({{R * std::cos(a), R * std::sin(a)}, radius});
  }
  return make_configuration(circles, std::move(w));
}

inline std::vector<double> normalized(std::vector<double> w) {
  double s = 0.0;
  for (double x : w) s += x;
  for (double& x : w) x /= s;
  return w;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Brute-force equilibrium weights: the null vector of the 2 x n matrix of
// unit rays, fixed by free weights for sites 3..n-1 and the total. Solved by
// Gaussian elimination on the 2x2 block of sites 1, 2 with w0 as parameter;
// deliberately avoids every library routine under test.
inline std::vector<double> equilibrium_weights(Point2 p, const std::vector<Point2>& targets,
                                               const std::vector<double>& free, double total) {
  const std::size_t n = targets.size();
  std::vector<Point2> u;
  for (Point2 t : targets) u.push_back(unit(t - p));
  // Sum over free sites of w_j u_j.
  Point2 f;
  double fs = 0.0;
  for (std::size_t j = 3; j < n; ++j) {
    f = f + free[j - 3] * u[j];
    fs += free[j - 3];
  }
  // w0 u0 + w1 u1 + w2 u2 = -f; w0 + w1 + w2 = total - fs.
  // Cramer on the 3x3 system.
  const double m[3][3] = {{u[0].x, u[1].x, u[2].x}, {u[0].y, u[1].y, u[2].y}, {1, 1, 1}};
  const double r[3] = {-f.x, -f.y, total - fs};
  auto det = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  std::vector<double> w(n);
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mc[i][j] = (j == c) ? r[i] : m[i][j];
    w[c] = det(mc) / d;
  }
  for (std::size_t j = 3; j < n; ++j) w[j] = free[j - 3];
  return w;
}

}  // namespace ftp::test
