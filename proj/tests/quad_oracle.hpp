#pragma once
// Reference integrals over cut cells, written without the library's clipping or rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using P = Eigen::Vector2d;
using Poly = std::vector<P>;
using Fn = std::function<double(const P&)>;

inline double cross(const P& a, const P& b) { return a.x() * b.y() - a.y() * b.x(); }

inline bool inside_convex(const Poly& c, const P& p, double tol = 1e-13) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    const P& a = c[k];
    const P& b = c[(k + 1) % c.size()];
    if (cross(b - a, p - a) < -tol * (b - a).norm()) return false;
  }
  return true;
}

// Intersection of two convex CCW polygons by collecting candidate vertices and sorting them
// by angle about their mean.
inline Poly convex_intersection(const Poly& A, const Poly& B) {
  std::vector<P> pts;
  for (const P& p : A)
    if (inside_convex(B, p)) pts.push_back(p);
  for (const P& p : B)
    if (inside_convex(A, p)) pts.push_back(p);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const P a0 = A[i], a1 = A[(i + 1) % A.size()];
    for (std::size_t j = 0; j < B.size(); ++j) {
      const P b0 = B[j], b1 = B[(j + 1) % B.size()];
      const P r = a1 - a0, s = b1 - b0;
      const double den = cross(r, s);
      if (std::abs(den) < 1e-300) continue;
      const double t = cross(b0 - a0, s) / den;
      const double u = cross(b0 - a0, r) / den;
      if (t >= 0 && t <= 1 && u >= 0 && u <= 1) pts.push_back(a0 + t * r);
    }
  }
  if (pts.size() < 3) return {};
  P m = P::Zero();
  for (const P& p : pts) m += p;
  m /= double(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const P& a, const P& b) {
    return std::atan2(a.y() - m.y(), a.x() - m.x()) < std::atan2(b.y() - m.y(), b.x() - m.x());
  });
  Poly out;
  for (const P& p : pts)
    if (out.empty() || (p - out.back()).norm() > 1e-14) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= 1e-14) out.pop_back();
  return out.size() < 3 ? Poly{} : out;
}

// 4x4 Gauss-Legendre on [0,1]
inline const std::array<std::pair<double, double>, 4>& gauss4() {
  static const std::array<std::pair<double, double>, 4> g = [] {
    const double x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
    const double w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
    std::array<std::pair<double, double>, 4> r;
    for (int k = 0; k < 4; ++k) r[k] = {0.5 * (x[k] + 1), 0.5 * w[k]};
    return r;
  }();
  return g;
}

// Collapsed (Duffy) product rule, exact for degree 6 on a triangle.
inline double triangle_integral(const P& a, const P& b, const P& c, const Fn& f) {
  const double J = std::abs(cross(b - a, c - a));
  double s = 0.0;
  for (const auto& [u, wu] : gauss4()) {
    for (const auto& [v, wv] : gauss4()) {
      const double xi = u, eta = v * (1 - u);
      s += wu * wv * (1 - u) * f(a + xi * (b - a) + eta * (c - a));
    }
  }
  return J * s;
}

inline double refined_triangle_integral(const P& a, const P& b, const P& c, const Fn& f, int levels) {
  if (levels == 0) return triangle_integral(a, b, c, f);
  const P ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  return refined_triangle_integral(a, ab, ca, f, levels - 1) + refined_triangle_integral(ab, b, bc, f, levels - 1) +
         refined_triangle_integral(ca, bc, c, f, levels - 1) + refined_triangle_integral(ab, bc, ca, f, levels - 1);
}

inline double polygon_integral(const Poly& p, const Fn& f, int levels = 2) {
  double s = 0.0;
  for (std::size_t k = 1; k + 1 < p.size(); ++k) s += refined_triangle_integral(p[0], p[k], p[k + 1], f, levels);
  return s;
}

inline double area(const Poly& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += cross(p[k], p[(k + 1) % p.size()]);
  return 0.5 * s;
}

// Star-shaped polygon about `centre`; the fan from the centre triangulates it into convex pieces.
struct Star {
  P centre;
  Poly vertices;
};

inline Star random_star(std::mt19937_64& rng, const P& centre, double radius) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  // at least four rays keep every gap below pi, so the centre stays in the kernel
  const int n = 4 + static_cast<int>(U(rng) * 5);
  std::vector<double> ang;
  for (int k = 0; k < n; ++k) ang.push_back(2 * M_PI * (k + 0.15 + 0.7 * U(rng)) / n);
  Star s{centre, {}};
  for (double a : ang) s.vertices.push_back(centre + radius * (0.35 + 0.65 * U(rng)) * P(std::cos(a), std::sin(a)));
  return s;
}

inline double star_triangle_integral(const Star& s, const Poly& tri, const Fn& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    const Poly fan{s.centre, s.vertices[k], s.vertices[(k + 1) % s.vertices.size()]};
    const Poly cut = convex_intersection(tri, fan);
    if (!cut.empty()) sum += polygon_integral(cut, f);
  }
  return sum;
}

// Random polynomial of total degree <= deg in coordinates relative to `origin`.
struct Polynomial {
  P origin;
  std::vector<std::array<double, 3>> terms;  // coefficient, power of x, power of y
  double operator()(const P& p) const {
    const P q = p - origin;
    double s = 0.0;
    for (const auto& t : terms) s += t[0] * std::pow(q.x(), t[1]) * std::pow(q.y(), t[2]);
    return s;
  }
};

inline Polynomial random_polynomial(std::mt19937_64& rng, const P& origin, double scale, int deg = 4) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Polynomial p{origin, {}};
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; a + b <= deg; ++b) p.terms.push_back({U(rng) / std::pow(scale, a + b), double(a), double(b)});
  return p;
}

}  // namespace oracle
