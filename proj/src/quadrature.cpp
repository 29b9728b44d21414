#include "velspace/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "velspace/error.hpp"

namespace velspace {

namespace {

struct Node {
  double x;
  double w;
};

constexpr std::array<Node, 8> kGauss8 = {{
    {-9.60289856497536176e-01, 1.01228536290376689e-01},
    {-7.96666477413626728e-01, 2.22381034453374343e-01},
    {-5.25532409916328991e-01, 3.13706645877887047e-01},
    {-1.83434642495649780e-01, 3.62683783378361768e-01},
    {1.83434642495649780e-01, 3.62683783378361768e-01},
    {5.25532409916328991e-01, 3.13706645877887047e-01},
    {7.96666477413626728e-01, 2.22381034453374343e-01},
    {9.60289856497536176e-01, 1.01228536290376689e-01},
}};

constexpr std::array<Node, 16> kGauss16 = {{
    {-9.89400934991649939e-01, 2.71524594117540374e-02},
    {-9.44575023073232600e-01, 6.22535239386477063e-02},
    {-8.65631202387831755e-01, 9.51585116824925914e-02},
    {-7.55404408355002999e-01, 1.24628971255534030e-01},
    {-6.17876244402643771e-01, 1.49595988816576764e-01},
    {-4.58016777657227370e-01, 1.69156519395002619e-01},
    {-2.81603550779258915e-01, 1.82603415044923612e-01},
    {-9.50125098376374544e-02, 1.89450610455068585e-01},
    {9.50125098376374544e-02, 1.89450610455068585e-01},
    {2.81603550779258915e-01, 1.82603415044923612e-01},
    {4.58016777657227370e-01, 1.69156519395002619e-01},
    {6.17876244402643771e-01, 1.49595988816576764e-01},
    {7.55404408355002999e-01, 1.24628971255534030e-01},
    {8.65631202387831755e-01, 9.51585116824925914e-02},
    {9.44575023073232600e-01, 6.22535239386477063e-02},
    {9.89400934991649939e-01, 2.71524594117540374e-02},
}};

template <std::size_t N>
double gauss_1d(const std::function<double(double)>& f, double a, double b,
                const std::array<Node, N>& nodes) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (const Node& n : nodes) sum += n.w * f(mid + half * n.x);
  return half * sum;
}

template <std::size_t N>
double gauss_box(const std::function<double(const Eigen::Vector3d&)>& f,
                 const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                 const std::array<Node, N>& nodes) {
  const Eigen::Vector3d mid = 0.5 * (lo + hi);
  const Eigen::Vector3d half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (const Node& nx : nodes) {
    const double x = mid.x() + half.x() * nx.x;
    for (const Node& ny : nodes) {
      const double y = mid.y() + half.y() * ny.x;
      double row = 0.0;
      for (const Node& nz : nodes) {
        row += nz.w * f({x, y, mid.z() + half.z() * nz.x});
      }
      sum += nx.w * ny.w * row;
    }
  }
  return half.prod() * sum;
}

constexpr int kMaxDepth = 48;
constexpr std::size_t kMaxIntervals = 1 << 16;

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double rel_tol) {
  struct Interval {
    double a, b;
    int depth;
  };
  std::vector<Interval> work{{a, b, 0}};
  double total = 0.0;
  std::size_t processed = 0;
  while (!work.empty()) {
    if (++processed > kMaxIntervals) {
      throw NumericError("integrate_1d: quadrature did not converge");
    }
    const Interval iv = work.back();
    work.pop_back();
    const double coarse = gauss_1d(f, iv.a, iv.b, kGauss8);
    const double fine = gauss_1d(f, iv.a, iv.b, kGauss16);
    const double err = std::abs(fine - coarse);
    if (!std::isfinite(fine)) throw NumericError("integrate_1d: non-finite integrand");
    if (err <= rel_tol * std::abs(fine) || err < 1e-300) {
      total += fine;
      continue;
    }
    if (iv.depth >= kMaxDepth) {
      throw NumericError("integrate_1d: quadrature did not converge");
    }
    const double mid = 0.5 * (iv.a + iv.b);
    work.push_back({iv.a, mid, iv.depth + 1});
    work.push_back({mid, iv.b, iv.depth + 1});
  }
  return total;
}

double integrate_box(const std::function<double(const Eigen::Vector3d&)>& f,
                     const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                     double rel_tol) {
  struct Cell {
    Eigen::Vector3d lo, hi;
    int depth;
  };
  std::vector<Cell> work{{lo, hi, 0}};
  double total = 0.0;
  std::size_t processed = 0;
  while (!work.empty()) {
    if (++processed > kMaxIntervals) {
      throw NumericError("integrate_box: quadrature did not converge");
    }
    const Cell cell = work.back();
    work.pop_back();
    const double coarse = gauss_box(f, cell.lo, cell.hi, kGauss8);
    const double fine = gauss_box(f, cell.lo, cell.hi, kGauss16);
    const double err = std::abs(fine - coarse);
    if (!std::isfinite(fine)) throw NumericError("integrate_box: non-finite integrand");
    if (err <= rel_tol * std::abs(fine) || err < 1e-300) {
      total += fine;
      continue;
    }
    if (cell.depth >= kMaxDepth) {
      throw NumericError("integrate_box: quadrature did not converge");
    }
    int axis = 0;
    (cell.hi - cell.lo).maxCoeff(&axis);
    const double mid = 0.5 * (cell.lo[axis] + cell.hi[axis]);
    Cell left = cell, right = cell;
    left.hi[axis] = mid;
    right.lo[axis] = mid;
    left.depth = right.depth = cell.depth + 1;
    work.push_back(left);
    work.push_back(right);
  }
  return total;
}

}  // namespace velspace
