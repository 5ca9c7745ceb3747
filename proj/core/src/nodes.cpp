#include "meshfree/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace meshfree {

namespace {

void validate_points(const std::vector<double>& points, double a, double b) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kTooFewNodes, "node set needs at least 2 points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < a || points[i] > b) {
      std::ostringstream os;
      os << "node " << points[i] << " lies outside [" << a << ", " << b << "]";
      throw Error(ErrorCode::kInvalidNodeSet, os.str());
    }
    if (i > 0 && points[i] <= points[i - 1]) {
      throw Error(ErrorCode::kInvalidNodeSet,
                  "node coordinates must be strictly increasing");
    }
  }
}

double max_gap(const std::vector<double>& points) {
  double g = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    g = std::max(g, points[i] - points[i - 1]);
  }
  return g;
}

}  // namespace

NodeSet build_uniform(double a, double b, int n) {
  if (b <= a) {
    throw Error(ErrorCode::kInvalidInterval, "interval end must exceed start");
  }
  if (n < 2) {
    throw Error(ErrorCode::kTooFewNodes, "uniform grid needs n >= 2");
  }
  NodeSet nodes;
  nodes.a = a;
  nodes.b = b;
  nodes.spacing_h = (b - a) / (n - 1);
  nodes.points.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes.points[i] = a + nodes.spacing_h * i;
  }
  nodes.points.back() = b;  // exact endpoint
  return nodes;
}

NodeSet from_points(std::vector<double> points, double a, double b) {
  if (b <= a) {
    throw Error(ErrorCode::kInvalidInterval, "interval end must exceed start");
  }
  validate_points(points, a, b);
  NodeSet nodes;
  nodes.a = a;
  nodes.b = b;
  nodes.spacing_h = max_gap(points);
  nodes.points = std::move(points);
  return nodes;
}

NodeSet jitter(const NodeSet& nodes, double fraction, unsigned long long seed) {
  if (fraction < 0.0 || fraction >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "jitter fraction must be in [0, 1)");
  }
  if (fraction == 0.0) return nodes;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-0.5 * fraction,
                                               0.5 * fraction);
  std::vector<double> moved = nodes.points;
  for (std::size_t i = 1; i + 1 < moved.size(); ++i) {
    moved[i] += shift(rng) * nodes.spacing_h;
  }
  return from_points(std::move(moved), nodes.a, nodes.b);
}

std::pair<int, int> star_range(const NodeSet& nodes, double x, double delta) {
  const auto& p = nodes.points;
  auto lo = std::upper_bound(p.begin(), p.end(), x - delta);
  auto hi = std::lower_bound(p.begin(), p.end(), x + delta);
  return {static_cast<int>(lo - p.begin()), static_cast<int>(hi - p.begin())};
}

Star star(const NodeSet& nodes, double x, double delta) {
  if (delta <= 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "support radius must be positive");
  }
  auto [lo, hi] = star_range(nodes, x, delta);
  Star s;
  s.center = x;
  s.radius = delta;
  s.member_indices.resize(hi - lo);
  for (int i = lo; i < hi; ++i) s.member_indices[i - lo] = i;
  return s;
}

UnisolvencyCheck check_unisolvency(const Star& s, int degree) {
  UnisolvencyCheck check;
  check.cardinality = s.cardinality();
  check.pass = check.cardinality >= degree + 1;
  return check;
}

double star_mesh_size(const NodeSet& nodes, const Star& s) {
  double g = 0.0;
  for (std::size_t i = 1; i < s.member_indices.size(); ++i) {
    g = std::max(g, nodes.points[s.member_indices[i]] -
                        nodes.points[s.member_indices[i - 1]]);
  }
  return g;
}

double mesh_size(const NodeSet& nodes, double delta,
                 const std::vector<double>& probes) {
  if (probes.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "mesh_size needs at least one probe");
  }
  double r = 0.0;
  for (double c : probes) {
    Star s = star(nodes, c, delta);
    if (s.cardinality() == 0) {
      std::ostringstream os;
      os << "empty star at probe " << c << " with radius " << delta;
      throw Error(ErrorCode::kEmptyStar, os.str());
    }
    r = std::max(r, star_mesh_size(nodes, s));
  }
  return r;
}

}  // namespace meshfree
