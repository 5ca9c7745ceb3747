#pragma once

#include <utility>
#include <vector>

#include "meshfree/errors.hpp"

namespace meshfree {

/// Ordered scattered nodes on a closed interval [a, b].
///
/// spacing_h is the nominal spacing: (b-a)/(N-1) for uniform grids, the
/// maximum adjacent gap for scattered sets.
struct NodeSet {
  std::vector<double> points;
  double a = 0.0;
  double b = 0.0;
  double spacing_h = 0.0;

  int size() const { return static_cast<int>(points.size()); }
};

/// n equally spaced nodes on [a, b], both endpoints included.
NodeSet build_uniform(double a, double b, int n);

/// Wraps an arbitrary strictly increasing point set; spacing_h becomes the
/// maximum adjacent gap.
NodeSet from_points(std::vector<double> points, double a, double b);

/// Deterministically jitters the interior nodes of a uniform grid by up to
/// +/- fraction*h/2 (test utility for nonuniform configurations).
NodeSet jitter(const NodeSet& nodes, double fraction, unsigned long long seed);

/// The star of x: indices of nodes with |x - x_j| < radius (open ball, so
/// nodes exactly on the support boundary carry zero weight and are excluded).
struct Star {
  double center = 0.0;
  double radius = 0.0;
  std::vector<int> member_indices;

  int cardinality() const { return static_cast<int>(member_indices.size()); }
};

Star star(const NodeSet& nodes, double x, double delta);

/// Index half-open range [first, last) of the star, without materializing the
/// member list. Same membership predicate as star().
std::pair<int, int> star_range(const NodeSet& nodes, double x, double delta);

struct UnisolvencyCheck {
  bool pass = false;
  int cardinality = 0;
};

/// Necessary condition for a nonsingular moment matrix of degree m:
/// card(star) >= m + 1.
UnisolvencyCheck check_unisolvency(const Star& s, int degree);

/// Largest gap between consecutive nodes inside the star; 0 for a
/// single-member star.
double star_mesh_size(const NodeSet& nodes, const Star& s);

/// R = max over probes of the star mesh-size at that probe.
/// Throws kEmptyStar naming the probe if some star is empty.
double mesh_size(const NodeSet& nodes, double delta,
                 const std::vector<double>& probes);

}  // namespace meshfree
