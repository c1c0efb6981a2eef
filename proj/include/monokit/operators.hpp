#pragma once

#include "monokit/geometry.hpp"
#include "monokit/operator1d.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace monokit {

struct OperatorNode;

struct GraphPair {
  Vec x;
  Vec xstar;
};

struct PLPiece {
  Vec a;
  double b = 0.0;
};

/// Immutable handle to an operator description tree.
class OperatorSpec {
 public:
  static OperatorSpec finite_graph(int dim, std::vector<GraphPair> pairs);
  static OperatorSpec normal_cone(Polyhedron set);
  static OperatorSpec normal_cone_ball(Vec center, double radius);
  /// Subdifferential of x -> max_j <a_j, x> + b_j.
  static OperatorSpec pl_subdifferential(int dim, std::vector<PLPiece> pieces);
  static OperatorSpec sum(OperatorSpec left, OperatorSpec right);
  /// x -> inner(x + z).
  static OperatorSpec translate(OperatorSpec inner, Vec z);
  /// t -> { (<v_i, x*>)_i : x* in inner(base + sum_i t_i v_i) }.
  static OperatorSpec affine_restriction(OperatorSpec inner, AffineSet set);
  /// inner restricted to the points where every cut row holds strictly.
  static OperatorSpec domain_cut(OperatorSpec inner, std::vector<Halfspace> cuts);
  /// inner with its value at one point replaced (nullopt removes the point).
  static OperatorSpec point_patch(OperatorSpec inner, Vec point, std::optional<Polyhedron> value);

  int dim() const;
  const OperatorNode& node() const { return *node_; }

 private:
  explicit OperatorSpec(std::shared_ptr<const OperatorNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const OperatorNode> node_;
};

struct FiniteGraph {
  std::vector<GraphPair> pairs;
};
struct NormalCone {
  Polyhedron set;
};
struct NormalConeBall {
  Vec center;
  double radius = 1.0;
};
struct PLSubdifferential {
  std::vector<PLPiece> pieces;
};
struct Sum {
  OperatorSpec left;
  OperatorSpec right;
};
struct Translate {
  OperatorSpec inner;
  Vec z;
};
struct AffineRestriction {
  OperatorSpec inner;
  AffineSet set;
};
struct DomainCut {
  OperatorSpec inner;
  std::vector<Halfspace> cuts;
};
struct PointPatch {
  OperatorSpec inner;
  Vec point;
  std::optional<Polyhedron> value;
};

using OperatorVariant = std::variant<FiniteGraph, NormalCone, NormalConeBall, PLSubdifferential, Sum,
                                     Translate, AffineRestriction, DomainCut, PointPatch>;

struct OperatorNode {
  int dim = 0;
  OperatorVariant v;
};

Polyhedron evaluate(const OperatorSpec& op, const Vec& x);
DomainSet domain(const OperatorSpec& op);
OperatorSpec translate(const OperatorSpec& op, const Vec& z);
OperatorSpec restrict_affine(const OperatorSpec& op, const AffineSet& set);
/// Exact 1-D operator t -> { <v, x*> : x* in op(z + t v) }.
Operator1D line_trace(const OperatorSpec& op, const Vec& z, const Vec& v);

/// The variant tree contains a ball normal cone anywhere.
bool contains_ball(const OperatorSpec& op);
/// The graph is only known through finitely many pairs.
bool is_finite_graph(const OperatorSpec& op);
/// Graph pairs of a finite graph (possibly behind translations/restrictions).
std::vector<GraphPair> graph_pairs(const OperatorSpec& op);

/// Points where the value of op may jump: structural points of the
/// description (vertices of polyhedra, patch points, graph abscissae).
std::vector<Vec> structural_points(const OperatorSpec& op);

}  // namespace monokit
