#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "finban/matrix.hpp"
#include "finban/rational.hpp"

namespace finban {

// A full-dimensional, centrally symmetric rational polytope containing the
// origin in its interior. Both descriptions are always present:
//   vertices: the extreme points of the body,
//   facets:   the functionals f with facet hyperplane <f,x> = 1, which are
//             exactly the vertices of the polar body.
// Both lists are minimal, closed under negation and sorted lexicographically.
// Values are immutable and cheap to copy.
class SymPolytope {
 public:
  // Convex hull of a symmetric spanning point set.
  static SymPolytope from_points(std::vector<RatVec> points);
  // Body {x : <f,x> <= 1 for all f}; the facet list may be redundant.
  static SymPolytope from_facets(std::vector<RatVec> facets);
  // Trusted constructor for bodies whose two descriptions are known in closed
  // form (coordinate balls, products). Lists are re-sorted but not checked.
  static SymPolytope from_both_unchecked(std::size_t dim, std::vector<RatVec> vertices, std::vector<RatVec> facets);

  static SymPolytope cross_polytope(std::size_t n);
  static SymPolytope cube(std::size_t n);
  static SymPolytope segment(const Rat& half_length);

  std::size_t dim() const { return d_->dim; }
  const std::vector<RatVec>& vertices() const { return *d_->vertices; }
  const std::vector<RatVec>& facets() const { return *d_->facets; }

  // Same body with the two descriptions exchanged; shares storage.
  SymPolytope swapped() const;

  bool operator==(const SymPolytope& o) const {
    return d_ == o.d_ || (d_->dim == o.d_->dim && vertices() == o.vertices() && facets() == o.facets());
  }

 private:
  using List = std::shared_ptr<const std::vector<RatVec>>;
  struct Data {
    std::size_t dim;
    List vertices;
    List facets;
  };
  explicit SymPolytope(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Checks every structural invariant; returns an empty string when valid,
// otherwise a description of the first violation.
std::string validate(const SymPolytope& p);

// Extreme points of a symmetric spanning point set, each certified by an
// exact feasibility LP (a point is dropped iff it lies in the hull of the rest).
std::vector<RatVec> hull_reduce(const std::vector<RatVec>& points);

SymPolytope polar(const SymPolytope& p);
SymPolytope vertex_enum(const std::vector<RatVec>& facets);

// Image body T(P); T must have full row rank.
SymPolytope linear_image(const SymPolytope& p, const RatMat& t);

// {c : basis * c in P} in the coordinates of the basis columns.
SymPolytope section(const SymPolytope& p, const RatMat& basis);

// One lex-positive representative per direction, parallel lengths summed,
// sorted. Zero generators raise NotSpanning.
std::vector<RatVec> canonical_generators(const std::vector<RatVec>& gens);

// Minkowski sum of the segments [-g, g].
SymPolytope zonotope_of(const std::vector<RatVec>& generators);

Rat support(const SymPolytope& p, const RatVec& x);
Rat gauge(const SymPolytope& p, const RatVec& x);

struct Edge {
  std::size_t a;          // index into vertices()
  std::size_t b;
  RatVec direction;       // vertices[b] - vertices[a]
  Rat length_squared;
  double length() const;
};

std::vector<Edge> edges(const SymPolytope& p);

// Vertex sets (as indices) of all 2-dimensional faces.
std::vector<std::vector<std::size_t>> two_faces(const SymPolytope& p);

// Every 2-face centrally symmetric.
bool is_zonotope(const SymPolytope& p);

// A linear map T with T(vertices(P)) = vertices(Q), or nothing.
std::optional<RatMat> congruent(const SymPolytope& p, const SymPolytope& q);

// Every such map (the full finite set); used for automorphism searches.
std::vector<RatMat> all_congruences(const SymPolytope& p, const SymPolytope& q, std::size_t limit = 0);

// Cheap linear invariants used to reject non-congruent pairs early.
struct CongruenceKey {
  std::size_t dim = 0;
  std::size_t vertex_count = 0;
  std::size_t facet_count = 0;
  std::vector<Rat> vertex_forms;  // sorted v^T M^-1 v, M = sum of v v^T
  bool operator==(const CongruenceKey&) const = default;
};
CongruenceKey congruence_key(const SymPolytope& p);

namespace detail {
// Vertices of {x : <a_i, x> <= 1}; double description over integer rays.
std::vector<RatVec> enumerate_vertices(const std::vector<RatVec>& halfspaces, std::size_t dim);
}  // namespace detail

}  // namespace finban
