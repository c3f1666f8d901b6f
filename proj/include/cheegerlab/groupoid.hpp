#pragma once

#include "cheegerlab/metric.hpp"
#include "cheegerlab/rng.hpp"

namespace cheegerlab {

/// Structure maps of a Lie groupoid in chart coordinates, together with an
/// explicit atlas for the composable-pair space and a seeded sampler.
/// Fibered products are never solved numerically: comp and its projections
/// are supplied per construction and verified by sampling.
struct GroupoidSpec {
  std::string name;
  AtlasPtr arrows;   // G
  AtlasPtr objects;  // M
  AtlasPtr comp;     // G^(2)

  SmoothMap src;   // G -> M
  SmoothMap tgt;   // G -> M
  SmoothMap unit;  // M -> G
  SmoothMap inv;   // G -> G
  SmoothMap mul;   // G^(2) -> G
  SmoothMap pr1;   // G^(2) -> G   (first arrow of the pair)
  SmoothMap pr2;   // G^(2) -> G   (second arrow)

  /// Builds the comp-atlas point of a composable pair; raises
  /// ConstraintViolation when s(g) != t(h) beyond tolerance.
  std::function<Point(const Point& g, const Point& h)> compose_point;

  std::function<Point(Rng&)> sample_object;
  std::function<Point(Rng&)> sample_arrow;
  std::function<Point(Rng&)> sample_comp;
  /// Composable triple (gt, g, h) with s(gt) = t(g), s(g) = t(h).
  std::function<std::array<Point, 3>(Rng&)> sample_triple;

  Point multiply(const Point& g, const Point& h) const {
    return mul(compose_point(g, h));
  }
};

struct AxiomReport {
  double source_law = 0.0;      // s(m(g,h)) = s(h)
  double target_law = 0.0;      // t(m(g,h)) = t(g)
  double associativity = 0.0;   // m(m(gt,g),h) = m(gt,m(g,h))
  double unit_section = 0.0;    // s(1_p) = p = t(1_p)
  double unit_law = 0.0;        // m(1_t(g),g) = g = m(g,1_s(g))
  double inverse_law = 0.0;     // m(g,i(g)) = 1_t(g), m(i(g),g) = 1_s(g)
  double sampler_pair = 0.0;    // s(pr1 z) = t(pr2 z) on sampled z
  bool pass = false;

  double max_residual() const {
    return std::max({source_law, target_law, associativity, unit_section,
                     unit_law, inverse_law, sampler_pair});
  }
};

/// Samples arrows, pairs, and triples and reports the max residual of each
/// groupoid axiom. pass iff all < 1e-8.
AxiomReport check_groupoid_axioms(const GroupoidSpec& G, int n_samples,
                                  std::uint64_t seed);

/// Pair groupoid of M: arrows M x M with s(p,q) = q, t(p,q) = p,
/// 1_p = (p,p), i(p,q) = (q,p), m((p3,p2),(p2,p1)) = (p3,p1).
GroupoidSpec build_pair_groupoid(AtlasPtr M,
                                 std::function<Point(Rng&)> sample_m);

/// Submersion groupoid of f: M -> N presented on an explicit atlas `gf` for
/// M x_N M with slot maps to_first/to_second (the injections into M x M) and
/// an explicit composable atlas. The fiber constraint f(first) = f(second)
/// is verified on samples (ConstraintViolation otherwise).
struct SubmersionGroupoidData {
  SmoothMap f;       // M -> N
  AtlasPtr gf;       // atlas for M x_N M
  SmoothMap to_first;   // gf -> M
  SmoothMap to_second;  // gf -> M
  /// inverse presentation: build the gf point from (first, second)
  std::function<Point(const Point&, const Point&)> from_pair;
  AtlasPtr comp;  // atlas for composable pairs
  SmoothMap comp_pr1, comp_pr2, comp_mul;  // comp -> gf
  std::function<Point(const Point&, const Point&)> compose_point;
  std::function<Point(Rng&)> sample_m;
  std::function<Point(Rng&)> sample_gf;
  std::function<Point(Rng&)> sample_comp;
  std::function<std::array<Point, 3>(Rng&)> sample_triple;
};

GroupoidSpec build_submersion_groupoid(const SubmersionGroupoidData& data,
                                       int n_constraint_samples = 64,
                                       std::uint64_t seed = 11);

}  // namespace cheegerlab
