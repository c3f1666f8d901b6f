#pragma once

#include <optional>

#include "cheegerlab/deformation.hpp"

namespace cheegerlab {

enum class ControlKind { none, broken_axioms, broken_invariance };

/// A fully specified instance: groupoid action in explicit charts, the
/// metric hierarchy, and the declared hypothesis/control flags. Immutable
/// after load; hand-derived closed forms live in docs/scenario_notes.md.
struct Scenario {
  std::string name;
  ActionSpec action;
  MetricField Q;     // 1-metric candidate on the arrows
  MetricField etaP;  // transversely invariant candidate on P
  MetricField eta0;  // object metric
  std::optional<MetricField> eta2;          // on the composable pairs
  std::vector<SmoothMap> s3_generators;     // isometry generators for eta2
  ControlKind control = ControlKind::none;
  std::string notes;  // anchor into docs/scenario_notes.md

  /// n canonical sample points of P (seeded).
  std::vector<Point> sample_points(int n, std::uint64_t seed) const;
};

std::vector<std::string> scenario_names();

/// Registry: hopf_berger, cylinder_pair, torus_submersion, sphere_pair,
/// broken_groupoid, broken_invariance. Raises UnknownScenario otherwise.
Scenario load_scenario(const std::string& name);

// Chart-level building blocks reused by tests.
SmoothMap hopf_circle_action(AtlasPtr circle, AtlasPtr sphere3);  // on S1 x S3
SmoothMap hopf_projection(AtlasPtr sphere3, AtlasPtr sphere2);    // S3 -> S2(1/2) chart map

/// Canonical action of a groupoid on its own objects along the identity.
ActionSpec canonical_action(const GroupoidSpec& G, bool hypothesis_flag);

}  // namespace cheegerlab
