#include "cheegerlab/scenario.hpp"

#include <cmath>
#include <numbers>

namespace cheegerlab {

namespace {

constexpr double kPi = std::numbers::pi;

Point sample_circle(const ChartAtlas& atlas, Rng& rng) {
  return circle_point(atlas, rng.uniform(-kPi, kPi));
}

Point sample_sphere(const ChartAtlas& atlas, Rng& rng) {
  VectorXd x(atlas.dim() + 1);
  for (int i = 0; i < x.size(); ++i) x[i] = rng.normal();
  if (x.norm() < 1e-8) x = VectorXd::Unit(atlas.dim() + 1, 0);
  x.normalize();
  return sphere_point(atlas, x);
}

// ------------------------------------------------------------------ hopf ---

VectorXd rotate_pairs(const VectorXd& x, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  VectorXd y(4);
  y[0] = c * x[0] - s * x[1];
  y[1] = s * x[0] + c * x[1];
  y[2] = c * x[2] - s * x[3];
  y[3] = s * x[2] + c * x[3];
  return y;
}

Scenario make_hopf_berger() {
  Scenario S;
  S.name = "hopf_berger";
  S.notes = "scenario_notes.md#hopf_berger";

  AtlasPtr M = point_atlas();
  AtlasPtr circle = circle_atlas();
  AtlasPtr s3 = sphere_atlas(3);
  AtlasPtr comp = product_atlas("circle_pairs", {circle, circle});

  GroupoidSpec G;
  G.name = "circle_group";
  G.arrows = circle;
  G.objects = M;
  G.comp = comp;
  Point star = point_of(*M);
  G.src = constant_map(circle, M, star);
  G.tgt = constant_map(circle, M, star);
  G.unit = SmoothMap{M, circle, [circle](const Point&) {
                       return circle_point(*circle, 0.0);
                     }};
  G.inv = SmoothMap{circle, circle, [circle](const Point& g) {
                      return circle_point(*circle, -circle_angle(g));
                    }};
  G.mul = SmoothMap{comp, circle, [comp, circle](const Point& z) {
                      auto gh = product_split(*comp, z);
                      return circle_point(*circle,
                                          circle_angle(gh[0]) + circle_angle(gh[1]));
                    }};
  G.pr1 = SmoothMap{comp, circle, [comp](const Point& z) {
                      return product_split(*comp, z)[0];
                    }};
  G.pr2 = SmoothMap{comp, circle, [comp](const Point& z) {
                      return product_split(*comp, z)[1];
                    }};
  G.compose_point = [comp](const Point& g, const Point& h) {
    return product_point(*comp, {g, h});
  };
  G.sample_object = [M](Rng&) { return point_of(*M); };
  G.sample_arrow = [circle](Rng& rng) { return sample_circle(*circle, rng); };
  G.sample_comp = [comp, circle](Rng& rng) {
    return product_point(*comp, {sample_circle(*circle, rng),
                                 sample_circle(*circle, rng)});
  };
  G.sample_triple = [circle](Rng& rng) {
    return std::array<Point, 3>{sample_circle(*circle, rng),
                                sample_circle(*circle, rng),
                                sample_circle(*circle, rng)};
  };

  ActionSpec A;
  A.G = G;
  A.total = s3;
  A.alpha = constant_map(s3, M, star);
  A.fp = product_atlas("hopf_arrows", {circle, s3});
  auto fp = A.fp;
  A.fp_to_G = SmoothMap{fp, circle, [fp](const Point& z) {
                          return product_split(*fp, z)[0];
                        }};
  A.fp_to_P = SmoothMap{fp, s3, [fp](const Point& z) {
                          return product_split(*fp, z)[1];
                        }};
  A.fp_compose = [fp](const Point& g, const Point& p) {
    return product_point(*fp, {g, p});
  };
  A.mu = SmoothMap{fp, s3, [fp, s3](const Point& z) {
                     auto gp = product_split(*fp, z);
                     VectorXd x = sphere_embed(gp[1]);
                     return sphere_point(*s3, rotate_pairs(x, circle_angle(gp[0])));
                   }};
  A.hypothesis_normal_in_fiber = true;
  A.sample_total = [s3](Rng& rng) { return sample_sphere(*s3, rng); };
  A.sample_fp = [fp, circle, s3](Rng& rng) {
    return product_point(*fp, {sample_circle(*circle, rng),
                               sample_sphere(*s3, rng)});
  };

  A.acomp = product_atlas("hopf_comp", {circle, circle, s3});
  auto acomp = A.acomp;
  auto mu = A.mu;
  auto fpc = A.fp_compose;
  A.acomp_pr1 = SmoothMap{acomp, fp, [acomp, fp, mu, fpc](const Point& z) {
                            auto t = product_split(*acomp, z);
                            Point hp = product_point(*fp, {t[1], t[2]});
                            return fpc(t[0], mu(hp));
                          }};
  A.acomp_pr2 = SmoothMap{acomp, fp, [acomp, fp](const Point& z) {
                            auto t = product_split(*acomp, z);
                            return product_point(*fp, {t[1], t[2]});
                          }};
  A.acomp_mul = SmoothMap{acomp, fp, [acomp, fp, circle](const Point& z) {
                            auto t = product_split(*acomp, z);
                            Point sum = circle_point(
                                *circle, circle_angle(t[0]) + circle_angle(t[1]));
                            return product_point(*fp, {sum, t[2]});
                          }};
  A.acompose_point = [acomp, fp, mu, s3](const Point& z1, const Point& z2) {
    auto a = product_split(*fp, z1);
    auto b = product_split(*fp, z2);
    double mismatch = s3->distance(a[1], mu(z2));
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "action arrows not composable", mismatch);
    return product_point(*acomp, {a[0], b[0], b[1]});
  };
  A.sample_acomp = [acomp, circle, s3](Rng& rng) {
    return product_point(*acomp, {sample_circle(*circle, rng),
                                  sample_circle(*circle, rng),
                                  sample_sphere(*s3, rng)});
  };
  auto fp_of = [fp](const Point& g, const Point& p) {
    return product_point(*fp, {g, p});
  };
  A.sample_atriple = [fp_of, circle, s3, mu, fp](Rng& rng) {
    Point t3 = sample_circle(*circle, rng);
    Point t2 = sample_circle(*circle, rng);
    Point t1 = sample_circle(*circle, rng);
    Point p = sample_sphere(*s3, rng);
    Point h = fp_of(t1, p);
    Point g = fp_of(t2, mu(h));
    Point gt = fp_of(t3, mu(g));
    return std::array<Point, 3>{gt, g, h};
  };

  S.action = A;
  S.Q = constant_metric(circle, MatrixXd::Identity(1, 1));
  S.etaP = round_sphere_metric(s3, 1.0);
  S.eta0 = constant_metric(M, MatrixXd(0, 0));
  MatrixXd e2(2, 2);
  e2 << 4.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0;
  S.eta2 = constant_metric(comp, e2);
  // (1,3): (g,h) -> (i(h), i(g)); (1,2): (g,h) -> (m(g,h), i(h))
  S.s3_generators.push_back(
      SmoothMap{comp, comp, [comp, circle](const Point& z) {
                  auto gh = product_split(*comp, z);
                  return product_point(
                      *comp, {circle_point(*circle, -circle_angle(gh[1])),
                              circle_point(*circle, -circle_angle(gh[0]))});
                }});
  S.s3_generators.push_back(
      SmoothMap{comp, comp, [comp, circle](const Point& z) {
                  auto gh = product_split(*comp, z);
                  double a = circle_angle(gh[0]), b = circle_angle(gh[1]);
                  return product_point(*comp,
                                       {circle_point(*circle, a + b),
                                        circle_point(*circle, -b)});
                }});
  return S;
}

// ----------------------------------------------------- cylinder (pair S1) ---

Scenario make_cylinder_pair(bool broken_mul, bool broken_metric) {
  Scenario S;
  S.name = broken_mul ? "broken_groupoid"
                      : (broken_metric ? "broken_invariance" : "cylinder_pair");
  S.notes = "scenario_notes.md#cylinder_pair";
  S.control = broken_mul ? ControlKind::broken_axioms
                         : (broken_metric ? ControlKind::broken_invariance
                                          : ControlKind::none);

  AtlasPtr circle = circle_atlas();
  AtlasPtr s2 = sphere_atlas(2);
  auto circle_sampler = [circle](Rng& rng) { return sample_circle(*circle, rng); };
  GroupoidSpec G = build_pair_groupoid(circle, circle_sampler);
  if (broken_mul) {
    // negative control: multiplication with swapped slots
    auto comp = G.comp;
    auto arrows = G.arrows;
    G.mul = SmoothMap{comp, arrows, [comp, arrows](const Point& z) {
                        auto t = product_split(*comp, z);
                        return product_point(*arrows, {t[2], t[0]});
                      }};
  }

  ActionSpec A;
  A.G = G;
  A.total = product_atlas("cylinder", {circle, s2});
  auto P = A.total;
  A.alpha = SmoothMap{P, circle, [P](const Point& p) {
                        return product_split(*P, p)[0];
                      }};
  A.fp = product_atlas("cylinder_arrows", {circle, circle, s2});
  auto fp = A.fp;
  auto arrows = G.arrows;
  A.fp_to_G = SmoothMap{fp, arrows, [fp, arrows](const Point& z) {
                          auto t = product_split(*fp, z);
                          return product_point(*arrows, {t[0], t[1]});
                        }};
  A.fp_to_P = SmoothMap{fp, P, [fp, P](const Point& z) {
                          auto t = product_split(*fp, z);
                          return product_point(*P, {t[1], t[2]});
                        }};
  A.fp_compose = [fp, P, arrows, circle](const Point& g, const Point& p) {
    auto ga = product_split(*arrows, g);
    auto pp = product_split(*P, p);
    double mismatch = circle->distance(ga[1], pp[0]);
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "arrow source does not match the moment image", mismatch);
    return product_point(*fp, {ga[0], pp[0], pp[1]});
  };
  A.mu = SmoothMap{fp, P, [fp, P](const Point& z) {
                     auto t = product_split(*fp, z);
                     return product_point(*P, {t[0], t[2]});
                   }};
  A.hypothesis_normal_in_fiber = true;
  A.sample_total = [P, circle, s2](Rng& rng) {
    return product_point(*P, {sample_circle(*circle, rng),
                              sample_sphere(*s2, rng)});
  };
  A.sample_fp = [fp, circle, s2](Rng& rng) {
    return product_point(*fp, {sample_circle(*circle, rng),
                               sample_circle(*circle, rng),
                               sample_sphere(*s2, rng)});
  };
  A.acomp = product_atlas("cylinder_comp", {circle, circle, circle, s2});
  auto acomp = A.acomp;
  A.acomp_pr1 = SmoothMap{acomp, fp, [acomp, fp](const Point& z) {
                            auto t = product_split(*acomp, z);
                            return product_point(*fp, {t[0], t[1], t[3]});
                          }};
  A.acomp_pr2 = SmoothMap{acomp, fp, [acomp, fp](const Point& z) {
                            auto t = product_split(*acomp, z);
                            return product_point(*fp, {t[1], t[2], t[3]});
                          }};
  A.acomp_mul = SmoothMap{acomp, fp, [acomp, fp](const Point& z) {
                            auto t = product_split(*acomp, z);
                            return product_point(*fp, {t[0], t[2], t[3]});
                          }};
  A.acompose_point = [acomp, fp, P, circle, s2](const Point& z1, const Point& z2) {
    auto a = product_split(*fp, z1);  // (a2, a1', q')
    auto b = product_split(*fp, z2);  // (a1, x, q)
    double mismatch = std::max(circle->distance(a[1], b[0]),
                               s2->distance(a[2], b[2]));
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "action arrows not composable", mismatch);
    return product_point(*acomp, {a[0], b[0], b[1], b[2]});
  };
  A.sample_acomp = [acomp, circle, s2](Rng& rng) {
    return product_point(*acomp, {sample_circle(*circle, rng),
                                  sample_circle(*circle, rng),
                                  sample_circle(*circle, rng),
                                  sample_sphere(*s2, rng)});
  };
  A.sample_atriple = [fp, circle, s2](Rng& rng) {
    Point a3 = sample_circle(*circle, rng);
    Point a2 = sample_circle(*circle, rng);
    Point a1 = sample_circle(*circle, rng);
    Point x = sample_circle(*circle, rng);
    Point q = sample_sphere(*s2, rng);
    Point h = product_point(*fp, {a1, x, q});
    Point g = product_point(*fp, {a2, a1, q});
    Point gt = product_point(*fp, {a3, a2, q});
    return std::array<Point, 3>{gt, g, h};
  };

  S.action = A;
  S.Q = constant_metric(arrows, MatrixXd::Identity(2, 2));
  if (broken_metric) {
    S.etaP = MetricField{P, [P, s2](const Point& p) {
                           auto parts = product_split(*P, p);
                           double x = circle_angle(parts[0]);
                           MatrixXd g = MatrixXd::Zero(3, 3);
                           g(0, 0) = 1.0;
                           double s = 1.0 + parts[1].x.squaredNorm();
                           g.block(1, 1, 2, 2) = (1.0 + 0.5 * std::sin(x)) *
                                                 (4.0 / (s * s)) *
                                                 MatrixXd::Identity(2, 2);
                           return g;
                         }};
  } else {
    S.etaP = product_metric(
        P, {constant_metric(circle, MatrixXd::Identity(1, 1)),
            round_sphere_metric(s2, 1.0)});
  }
  S.eta0 = constant_metric(circle, MatrixXd::Identity(1, 1));
  S.eta2 = constant_metric(G.comp, MatrixXd::Identity(3, 3));
  auto comp = G.comp;
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(*comp,
                                                             {t[2], t[1], t[0]});
                                      }});
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(*comp,
                                                             {t[0], t[2], t[1]});
                                      }});
  return S;
}

// ------------------------------------------------------- torus submersion ---

Scenario make_torus_submersion() {
  Scenario S;
  S.name = "torus_submersion";
  S.notes = "scenario_notes.md#torus_submersion";

  AtlasPtr circle = circle_atlas();
  AtlasPtr M = product_atlas("torus2", {circle, circle});
  AtlasPtr N = circle;
  SubmersionGroupoidData d;
  d.f = SmoothMap{M, N, [M](const Point& p) { return product_split(*M, p)[0]; }};
  d.gf = product_atlas("torus_gf", {circle, circle, circle});  // (x, y1, y2)
  auto gf = d.gf;
  d.to_first = SmoothMap{gf, M, [gf, M](const Point& z) {
                           auto t = product_split(*gf, z);
                           return product_point(*M, {t[0], t[1]});
                         }};
  d.to_second = SmoothMap{gf, M, [gf, M](const Point& z) {
                            auto t = product_split(*gf, z);
                            return product_point(*M, {t[0], t[2]});
                          }};
  d.from_pair = [gf, M, circle](const Point& a, const Point& b) {
    auto ap = product_split(*M, a);
    auto bp = product_split(*M, b);
    double mismatch = circle->distance(ap[0], bp[0]);
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "pair does not satisfy the fiber constraint", mismatch);
    return product_point(*gf, {ap[0], ap[1], bp[1]});
  };
  d.comp = product_atlas("torus_gf_comp", {circle, circle, circle, circle});
  auto comp = d.comp;
  d.comp_pr1 = SmoothMap{comp, gf, [comp, gf](const Point& z) {
                           auto t = product_split(*comp, z);
                           return product_point(*gf, {t[0], t[1], t[2]});
                         }};
  d.comp_pr2 = SmoothMap{comp, gf, [comp, gf](const Point& z) {
                           auto t = product_split(*comp, z);
                           return product_point(*gf, {t[0], t[2], t[3]});
                         }};
  d.comp_mul = SmoothMap{comp, gf, [comp, gf](const Point& z) {
                           auto t = product_split(*comp, z);
                           return product_point(*gf, {t[0], t[1], t[3]});
                         }};
  d.compose_point = [comp, gf, circle](const Point& g, const Point& h) {
    auto gp = product_split(*gf, g);
    auto hp = product_split(*gf, h);
    double mismatch = std::max(circle->distance(gp[0], hp[0]),
                               circle->distance(gp[2], hp[1]));
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "arrows not composable", mismatch);
    return product_point(*comp, {gp[0], gp[1], gp[2], hp[2]});
  };
  auto sample_circle_fn = [circle](Rng& rng) { return sample_circle(*circle, rng); };
  d.sample_m = [M, sample_circle_fn](Rng& rng) {
    return product_point(*M, {sample_circle_fn(rng), sample_circle_fn(rng)});
  };
  d.sample_gf = [gf, sample_circle_fn](Rng& rng) {
    return product_point(*gf, {sample_circle_fn(rng), sample_circle_fn(rng),
                               sample_circle_fn(rng)});
  };
  d.sample_comp = [comp, sample_circle_fn](Rng& rng) {
    return product_point(*comp, {sample_circle_fn(rng), sample_circle_fn(rng),
                                 sample_circle_fn(rng), sample_circle_fn(rng)});
  };
  d.sample_triple = [gf, sample_circle_fn](Rng& rng) {
    Point x = sample_circle_fn(rng);
    Point y4 = sample_circle_fn(rng), y3 = sample_circle_fn(rng),
          y2 = sample_circle_fn(rng), y1 = sample_circle_fn(rng);
    return std::array<Point, 3>{product_point(*gf, {x, y4, y3}),
                                product_point(*gf, {x, y3, y2}),
                                product_point(*gf, {x, y2, y1})};
  };
  GroupoidSpec G = build_submersion_groupoid(d);

  S.action = canonical_action(G, /*hypothesis_flag=*/false);
  S.Q = constant_metric(gf, MatrixXd::Identity(3, 3));
  S.etaP = constant_metric(M, MatrixXd::Identity(2, 2));
  S.eta0 = constant_metric(M, MatrixXd::Identity(2, 2));
  S.eta2 = constant_metric(comp, MatrixXd::Identity(4, 4));
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(
                                            *comp, {t[0], t[3], t[2], t[1]});
                                      }});
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(
                                            *comp, {t[0], t[1], t[3], t[2]});
                                      }});
  return S;
}

// ------------------------------------------------------------ sphere pair ---

Scenario make_sphere_pair() {
  Scenario S;
  S.name = "sphere_pair";
  S.notes = "scenario_notes.md#sphere_pair";

  AtlasPtr s2 = sphere_atlas(2);
  auto sampler = [s2](Rng& rng) { return sample_sphere(*s2, rng); };
  GroupoidSpec G = build_pair_groupoid(s2, sampler);
  S.action = canonical_action(G, /*hypothesis_flag=*/true);

  MetricField round = round_sphere_metric(s2, 1.0);
  S.Q = product_metric(G.arrows, {round, round});
  S.etaP = round;
  S.eta0 = round;
  S.eta2 = product_metric(G.comp, {round, round, round});
  auto comp = G.comp;
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(*comp,
                                                             {t[2], t[1], t[0]});
                                      }});
  S.s3_generators.push_back(SmoothMap{comp, comp, [comp](const Point& z) {
                                        auto t = product_split(*comp, z);
                                        return product_point(*comp,
                                                             {t[0], t[2], t[1]});
                                      }});
  return S;
}

}  // namespace

ActionSpec canonical_action(const GroupoidSpec& G, bool hypothesis_flag) {
  ActionSpec A;
  A.G = G;
  A.total = G.objects;
  A.alpha = identity_map(G.objects);
  A.fp = G.arrows;
  A.fp_to_G = identity_map(G.arrows);
  A.fp_to_P = G.src;
  auto src = G.src;
  auto objects = G.objects;
  A.fp_compose = [src, objects](const Point& g, const Point& p) {
    double mismatch = objects->distance(src(g), p);
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "canonical action: point is not the arrow source", mismatch);
    return g;
  };
  A.mu = G.tgt;
  A.hypothesis_normal_in_fiber = hypothesis_flag;
  A.sample_total = G.sample_object;
  A.sample_fp = G.sample_arrow;
  A.acomp = G.comp;
  A.acomp_pr1 = G.pr1;
  A.acomp_pr2 = G.pr2;
  A.acomp_mul = G.mul;
  A.acompose_point = G.compose_point;
  A.sample_acomp = G.sample_comp;
  A.sample_atriple = G.sample_triple;
  return A;
}

SmoothMap hopf_circle_action(AtlasPtr circle, AtlasPtr sphere3) {
  auto fp = product_atlas("hopf_pairs", {circle, sphere3});
  return SmoothMap{fp, sphere3, [fp, sphere3](const Point& z) {
                     auto gp = product_split(*fp, z);
                     VectorXd x = sphere_embed(gp[1]);
                     return sphere_point(*sphere3,
                                         rotate_pairs(x, circle_angle(gp[0])));
                   }};
}

SmoothMap hopf_projection(AtlasPtr sphere3, AtlasPtr sphere2) {
  return SmoothMap{sphere3, sphere2, [sphere2](const Point& p) {
                     VectorXd x = sphere_embed(p);
                     double w = x[0], xi = x[1], y = x[2], zz = x[3];
                     VectorXd m(3);
                     m[0] = 2.0 * (w * y + xi * zz);
                     m[1] = 2.0 * (xi * y - w * zz);
                     m[2] = w * w + xi * xi - y * y - zz * zz;
                     return sphere_point(*sphere2, m);
                   }};
}

std::vector<Point> Scenario::sample_points(int n, std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(action.total->canonicalize(action.sample_total(rng)));
  return out;
}

std::vector<std::string> scenario_names() {
  return {"hopf_berger",     "cylinder_pair",  "torus_submersion",
          "sphere_pair",     "broken_groupoid", "broken_invariance"};
}

Scenario load_scenario(const std::string& name) {
  if (name == "hopf_berger") return make_hopf_berger();
  if (name == "cylinder_pair") return make_cylinder_pair(false, false);
  if (name == "torus_submersion") return make_torus_submersion();
  if (name == "sphere_pair") return make_sphere_pair();
  if (name == "broken_groupoid") return make_cylinder_pair(true, false);
  if (name == "broken_invariance") return make_cylinder_pair(false, true);
  raise(ErrorKind::UnknownScenario, "scenarios",
        "no scenario named '" + name + "'");
}

}  // namespace cheegerlab
