#include "cheegerlab/groupoid.hpp"

namespace cheegerlab {

AxiomReport check_groupoid_axioms(const GroupoidSpec& G, int n_samples,
                                  std::uint64_t seed) {
  Rng rng(seed);
  AxiomReport r;
  if (!G.sample_arrow || !G.sample_comp || !G.sample_triple || !G.sample_object)
    raise(ErrorKind::SamplerFailure, "groupoids",
          G.name + ": sampler not provided");
  const auto& M = *G.objects;
  const auto& A = *G.arrows;
  for (int k = 0; k < n_samples; ++k) {
    Point z = G.sample_comp(rng);
    Point g = G.pr1(z);
    Point h = G.pr2(z);
    r.sampler_pair = std::max(r.sampler_pair, M.distance(G.src(g), G.tgt(h)));
    Point gh = G.mul(z);
    r.source_law = std::max(r.source_law, M.distance(G.src(gh), G.src(h)));
    r.target_law = std::max(r.target_law, M.distance(G.tgt(gh), G.tgt(g)));

    auto tri = G.sample_triple(rng);
    const Point& a = tri[0];
    const Point& b = tri[1];
    const Point& c = tri[2];
    Point left = G.multiply(G.multiply(a, b), c);
    Point right = G.multiply(a, G.multiply(b, c));
    r.associativity = std::max(r.associativity, A.distance(left, right));

    Point p = G.sample_object(rng);
    Point up = G.unit(p);
    r.unit_section = std::max(
        {r.unit_section, M.distance(G.src(up), p), M.distance(G.tgt(up), p)});

    Point w = G.sample_arrow(rng);
    Point lw = G.multiply(G.unit(G.tgt(w)), w);
    Point rw = G.multiply(w, G.unit(G.src(w)));
    r.unit_law =
        std::max({r.unit_law, A.distance(lw, w), A.distance(rw, w)});

    Point iw = G.inv(w);
    r.inverse_law = std::max({r.inverse_law,
                              A.distance(G.multiply(w, iw), G.unit(G.tgt(w))),
                              A.distance(G.multiply(iw, w), G.unit(G.src(w)))});
  }
  r.pass = r.max_residual() < 1e-8;
  return r;
}

GroupoidSpec build_pair_groupoid(AtlasPtr M,
                                 std::function<Point(Rng&)> sample_m) {
  GroupoidSpec G;
  G.name = "pair(" + M->name() + ")";
  G.objects = M;
  G.arrows = product_atlas("pair_arrows(" + M->name() + ")", {M, M});
  G.comp = product_atlas("pair_comp(" + M->name() + ")", {M, M, M});
  auto arrows = G.arrows;
  auto comp = G.comp;

  // arrow (p, q): s = q, t = p
  G.src = SmoothMap{arrows, M, [arrows](const Point& g) {
                      return product_split(*arrows, g)[1];
                    }};
  G.tgt = SmoothMap{arrows, M, [arrows](const Point& g) {
                      return product_split(*arrows, g)[0];
                    }};
  G.unit = SmoothMap{M, arrows, [arrows](const Point& p) {
                       return product_point(*arrows, {p, p});
                     }};
  G.inv = SmoothMap{arrows, arrows, [arrows](const Point& g) {
                      auto pq = product_split(*arrows, g);
                      return product_point(*arrows, {pq[1], pq[0]});
                    }};
  // comp point (p3, p2, p1) is the pair ((p3,p2),(p2,p1))
  G.pr1 = SmoothMap{comp, arrows, [comp, arrows](const Point& z) {
                      auto t = product_split(*comp, z);
                      return product_point(*arrows, {t[0], t[1]});
                    }};
  G.pr2 = SmoothMap{comp, arrows, [comp, arrows](const Point& z) {
                      auto t = product_split(*comp, z);
                      return product_point(*arrows, {t[1], t[2]});
                    }};
  G.mul = SmoothMap{comp, arrows, [comp, arrows](const Point& z) {
                      auto t = product_split(*comp, z);
                      return product_point(*arrows, {t[0], t[2]});
                    }};
  G.compose_point = [comp, arrows, M](const Point& g, const Point& h) {
    auto gp = product_split(*arrows, g);
    auto hp = product_split(*arrows, h);
    double mismatch = M->distance(gp[1], hp[0]);
    if (mismatch > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "pair groupoid: arrows not composable", mismatch);
    return product_point(*comp, {gp[0], gp[1], hp[1]});
  };
  G.sample_object = sample_m;
  G.sample_arrow = [arrows, sample_m](Rng& rng) {
    return product_point(*arrows, {sample_m(rng), sample_m(rng)});
  };
  G.sample_comp = [comp, sample_m](Rng& rng) {
    return product_point(*comp, {sample_m(rng), sample_m(rng), sample_m(rng)});
  };
  G.sample_triple = [arrows, sample_m](Rng& rng) {
    Point p4 = sample_m(rng), p3 = sample_m(rng), p2 = sample_m(rng),
          p1 = sample_m(rng);
    return std::array<Point, 3>{product_point(*arrows, {p4, p3}),
                                product_point(*arrows, {p3, p2}),
                                product_point(*arrows, {p2, p1})};
  };
  return G;
}

GroupoidSpec build_submersion_groupoid(const SubmersionGroupoidData& d,
                                       int n_constraint_samples,
                                       std::uint64_t seed) {
  // verify the fiber constraint f(first) = f(second) on samples
  Rng rng(seed);
  const auto& N = *d.f.target;
  for (int k = 0; k < n_constraint_samples; ++k) {
    Point z = d.sample_gf(rng);
    double res = N.distance(d.f(d.to_first(z)), d.f(d.to_second(z)));
    if (res > 1e-10)
      raise(ErrorKind::ConstraintViolation, "groupoids",
            "submersion groupoid: atlas sample breaks the fiber constraint",
            res);
  }

  GroupoidSpec G;
  G.name = "submersion(" + d.f.source->name() + ")";
  G.objects = d.f.source;
  G.arrows = d.gf;
  G.comp = d.comp;
  auto M = d.f.source;
  auto gf = d.gf;
  auto to_first = d.to_first;
  auto to_second = d.to_second;
  auto from_pair = d.from_pair;
  // arrow (p, q) with f(p) = f(q): s = q, t = p
  G.src = SmoothMap{gf, M, [to_second](const Point& g) { return to_second.eval(g); }};
  G.tgt = SmoothMap{gf, M, [to_first](const Point& g) { return to_first.eval(g); }};
  G.unit = SmoothMap{M, gf, [from_pair](const Point& p) { return from_pair(p, p); }};
  G.inv = SmoothMap{gf, gf, [to_first, to_second, from_pair](const Point& g) {
                      return from_pair(to_second.eval(g), to_first.eval(g));
                    }};
  G.pr1 = d.comp_pr1;
  G.pr2 = d.comp_pr2;
  G.mul = d.comp_mul;
  G.compose_point = d.compose_point;
  G.sample_object = d.sample_m;
  G.sample_arrow = d.sample_gf;
  G.sample_comp = d.sample_comp;
  G.sample_triple = d.sample_triple;
  return G;
}

}  // namespace cheegerlab
