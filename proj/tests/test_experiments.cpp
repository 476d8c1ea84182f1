#include <catch2/catch_amalgamated.hpp>

#include "bresse/experiments.hpp"
#include "helpers.hpp"

using namespace bresse;
using Catch::Approx;

TEST_CASE("stiffness scaling") {
  const BeamConfig base = preset_sl2();

  SECTION("base values scale as printed") {
    const BeamConfig c = scale_params_chi(base, 10.0);
    REQUIRE(c.l == Approx(0.1));
    REQUIRE(c.left.k == Approx(40.0));
    REQUIRE(c.right.k == Approx(10.0));
    REQUIRE(c.left.sigma == base.left.sigma);  // untouched
    REQUIRE(c.left.lambda == base.left.lambda);
  }

  SECTION("identity at chi=1") {
    const BeamConfig c = scale_params_chi(base, 1.0);
    REQUIRE(c.l == base.l);
    REQUIRE(c.left.k == base.left.k);
    REQUIRE(c.right.k == base.right.k);
  }

  SECTION("largest ladder value") {
    const BeamConfig c = scale_params_chi(base, 300.0);
    REQUIRE(c.l == Approx(1.0 / 300.0));
    REQUIRE(c.left.k == Approx(1200.0));
    REQUIRE(c.right.k == Approx(300.0));
  }

  SECTION("chi below one is rejected") {
    REQUIRE_THROWS_AS(scale_params_chi(base, 0.5), parameter_error);
  }
}

TEST_CASE("smoothing") {
  auto mk = [](std::vector<double> v) {
    ProbeSeries s;
    s.x = 2.0;
    s.field = "phi";
    for (size_t i = 0; i < v.size(); ++i) s.times.push_back(0.1 * i);
    s.values = std::move(v);
    return s;
  };

  SECTION("window one is the identity") {
    const auto s = mk({0.3, -1.2, 5.0, 2.2});
    REQUIRE(smooth(s, 1).values == s.values);
  }

  SECTION("constants are preserved") {
    const auto s = mk(std::vector<double>(21, 3.7));
    for (int w : {3, 5, 9, 21}) {
      const auto t = smooth(s, w);
      for (double v : t.values) REQUIRE(v == Approx(3.7).epsilon(1e-15));
    }
  }

  SECTION("unit impulse averaged over a 3-window") {
    const auto s = mk({0.0, 1.0, 0.0});
    const auto t = smooth(s, 3);
    REQUIRE(t.values[1] == Approx(1.0 / 3.0));
    // endpoints use shrinking symmetric windows (width 1 here)
    REQUIRE(t.values[0] == 0.0);
    REQUIRE(t.values[2] == 0.0);
  }

  SECTION("even or oversized windows are rejected") {
    const auto s = mk({0.0, 1.0, 0.0});
    REQUIRE_THROWS_AS(smooth(s, 2), parameter_error);
    REQUIRE_THROWS_AS(smooth(s, 5), parameter_error);
  }

  SECTION("commutes with series addition") {
    auto gen = testutil::rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(31), b(31), c(31);
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = dist(gen);
      b[i] = dist(gen);
      c[i] = a[i] + b[i];
    }
    const auto sa = smooth(mk(a), 7), sb = smooth(mk(b), 7), sc = smooth(mk(c), 7);
    for (size_t i = 0; i < a.size(); ++i)
      REQUIRE(sc.values[i] == Approx(sa.values[i] + sb.values[i]).margin(1e-14));
  }
}

TEST_CASE("ladder specification") {
  SECTION("published value lists") {
    const LadderSpec l = l_ladder_spec();
    REQUIRE(l.values == std::vector<double>{1.0, 1.0 / 3.0, 0.1, 1.0 / 30.0,
                                            0.01, 1.0 / 300.0, 0.001});
    REQUIRE(l.t_end == 10.0);
    const LadderSpec c = chi_ladder_spec();
    REQUIRE(c.values == std::vector<double>{1.0, 3.0, 10.0, 30.0, 100.0, 300.0});
    REQUIRE(c.t_end == 5.0);
    REQUIRE(l.probes == std::vector<double>{2.0, 6.0});
  }

  SECTION("nonmonotone values are rejected") {
    LadderSpec s = l_ladder_spec();
    s.values = {1.0, 0.1, 0.5};
    REQUIRE_THROWS_AS(s.validate(), parameter_error);
  }

  SECTION("even smoothing window is rejected") {
    LadderSpec s = l_ladder_spec();
    s.smoothing_window = 4;
    REQUIRE_THROWS_AS(s.validate(), parameter_error);
  }
}

TEST_CASE("second-study initial data hypotheses") {
  const InitialData d = initial_sl2();

  SECTION("shear angle is the negative slope of the displacement") {
    // five-point central difference: exact on quartics up to roundoff
    const double fd = 1e-3;
    auto d5 = [fd](const Scalar1Fn& f, double x) {
      return (-f(x + 2.0 * fd) + 8.0 * f(x + fd) - 8.0 * f(x - fd) +
              f(x - 2.0 * fd)) /
             (12.0 * fd);
    };
    for (int p = 0; p <= 100; ++p) {
      const double xl = 4.0 * p / 100.0;
      REQUIRE(std::abs(d.disp_left[1](xl) + d5(d.disp_left[0], xl)) <= 1e-9);
      const double xr = 4.0 + 6.0 * p / 100.0;
      REQUIRE(std::abs(d.disp_right[1](xr) + d5(d.disp_right[0], xr)) <= 1e-9);
    }
  }

  SECTION("velocity continuity at the junction") {
    REQUIRE(d.vel_left[0](4.0) == Approx(1.0));
    REQUIRE(d.vel_right[0](4.0) == Approx(1.0));
    REQUIRE(d.vel_left[1](4.0) == Approx(2.4));
    REQUIRE(d.vel_right[1](4.0) == Approx(2.4));
  }

  SECTION("longitudinal displacements start from zero") {
    for (double x : {0.0, 1.5, 4.0})
      REQUIRE(d.disp_left[2](x) == 0.0);
    for (double x : {4.0, 7.0, 10.0})
      REQUIRE(d.disp_right[2](x) == 0.0);
  }
}

TEST_CASE("mini curvature ladder") {
  LadderSpec spec = l_ladder_spec();
  spec.values = {0.5, 0.05};
  spec.t_end = 1.0;
  spec.h = 0.1;
  const LadderResult R = run_l_ladder(spec, preset_sl1());

  SECTION("table shape and ordering") {
    REQUIRE(R.rung_errors == std::vector<std::string>{"", ""});
    REQUIRE(R.table.size() == 2 * 2 * 3);  // values x probes x local fields
    REQUIRE(R.table[0].value == 0.5);
    REQUIRE(R.table[0].probe == 2.0);
    REQUIRE(R.table[0].field == "phi");
    REQUIRE(R.table.back().value == 0.05);
    REQUIRE(R.table.back().field == "w");
  }

  SECTION("distances are positive and shrink with the curvature") {
    for (size_t i = 0; i < 6; ++i) {
      REQUIRE(R.table[i].distance > 0.0);
      REQUIRE(R.table[i + 6].distance < R.table[i].distance);
    }
  }

  SECTION("self-distance vanishes") {
    // comparing the limit reference against itself through the same pipeline
    for (double px : spec.probes) {
      const int node = R.grid.probe_node(px);
      const int side = node <= R.grid.i_interface ? 0 : 1;
      for (int f = 0; f < 3; ++f) {
        const std::string field = field_name(side, f);
        const Trajectory& lim = (f == 2) ? *R.limit_wave : *R.limit_primary;
        const ProbeSeries s = probe(lim, px, field);
        REQUIRE(l2_time_distance(s, s) == 0.0);
      }
    }
  }
}

TEST_CASE("mini stiffness ladder") {
  LadderSpec spec = chi_ladder_spec();
  spec.values = {1.0, 100.0};
  spec.t_end = 5.0;  // the limit trend needs the full horizon
  spec.h = 0.1;
  const LadderResult R = run_chi_ladder(spec, preset_sl2());
  REQUIRE(R.limit_error.empty());
  REQUIRE(R.rung_errors == std::vector<std::string>{"", ""});
  REQUIRE(R.table.size() == 12);
  double d1 = 0, d100 = 0;
  for (const auto& row : R.table) {
    if (row.field == "phi" && row.probe == 2.0) {
      if (row.value == 1.0) d1 = row.distance;
      if (row.value == 100.0) d100 = row.distance;
    }
  }
  REQUIRE(d1 > 0.0);
  REQUIRE(d100 <= 0.5 * d1);
}

TEST_CASE("limit-reference resolution stability") {
  // halving h moves the reported distances only at the discretization level
  LadderSpec spec = l_ladder_spec();
  spec.values = {0.3};
  spec.t_end = 1.0;
  spec.h = 0.1;
  const LadderResult a = run_l_ladder(spec, preset_sl1());
  spec.h = 0.05;
  const LadderResult b = run_l_ladder(spec, preset_sl1());
  for (size_t i = 0; i < a.table.size(); ++i) {
    const double tol = 5.0 * 0.1 * 0.1 * (1.0 + a.table[i].distance);
    REQUIRE(std::abs(a.table[i].distance - b.table[i].distance) <= tol);
  }
}
