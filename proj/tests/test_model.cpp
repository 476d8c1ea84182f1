#include <catch2/catch_amalgamated.hpp>

#include "bresse/model.hpp"
#include "helpers.hpp"

using namespace bresse;
using Catch::Approx;

TEST_CASE("resultants: defining formulas pointwise") {
  SegmentParams p{1.0, 2.0, 4.0, 4.0, 8.0};

  SECTION("zero state gives zero resultants") {
    std::vector<double> z(5, 0.0);
    FieldSlice s{z, z, z, z, z, z};
    const auto r = resultants(s, p, 1.0);
    for (int i = 0; i < 5; ++i) {
      REQUIRE(r.Q[i] == 0.0);
      REQUIRE(r.N[i] == 0.0);
      REQUIRE(r.M[i] == 0.0);
    }
  }

  SECTION("shear force from xi_x alone") {
    // k=4, xi_x=1, zeta=0, eta=0, l=1 -> Q=4
    std::vector<double> one(3, 1.0), z(3, 0.0);
    FieldSlice s{z, z, z, one, z, z};
    const auto r = resultants(s, p, 1.0);
    REQUIRE(r.Q[0] == Approx(4.0));
  }

  SECTION("axial force with curvature correction") {
    // sigma=4, eta_x=1, xi=0.5, l=1 -> N = 4*(1-0.5) = 2
    SegmentParams p2{1.0, 2.0, 4.0, 4.0, 8.0};
    std::vector<double> z(3, 0.0), one(3, 1.0), half(3, 0.5);
    FieldSlice s{half, z, z, z, z, one};
    const auto r = resultants(s, p2, 1.0);
    REQUIRE(r.N[1] == Approx(2.0));
  }

  SECTION("length mismatch is a dimension error") {
    std::vector<double> a(4, 0.0), b(3, 0.0);
    FieldSlice s{a, a, a, a, a, b};
    REQUIRE_THROWS_AS(resultants(s, p, 0.0), dimension_error);
  }

  SECTION("linearity in the state") {
    auto gen = testutil::rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const int n = 9;
    std::array<std::vector<double>, 6> U, V;
    for (auto& a : U) a.resize(n);
    for (auto& a : V) a.resize(n);
    for (int f = 0; f < 6; ++f)
      for (int i = 0; i < n; ++i) {
        U[f][i] = dist(gen);
        V[f][i] = dist(gen);
      }
    const double al = 0.7, be = -1.3, l = 0.5;
    std::array<std::vector<double>, 6> W;
    for (int f = 0; f < 6; ++f) {
      W[f].resize(n);
      for (int i = 0; i < n; ++i) W[f][i] = al * U[f][i] + be * V[f][i];
    }
    auto slice = [](const std::array<std::vector<double>, 6>& A) {
      return FieldSlice{A[0], A[1], A[2], A[3], A[4], A[5]};
    };
    const auto rU = resultants(slice(U), p, l);
    const auto rV = resultants(slice(V), p, l);
    const auto rW = resultants(slice(W), p, l);
    for (int i = 0; i < n; ++i) {
      REQUIRE(rW.Q[i] == Approx(al * rU.Q[i] + be * rV.Q[i]).margin(1e-13));
      REQUIRE(rW.N[i] == Approx(al * rU.N[i] + be * rV.N[i]).margin(1e-13));
      REQUIRE(rW.M[i] == Approx(al * rU.M[i] + be * rV.M[i]).margin(1e-13));
    }
  }
}

TEST_CASE("feedback and potential presets") {
  const auto sl1 = make_nonlinearity_sl1();
  const auto sl2 = make_nonlinearity_sl2();

  SECTION("printed formulas at sample points") {
    // f1 at (1,0,0): 4*1 - 2*1 + 0 = 2
    REQUIRE(feedback({1.0, 0.0, 0.0}, 1, sl1)[0] == Approx(2.0));
    // g1 at (0,0,1): 3*|1|*1 = 3
    REQUIRE(feedback({0.0, 0.0, 1.0}, 1, sl1)[2] == Approx(3.0));
    // odd feedbacks vanish at the origin
    const auto at0 = feedback({0.0, 0.0, 0.0}, 1, sl1);
    REQUIRE(at0[0] == 0.0);
    REQUIRE(at0[1] == 0.0);
    REQUIRE(at0[2] == 0.0);
    // potentials: F1(1,0,0) = 1 - 1 + 0 + 0 = 0
    REQUIRE(potential({1.0, 0.0, 0.0}, 1, sl1) == Approx(0.0).margin(1e-15));
    REQUIRE(potential({0.0, 0.0, 0.0}, 1, sl1) == 0.0);
    // second-study formulas
    REQUIRE(feedback({1.0, 0.0, 0.0}, 2, sl2)[0] == Approx(-4.0));  // 4-8
    REQUIRE(feedback({0.0, 0.0, 1.0}, 2, sl2)[2] == Approx(6.0));
  }

  SECTION("gradient consistency against the finite-difference oracle") {
    auto gen = testutil::rng(42);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (const auto* nl : {&sl1, &sl2}) {
      for (int trial = 0; trial < 1000; ++trial) {
        const double a = dist(gen), b = dist(gen), c = dist(gen);
        for (int seg = 1; seg <= 2; ++seg) {
          const auto& F = seg == 1 ? nl->F1 : nl->F2;
          const auto fb = feedback({a, b, c}, seg, *nl);
          const auto fd = testutil::fd_gradient(F, a, b, c);
          for (int i = 0; i < 3; ++i)
            REQUIRE(std::abs(fd[i] - fb[i]) <= 1e-6 * (1.0 + std::abs(fb[i])));
        }
      }
    }
  }

  SECTION("potential lower bounds") {
    // the in-plane part is t^4 - t^2 with t = a+b; its minimum is -1/4
    const double min1d = testutil::golden_min(
        [](double t) { return t * t * t * t - t * t; }, 0.0, 2.0);
    REQUIRE(min1d == Approx(-0.25).margin(1e-10));
    REQUIRE(testutil::sampled_min_3d(sl1.F1, -3.0, 3.0) >= -sl1.delta1 - 1e-9);
    REQUIRE(testutil::sampled_min_3d(sl2.F1, -3.0, 3.0) >= -sl2.delta1 - 1e-9);
    REQUIRE(testutil::sampled_min_3d(sl2.F2, -3.0, 3.0) >= -sl2.delta2 - 1e-9);
    // delta for segment 2 of the second preset is genuinely needed: а^4-4a^2
    REQUIRE(testutil::sampled_min_3d(sl2.F2, -3.0, 3.0) <= -3.9);
  }

  SECTION("custom hook builds gradients by finite differences") {
    auto F = [](double a, double b, double c) {
      return a * a * b + std::cos(c) + b * b;
    };
    const auto nl = make_nonlinearity_custom(F, F, 2.0, 2.0);
    const auto fb = feedback({0.5, -1.0, 0.3}, 1, nl);
    REQUIRE(fb[0] == Approx(2.0 * 0.5 * -1.0).epsilon(1e-6));
    REQUIRE(fb[1] == Approx(0.25 - 2.0).epsilon(1e-6));
    REQUIRE(fb[2] == Approx(-std::sin(0.3)).epsilon(1e-6));
  }
}

TEST_CASE("damping variants") {
  SECTION("gamma(0)=0 under every variant") {
    for (const char* v : {"zero", "linear", "cubic-saturated-as-printed",
                          "cubic-saturated-C1"}) {
      const auto d = make_damping(v);
      REQUIRE(damping_eval(0.0, d) == 0.0);
    }
  }

  SECTION("printed saturation values") {
    const auto d = make_damping("cubic-saturated-as-printed");
    REQUIRE(damping_eval(1.0, d) == Approx(0.01));
    REQUIRE(damping_eval(20.0, d) == Approx(200.0));
    // discontinuity at s=10: cubic branch gives 10, linear branch gives 100
    REQUIRE(damping_eval(10.0, d) == Approx(10.0));
    REQUIRE(damping_eval(10.0 + 1e-9, d) == Approx(100.0).epsilon(1e-6));
  }

  SECTION("C1 extension matches value and slope at the junction") {
    const auto d = make_damping("cubic-saturated-C1");
    REQUIRE(damping_eval(20.0, d) == Approx(40.0));  // 3*20-20
    REQUIRE(damping_eval(10.0, d) == Approx(10.0));
    REQUIRE(damping_eval(10.0 + 1e-8, d) == Approx(10.0).margin(1e-6));
    REQUIRE(damping_eval(-20.0, d) == Approx(-40.0));
    REQUIRE(d.gamma_prime(10.0) == Approx(3.0));
    REQUIRE(d.gamma_prime(11.0) == Approx(3.0));
  }

  SECTION("monotonicity lattice accepts all variants, flags the printed one") {
    for (const char* v : {"linear", "cubic-saturated-C1"}) {
      const auto rep = make_damping(v).validate();
      REQUIRE(rep.zero_at_origin);
      REQUIRE(rep.monotone);
      REQUIRE(rep.lipschitz_ok);
    }
    const auto rep = make_damping("cubic-saturated-as-printed").validate();
    REQUIRE(rep.zero_at_origin);
    REQUIRE(rep.monotone);       // the jump is upward, order is preserved
    REQUIRE(!rep.lipschitz_ok);  // the jump violates the declared bound
  }
}

TEST_CASE("loads") {
  SECTION("first-study formulas at x=0") {
    const auto l = make_loads_sl1();
    const auto v = load_eval(0.0, l, 10.0);
    REQUIRE(v[0] == Approx(0.0).margin(1e-15));  // p1 = sin 0
    REQUIRE(v[1] == Approx(0.0).margin(1e-15));  // r1 = x
    REQUIRE(v[2] == Approx(0.0).margin(1e-15));  // q1 = sin 0
  }

  SECTION("second-study interface compatibility r1(L0)=r2(L0)") {
    const auto l = make_loads_sl2();
    const auto v = load_eval(4.0, l, 10.0);
    REQUIRE(v[1] == Approx(8.0));  // r1(4) = 4+4
    REQUIRE(v[4] == Approx(8.0));  // r2(4) = 8
  }

  SECTION("zero preset and domain error") {
    const auto l = make_loads_zero();
    for (double x : {0.0, 3.3, 10.0})
      for (double c : load_eval(x, l, 10.0)) REQUIRE(c == 0.0);
    REQUIRE_THROWS_AS(load_eval(-0.1, l, 10.0), domain_error);
    REQUIRE_THROWS_AS(load_eval(10.1, l, 10.0), domain_error);
  }
}

TEST_CASE("configuration invariants") {
  SECTION("preset coefficients and the equal-speed flag") {
    const auto c = preset_sl1();
    REQUIRE(c.left.k == 4.0);
    REQUIRE(c.right.k == 1.0);
    REQUIRE(c.left.sigma == 4.0);
    REQUIRE(c.right.sigma == 2.0);
    REQUIRE(c.left.lambda == 8.0);
    REQUIRE(c.right.lambda == 4.0);
    REQUIRE(c.L == 10.0);
    REQUIRE(c.L0 == 4.0);
    // k1 = sigma1 = 4 and rho1/k1 = 1/4 = beta1/lambda1 = 2/8
    REQUIRE(c.equal_speed_flag());
    BeamConfig c2 = c;
    c2.left.k = 4.0000001;
    REQUIRE(!c2.equal_speed_flag());
  }

  SECTION("positivity is enforced") {
    BeamConfig c = preset_sl1();
    c.left.rho = -1.0;
    REQUIRE_THROWS_AS(c.validate(), config_error);
    c = preset_sl1();
    c.L0 = 11.0;
    REQUIRE_THROWS_AS(c.validate(), config_error);
  }
}

TEST_CASE("first-study initial data is transmission-compatible") {
  const auto d = initial_sl1();
  // continuity at the interface
  REQUIRE(d.disp_left[0](4.0) == Approx(0.0).margin(1e-12));
  REQUIRE(d.disp_right[0](4.0) == Approx(0.0).margin(1e-12));
  REQUIRE(d.disp_left[1](4.0) == Approx(1.0));
  REQUIRE(d.disp_right[1](4.0) == Approx(1.0));
  REQUIRE(d.disp_left[2](4.0) == Approx(0.0).margin(1e-12));
  REQUIRE(d.disp_right[2](4.0) == Approx(0.0).margin(1e-12));
  // clamped ends
  REQUIRE(d.disp_left[0](0.0) == 0.0);
  REQUIRE(d.disp_right[0](10.0) == 0.0);
  REQUIRE(d.disp_right[2](10.0) == Approx(0.0).margin(1e-12));
  // flux compatibility at l=1 with the preset coefficients:
  // Q1 = 4*(phi0' + psi0) = 4*0.25 = 1 = Q2 = 1*(u0' + v0)
  const double phi0x = 0.75 - 2.0 * 3.0 / 16.0 * 4.0;
  REQUIRE(4.0 * (phi0x + 1.0) == Approx(1.0));
}
