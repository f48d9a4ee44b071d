#include <doctest.h>

#include <cmath>

#include "xpr/certify.hpp"
#include "xpr/errors.hpp"
#include "xpr/families.hpp"
#include "xpr/netlab.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

std::vector<BigReal> reals(std::initializer_list<double> vs) {
  std::vector<BigReal> out;
  for (double v : vs) out.push_back(BigReal(v));
  return out;
}

SampleGrid grid_of(const RealSampler& f, double a, double h, long m) {
  return sample_fn(f, BigReal(a), BigReal(h), m);
}

}  // namespace

TEST_CASE("determinant certificate on a sine and a non-member") {
  auto offsets = reals({0, 0.3, 0.7});
  auto sine = [](const BigReal& x) { return sin_big(x); };
  Certificate pass = det_certificate(sine, BigReal(0L), offsets, offsets, 1);
  CHECK(pass.pass);
  CHECK(pass.residual < BigReal::pow2(-128));

  auto cubic = [](const BigReal& x) { return x * x * x; };
  Certificate fail = det_certificate(cubic, BigReal(0L), offsets, offsets, 1);
  CHECK(!fail.pass);
  CHECK(fail.residual > BigReal(1e-3));

  // Hand oracle: direct 3x3 determinant of the cubic samples.
  BigReal a[3][3];
  for (int k = 0; k < 3; ++k) {
    for (int m = 0; m < 3; ++m) {
      BigReal x = offsets[static_cast<std::size_t>(k)] + offsets[static_cast<std::size_t>(m)];
      a[k][m] = x * x * x;
    }
  }
  BigReal det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  BigReal had(1L);
  for (int k = 0; k < 3; ++k) {
    had *= sqrt_big(a[k][0] * a[k][0] + a[k][1] * a[k][1] + a[k][2] * a[k][2]);
  }
  CHECK(abs(fail.residual - abs(det) / had) < BigReal::pow2(-200));
}

TEST_CASE("repeated offsets are degenerate") {
  auto sine = [](const BigReal& x) { return sin_big(x); };
  CHECK_THROWS_AS(
      det_certificate(sine, BigReal(0L), reals({0, 0.3, 0.3}), reals({0, 0.3, 0.7}), 1),
      DegenerateInput);
}

TEST_CASE("discrete derivatives") {
  SUBCASE("constants vanish at order 1") {
    SampleGrid g = grid_of([](const BigReal&) { return BigReal(4.2); }, 0, 0.25, 5);
    SampleGrid d = discrete_derivative(g, 1);
    CHECK(d.m == 4);
    for (long j = 0; j <= d.m; ++j) CHECK(abs(d.real_value(j)) < BigReal::pow2(-200));
  }
  SUBCASE("quadratics vanish at order 3") {
    SampleGrid g = grid_of([](const BigReal& x) { return x * x; }, 0.1, 0.2, 6);
    SampleGrid d = discrete_derivative(g, 3);
    for (long j = 0; j <= d.m; ++j) CHECK(abs(d.real_value(j)) < BigReal::pow2(-200));
  }
  SUBCASE("cubic on a unit grid gives 6 at order 3") {
    SampleGrid g = grid_of([](const BigReal& x) { return x * x * x; }, 0, 1.0, 5);
    SampleGrid d = discrete_derivative(g, 3);
    CHECK(d.m == 2);
    for (long j = 0; j <= d.m; ++j) {
      CHECK(abs(d.real_value(j) - BigReal(6L)) < BigReal::pow2(-200));
    }
  }
  SUBCASE("order past the grid length raises") {
    SampleGrid g = grid_of([](const BigReal& x) { return x; }, 0, 1.0, 2);
    CHECK_THROWS_AS(discrete_derivative(g, 3), LengthError);
  }
}

TEST_CASE("exponential identity certificate") {
  SUBCASE("e^x at degree 1") {
    SampleGrid g = grid_of([](const BigReal& x) { return exp_big(x); }, 0, 0.3, 4);
    Certificate c = exp_poly_certificate(g, 1);
    CHECK(c.pass);
    CHECK(c.residual < BigReal::pow2(-200));
  }
  SUBCASE("e^(x^2 - 3x) at degree 2, with a direct product oracle") {
    auto g_fn = [](const BigReal& x) { return exp_big(x * x - BigReal(3L) * x); };
    SampleGrid g = grid_of(g_fn, 0.1, 0.1, 3);
    Certificate c = exp_poly_certificate(g, 2);
    CHECK(c.pass);
    // Oracle at 512 bits: g(x) g(x+2h)^3 equals g(x+h)^3 g(x+3h).
    BigReal x(0.1, 512), h(0.1, 512);
    auto ghi = [&](const BigReal& v) { return exp_big(v * v - BigReal(3L, 512) * v); };
    BigReal even = ghi(x) * pow_big(ghi(x + BigReal(2L, 512) * h), 3);
    BigReal odd = pow_big(ghi(x + h), 3) * ghi(x + BigReal(3L, 512) * h);
    CHECK(abs(even - odd) / odd < BigReal::pow2(-400, 512));
  }
  SUBCASE("degree overflow is caught at the stated scale") {
    auto g_fn = [](const BigReal& x) { return exp_big(x * x * x); };
    SampleGrid g = grid_of(g_fn, 0.1, 0.1, 3);
    Certificate c = exp_poly_certificate(g, 2);
    CHECK(!c.pass);
    // D^3 of x^3 on step h is 3! h^3.
    BigReal expected = BigReal(6L) * pow_big(BigReal(0.1), 3);
    CHECK(abs(c.residual - expected) < BigReal(1e-10));
  }
  SUBCASE("complex exponents use branch continuation") {
    BigComplex lead(2.0, 7.0);  // fast-turning phase exercises the unwrapping
    SampleGrid g;
    g.a = BigReal(0L);
    g.h = BigReal(0.2);
    g.m = 4;
    g.real_valued = false;
    for (long j = 0; j <= 4; ++j) {
      BigReal x = g.x_at(j);
      g.values.push_back(exp_big(BigComplex(x * BigReal(2L), x * BigReal(7L))));
    }
    (void)lead;
    Certificate c = exp_poly_certificate(g, 1);
    CHECK(c.pass);
  }
  SUBCASE("zero samples are rejected") {
    SampleGrid g = grid_of([](const BigReal& x) { return x; }, 0.0, 0.1, 3);
    CHECK_THROWS_AS(exp_poly_certificate(g, 1), ZeroSample);
  }
}

TEST_CASE("constraint grid size formula") {
  CHECK(constraint_grid_size(2, 1, 1, 1) == 14);
  CHECK(constraint_grid_size(1, 1, 0, 0) == 6);
  CHECK_THROWS_AS(constraint_grid_size(0, 1, 0, 0), DomainError);
}

TEST_CASE("monochromatic progressions") {
  auto coloring_of = [](const std::string& s) {
    Coloring c;
    for (char ch : s) c.colors.push_back(ch == 'R' ? 0 : 1);
    return c;
  };
  SUBCASE("RRBBRRBBR holds positions 1,5,9") {
    auto ap = find_monochromatic_ap(coloring_of("RRBBRRBBR"), 3);
    REQUIRE(ap.has_value());
    CHECK(ap->start == 1);
    CHECK(ap->step == 4);
  }
  SUBCASE("RRBBRRBB holds none") {
    CHECK(!find_monochromatic_ap(coloring_of("RRBBRRBB"), 3).has_value());
  }
  SUBCASE("constant coloring starts immediately") {
    auto ap = find_monochromatic_ap(coloring_of("RRR"), 3);
    REQUIRE(ap.has_value());
    CHECK(ap->start == 1);
    CHECK(ap->step == 1);
  }
}

TEST_CASE("van der Waerden table") {
  CHECK(n_vdw_bound(3, 2) == 9);
  CHECK(n_vdw_bound(3, 3) == 27);
  CHECK(n_vdw_bound(4, 2) == 35);
  CHECK(n_vdw_bound(3, 1) == 3);
  CHECK(n_vdw_bound(2, 5) == 6);
  CHECK_THROWS_AS(n_vdw_bound(5, 2), BudgetError);
}

TEST_CASE("entropy bound") {
  EntropyBound b = entropy_bound(4, 32, BigReal(1L), BigReal::pow2(-7));
  CHECK(!b.overflow);
  CHECK(b.max_n == 18);
  CHECK_THROWS_AS(entropy_bound(4, 32, BigReal(1L), BigReal(2L)), DomainError);
  EntropyBound near = entropy_bound(4, 32, BigReal(1L), BigReal(1L) - BigReal::pow2(-200));
  CHECK(near.overflow);
}

TEST_CASE("composite certificate on a single-branch exponential network") {
  // elu kept on its exponential side over the whole interval: one color, the
  // sub-progression is the full grid.
  NetworkGraph net;
  net.input_id = 0;
  net.output_id = 1;
  net.nodes.push_back(Node{0, Act::input, BigReal(0L), {}, BigReal(0L)});
  net.nodes.push_back(Node{2, Act::elu, BigReal(1L), {Edge{0, BigReal(1L)}}, BigReal(-2L)});
  net.nodes.push_back(
      Node{1, Act::identity, BigReal(0L), {Edge{2, BigReal(1.5)}}, BigReal(0.25)});

  BigReal a(0.05), b(0.95);
  const long m = n_vdw_bound(3, 1) - 1;
  BigReal h = (b - a) / BigReal(m);
  ColoringResult coloring = branch_coloring(net, a, h, m);
  CHECK(coloring.color_traces.size() == 1);
  auto colorer = [&](const BigReal& x) {
    long idx = round_big((x - a) / h).to_long();
    return coloring.coloring.colors.at(static_cast<std::size_t>(idx));
  };
  auto sub = make_branch_sub_certifier(net, coloring.color_traces);
  auto g_fn = [&](const BigReal& x) { return eval_network(net, x).value; };
  Certificate c = vdw_composite_certificate(g_fn, a, b, colorer, sub, 3, 1);
  CHECK(c.pass);
  CHECK(c.metadata.find("sub_start=1") != std::string::npos);
  CHECK(c.metadata.find("sub_step=1") != std::string::npos);
}

TEST_CASE("composite certificate straddling a relu kink feeding a sine") {
  // relu(x - 0.7) feeds a sin neuron; left of the kink the branch value is a
  // constant, and the monochromatic progression lands there.
  NetworkGraph net;
  net.input_id = 0;
  net.output_id = 1;
  net.nodes.push_back(Node{0, Act::input, BigReal(0L), {}, BigReal(0L)});
  net.nodes.push_back(Node{2, Act::relu, BigReal(0L), {Edge{0, BigReal(1L)}}, BigReal(-0.7)});
  net.nodes.push_back(Node{3, Act::sin, BigReal(0L), {Edge{2, BigReal(2L)}}, BigReal(0.3)});
  net.nodes.push_back(
      Node{1, Act::identity, BigReal(0L), {Edge{3, BigReal(1L)}}, BigReal(0L)});

  BigReal a(0.05), b(0.95);
  const long m = n_vdw_bound(3, 2) - 1;
  BigReal h = (b - a) / BigReal(m);
  ColoringResult coloring = branch_coloring(net, a, h, m);
  CHECK(coloring.color_traces.size() == 2);
  auto colorer = [&](const BigReal& x) {
    long idx = round_big((x - a) / h).to_long();
    return coloring.coloring.colors.at(static_cast<std::size_t>(idx));
  };
  auto sub = make_branch_sub_certifier(net, coloring.color_traces);
  auto g_fn = [&](const BigReal& x) { return eval_network(net, x).value; };
  Certificate c = vdw_composite_certificate(g_fn, a, b, colorer, sub, 3, 2);
  CHECK(c.pass);
}

TEST_CASE("random members pass and a transcendental control fails (small sweep)") {
  Rng rng(31);
  const BigReal tol = BigReal::pow2(-128);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + static_cast<int>(t % 3);
    SineSumParams member;
    for (int i = 0; i < n; ++i) {
      member.waves.push_back(Wave{BigReal(rng.uniform(-2.0, 2.0)),
                                  BigReal(rng.uniform(0.1, 30.0)),
                                  BigReal(rng.uniform(0.0, 6.28))});
    }
    std::vector<BigReal> alphas, betas;
    for (int i = 0; i < 2 * n + 1; ++i) {
      alphas.push_back(BigReal(rng.uniform(0.0, 0.3)));
      betas.push_back(BigReal(rng.uniform(0.0, 0.3)));
    }
    FamilyParams fam = member;
    auto g = [&](const BigReal& x) { return evaluate(fam, x); };
    CHECK(det_certificate(g, BigReal(rng.uniform(0.0, 0.4)), alphas, betas, n, tol).pass);
  }
}
