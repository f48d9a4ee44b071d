#include <doctest.h>

#include "xpr/families.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/limits.hpp"
#include "xpr/parallel.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

struct PolicyGuard {
  ~PolicyGuard() { par::set_policy(par::Policy::auto_detect); }
};

SineSumParams member() {
  Rng rng(61);
  SineSumParams p;
  for (int i = 0; i < 5; ++i) {
    p.waves.push_back(Wave{BigReal(rng.uniform(-1.0, 1.0)), BigReal(rng.uniform(1.0, 25.0)),
                           BigReal(rng.uniform(0.0, 6.28))});
  }
  return p;
}

}  // namespace

TEST_CASE("serial and OpenMP grid sampling agree bit for bit") {
  PolicyGuard guard;
  FamilyParams fam = member();
  par::set_policy(par::Policy::serial);
  SampleGrid a = sample(fam, BigReal(0L), BigReal(0.001), 2000);
  par::set_policy(par::Policy::openmp);
  SampleGrid b = sample(fam, BigReal(0L), BigReal(0.001), 2000);
  REQUIRE(a.values.size() == b.values.size());
  for (long k = 0; k <= a.m; ++k) CHECK(a.real_value(k) == b.real_value(k));
}

TEST_CASE("serial and OpenMP sup distance agree bit for bit") {
  PolicyGuard guard;
  FamilyParams fam = member();
  auto f = [&](const BigReal& x) { return evaluate(fam, x); };
  auto zero = [](const BigReal&) { return BigReal(0L); };
  par::set_policy(par::Policy::serial);
  BigReal a = sup_distance(f, zero, 5000);
  par::set_policy(par::Policy::openmp);
  BigReal b = sup_distance(f, zero, 5000);
  CHECK(a == b);
}

TEST_CASE("serial and OpenMP orbit scans find the same frequency") {
  PolicyGuard guard;
  DiophantineInstance inst;
  inst.points = {BigReal(1L), sqrt_big(BigReal(2L))};
  inst.angles = {BigReal(2.0), BigReal(4.0)};
  inst.eps = BigReal(0.08);
  inst.omega_max = BigReal(1e5);
  SolveOptions opts;
  opts.enable_lattice = false;
  par::set_policy(par::Policy::serial);
  OrbitResult a = solve_orbit(inst, opts);
  par::set_policy(par::Policy::openmp);
  OrbitResult b = solve_orbit(inst, opts);
  REQUIRE(a.found() == b.found());
  if (a.found()) CHECK(a.solution->omega == b.solution->omega);
}

TEST_CASE("chunked merge covers the range exactly once") {
  auto slots = par::chunked<std::pair<std::size_t, std::size_t>>(
      103, 7, [&](std::size_t, std::size_t b, std::size_t e) { return std::make_pair(b, e); });
  std::size_t expect = 0;
  for (auto& [b, e] : slots) {
    CHECK(b == expect);
    CHECK(e >= b);
    expect = e;
  }
  CHECK(expect == 103);
}
