// Compares the serial reference path of each data-parallel kernel against
// the OpenMP path: identical results required, wall time reported.

#include <chrono>
#include <cstdio>
#include <string>

#include "xpr/families.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/limits.hpp"
#include "xpr/parallel.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

double time_call(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Row {
  std::string name;
  double serial = 0, parallel = 0;
  bool same = true;
};

void print_row(const Row& r) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", r.name.c_str(), r.serial, r.parallel,
              r.parallel > 0 ? r.serial / r.parallel : 0.0, r.same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %11s %11s %9s   %s\n", "kernel", "serial", "openmp", "speedup", "check");

  Rng rng(7);
  SineSumParams member;
  for (int i = 0; i < 8; ++i) {
    member.waves.push_back(
        Wave{BigReal(rng.uniform(-1.0, 1.0)), BigReal(rng.uniform(1.0, 40.0)),
             BigReal(rng.uniform(0.0, 6.28))});
  }
  FamilyParams fam = member;

  {
    Row row{"grid sampling (2e4 pts)", 0, 0, true};
    SampleGrid g1, g2;
    par::set_policy(par::Policy::serial);
    row.serial = time_call([&] { g1 = sample(fam, BigReal(0L), BigReal(5e-5), 20000); });
    par::set_policy(par::Policy::openmp);
    row.parallel = time_call([&] { g2 = sample(fam, BigReal(0L), BigReal(5e-5), 20000); });
    for (long k = 0; k <= g1.m && row.same; ++k) row.same = g1.real_value(k) == g2.real_value(k);
    print_row(row);
  }

  {
    Row row{"sup distance (2e4 pts)", 0, 0, true};
    auto f = [&](const BigReal& x) { return evaluate(fam, x); };
    auto zero = [](const BigReal&) { return BigReal(0L); };
    BigReal d1, d2;
    par::set_policy(par::Policy::serial);
    row.serial = time_call([&] { d1 = sup_distance(f, zero, 20000); });
    par::set_policy(par::Policy::openmp);
    row.parallel = time_call([&] { d2 = sup_distance(f, zero, 20000); });
    row.same = d1 == d2;
    print_row(row);
  }

  {
    Row row{"orbit grid scan", 0, 0, true};
    DiophantineInstance inst;
    inst.points = {BigReal(1L), sqrt_big(BigReal(2L)), sqrt_big(BigReal(3L))};
    inst.angles = {BigReal(1.0), BigReal(2.0), BigReal(3.0)};
    inst.eps = BigReal(0.02);
    inst.omega_max = BigReal(1e6);
    SolveOptions opts;
    opts.enable_lattice = false;  // force the scan kernel
    OrbitResult r1, r2;
    par::set_policy(par::Policy::serial);
    row.serial = time_call([&] { r1 = solve_orbit(inst, opts); });
    par::set_policy(par::Policy::openmp);
    row.parallel = time_call([&] { r2 = solve_orbit(inst, opts); });
    row.same = r1.found() == r2.found() &&
               (!r1.found() || r1.solution->omega == r2.solution->omega);
    print_row(row);
  }

  par::set_policy(par::Policy::auto_detect);
  return 0;
}
