#include <doctest.h>

#include <cmath>
#include <memory>

#include "fracfem/contour.hpp"
#include "fracfem/harness.hpp"
#include "fracfem/specialfn.hpp"

using namespace fracfem;

namespace {

constexpr double kBeta = 2.0 / 3.0;

double diff_norm(const SparseMatrix& mass, const std::vector<double>& a,
                 const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return energy_norm(mass, d);
}

// Mixed-BC system whose stiffness is rescaled so the smallest eigenvalue is 1.
struct EigenFixture {
  Mesh mesh = generate_sector_mesh(kBeta, 0.125, 3.0);
  DofMap dofmap = make_dofmap(mesh, BcKind::mixed);
  SparseMatrix mass = assemble_mass(mesh, dofmap);
  SparseMatrix stiffness = assemble_stiffness(mesh, dofmap, normalize_K(kBeta, BcKind::mixed));
  EigenPair pair;

  EigenFixture() {
    const EigenPair first = smallest_generalized_eigenpair(stiffness, mass, 1e-15, 2000);
    for (double& v : stiffness.val) v /= first.value;
    pair = smallest_generalized_eigenpair(stiffness, mass, 1e-15, 2000);
  }
};

}  // namespace

TEST_CASE("contour parameters") {
  const ContourParams c = make_contour(8, 1.0);
  CHECK(c.mu == doctest::Approx(35.93660224).epsilon(1e-12));
  CHECK(c.dxi == doctest::Approx(0.1352240175).epsilon(1e-10));
  CHECK(c.delta == 1.17210423);
  REQUIRE(c.nodes.size() == 9);
  REQUIRE(c.derivatives.size() == 9);
  CHECK(c.nodes[0].imag() == 0.0);
  CHECK(c.nodes[0].real() == doctest::Approx(c.mu * (1.0 - std::sin(c.delta))));
  CHECK(c.nodes[0].real() > 0.0);
  for (int j = 1; j <= 8; ++j) {
    CHECK(c.nodes[j].real() < c.nodes[j - 1].real());
    CHECK(std::abs(std::arg(c.nodes[j])) < kPi);
    CHECK(c.nodes[j].imag() > 0.0);
  }
  CHECK(make_contour(8, 2.0).mu == doctest::Approx(0.5 * c.mu));
  CHECK_THROWS_AS(make_contour(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_contour(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_contour(8, -1.0), std::invalid_argument);
}

TEST_CASE("derivatives match a finite difference of the contour") {
  const ContourParams c = make_contour(8, 1.0);
  const double eps = 1e-6;
  for (int j = 0; j <= 8; ++j) {
    const double xi = j * c.dxi;
    auto z = [&](double s) { return c.mu * (1.0 - std::sin(Complex{c.delta, -s})); };
    const Complex fd = (z(xi + eps) - z(xi - eps)) / (2.0 * eps);
    CHECK(std::abs(fd - c.derivatives[j]) < 1e-6 * std::abs(c.derivatives[j]));
  }
}

TEST_CASE("scalar transform pairs") {
  CHECK(std::abs(invert_scalar([](Complex z) { return 1.0 / (z + 1.0); }, 1.0, 8) -
                 std::exp(-1.0)) < 1e-6);
  for (double lambda : {1.0, 5.0})
    for (double t : {0.1, 1.0, 5.0})
      for (double a : {0.25, 0.5, 0.75}) {
        const double got = invert_scalar(
            [=](Complex z) { return std::pow(z, a - 1.0) / (std::pow(z, a) + lambda); }, t, 12);
        CHECK(std::abs(got - mittag_leffler_neg(a, lambda * std::pow(t, a))) < 1e-6);
      }
}

TEST_CASE("eigenvector data: Laplace solve and time evolution") {
  const EigenFixture f;
  REQUIRE(std::abs(f.pair.value - 1.0) < 1e-12);
  const LaplaceSystem sys(f.mass, f.stiffness);
  const double alpha = 0.5;
  const Complex z{3.0, 4.0};
  const auto uhat = uhat_solve(z, alpha, sys, f.pair.vector, {});
  const Complex factor = std::pow(z, alpha - 1.0) / (std::pow(z, alpha) + 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < uhat.size(); ++i)
    worst = std::max(worst, std::abs(uhat[i] - factor * f.pair.vector[i]));
  CHECK(worst < 1e-8);

  const auto u = inverse_laplace_evolve(sys, alpha, f.pair.vector, {}, 1.0, 8);
  const double decay = mittag_leffler_neg(alpha, 1.0);
  worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(u[i] - decay * f.pair.vector[i]));
  CHECK(worst < 1e-6);
}

TEST_CASE("real shift gives a real solution") {
  const EigenFixture f;
  const LaplaceSystem sys(f.mass, f.stiffness);
  const std::vector<double> u0(sys.size(), 1.0);
  for (const auto& v : uhat_solve(Complex{2.5, 0.0}, 0.3, sys, u0, {}))
    CHECK(std::abs(v.imag()) <= 1e-12);
}

TEST_CASE("complex systems meet the residual contract on every node") {
  const ProblemSpec p = example1(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.0625, 1.5);
  const Semidiscretization sd(p, mesh);
  const auto& sys = sd.system();
  const auto fhat = sd.source_load();
  const auto mu0 = multiply(sys.mass(), std::span<const double>(sd.initial_data()));
  const ContourParams c = make_contour(8, 1.0);
  for (const Complex z : c.nodes) {
    const auto u = uhat_solve(z, p.alpha, sys, sd.initial_data(), fhat);
    const Complex za = std::pow(z, p.alpha);
    const ComplexSparseMatrix a = combine(za, sys.mass(), sys.stiffness());
    const auto load = fhat(z);
    std::vector<Complex> rhs(mu0.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::pow(z, p.alpha - 1.0) * (mu0[i] + load[i]);
    auto r = multiply(a, std::span<const Complex>(u));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
    CHECK(norm2(std::span<const Complex>(r)) <= 1e-10 * norm2(std::span<const Complex>(rhs)));
  }
}

TEST_CASE("folded sum equals the full symmetric sum") {
  const ProblemSpec p = example1(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.25, 1.5);
  const Semidiscretization sd(p, mesh);
  const auto folded = sd.evolve(1.0, 8);
  const auto full = inverse_laplace_full_sum(sd.system(), p.alpha, sd.initial_data(),
                                             sd.source_load(), 1.0, 8);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(std::abs(full[i].real() - folded[i]) < 1e-13);
    CHECK(std::abs(full[i].imag()) < 1e-13);
  }
}

TEST_CASE("exactly M+1 solves per evaluation") {
  const ProblemSpec p = example2(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.25, 3.0);
  const Semidiscretization sd(p, mesh);
  for (int M : {4, 8, 13}) {
    sd.system().reset_solve_count();
    (void)sd.evolve(1.0, M);
    CHECK(sd.system().solve_count() == static_cast<std::size_t>(M + 1));
  }
}

TEST_CASE("quadrature error falls by three orders when M doubles from 4 to 8") {
  const ProblemSpec p = example2(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.125, 3.0);
  const Semidiscretization sd(p, mesh);
  const auto& m = sd.system().mass();
  const auto u4 = sd.evolve(1.0, 4), u8 = sd.evolve(1.0, 8), u16 = sd.evolve(1.0, 16);
  CHECK(diff_norm(m, u4, u8) / diff_norm(m, u8, u16) >= 1e3);
}

TEST_CASE("homogeneous evolution is stable") {
  const ProblemSpec p = example2(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.125, 3.0);
  const Semidiscretization sd(p, mesh);
  const double n0 = energy_norm(sd.system().mass(), sd.initial_data());
  for (double t : {0.1, 1.0, 5.0})
    CHECK(energy_norm(sd.system().mass(), sd.evolve(t, 8)) <= n0 + 1e-5);
}

TEST_CASE("parallel evolution reproduces the serial result bit for bit") {
  const ProblemSpec p = example1(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.125, 1.5);
  const Semidiscretization sd(p, mesh, Exec::serial);
  CHECK(sd.evolve(1.0, 8, Exec::serial) == sd.evolve(1.0, 8, Exec::parallel));
}

TEST_CASE("convenience overload agrees with the semidiscretization") {
  const ProblemSpec p = example1(0.5);
  const Mesh mesh = generate_sector_mesh(p.beta, 0.25, 1.0);
  const Semidiscretization sd(p, mesh);
  const auto u = inverse_laplace_evolve(p, mesh, sd.dofmap(), sd.system().mass(),
                                        sd.system().stiffness(), 1.0, 8);
  const auto v = sd.evolve(1.0, 8);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(u[i] - v[i]) < 1e-13);
}

TEST_CASE("bad inputs are rejected") {
  const EigenFixture f;
  const LaplaceSystem sys(f.mass, f.stiffness);
  const std::vector<double> short_u0(3, 1.0);
  CHECK_THROWS_AS(inverse_laplace_evolve(sys, 0.5, short_u0, {}, 1.0, 8), std::invalid_argument);
  const LoadFunction bad = [](Complex) { return std::vector<Complex>(2); };
  CHECK_THROWS_AS(inverse_laplace_evolve(sys, 0.5, f.pair.vector, bad, 1.0, 8, Exec::serial),
                  std::invalid_argument);
  CHECK_THROWS_AS(inverse_laplace_evolve(sys, 0.5, f.pair.vector, {}, 0.0, 8), std::invalid_argument);
  const SparseMatrix other = identity_matrix(f.mass.n);
  CHECK_THROWS_AS(LaplaceSystem(f.mass, other), std::invalid_argument);
}
