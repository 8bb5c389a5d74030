#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bql/symbol.hpp"
#include "bql/synth.hpp"
#include "oracles.hpp"

using namespace bql;

namespace {
const GridSpec kGrid{32, 32, 16.0, 16.0};

Field random_field(std::uint64_t seed) {
  return random_real_field(kGrid, seed, 9, 1.2);
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((GridSpec{6, 32, 16, 16}.validate()), StructuralError);
  CHECK_THROWS_AS((GridSpec{33, 32, 16, 16}.validate()), StructuralError);
  CHECK_THROWS_AS((GridSpec{32, 32, -1, 16}.validate()), StructuralError);
  CHECK_THROWS_AS((GridSpec{32, 32, 16, 16, 1.5}.validate()), StructuralError);
  CHECK_NOTHROW(kGrid.validate());
}

TEST_CASE("index to wavevector is a bijection") {
  const GridSpec& g = kGrid;
  CHECK(g.freq_x(0) == 0);
  CHECK(g.freq_x(g.nx / 2) == -g.nx / 2);  // Nyquist
  CHECK(g.freq_x(g.nx - 1) == -1);
  for (int jx = -g.nx / 2; jx < g.nx / 2; ++jx)
    CHECK(g.freq_x(g.mode_ix(jx)) == jx);
}

TEST_CASE("single cosine mode has exactly two Fourier coefficients") {
  Field f = cosine_mode(kGrid, 1, 0, 1.0);
  Field fh = f.to_fourier();
  const std::size_t plus = kGrid.index(kGrid.mode_ix(1), 0);
  const std::size_t minus = kGrid.index(kGrid.mode_ix(-1), 0);
  double off = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i)
    if (i != plus && i != minus) off = std::max(off, std::abs(fh[i]));
  CHECK(std::abs(fh[plus]) > 0.1);
  CHECK(std::abs(fh[minus]) > 0.1);
  CHECK(off <= 1e-13 * std::abs(fh[plus]));
}

TEST_CASE("round trip and Plancherel") {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    Field f = random_real_field(kGrid, seed, 9, 1.2);
    Field back = f.to_fourier().to_physical();
    CHECK(l2_distance(f, back) <= 1e-12 * f.l2());
    CHECK(oracle::rel_err(f.to_fourier().l2(), f.l2()) <= 1e-12);
  }
}

TEST_CASE("phi symbol values") {
  CHECK(phi_symbol(0, 0) == 0.0);
  CHECK(phi_symbol(1, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi_symbol(0, 2) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("phi gradient magnitude values") {
  CHECK(phi_gradient_magnitude(0, 0) == 1.0);
  CHECK(phi_gradient_magnitude(1, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(phi_gradient_magnitude(0, 3) == doctest::Approx(28.0).epsilon(1e-15));
  CHECK(phi_gradient_magnitude(2.3, -1.1) > 0.0);
}

TEST_CASE("identity multiplier is the identity") {
  Field f = random_field(3);
  CHECK(l2_distance(apply_multiplier(f, symbols::identity()), f) <= 1e-14 * f.l2());
}

TEST_CASE("|k|^2 scales a single mode by its eigenvalue") {
  Field f = single_mode(kGrid, 1, 0, 1.0);
  const double k = 2.0 * std::numbers::pi / kGrid.Lx;
  Field got = fractional_derivative(f, 2.0);
  Field want = scaled(f, k * k);
  CHECK(l2_distance(got, want) <= 1e-12 * want.l2());
}

TEST_CASE("Riesz algebra: R1^2 + R2^2 = -Id on mean-zero fields") {
  Field f = project_mean_zero(random_field(4));
  Field lhs = add(riesz(riesz(f, 1), 1), riesz(riesz(f, 2), 2));
  CHECK(l2_distance(lhs, scaled(f, -1.0)) <= 1e-12 * f.l2());
}

TEST_CASE("Riesz of a single mode and the L2 contraction") {
  Field f = single_mode(kGrid, 2, 0, 1.0);  // k = (a, 0), a > 0
  Field got = riesz(f, 1);
  Field want = scaled(f, cplx(0.0, -1.0));
  CHECK(l2_distance(got, want) <= 1e-12 * want.l2());
  for (std::uint64_t seed = 5; seed < 15; ++seed) {
    Field r = random_field(seed);
    CHECK(riesz(r, 1).l2() <= r.l2() * (1.0 + 1e-12));
    CHECK(riesz(r, 2).l2() <= r.l2() * (1.0 + 1e-12));
  }
}

TEST_CASE("D^1 = R1 d1 + R2 d2 on mean-zero fields") {
  Field f = project_mean_zero(random_field(6));
  Field lhs = add(riesz(derivative(f, 1), 1), riesz(derivative(f, 2), 2));
  Field rhs = fractional_derivative(f, 1.0);
  CHECK(l2_distance(lhs, rhs) <= 1e-12 * rhs.l2());
}

TEST_CASE("fractional derivative semigroup and edge cases") {
  Field f = random_field(7);
  CHECK(l2_distance(fractional_derivative(f, 0.0), f) <= 1e-14 * f.l2());
  Field d2 = fractional_derivative(f, 2.0);
  Field d11 = fractional_derivative(fractional_derivative(f, 1.0), 1.0);
  CHECK(l2_distance(d11, d2) <= 1e-12 * d2.l2());
  CHECK_THROWS_AS(fractional_derivative(f, -0.5), DomainError);
}

TEST_CASE("propagator: identity at t=0, unitary, group law") {
  Field f = random_field(8);
  CHECK(l2_distance(propagator(f, 0.0, PropagatorSign::Plus), f) <= 1e-14 * f.l2());
  CHECK(oracle::rel_err(propagator(f, 1.7, PropagatorSign::Plus).l2(), f.l2()) <= 1e-12);
  for (double t : {0.1, -0.1, 1.0, -1.0, 10.0, -10.0}) {
    const double s = 0.37 * t;
    Field two = propagator(propagator(f, t, PropagatorSign::Plus), s, PropagatorSign::Plus);
    Field one = propagator(f, t + s, PropagatorSign::Plus);
    CHECK(l2_distance(two, one) <= 1e-12 * f.l2());
    CHECK(oracle::rel_err(propagator(f, t, PropagatorSign::Minus).l2(), f.l2()) <= 1e-12);
  }
  // U+ and U- are inverse flows.
  Field fwd_back = propagator(propagator(f, 2.3, PropagatorSign::Plus), -2.3,
                              PropagatorSign::Plus);
  CHECK(l2_distance(fwd_back, f) <= 1e-12 * f.l2());
}

TEST_CASE("multiplier composition commutes") {
  Field f = random_field(9);
  const Symbol m1 = symbols::fractional_derivative(0.7);
  const Symbol m2 = symbols::riesz(2);
  const Symbol prod{"m1*m2", [&](double kx, double ky) {
                      return m1.eval(kx, ky) * m2.eval(kx, ky);
                    }};
  Field a = apply_multiplier(apply_multiplier(f, m1), m2);
  Field b = apply_multiplier(apply_multiplier(f, m2), m1);
  Field c = apply_multiplier(f, prod);
  CHECK(l2_distance(a, b) <= 1e-12 * f.l2());
  CHECK(l2_distance(a, c) <= 1e-12 * f.l2());
}

TEST_CASE("non-finite symbol reports the wavevector") {
  Field f = random_field(10);
  const Symbol bad{"1/|k|", [](double kx, double ky) -> cplx {
                     return 1.0 / std::hypot(kx, ky);
                   }};
  CHECK_THROWS_AS(apply_multiplier(f, bad), DefectError);
  try {
    apply_multiplier(f, bad);
  } catch (const DefectError& e) {
    CHECK(std::string(e.what()).find("wavevector") != std::string::npos);
  }
}

TEST_CASE("dealias: band-limited data unchanged, top mode zeroed, idempotent") {
  Field low = single_mode(kGrid, 2, 3, 1.0);
  CHECK(l2_distance(dealias(low), low) <= 1e-14 * low.l2());

  Field top = single_mode(kGrid, -kGrid.nx / 2, 0, 1.0);
  CHECK(dealias(top).l2() <= 1e-14 * top.l2());

  Field f = random_field(11);
  Field once = dealias(f);
  CHECK(l2_distance(dealias(once), once) <= 1e-14 * std::max(once.l2(), 1e-30));
}

TEST_CASE("hermitian deviation detects real versus complex fields") {
  Field real = random_field(12);
  CHECK(hermitian_deviation(real) <= 1e-12);
  Field complex_mode = single_mode(kGrid, 1, 2, cplx(0.3, 0.8));
  CHECK(hermitian_deviation(complex_mode) > 0.1);
}

TEST_CASE("mismatched grid metadata is a structural error") {
  Field a(kGrid, Rep::Physical);
  Field b(GridSpec{32, 32, 8.0, 16.0}, Rep::Physical);
  CHECK_THROWS_AS(add(a, b), StructuralError);
}
