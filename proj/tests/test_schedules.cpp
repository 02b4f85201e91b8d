#include <doctest.h>

#include <cmath>

#include "hlq/error.hpp"
#include "hlq/schedules.hpp"

using namespace hlq;

TEST_CASE("uniform schedule") {
  const Schedule s = uniform_schedule(10, 0.5, 0.0, 1.0);
  REQUIRE(s.size() == 10);
  for (const auto& p : s) {
    CHECK(std::abs(p.alpha - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(p.beta - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(p.coherence() - 0.5) < 1e-15);
  }

  const Schedule none = uniform_schedule(3, 0.0, 0.0, 1.0);
  CHECK(none[0].alpha == Complex(1.0));
  CHECK(none[0].beta == Complex(0.0));

  const Schedule phased = uniform_schedule(2, 0.3, 1.2, {0.5, 0.5});
  CHECK(std::abs(std::abs(phased[1].coherence()) - 0.3) < 1e-15);
  CHECK(std::arg(phased[1].coherence()) == doctest::Approx(1.2));

  CHECK_THROWS_AS(uniform_schedule(5, 0.6, 0.0, 1.0), Error);
  try {
    uniform_schedule(5, 0.51, 0.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidCoherence);
  }
}

TEST_CASE("alternating schedule") {
  const Schedule s = alternating_schedule(8, 0.4, 1.0);
  Complex sum{};
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double expected = ((j + 1) % 2 == 0 ? 1.0 : -1.0) * 0.4;
    CHECK(std::abs(s[j].coherence() - expected) < 1e-15);
    sum += s[j].coherence();
  }
  CHECK(std::abs(sum) < 1e-15);
}

TEST_CASE("rotating schedule") {
  const double omega = 2.0 * M_PI / 5.0;
  const double dt = 0.01;
  const Schedule rot = rotating_schedule(50, 0.5, omega, dt, 1.0);
  for (std::size_t j = 0; j < rot.size(); ++j) {
    const double tau = (j + 0.5) * dt;
    CHECK(std::abs(std::abs(rot[j].coherence()) - 0.5) < 1e-15);
    CHECK(std::abs(rot[j].coherence() - std::polar(0.5, -omega * tau)) < 1e-14);
  }
  const Schedule still = rotating_schedule(5, 0.25, 0.0, dt, 1.0);
  const Schedule uni = uniform_schedule(5, 0.25, 0.0, 1.0);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(still[j].alpha == uni[j].alpha);
    CHECK(still[j].beta == uni[j].beta);
  }
}

TEST_CASE("every preparation is normalized") {
  for (int i = 0; i <= 50; ++i) {
    const double z = 0.01 * i;
    for (const auto& s : {uniform_schedule(4, z, 0.7 * i, 1.0), alternating_schedule(4, z, 1.0),
                          rotating_schedule(4, z, 3.0, 0.1, 1.0)}) {
      for (const auto& p : s) CHECK(std::abs(std::norm(p.alpha) + std::norm(p.beta) - 1.0) < 1e-12);
    }
  }
  CHECK(parse_schedule_kind("alternating") == ScheduleKind::Alternating);
  CHECK_THROWS_AS(parse_schedule_kind("random"), Error);
}
