// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "cszego/curve_spec.hpp"
#include "cszego/error.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cszego;
using testutil::kind_of;

TEST_CASE("complex literals") {
  CHECK(parse_point("2").value() == cplx(2.0, 0.0));
  CHECK(parse_point("-1.5").value() == cplx(-1.5, 0.0));
  CHECK(parse_point("1+0.3i").value() == cplx(1.0, 0.3));
  CHECK(parse_point("1-0.3i").value() == cplx(1.0, -0.3));
  CHECK(parse_point("0.5i").value() == cplx(0.0, 0.5));
  CHECK(parse_point("-i").value() == cplx(0.0, -1.0));
  CHECK(parse_point("i").value() == cplx(0.0, 1.0));
  CHECK(parse_point("1e-3+2e+1i").value() == cplx(1e-3, 20.0));
  CHECK(parse_point("+3").value() == cplx(3.0, 0.0));
  CHECK(parse_point("inf").is_infinity());
  for (const char* bad : {"", "x", "1+", "1+2j", "1..2", "2i3", "1 + 2i", "infinity", "nan", "1+nani"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_point(bad); }) == ErrorKind::Parse);
  }
}

TEST_CASE("canonical curve specs") {
  const Curve c = parse_curve("circle:cx=1,cy=-2,r=0.5", 64);
  REQUIRE(c.get_if<Circle>());
  CHECK(c.get_if<Circle>()->center == cplx(1.0, -2.0));
  CHECK(c.get_if<Circle>()->radius == 0.5);
  CHECK(parse_curve("circle:r=3", 64).get_if<Circle>()->center == cplx(0.0));
  CHECK(parse_curve("ellipse:r=2", 64).get_if<Ellipse>()->r == 2.0);
  CHECK(parse_curve("wedge:theta=0.7", 64).get_if<Wedge>()->theta == 0.7);
}

TEST_CASE("malformed curve specs") {
  for (const char* bad : {"ellipse", "ellipse:", "ellipse:r=", "ellipse:s=2", "ellipse:r=2,r=3",
                          "circle:cx=1", "square:r=1", "ellipse:r=2,theta=1", "wedge:theta=abc",
                          "mobius(1,0,0)*ellipse:r=2", "mobius(1,0,0,1)ellipse:r=2",
                          "mobius(1,0,0,1*ellipse:r=2"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_curve(bad, 64); }) == ErrorKind::Parse);
  }
  // Well-formed text with parameters outside the family's domain.
  CHECK(kind_of([] { parse_curve("ellipse:r=0.5", 64); }) == ErrorKind::Domain);
  CHECK(kind_of([] { parse_curve("wedge:theta=2", 64); }) == ErrorKind::Domain);
}

TEST_CASE("Moebius-transformed curves are sampled") {
  const Curve m = parse_curve("mobius(1,0,1,-5)*ellipse:r=2", 128);
  REQUIRE(m.is_sampled());
  const SampledCurve& s = *m.get_if<SampledCurve>();
  CHECK(s.size() == 128);
  // Node 0 of the ellipse is 2, sent to 2 / (2 - 5).
  CHECK(std::abs(s.z[0] - cplx(-2.0 / 3.0)) < 1e-14);
  const Curve nested = parse_curve("mobius(0,1,1,0)*mobius(1,2i,0,1)*circle:r=1", 64);
  CHECK(nested.is_sampled());
  CHECK(kind_of([] { parse_curve("mobius(1,0,1,-2)*ellipse:r=2", 64); }) == ErrorKind::PoleOnCurve);
}
