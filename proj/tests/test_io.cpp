/*
   Copyright 2026 The locuslab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "locuslab/io.hpp"

using namespace locuslab;

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) * std::pow(10.0, int(rng() % 13) - 6);
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("polynomial text format parses the documented forms") {
  Polynomial p = parse_polynomial("0,-4,0,0,1");
  CHECK(p.degree() == 4);
  CHECK(p.coeff(1) == Complex(-4, 0));
  CHECK(p.coeff(4) == Complex(1, 0));

  Polynomial q = parse_polynomial("1+2i,-0.5-1e-3i,3.25");
  CHECK(q.coeff(0) == Complex(1, 2));
  CHECK(q.coeff(1) == Complex(-0.5, -1e-3));
  CHECK(q.coeff(2) == Complex(3.25, 0));
}

TEST_CASE("polynomial parse errors carry positions") {
  CHECK_THROWS_AS(parse_polynomial("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1,2+i"), ParseError);    // b is mandatory
  CHECK_THROWS_AS(parse_polynomial("1,2+3j"), ParseError);   // wrong suffix
  CHECK_THROWS_AS(parse_polynomial("abc"), ParseError);
  try {
    parse_polynomial("1,2+3j");
  } catch (const ParseError& error) {
    CHECK(error.position == 5);
    CHECK(std::string(error.what()).find("position 5") != std::string::npos);
  }
}

TEST_CASE("text round-trip is identity on coefficients") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Complex> coeffs(1 + rng() % 9);
    for (auto& c : coeffs) {
      c = Complex(u(rng), (rng() % 3 == 0) ? 0.0 : u(rng));
    }
    if (coeffs.back() == Complex(0, 0)) coeffs.back() = Complex(1, 0);
    const Polynomial p{coeffs};
    const Polynomial reparsed = parse_polynomial(polynomial_to_text(p));
    CHECK(reparsed == p);
  }
}

TEST_CASE("json round-trip is identity on coefficients") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<Complex> coeffs(1 + rng() % 9);
    for (auto& c : coeffs) c = Complex(u(rng), u(rng));
    if (coeffs.back() == Complex(0, 0)) coeffs.back() = Complex(1, 0);
    const Polynomial p{coeffs};
    const Json j = polynomial_to_json(p);
    CHECK(polynomial_from_json(Json::parse(j.dump())) == p);
  }
}

TEST_CASE("trace csv format") {
  LocusTrace trace;
  trace.points.push_back(LocusPoint{Complex(0.5, -1.25), 2.0, 1e-10});
  trace.points.push_back(LocusPoint{Complex(0.25, 0.125), 4.0, 2e-10});
  const std::string csv = trace_to_csv(trace);
  std::istringstream stream(csv);
  std::string line;
  std::getline(stream, line);
  CHECK(line == "sigma,t,gain,phase_residual");
  std::getline(stream, line);
  CHECK(line == "0.5,-1.25,2,1e-10");
}

TEST_CASE("field csv carries bbox and dims header") {
  GridField field;
  field.bbox = BBox{-1, 1, -2, 2};
  field.nx = 2;
  field.ny = 2;
  field.values = {1.0, 2.0, 3.0, 4.0};
  const std::string csv = field_to_csv(field);
  CHECK(csv == "# bbox,-1,1,-2,2\n# dims,2,2\n1,2\n3,4\n");
}
