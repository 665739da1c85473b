#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/polygamma.hpp>

#include "logchisq/errors.hpp"
#include "logchisq/specfun.hpp"

using namespace logchisq;
using specfun::log_gamma;
using specfun::polygamma;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct PolygammaCase {
  int n;
  double x;
  double value;
};

// 50-digit reference values (mpmath).
constexpr PolygammaCase kPolygammaTable[] = {
    {0, 0.001, -1.0005755719318103005e+3},  {0, 0.3, -3.502524222200132989},
    {0, 1.7, 2.0854787487349395668e-1},     {0, 7.5, 1.9467574842460867881},
    {0, 25, 3.1987425128519740085},         {0, 1000, 6.9072551956488120521},
    {0, 1000000, 1.3815510057964190771e+1}, {1, 0.001, 1.000001642533195869e+6},
    {1, 0.3, 1.2245364546107730465e+1},     {1, 1.7, 7.9323283016399838195e-1},
    {1, 7.5, 1.4261589669670379977e-1},     {1, 25, 4.0810663257225579187e-2},
    {1, 1000, 1.0005001666666333334e-3},    {1, 1000000, 1.0000005000001666667e-6},
    {2, 0.001, -2.0000000023976322897e+9},  {2, 0.3, -7.5272536588726030667e+1},
    {2, 1.7, -6.040890841034589882e-1},     {2, 7.5, -2.0305252536644664065e-2},
    {2, 25, -1.6652793184224681654e-3},     {2, 1000, -1.0010004999998333335e-6},
    {2, 1000000, -1.0000010000005e-12},     {3, 0.001, 6.0000000000064691141e+12},
    {3, 0.3, 7.4314176465504966736e+2},     {3, 1.7, 8.8956200662431632257e-1},
    {3, 7.5, 5.7724366565786937067e-3},     {3, 25, 1.3588463650827370403e-4},
    {3, 1000, 2.0030019999990000013e-9},    {3, 1000000, 2.000003000002e-18},
    {5, 0.001, 1.2000000000000000012e+20},  {5, 0.3, 1.6463484609922299988e+5},
    {5, 1.7, 5.3451838657811006586},        {5, 7.5, 1.3927076560043098558e-3},
    {5, 25, 2.7131757700038323466e-6},      {5, 1000, 2.406005999994400012e-14},
    {5, 1000000, 2.400006000006e-29},       {8, 0.001, -4.032e+31},
    {8, 0.3, -2.0484720468178859291e+9},    {8, 1.7, -3.4564324629572392563e+2},
    {8, 7.5, -8.2398346884921813584e-4},    {8, 25, -3.8631131775239171114e-8},
    {8, 1000, -5.0601902399445602059e-21},  {8, 1000000, -5.04002016003024e-45},
    {13, 0.001, 6.2270208e+51},             {13, 0.3, 1.3019153600131893771e+17},
    {13, 1.7, 3.7040054646037624535e+6},    {13, 7.5, 4.2729137342511949415e-3},
    {13, 25, 4.127814217131039678e-10},     {13, 1000, 4.8212237522854078132e-31},
    {13, 1000000, 4.790047135176648576e-70}, {21, 0.001, 5.109094217170944e+85},
    {21, 0.3, 1.6280821236851161033e+31},   {21, 1.7, 4.3499489858148924314e+14},
    {21, 7.5, 3.0644161563205676823},       {21, 25, 1.5843674951397000328e-11},
    {21, 1000, 2.4585411451280889654e-45},  {21, 1000000, 2.432927553741392582e-108},
    {32, 0.001, -2.6313083693369353017e+134}, {32, 0.3, -4.733368773075507772e+52},
    {32, 1.7, -6.5366832895069990713e+27},  {32, 7.5, -3.5502446078226234399e+6},
    {32, 25, -2.6947467866428819552e-11},   {32, 1000, -8.355127668095197976e-63},
    {32, 1000000, -8.222970220319999466e-159},
};

}  // namespace

TEST_CASE("log_gamma at known points") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-13);
  CHECK(rel_err(log_gamma(10.0), std::log(362880.0)) < 1e-13);

  struct {
    double x, value;
  } cases[] = {{0.001, 6.9071788853838536825},   {1.5, -0.12078223763524522235},
               {3.7, 1.4280723266653879219},     {123.25, 468.61448295051664423},
               {1e8, 1742068066.1038347093}};
  for (const auto& c : cases) {
    CAPTURE(c.x);
    CHECK(rel_err(log_gamma(c.x), c.value) < 1e-13);
  }
}

TEST_CASE("log_gamma rejects non-positive and non-finite input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(log_gamma(INFINITY), DomainError);
}

TEST_CASE("polygamma closed forms") {
  constexpr double euler = 0.57721566490153286061;
  CHECK(rel_err(polygamma(0, 1.0), -euler) < 1e-12);
  CHECK(rel_err(polygamma(1, 1.0), std::numbers::pi * std::numbers::pi / 6.0) < 1e-12);
  CHECK(rel_err(polygamma(0, 0.5), -euler - 2.0 * std::numbers::ln2) < 1e-12);
  CHECK(specfun::digamma(2.0) == polygamma(0, 2.0));
}

TEST_CASE("polygamma against 50-digit reference table") {
  for (const auto& c : kPolygammaTable) {
    CAPTURE(c.n);
    CAPTURE(c.x);
    CHECK(rel_err(polygamma(c.n, c.x), c.value) < 1e-12);
  }
}

TEST_CASE("polygamma agrees with an independent implementation on a dense grid") {
  for (int n = 0; n <= 12; ++n) {
    for (double x = 0.05; x < 200.0; x *= 1.37) {
      if (n == 0 && std::abs(x - 1.4616321449683623) < 0.05) {
        continue;  // digamma root: relative error is meaningless here
      }
      CAPTURE(n);
      CAPTURE(x);
      CHECK(rel_err(polygamma(n, x), boost::math::polygamma(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("polygamma recurrence") {
  for (int n = 0; n <= 6; ++n) {
    for (double x = 0.1; x <= 100.0; x += 0.7) {
      const double lhs = polygamma(n, x + 1.0) - polygamma(n, x);
      const double rhs = ((n % 2 == 0) ? 1.0 : -1.0) * specfun::factorial(n) / std::pow(x, n + 1);
      CAPTURE(n);
      CAPTURE(x);
      CHECK(rel_err(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("polygamma matches finite differences of the next lower order") {
  for (int n = 1; n <= 4; ++n) {
    for (double x = 0.5; x <= 50.0; x *= 1.5) {
      const double h = 1e-4 * x;
      const double fd = (polygamma(n - 1, x + h) - polygamma(n - 1, x - h)) / (2.0 * h);
      CAPTURE(n);
      CAPTURE(x);
      CHECK(rel_err(fd, polygamma(n, x)) < 1e-6);
    }
  }
}

TEST_CASE("log_gamma recurrence") {
  for (double x = 0.1; x <= 100.0; x += 0.7) {
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    CAPTURE(x);
    // Both sides vanish near x = 1 and x = 2 shifted; compare on the larger scale there.
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(log_gamma(x)), std::abs(std::log(x))}));
  }
}

TEST_CASE("digamma is strictly increasing") {
  double prev = polygamma(0, 1e-3);
  for (double x = 2e-3; x < 1e4; x *= 1.1) {
    const double cur = polygamma(0, x);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("polygamma domain and order errors") {
  CHECK_THROWS_AS(polygamma(0, 0.0), DomainError);
  CHECK_THROWS_AS(polygamma(1, -1.0), DomainError);
  CHECK_THROWS_AS(polygamma(-1, 1.0), OrderError);
  CHECK_THROWS_AS(polygamma(33, 1.0), OrderError);
  CHECK_NOTHROW(polygamma(32, 1.0));
}

TEST_CASE("log_factorial") {
  CHECK(specfun::log_factorial(0) == 0.0);
  CHECK(specfun::log_factorial(1) == 0.0);
  double direct = 0.0;
  for (int i = 2; i <= 10; ++i) direct += std::log(static_cast<double>(i));
  CHECK(rel_err(specfun::log_factorial(10), direct) < 1e-14);
  CHECK(rel_err(specfun::log_factorial(10), 15.104412573075515295) < 1e-14);
  CHECK_THROWS_AS(specfun::log_factorial(-1), DomainError);
}
