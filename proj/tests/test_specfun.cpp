// SPDX-License-Identifier: Apache-2.0
// Reference values from tests/oracles/specfun_oracle.py (mpmath, 60 digits).
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "casimir/specfun.hpp"

using namespace casimir;

namespace {

::testing::AssertionResult close(double got, double want, double rtol, double atol = 0.0) {
  const double err = std::fabs(got - want);
  if (err <= rtol * std::fabs(want) + atol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "got " << got << " want " << want << " err " << err;
}

struct P2 {
  double x, v;
};
struct P3 {
  double s, chi, v;
};

}  // namespace

TEST(Gamma, LgammaMatchesOracle) {
  const P2 pts[] = {
      {0.1, 2.252712651734206},
      {0.5, 0.57236494292470009},
      {1.5, -0.12078223763524522},
      {3.7, 1.4280723266653879},
      {10.25, 13.368023671476046},
      {50.5, 146.51925549072063},
      {400.125, 1995.2580297430629},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(casimir::lgamma(p.x), p.v, 1e-14, 1e-15)) << p.x;
}

TEST(Gamma, DigammaMatchesOracle) {
  const P2 pts[] = {
      {0.1, -10.423754940411077},
      {0.5, -1.9635100260214235},
      {1, -0.57721566490153286},
      {2.5, 0.70315664064524319},
      {7.75, 1.9817915626943456},
      {100.5, 4.6051743525818452},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(digamma(p.x), p.v, 1e-14, 1e-15)) << p.x;
}

TEST(Gamma, RejectsNonPositive) {
  EXPECT_THROW(casimir::lgamma(0.0), std::domain_error);
  EXPECT_THROW(digamma(-1.0), std::domain_error);
}

TEST(Hurwitz, ValuesAcrossContinuation) {
  const P3 pts[] = {
      {1.5, 0.5, 4.7765379475548332},
      {1.5, 1, 2.6123753486854883},
      {1.5, 2.5, 1.4037797688568258},
      {1.5, 7, 0.78388776751837057},
      {2, 0.5, 4.9348022005446793},
      {2, 1, 1.6449340668482264},
      {2, 2.5, 0.49035775610023486},
      {2, 7, 0.15354517795933755},
      {3.25, 0.5, 9.8686223242374305},
      {3.25, 1, 1.1591519856795213},
      {3.25, 2.5, 0.087231477220152427},
      {3.25, 7, 0.0065413355183492696},
      {0.5, 0.5, -0.60489864342163037},
      {0.5, 1, -1.4603545088095868},
      {0.5, 2.5, -2.8356087867224515},
      {0.5, 7, -5.1002734451495811},
      {-0.5, 0.5, 0.06088846558059492},
      {-0.5, 1, -0.20788622497735457},
      {-0.5, 2.5, -1.8709631869975417},
      {-0.5, 7, -11.039708315202295},
      {-2.5, 0.5, -0.0070113342544251247},
      {-2.5, 1, 0.0085169287778503305},
      {-2.5, 2.5, -2.9394639901821374},
      {-2.5, 7, -198.32012476652358},
      {-1.75, 0.5, 0.00695768044407111},
      {-1.75, 1, -0.0099013776236705474},
      {-1.75, 2.5, -2.32344860642876},
      {-1.75, 7, -62.246176085763982},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(hurwitz(p.s, p.chi), p.v, 1e-12, 1e-14)) << p.s << " " << p.chi;
}

TEST(Hurwitz, DerivativeAcrossContinuation) {
  const P3 pts[] = {
      {1.5, 0.5, -2.0682093782329916},
      {1.5, 1, -3.9322397374311015},
      {1.5, 2.5, -3.8080184155328813},
      {1.5, 7, -3.036594079741605},
      {3.25, 0.5, 6.3822434550971549},
      {3.25, 1, -0.1481886370950864},
      {3.25, 2.5, -0.10356425017708943},
      {3.25, 7, -0.015186247759951442},
      {0.5, 0.5, -3.0563376308624982},
      {0.5, 1, -3.9226461392091517},
      {0.5, 2.5, -3.7055348998752383},
      {0.5, 7, -0.65384053052897633},
      {-1.5, 0.5, 0.043084340195710094},
      {-1.5, 1, -0.076309255320550887},
      {-1.5, 2.5, 0.5429067718541391},
      {-1.5, 7, 63.010560363246269},
      {-3, 0.5, -0.0039842259999692371},
      {-3, 1, 0.0053785763577743011},
      {-3, 2.5, 1.2778171162950924},
      {-3, 7, 712.13571133407173},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(hurwitz_deriv(p.s, p.chi), p.v, 1e-11, 1e-13)) << p.s << " " << p.chi;
}

TEST(Hurwitz, DerivativeAtNonPositiveIntegers) {
  struct P {
    int j;
    double chi, v;
  };
  const P pts[] = {
      {0, 0.5, -0.34657359027997265},
      {0, 1, -0.91893853320467274},
      {0, 1.5, -1.039720770839918},
      {0, 2, -0.91893853320467274},
      {0, 3, -0.22579135264472743},
      {0, 4.5, 1.5347980376377695},
      {1, 0.5, 0.05382943932689441},
      {1, 1, -0.16542114370045093},
      {1, 1.5, -0.29274415095307824},
      {1, 2, -0.16542114370045093},
      {1, 3, 1.2208732174194397},
      {1, 4.5, 6.990850730628344},
      {2, 0.5, 0.022836342793794953},
      {2, 1, -0.030448457058393271},
      {2, 1.5, -0.15045045234619137},
      {2, 2, -0.030448457058393271},
      {2, 3, 2.742140265181388},
      {2, 4.5, 21.835009479178906},
      {3, 0.5, -0.0039842259999692371},
      {3, 1, 0.0053785763577743011},
      {3, 1.5, -0.090627623569962401},
      {3, 2, 0.0053785763577743011},
      {3, 3, 5.5505560208373368},
      {3, 4.5, 69.307072076067668},
      {4, 0.5, -0.0074848232346268353},
      {4, 1, 0.0079838114502686243},
      {4, 1.5, -0.050806522019623417},
      {4, 2, 0.0079838114502686243},
      {4, 3, 11.098338700409394},
      {4, 4.5, 225.7872102614483},
      {5, 0.5, 4.6912441675989495e-4},
      {5, 1, -5.729859801986352e-4},
      {5, 1.5, -0.021191724975738396},
      {5, 2, -5.729859801986352e-4},
      {5, 3, 22.180136791938051},
      {5, 4.5, 750.51392608373265},
      {6, 0.5, 0.0058075754068985009},
      {6, 1, -0.0058997591435159375},
      {6, 1.5, -0.0050228492893506445},
      {6, 2, -0.0058997591435159375},
      {6, 3, 44.355519796692984},
      {6, 4.5, 2531.2283713672118},
  };
  for (const auto& p : pts)
    EXPECT_TRUE(close(hurwitz_deriv_neg_int(p.j, p.chi), p.v, 1e-12, 1e-14)) << p.j << " " << p.chi;
}

TEST(Hurwitz, LerchIdentity) {
  for (double chi : {0.5, 1.0, 1.5, 2.0, 3.0, 7.25})
    EXPECT_NEAR(hurwitz_deriv_neg_int(0, chi), std::lgamma(chi) - 0.5 * std::log(2.0 * std::numbers::pi), 1e-12);
}

TEST(Hurwitz, NonPositiveIntegerMatchesBernoulli) {
  // zeta_H(-j; chi) = -B_{j+1}(chi)/(j+1); B_3(x) = x^3 - 3x^2/2 + x/2
  const double chi = 2.5;
  EXPECT_NEAR(hurwitz(-2.0, chi), -(chi * chi * chi - 1.5 * chi * chi + 0.5 * chi) / 3.0, 1e-13);
}

TEST(Riemann, Zeta) {
  const P2 pts[] = {
      {1.5, 2.6123753486854883},
      {2, 1.6449340668482264},
      {3, 1.2020569031595943},
      {4.5, 1.0547075107614543},
      {9, 1.0020083928260822},
      {0.5, -1.4603545088095868},
      {-0.5, -0.20788622497735457},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(riemann_zeta(p.x), p.v, 1e-13)) << p.x;
}

TEST(Riemann, DerivativeAtNegativeIntegers) {
  struct P {
    int j;
    double v;
  };
  const P pts[] = {
      {0, -0.91893853320467274},
      {1, -0.16542114370045093},
      {2, -0.030448457058393271},
      {3, 0.0053785763577743011},
      {4, 0.0079838114502686243},
      {5, -5.729859801986352e-4},
      {6, -0.0058997591435159375},
      {7, -7.2864268015924065e-4},
      {8, 0.0083161619856022474},
      {9, 0.0031301453197885728},
  };
  for (const auto& p : pts) EXPECT_TRUE(close(riemann_zeta_deriv_neg_int(p.j), p.v, 1e-12)) << p.j;
}

TEST(Bessel, LogValuesAndRatios) {
  struct P {
    double nu, x, ln_i, ln_k, ri, rk;
  };
  const P pts[] = {
      {0.5, 0.001, -3.6796688254691348, 3.678668992135796, 500.00033333331111, -501.0},
      {0.5, 0.5, -0.53104008831178198, 0.072364942924700087, 1.1639534137386528, -2.0},
      {0.5, 3, 1.5292734930923129, -3.3235147916893274, 0.8383031566470225, -1.1666666666666667},
      {0.5, 40, 37.236621739738359, -41.618648374412241, 0.9875, -1.0125},
      {0.5, 900, 895.67986408513317, -903.17540602901743, 0.99944444444444444, -1.0005555555555556},
      {1.5, 0.001, -11.686036459786044, 10.587423771451017, 1500.0001999999943, -1500.000999000999},
      {1.5, 0.5, -2.3392130423923243, 1.1709772315928098, 3.0992935566076898, -3.3333333333333333},
      {1.5, 3, 1.1312354707446045, -3.0358327192375465, 0.98890064032889012, -1.25},
      {1.5, 40, 37.211303931754069, -41.593955761821869, 0.98814102564102564, -1.013109756097561},
      {1.5, 900, 895.67875235628048, -903.1742955347334, 0.99944568038561364, -1.0005567887532371},
      {2.25, 0.001, -18.037832388155334, 16.533754868302214, 2250.0001538461511, -2250.0003999996897},
      {2.25, 0.5, -4.0357767717046992, 2.5031269008426172, 4.576577538282738, -4.6842837073598323},
      {2.25, 3, 0.62058521696387774, -2.6403012133120183, 1.1517530359975093, -1.3603084059479797},
      {2.25, 40, 37.175710273845221, -41.559239959865011, 0.98904173632752626, -1.0139666266599451},
      {2.25, 900, 895.67718898835758, -903.17273390291753, 0.99944741842529262, -1.0005585229349096},
      {7, 0.001, -61.731478546609991, 59.092421206578066, 7000.0000624999998, -7000.0000833333326},
      {7, 0.5, -18.221412776219336, 15.579758705874216, 14.031222915572631, -14.041580309503694},
      {7, 3, -5.4098929938508337, 2.6854518697071988, 2.5152834056805434, -2.5673465501954711},
      {7, 40, 36.621087094403158, -41.018133781687803, 1.0030036496750411, -1.0272631912989155},
      {7, 900, 895.65276582504385, -903.14833786067089, 0.9994745700743137, -1.0005856143167737},
      {30.5, 0.001, -308.19872287587978, 304.0878490111684, 3.0500000015873016e+4, -3.0500000016949153e+4},
      {30.5, 0.5, -118.65119181551607, 114.54018345243854, 61.0079360234696, -61.008473946381896},
      {30.5, 3, -63.933161769708669, 59.817468702256985, 10.214181501026729, -10.217378796713546},
      {30.5, 40, 25.979507899615362, -30.590717974375063, 1.2496694304791372, -1.2654759837161035},
      {30.5, 900, 895.16295964427264, -902.65907533398163, 1.0000189920237051, -1.0011288288729856},
      {200, 0.001, -2383.4124790995782, 2377.4210145524577, 2.0000000000248756e+5, -2.0000000000251256e+5},
      {200, 0.5, -1140.4905484713493, 1134.4990807991729, 400.00124377917994, -400.00125627941431},
      {200, 3, -782.12777185106317, 776.13619481379902, 66.674128939727274, -66.674203924728377},
      {200, 40, -262.10515961354746, 256.0940842698032, 5.0985409786143097, -5.0995025363175717},
      {200, 900, 873.53584009431762, -881.05548298194611, 1.0238643069715844, -1.0249231306468993},
  };
  for (const auto& p : pts) {
    const auto b = bessel_log(p.nu, p.x);
    EXPECT_TRUE(close(b.ln_i, p.ln_i, 1e-12, 1e-12)) << p.nu << " " << p.x;
    EXPECT_TRUE(close(b.ln_k, p.ln_k, 1e-12, 1e-12)) << p.nu << " " << p.x;
    EXPECT_TRUE(close(b.i_ratio, p.ri, 1e-12)) << p.nu << " " << p.x;
    EXPECT_TRUE(close(b.k_ratio, p.rk, 1e-12)) << p.nu << " " << p.x;
    EXPECT_TRUE(close(b.ln_ik, p.ln_i + p.ln_k, 1e-12, 1e-12)) << p.nu << " " << p.x;
  }
}

TEST(Bessel, WronskianOnWideGrid) {
  for (int i = 0; i < 20; ++i)
    for (int k = 0; k < 20; ++k) {
      const double nu = 0.5 * std::pow(2000.0, i / 19.0);
      const double x = 1e-3 * std::pow(1e6, k / 19.0);
      EXPECT_LE(bessel_log(nu, x).wronskian_residual(), 1e-12) << nu << " " << x;
    }
}

TEST(Bessel, HalfIntegerClosedForm) {
  // K_{1/2}(x) = sqrt(pi/(2x)) e^-x
  for (double x : {0.01, 1.0, 30.0})
    EXPECT_NEAR(bessel_log(0.5, x).ln_k, 0.5 * std::log(std::numbers::pi / (2 * x)) - x, 1e-13);
}

TEST(Moments, LngammaMomentIntegral) {
  struct P {
    int j;
    double c;
    int D, sign;
    double v;
  };
  const P pts[] = {
      {1, 0.5, 3, 1, -0.038207726145036314},
      {2, 1, 4, 1, 0.21071478956855211},
      {3, -0.5, 5, 1, -0.0025217444280545388},
      {1, 1.5, 4, -1, 0.034157216779663773},
      {4, 1, 6, -1, 0.026094164026771513},
      {2, -1, 4, 1, -0.041776256363879367},
  };
  for (const auto& p : pts)
    EXPECT_TRUE(close(lngamma_moment_integral(p.j, p.c, p.D, p.sign), p.v, 1e-12, 1e-15)) << p.j << " " << p.c;
}

TEST(Accuracy, Validation) {
  Accuracy a;
  EXPECT_NO_THROW(a.validate());
  a.rel_tol = 0.1;
  EXPECT_THROW(a.validate(), std::invalid_argument);
}
