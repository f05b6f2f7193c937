#include <random>

#include "doctest.h"
#include "mumford/error.hpp"
#include "mumford/wavelets.hpp"
#include "test_support.hpp"

using namespace mumford;
using mumford::testing::q;

namespace {

MeasureProfile tate_profile(long m = 3) {
  return build_profile(3, RationalFunctionDatum::dz_over_z(), testing::tate_group().domain, m);
}

ExactComplex inner(const LevelFunction& u, const LevelFunction& v, const MeasureProfile& prof) {
  ExactComplex s(prof.p);
  for (size_t i = 0; i < u.states.size(); ++i)
    s += u.values[i].times(v.values[i].conj()).scaled(mass(prof, u.states[i]));
  return s;
}

}  // namespace

TEST_CASE("wavelet values") {
  Wavelet w{Disc(3, q(1), -1), 1};
  CHECK(wavelet_eval(w, q(1)) == exact_complex(3, q(3), CharacterPhase{q(1, 9)}));
  CHECK(wavelet_eval(w, q(2)).is_zero());
  Wavelet unit{Disc(3, q(0), 0), 1};
  CHECK(wavelet_eval(unit, q(0)) == exact_complex(3, q(1), CharacterPhase{q(0)}));
  CHECK(wavelet_eval(unit, q(1)) == exact_complex(3, q(1), CharacterPhase{q(1, 3)}));
  // omega-normalised on a density-3 piece: (3 * 1/9)^(-1/2)
  auto prof = tate_profile(2);
  Wavelet inner_w{Disc(3, q(3), -2), 2};
  CHECK(wavelet_eval(inner_w, q(3), prof, Normalization::kOmega) ==
        exact_complex(3, q(3), wavelet_phase(inner_w, q(3))));
}

TEST_CASE("invariant extension") {
  auto G = testing::tate_group();
  InvariantWavelet w{{Disc(3, q(1), -1), 1}, &G};
  CHECK(invariant_eval(w, q(9)) == wavelet_eval(w.base, q(1)));
  CHECK(invariant_eval(w, q(1, 9)) == wavelet_eval(w.base, q(1)));
  CHECK(invariant_eval(w, q(4)) == wavelet_eval(w.base, q(4)));
}

TEST_CASE("means vanish and the wavelets are orthonormal") {
  auto prof = tate_profile(4);
  auto ws = admissible_wavelets(prof, 3);
  CHECK(ws.size() == 2 * (2 + 8 + 24));
  for (const auto& w : ws) {
    CHECK(wavelet_mean(w, prof).is_zero());
    CHECK(wavelet_mean(w, prof, Normalization::kOmega).is_zero());
  }
  ExactComplex one = ExactComplex::single(3, q(1), q(0), q(1));
  for (size_t a = 0; a < ws.size(); ++a)
    for (size_t b = 0; b < ws.size(); ++b) {
      auto ip = inner_product(ws[a], ws[b], prof);
      if (a == b)
        CHECK(ip == one);
      else
        CHECK(ip.is_zero());
    }
  Wavelet w1{Disc(3, q(1), -1), 1}, w2{Disc(3, q(1), -1), 2};
  CHECK(inner_product(w1, w2, prof).is_zero());
}

TEST_CASE("zero-cores are excluded") {
  FundamentalDomain ball{Disc(3, q(0), 0), {}};
  auto prof = build_profile(3, RationalFunctionDatum(q(1), {{q(0), 1}}), ball, 2);
  Wavelet bad{Disc(3, q(0), 0), 1};
  CHECK_FALSE(is_admissible(prof, bad.support));
  try {
    wavelet_mean(bad, prof);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotAdmissible);
  }
  CHECK(is_admissible(prof, Disc(3, q(1), -1)));
}

TEST_CASE("completeness census") {
  auto prof = tate_profile(3);
  auto c1 = completeness_census(prof, 1);
  CHECK(c1.dim == 2);
  CHECK(c1.n_wavelets == 0);
  CHECK(c1.gap == 1);
  auto c2 = completeness_census(prof, 2);
  CHECK(c2.dim == 8);
  CHECK(c2.n_wavelets == 4);
  CHECK(c2.gap == 3);
  auto c3 = completeness_census(prof, 3);
  CHECK(c3.dim == 24);
  CHECK(c3.n_wavelets == 20);
  CHECK(c3.gap == 3);
  CHECK(c3.maximal_discs == 4);

  FundamentalDomain ball{Disc(3, q(0), 0), {}};
  auto flat = build_profile(3, RationalFunctionDatum(q(1), {}), ball, 1);
  auto cb = completeness_census(flat, 1);
  CHECK(cb.dim == 3);
  CHECK(cb.n_wavelets == 2);
  CHECK(cb.gap == 0);
}

TEST_CASE("an indicator leaves a residual") {
  auto prof = tate_profile(2);
  auto u = indicator_function(prof, 2, Disc(3, q(1), -1));
  auto a = analyze(u, prof);
  CHECK(a.constant == ExactComplex::single(3, q(1), q(0), q(1, 4)));
  CHECK(a.coefficients.empty());
  CHECK_FALSE(a.residual.values[0].is_zero());
  CHECK(synthesize(a, prof).values == u.values);
}

TEST_CASE("property: analysis round trip and orthogonal residual") {
  std::mt19937_64 rng(17);
  auto prof = tate_profile(3);
  for (int trial = 0; trial < 20; ++trial) {
    long m = 2 + trial % 2;
    auto u = zero_function(prof, m);
    for (auto& v : u.values) {
      long num = long(rng() % 7) - 3;
      long ph = long(rng() % 9);
      v = ExactComplex::single(3, q(1), q(ph, 9), q(num, 1 + long(rng() % 3)));
    }
    auto a = analyze(u, prof);
    CHECK(synthesize(a, prof).values == u.values);
    auto ones = constant_function(prof, m, q(1));
    CHECK(inner(a.residual, ones, prof).is_zero());
    for (const auto& w : admissible_wavelets(prof, m - 1))
      CHECK(inner(a.residual, wavelet_function(prof, m, w), prof).is_zero());
  }
}
