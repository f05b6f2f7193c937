#pragma once

#include <complex>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "mumford/padic.hpp"
#include "mumford/rational.hpp"
#include "mumford/surd.hpp"

namespace mumford {

namespace detail {
inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coeff_is_zero(const Surd& s) { return s.is_zero(); }
inline double coeff_to_double(const Rational& q) { return to_double(q); }
inline double coeff_to_double(const Surd& s) { return s.to_double(); }
}  // namespace detail

// Element of the cyclotomic field Q(zeta_{p^infinity}) with coefficients in
// Coeff (Rational or Surd): sum of c_phase * exp(2 pi i phase). Canonical form
// keeps only phases in [0, (p-1)/p); a phase at or above (p-1)/p is rewritten
// through the relation sum_{i<p} exp(2 pi i (phase + i/p)) = 0. That set is a
// basis at every p-power level, so zero tests are exact.
template <class Coeff>
class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(long p) : p_(p) {}

  static Cyclotomic monomial(long p, const Rational& phase, const Coeff& c) {
    Cyclotomic z(p);
    z.add(phase, c);
    return z;
  }

  long prime() const { return p_; }
  const std::map<Rational, Coeff>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void add(const Rational& phase, const Coeff& c) {
    Rational ph = frac(phase);
    if (detail::coeff_is_zero(c)) return;
    Rational top(p_ - 1, p_);
    top.canonicalize();
    if (ph >= top) {
      for (long k = 1; k < p_; ++k) {
        Rational shifted(k, p_);
        shifted.canonicalize();
        accumulate(ph - shifted, -c);
      }
    } else {
      accumulate(ph, c);
    }
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    adopt(o.p_);
    for (const auto& [ph, c] : o.coeffs_) accumulate(ph, c);
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    adopt(o.p_);
    for (const auto& [ph, c] : o.coeffs_) accumulate(ph, -c);
    return *this;
  }
  Cyclotomic operator+(const Cyclotomic& o) const { return Cyclotomic(*this) += o; }
  Cyclotomic operator-(const Cyclotomic& o) const { return Cyclotomic(*this) -= o; }

  template <class Scalar>
  Cyclotomic scaled(const Scalar& s) const {
    Cyclotomic out(p_);
    for (const auto& [ph, c] : coeffs_) out.accumulate(ph, c * s);
    return out;
  }

  // Product with a Rational-coefficient element.
  Cyclotomic times(const Cyclotomic<Rational>& o) const {
    Cyclotomic out(p_ ? p_ : o.prime());
    for (const auto& [ph1, c1] : coeffs_)
      for (const auto& [ph2, c2] : o.coefficients()) out.add(ph1 + ph2, c1 * c2);
    return out;
  }

  Cyclotomic conj() const {
    Cyclotomic out(p_);
    for (const auto& [ph, c] : coeffs_) out.add(-ph, c);
    return out;
  }

  // The phase-0 coefficient; the element is in Coeff iff nothing else is present.
  bool is_scalar() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && sgn(coeffs_.begin()->first) == 0);
  }
  Coeff scalar_part() const {
    auto it = coeffs_.find(Rational(0));
    return it == coeffs_.end() ? Coeff() : it->second;
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0.0;
    for (const auto& [ph, c] : coeffs_) {
      double angle = 2.0 * std::numbers::pi * to_double(ph);
      z += detail::coeff_to_double(c) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
  }

  bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }

 private:
  template <class>
  friend class Cyclotomic;

  void adopt(long p) {
    if (p_ == 0) p_ = p;
  }
  void accumulate(const Rational& phase, const Coeff& c) {
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = coeffs_.try_emplace(phase, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) coeffs_.erase(it);
    }
  }

  long p_ = 0;
  std::map<Rational, Coeff> coeffs_;
};

// Split r > 0 as q^2 * k with k a canonical radicand key. p-power squares and
// squares of primes below 1000 are extracted, and a perfect-square remainder is
// absorbed. Keys built from disc measures and densities are then canonical.
std::pair<Rational, Rational> split_square(long p, const Rational& r);

// sum_k sqrt(radicand_k) * cyclotomic_k. Wavelet values, inner products and
// operator outputs are exact in this form.
template <class Coeff>
class RadicalSum {
 public:
  using Entry = std::pair<Rational, Cyclotomic<Coeff>>;

  RadicalSum() = default;
  explicit RadicalSum(long p) : p_(p) {}

  static RadicalSum single(long p, const Rational& radicand, const Rational& phase, const Coeff& c) {
    RadicalSum s(p);
    s.add_term(radicand, phase, c);
    return s;
  }

  long prime() const { return p_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  // Adds c * sqrt(radicand) * exp(2 pi i phase).
  void add_term(const Rational& radicand, const Rational& phase, const Coeff& c) {
    if (sgn(radicand) == 0 || detail::coeff_is_zero(c)) return;
    auto [factor, key] = split_square(p_, radicand);
    entry_for(key).add(phase, c * factor);
    prune();
  }

  RadicalSum& operator+=(const RadicalSum& o) {
    adopt(o.p_);
    for (const auto& [key, cyc] : o.entries_) entry_for(key) += cyc;
    prune();
    return *this;
  }
  RadicalSum& operator-=(const RadicalSum& o) {
    adopt(o.p_);
    for (const auto& [key, cyc] : o.entries_) entry_for(key) -= cyc;
    prune();
    return *this;
  }
  RadicalSum operator+(const RadicalSum& o) const { return RadicalSum(*this) += o; }
  RadicalSum operator-(const RadicalSum& o) const { return RadicalSum(*this) -= o; }
  RadicalSum operator-() const { return RadicalSum(p_) - *this; }

  template <class Scalar>
  RadicalSum scaled(const Scalar& s) const {
    RadicalSum out(p_);
    for (const auto& [key, cyc] : entries_) out.entries_.emplace_back(key, cyc.scaled(s));
    out.prune();
    return out;
  }

  // Product with a Rational-coefficient sum.
  RadicalSum times(const RadicalSum<Rational>& o) const {
    RadicalSum out(p_ ? p_ : o.prime());
    for (const auto& [k1, c1] : entries_) {
      for (const auto& [k2, c2] : o.entries()) {
        auto [factor, key] = split_square(out.p_, k1 * k2);
        out.entry_for(key) += c1.times(c2).scaled(factor);
      }
    }
    out.prune();
    return out;
  }

  RadicalSum conj() const {
    RadicalSum out(p_);
    for (const auto& [key, cyc] : entries_) out.entries_.emplace_back(key, cyc.conj());
    return out;
  }

  // Value in Coeff when only the rational radicand and phase 0 are present.
  bool is_scalar() const {
    return entries_.empty() ||
           (entries_.size() == 1 && entries_[0].first == 1 && entries_[0].second.is_scalar());
  }
  Coeff scalar_part() const {
    for (const auto& [key, cyc] : entries_)
      if (key == 1) return cyc.scalar_part();
    return Coeff();
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0.0;
    for (const auto& [key, cyc] : entries_) z += std::sqrt(to_double(key)) * cyc.to_complex();
    return z;
  }

  bool operator==(const RadicalSum& o) const { return (*this - o).is_zero(); }

 private:
  template <class>
  friend class RadicalSum;

  void adopt(long p) {
    if (p_ == 0) p_ = p;
  }
  Cyclotomic<Coeff>& entry_for(const Rational& key) {
    for (auto& [k, cyc] : entries_)
      if (k == key) return cyc;
    entries_.emplace_back(key, Cyclotomic<Coeff>(p_));
    return entries_.back().second;
  }
  void prune() {
    std::erase_if(entries_, [](const Entry& e) { return e.second.is_zero(); });
  }

  long p_ = 0;
  std::vector<Entry> entries_;
};

using ExactComplex = RadicalSum<Rational>;

// sqrt(magnitude_squared) * chi-phase as an ExactComplex.
ExactComplex exact_complex(long p, const Rational& magnitude_squared, const CharacterPhase& phase);

}  // namespace mumford
