#include "mumford/omega.hpp"

#include <algorithm>
#include <map>

#include "mumford/error.hpp"

namespace mumford {

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  if (n > Integer("1000000000000")) throw Error(ErrorCode::kInvalidArgument, "polynomial coefficient too large to factor");
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divides by (z - r), which must be a root.
std::vector<Rational> deflate(const std::vector<Rational>& coeffs, const Rational& r) {
  const size_t n = coeffs.size() - 1;
  std::vector<Rational> out(n);
  Rational carry(0);
  for (size_t i = n; i-- > 0;) {
    carry = coeffs[i + 1] + carry * r;
    out[i] = carry;
  }
  return out;
}

std::optional<Rational> rational_root(const std::vector<Rational>& coeffs) {
  if (sgn(coeffs.front()) == 0) return Rational(0);
  Integer l = 1;
  for (const Rational& c : coeffs) l = lcm(l, c.get_den());
  Integer a0 = coeffs.front().get_num() * (l / coeffs.front().get_den());
  Integer an = coeffs.back().get_num() * (l / coeffs.back().get_den());
  for (const Integer& u : divisors(a0))
    for (const Integer& v : divisors(an))
      for (int s : {1, -1}) {
        Rational r(Integer(s * u), v);
        r.canonicalize();
        if (sgn(evaluate(coeffs, r)) == 0) return r;
      }
  return std::nullopt;
}

}  // namespace

RationalFunctionDatum::RationalFunctionDatum(Rational scale, std::vector<RootFactor> roots,
                                             std::vector<PolynomialFactor> polynomials)
    : scale_(std::move(scale)) {
  if (sgn(scale_) == 0) throw Error(ErrorCode::kInvalidArgument, "scale of f must be nonzero");
  for (PolynomialFactor& poly : polynomials) {
    if (poly.multiplicity == 0) continue;
    auto coeffs = poly.coefficients;
    while (coeffs.size() > 1 && sgn(coeffs.back()) == 0) coeffs.pop_back();
    if (coeffs.empty() || sgn(coeffs.back()) == 0) throw Error(ErrorCode::kInvalidArgument, "zero polynomial factor");
    while (coeffs.size() > 1) {
      auto r = rational_root(coeffs);
      if (!r) break;
      roots.push_back({*r, poly.multiplicity});
      coeffs = deflate(coeffs, *r);
    }
    if (coeffs.size() > 1) {
      throw Error(ErrorCode::kAssumptionViolated,
                  std::string(poly.multiplicity > 0 ? "zeros" : "poles") +
                      " of a polynomial factor are not all rational points");
    }
    Rational lead = coeffs.front();
    for (long k = 0; k < std::abs(poly.multiplicity); ++k)
      scale_ = poly.multiplicity > 0 ? Rational(scale_ * lead) : Rational(scale_ / lead);
  }
  std::map<Rational, long> merged;
  for (const RootFactor& r : roots) merged[r.root] += r.multiplicity;
  for (const auto& [root, mult] : merged)
    if (mult != 0) roots_.push_back({root, mult});
}

RationalFunctionDatum RationalFunctionDatum::dz_over_z() { return RationalFunctionDatum(Rational(1), {{Rational(0), -1}}); }

Rational RationalFunctionDatum::abs_value(long p, const Rational& x) const {
  Rational v = abs_p(p, scale_);
  for (const RootFactor& r : roots_) {
    Rational d = abs_p(p, Rational(x - r.root));
    if (sgn(d) == 0) throw Error(ErrorCode::kRootInsideDisc, "evaluation at a root of f");
    for (long k = 0; k < std::abs(r.multiplicity); ++k) v = r.multiplicity > 0 ? Rational(v * d) : Rational(v / d);
  }
  return v;
}

Json RationalFunctionDatum::to_json() const {
  Json factors = Json::array();
  for (const RootFactor& r : roots_) factors.push_back({{"root", rational_json(r.root)}, {"mult", r.multiplicity}});
  return Json{{"scale", rational_json(scale_)}, {"factors", factors}};
}

RationalFunctionDatum RationalFunctionDatum::from_json(const Json& j) {
  const std::string where = "measure.datum";
  Rational scale = j.contains("scale") ? rational_from_json(j.at("scale"), where + ".scale") : Rational(1);
  std::vector<RootFactor> roots;
  std::vector<PolynomialFactor> polys;
  if (j.contains("factors")) {
    const Json& fs = j.at("factors");
    if (!fs.is_array()) throw Error(ErrorCode::kParseError, where + ".factors: expected an array");
    for (size_t i = 0; i < fs.size(); ++i) {
      std::string w = where + ".factors[" + std::to_string(i) + "]";
      long mult = integer_from_json(field(fs[i], "mult", w), w + ".mult");
      if (fs[i].contains("root")) {
        roots.push_back({rational_from_json(fs[i].at("root"), w + ".root"), mult});
      } else if (fs[i].contains("poly")) {
        const Json& cs = fs[i].at("poly");
        if (!cs.is_array()) throw Error(ErrorCode::kParseError, w + ".poly: expected an array");
        PolynomialFactor pf{{}, mult};
        for (size_t k = 0; k < cs.size(); ++k) pf.coefficients.push_back(rational_from_json(cs[k], w + ".poly"));
        polys.push_back(pf);
      } else {
        throw Error(ErrorCode::kParseError, w + ": needs 'root' or 'poly'");
      }
    }
  }
  return RationalFunctionDatum(scale, roots, polys);
}

Rational local_abs(const RationalFunctionDatum& datum, const Disc& disc) {
  for (const RootFactor& r : datum.roots())
    if (disc.contains(r.root))
      throw Error(ErrorCode::kRootInsideDisc, "root " + to_string(r.root) + " lies in the disc");
  return datum.abs_value(disc.prime(), disc.center());
}

Rational MeasureProfile::total_mass() const {
  Rational m(0);
  for (const ProfilePiece& piece : pieces) m += piece.density * piece.disc.haar();
  return m;
}

Rational MeasureProfile::zero_core_mass() const {
  Rational m(0);
  for (const ZeroCore& z : zero_cores) m += z.mass;
  return m;
}

const ProfilePiece* MeasureProfile::piece_containing(const Disc& disc) const {
  for (const ProfilePiece& piece : pieces)
    if (piece.disc.contains(disc)) return &piece;
  return nullptr;
}

const ProfilePiece* MeasureProfile::piece_containing(const Rational& x) const {
  for (const ProfilePiece& piece : pieces)
    if (piece.disc.contains(x)) return &piece;
  return nullptr;
}

Rational MeasureProfile::density_at(const Rational& x) const {
  const ProfilePiece* piece = piece_containing(x);
  if (!piece) throw Error(ErrorCode::kNotAdmissible, "point " + to_string(x) + " is not in a density piece");
  return piece->density;
}

Json MeasureProfile::to_json() const {
  Json ps = Json::array();
  for (const ProfilePiece& piece : pieces) {
    Json j = disc_json(piece.disc);
    j["density"] = rational_json(piece.density);
    ps.push_back(j);
  }
  Json zs = Json::array();
  for (const ZeroCore& z : zero_cores) {
    Json j = disc_json(z.disc);
    j["root"] = rational_json(z.root);
    j["mult"] = z.multiplicity;
    j["mass"] = rational_json(z.mass);
    zs.push_back(j);
  }
  Json out{{"p", p}, {"resolution", resolution}, {"pieces", ps}, {"zero_cores", zs},
           {"total_mass", rational_json(total_mass())}};
  if (datum) out["datum"] = datum->to_json();
  return out;
}

MeasureProfile MeasureProfile::from_json(long p, const Json& j, const FundamentalDomain& F) {
  const std::string where = "measure.profile";
  MeasureProfile prof;
  prof.p = p;
  prof.resolution = j.contains("resolution") ? integer_from_json(j.at("resolution"), where + ".resolution") : 0;
  const Json& ps = field(j, "pieces", where);
  if (!ps.is_array()) throw Error(ErrorCode::kParseError, where + ".pieces: expected an array");
  for (size_t i = 0; i < ps.size(); ++i) {
    std::string w = where + ".pieces[" + std::to_string(i) + "]";
    Rational density = rational_from_json(field(ps[i], "density", w), w + ".density");
    if (sgn(density) <= 0) throw Error(ErrorCode::kValidationError, w + ".density: must be positive");
    prof.pieces.push_back({disc_from_json(p, ps[i], w), density});
    prof.resolution = std::max(prof.resolution, prof.pieces.back().disc.level());
  }
  if (j.contains("zero_cores")) {
    const Json& zs = j.at("zero_cores");
    for (size_t i = 0; i < zs.size(); ++i) {
      std::string w = where + ".zero_cores[" + std::to_string(i) + "]";
      ZeroCore z{disc_from_json(p, zs[i], w), Rational(0), 1, Rational(0)};
      if (zs[i].contains("root")) z.root = rational_from_json(zs[i].at("root"), w + ".root");
      if (zs[i].contains("mult")) z.multiplicity = integer_from_json(zs[i].at("mult"), w + ".mult");
      if (zs[i].contains("mass")) z.mass = rational_from_json(zs[i].at("mass"), w + ".mass");
      prof.zero_cores.push_back(z);
    }
  }
  std::sort(prof.pieces.begin(), prof.pieces.end(),
            [](const ProfilePiece& a, const ProfilePiece& b) { return a.disc < b.disc; });
  check_partition(prof, F);
  return prof;
}

void check_partition(const MeasureProfile& profile, const FundamentalDomain& F) {
  std::vector<Disc> all;
  for (const ProfilePiece& piece : profile.pieces) all.push_back(piece.disc);
  for (const ZeroCore& z : profile.zero_cores) all.push_back(z.disc);
  Rational covered(0);
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i].prime() != profile.p) throw Error(ErrorCode::kValidationError, "profile disc over the wrong prime");
    if (!F.contains(all[i]))
      throw Error(ErrorCode::kValidationError, "profile disc D(" + to_string(all[i].center()) + "," +
                                                   std::to_string(all[i].radius_exp()) + ") is not inside F");
    for (size_t k = i + 1; k < all.size(); ++k)
      if (!all[i].disjoint(all[k])) throw Error(ErrorCode::kValidationError, "profile discs overlap");
    covered += all[i].haar();
  }
  if (covered != F.measure())
    throw Error(ErrorCode::kValidationError, "profile covers Haar measure " + to_string(covered) + " of F, expected " +
                                                 to_string(F.measure()));
}

MeasureProfile build_profile(long p, const RationalFunctionDatum& datum, const FundamentalDomain& F, long m) {
  MeasureProfile prof;
  prof.p = p;
  prof.resolution = m;
  prof.datum = datum;
  std::vector<Disc> stack{F.outer};
  while (!stack.empty()) {
    Disc d = stack.back();
    stack.pop_back();
    bool in_hole = false;
    for (const P1Disc& h : F.holes)
      if (h.contains(P1Disc(d))) in_hole = true;
    if (in_hole) continue;
    if (!F.contains(d)) {
      if (d.level() >= m)
        throw Error(ErrorCode::kValidationError,
                    "resolution " + std::to_string(m) + " is too coarse: F is not a union of level-m discs");
      for (const Disc& c : d.children()) stack.push_back(c);
      continue;
    }
    std::vector<const RootFactor*> inside;
    for (const RootFactor& r : datum.roots())
      if (d.contains(r.root)) inside.push_back(&r);
    if (inside.empty()) {
      prof.pieces.push_back({d, local_abs(datum, d)});
      continue;
    }
    for (const RootFactor* r : inside)
      if (r->multiplicity < 0)
        throw Error(ErrorCode::kAssumptionViolated, "pole " + to_string(r->root) + " of f lies in F");
    if (d.level() < m) {
      for (const Disc& c : d.children()) stack.push_back(c);
      continue;
    }
    if (inside.size() > 1)
      throw Error(ErrorCode::kValidationError, "resolution " + std::to_string(m) + " does not separate the zeros of f");
    // |omega|(D(a,t)) = K * C(n) * p^(t(n+1)) with K = |f / (z-a)^n| at a.
    const RootFactor& r = *inside.front();
    RationalFunctionDatum rest(datum.scale(), [&] {
      std::vector<RootFactor> others;
      for (const RootFactor& o : datum.roots())
        if (o.root != r.root) others.push_back(o);
      return others;
    }());
    Rational k = rest.abs_value(p, r.root);
    long n = r.multiplicity;
    Rational c_n = (1 - Rational(1, p)) / (1 - rational_pow(p, -(n + 1)));
    prof.zero_cores.push_back({d, r.root, n, k * c_n * rational_pow(p, d.radius_exp() * (n + 1))});
  }
  std::sort(prof.pieces.begin(), prof.pieces.end(),
            [](const ProfilePiece& a, const ProfilePiece& b) { return a.disc < b.disc; });
  std::sort(prof.zero_cores.begin(), prof.zero_cores.end(),
            [](const ZeroCore& a, const ZeroCore& b) { return a.disc < b.disc; });
  return prof;
}

Rational mass(const MeasureProfile& profile, const Disc& disc) {
  if (const ProfilePiece* piece = profile.piece_containing(disc)) return piece->density * disc.haar();
  Rational total(0);
  for (const ProfilePiece& piece : profile.pieces) {
    if (disc.contains(piece.disc))
      total += piece.density * piece.disc.haar();
    else if (!disc.disjoint(piece.disc))
      throw Error(ErrorCode::kUnalignedDisc, "disc cuts a density piece");
  }
  for (const ZeroCore& z : profile.zero_cores)
    if (!disc.contains(z.disc) && !disc.disjoint(z.disc))
      throw Error(ErrorCode::kUnalignedDisc, "disc lies inside a zero-core");
  return total;
}

std::vector<InvarianceRow> invariance_audit(const MeasureProfile& profile, const RationalFunctionDatum& datum,
                                            const SchottkyGroup& group) {
  std::vector<InvarianceRow> rows;
  const long p = group.p;
  for (const ProfilePiece& piece : profile.pieces) {
    for (long i = 1; i <= group.genus(); ++i) {
      for (int s : {1, -1}) {
        GroupWord w = GroupWord::letter(static_cast<int>(s * i));
        MoebiusMap g = w.evaluate(group.generators);
        const Rational& y = piece.disc.center();
        Rational deriv = derivative_abs(p, g, y);
        Disc image = disc_image(g, piece.disc);
        Rational fy = datum.abs_value(p, y);
        Rational fgy = datum.abs_value(p, g.apply(y));
        Rational image_density = local_abs(datum, image);
        InvarianceRow row{piece.disc, w, fgy * deriv, fy, piece.density, image_density, deriv,
                          false, false, false};
        row.form_invariant = row.form_lhs == row.form_rhs;
        row.density_equal = row.density == row.image_density;
        row.isometric = deriv == 1;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace mumford
