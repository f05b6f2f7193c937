#include "mumford/run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mumford {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Error invalid(const std::string& where, const std::string& what) {
  return Error(ErrorCode::kValidationError, where + ": " + what);
}

Json cutoff_json(const Cutoff& c) {
  if (c.length) return {{"length", *c.length}};
  return {{"tolerance", rational_json(*c.tolerance)}};
}

Cutoff cutoff_from_json(const Json& j, const std::string& where) {
  if (j.contains("length")) return Cutoff::of_length(integer_from_json(j.at("length"), where + ".length"));
  if (j.contains("tolerance")) return Cutoff::of_tolerance(rational_from_json(j.at("tolerance"), where + ".tolerance"));
  throw Error(ErrorCode::kParseError, where + ": needs 'length' or 'tolerance'");
}

Json initial_json(const InitialCondition& ic) {
  switch (ic.kind) {
    case InitialCondition::Kind::kIndicator:
      return {{"kind", "indicator"}, {"state", ic.state}};
    case InitialCondition::Kind::kWavelet:
      return {{"kind", "wavelet"},
              {"center", rational_json(ic.wavelet->support.center())},
              {"radius_exp", ic.wavelet->support.radius_exp()},
              {"j", ic.wavelet->j}};
    case InitialCondition::Kind::kValues: {
      Json vs = Json::array();
      for (const auto& v : ic.values) vs.push_back(rational_json(v));
      return {{"kind", "values"}, {"values", vs}};
    }
  }
  return {};
}

InitialCondition initial_from_json(long p, const Json& j, const std::string& where) {
  InitialCondition ic;
  const std::string kind = field(j, "kind", where).get<std::string>();
  if (kind == "indicator") {
    ic.kind = InitialCondition::Kind::kIndicator;
    ic.state = j.contains("state") ? integer_from_json(j.at("state"), where + ".state") : 0;
  } else if (kind == "wavelet") {
    ic.kind = InitialCondition::Kind::kWavelet;
    Disc B = disc_from_json(p, j, where);
    long jj = j.contains("j") ? integer_from_json(j.at("j"), where + ".j") : 1;
    ic.wavelet = Wavelet{B, jj};
  } else if (kind == "values") {
    ic.kind = InitialCondition::Kind::kValues;
    const Json& vs = field(j, "values", where);
    if (!vs.is_array()) throw Error(ErrorCode::kParseError, where + ".values: expected an array");
    for (size_t i = 0; i < vs.size(); ++i)
      ic.values.push_back(rational_from_json(vs[i], where + ".values[" + std::to_string(i) + "]"));
  } else {
    throw Error(ErrorCode::kParseError, where + ".kind: unknown kind '" + kind + "'");
  }
  return ic;
}

long finest_level(const MeasureProfile& prof) {
  long m = 0;
  for (const auto& pc : prof.pieces) m = std::max(m, pc.disc.level());
  return m;
}

MeasureProfile build_measure(const RunConfig& rc) {
  if (rc.datum) return build_profile(rc.p(), *rc.datum, rc.group.domain, rc.resolution);
  return MeasureProfile::from_json(rc.p(), *rc.explicit_profile, rc.group.domain);
}

}  // namespace

Rational parse_real(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const long places = static_cast<long>(text.size() - dot - 1);
  if (digits.empty() || digits == "-" || digits == "+" || text.find('/') != std::string::npos)
    throw Error(ErrorCode::kParseError, "malformed number '" + text + "'");
  if (digits.front() == '+') digits.erase(0, 1);
  Rational q(parse_rational(digits) * rational_pow(10, -places));
  q.canonicalize();
  return q;
}

Json RunConfig::to_json() const {
  Json gens = Json::array();
  for (const auto& g : group.generators)
    gens.push_back({{"a", to_string(g.a())}, {"b", to_string(g.b())}, {"c", to_string(g.c())}, {"d", to_string(g.d())}});
  Json holes = Json::array();
  for (const auto& h : group.domain.holes) holes.push_back(p1_disc_json(h));
  Json measure;
  if (datum) {
    measure = {{"datum", datum->to_json()}, {"resolution", resolution}};
  } else {
    measure = {{"profile", *explicit_profile}};
  }
  Json times = Json::array();
  for (const auto& t : run.times) times.push_back(rational_json(t));
  return {{"field", {{"p", p()}}},
          {"group", {{"generators", gens}, {"outer", disc_json(group.domain.outer)}, {"holes", holes}}},
          {"measure", measure},
          {"operator",
           {{"alpha", rational_json(alpha)},
            {"alpha_g", rational_json(alpha_g)},
            {"mode", mode_name(mode)},
            {"cutoff", cutoff_json(cutoff)}}},
          {"run",
           {{"level", run.level},
            {"times", times},
            {"paths", run.paths},
            {"seed", run.seed},
            {"start_state", run.start_state},
            {"eta", rational_json(run.eta)},
            {"audit_instances", run.audit_instances},
            {"initial", initial_json(run.initial)}}}};
}

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "config: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const char* known[] = {"field", "group", "measure", "operator", "run"};
    if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }))
      throw Error(ErrorCode::kParseError, "config: unknown section '" + it.key() + "'");
  }
  RunConfig rc;
  const long p = integer_from_json(field(field(j, "field", "config"), "p", "field"), "field.p");
  if (p < 2) throw Error(ErrorCode::kParseError, "field.p: must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::kParseError, "field.p: " + std::to_string(p) + " is not prime");

  const Json& g = field(j, "group", "config");
  const Json& gens = field(g, "generators", "group");
  if (!gens.is_array() || gens.empty()) throw Error(ErrorCode::kParseError, "group.generators: expected a nonempty array");
  rc.group.p = p;
  for (size_t i = 0; i < gens.size(); ++i) {
    const std::string w = "group.generators[" + std::to_string(i) + "]";
    auto entry = [&](const char* k) { return rational_from_json(field(gens[i], k, w), w + "." + k); };
    Rational a = entry("a"), b = entry("b"), c = entry("c"), d = entry("d");
    if (a * d - b * c == 0) throw Error(ErrorCode::kParseError, w + ": singular matrix");
    rc.group.generators.push_back(MoebiusMap::from_rationals(a, b, c, d));
  }
  rc.group.domain.outer = disc_from_json(p, field(g, "outer", "group"), "group.outer");
  const Json& holes = field(g, "holes", "group");
  if (!holes.is_array()) throw Error(ErrorCode::kParseError, "group.holes: expected an array");
  if (holes.size() != 2 * gens.size())
    throw Error(ErrorCode::kParseError, "group.holes: need 2g = " + std::to_string(2 * gens.size()) +
                                            " holes (sources then targets), got " + std::to_string(holes.size()));
  for (size_t i = 0; i < holes.size(); ++i)
    rc.group.domain.holes.push_back(p1_disc_from_json(p, holes[i], "group.holes[" + std::to_string(i) + "]"));

  const Json& m = field(j, "measure", "config");
  if (m.contains("datum") == m.contains("profile"))
    throw Error(ErrorCode::kParseError, "measure: give exactly one of 'datum' or 'profile'");
  if (m.contains("datum")) {
    try {
      rc.datum = RationalFunctionDatum::from_json(m.at("datum"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kAssumptionViolated)
        throw invalid("measure.datum", std::string("every zero of the form must lie in the field: ") + e.what());
      throw;
    }
    rc.resolution = m.contains("resolution") ? integer_from_json(m.at("resolution"), "measure.resolution") : 2;
  } else {
    rc.explicit_profile = m.at("profile");
  }

  const Json& op = field(j, "operator", "config");
  rc.alpha = rational_from_json(field(op, "alpha", "operator"), "operator.alpha");
  rc.alpha_g = rational_from_json(field(op, "alpha_g", "operator"), "operator.alpha_g");
  if (op.contains("mode")) {
    try {
      rc.mode = parse_mode(op.at("mode").get<std::string>());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("operator.mode: ") + e.what());
    }
  }
  if (op.contains("cutoff")) rc.cutoff = cutoff_from_json(op.at("cutoff"), "operator.cutoff");

  if (j.contains("run")) {
    const Json& r = j.at("run");
    if (r.contains("level")) rc.run.level = integer_from_json(r.at("level"), "run.level");
    if (r.contains("times")) {
      rc.run.times.clear();
      for (size_t i = 0; i < r.at("times").size(); ++i) {
        const Json& t = r.at("times")[i];
        const std::string w = "run.times[" + std::to_string(i) + "]";
        if (t.is_string()) {
          try {
            rc.run.times.push_back(parse_real(t.get<std::string>()));
          } catch (const Error& e) {
            throw Error(ErrorCode::kParseError, w + ": " + e.what());
          }
        } else {
          rc.run.times.push_back(rational_from_json(t, w));
        }
      }
    }
    if (r.contains("paths")) rc.run.paths = integer_from_json(r.at("paths"), "run.paths");
    if (r.contains("seed")) {
      if (!r.at("seed").is_number_unsigned() && !r.at("seed").is_number_integer())
        throw Error(ErrorCode::kParseError, "run.seed: expected an integer");
      rc.run.seed = r.at("seed").get<std::uint64_t>();
    }
    if (r.contains("start_state")) rc.run.start_state = integer_from_json(r.at("start_state"), "run.start_state");
    if (r.contains("eta")) rc.run.eta = rational_from_json(r.at("eta"), "run.eta");
    if (r.contains("audit_instances"))
      rc.run.audit_instances = integer_from_json(r.at("audit_instances"), "run.audit_instances");
    if (r.contains("initial")) rc.run.initial = initial_from_json(p, r.at("initial"), "run.initial");
  }
  return rc;
}

OperatorConfig RunConfig::build() const {
  try {
    verify_fundamental_domain(group);
  } catch (const Error& e) {
    throw invalid("group", e.what());
  }
  MeasureProfile prof;
  try {
    prof = build_measure(*this);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAssumptionViolated)
      throw invalid("measure", std::string("every zero of the form must lie in the field: ") + e.what());
    throw invalid("measure", e.what());
  }
  if (sgn(alpha) <= 0) throw invalid("operator.alpha", "must be positive");
  if (cutoff.length && *cutoff.length < 1) throw invalid("operator.cutoff.length", "must be at least 1");
  if (cutoff.tolerance && sgn(*cutoff.tolerance) <= 0) throw invalid("operator.cutoff.tolerance", "must be positive");
  // Raises kValidationError when p^alpha_g <= 2g.
  OperatorConfig cfg(group, prof, alpha, alpha_g, mode, cutoff);

  if (run.level < finest_level(prof))
    throw invalid("run.level", "level " + std::to_string(run.level) + " is coarser than the density profile (finest piece level " +
                                   std::to_string(finest_level(prof)) + ")");
  for (const auto& t : run.times)
    if (sgn(t) < 0) throw invalid("run.times", "times must be nonnegative");
  if (run.times.empty()) throw invalid("run.times", "need at least one time");
  if (run.paths < 1) throw invalid("run.paths", "need at least one path");
  if (sgn(run.eta) <= 0) throw invalid("run.eta", "must be positive");
  if (run.audit_instances < 1) throw invalid("run.audit_instances", "must be positive");
  const size_t n = level_states(prof, run.level).size();
  if (run.start_state < 0 || static_cast<size_t>(run.start_state) >= n)
    throw invalid("run.start_state", "no such state at level " + std::to_string(run.level));
  const auto& ic = run.initial;
  if (ic.kind == InitialCondition::Kind::kIndicator && (ic.state < 0 || static_cast<size_t>(ic.state) >= n))
    throw invalid("run.initial.state", "no such state at level " + std::to_string(run.level));
  if (ic.kind == InitialCondition::Kind::kValues && ic.values.size() != n)
    throw invalid("run.initial.values", "need one value per state (" + std::to_string(n) + ")");
  if (ic.kind == InitialCondition::Kind::kWavelet) {
    const Wavelet& w = *ic.wavelet;
    if (!is_admissible(prof, w.support)) throw invalid("run.initial", "wavelet support is not admissible");
    if (w.support.level() >= run.level) throw invalid("run.initial", "wavelet support must be coarser than the level");
    if (w.j < 1 || w.j >= p()) throw invalid("run.initial.j", "must lie in 1..p-1");
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("config: ") + e.what());
  }
  RunConfig rc;
  try {
    rc = RunConfig::from_json(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("config: ") + e.what());
  }
  rc.build();
  return rc;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_hash(const RunConfig& rc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : rc.to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::kValidate, Command::kSpectrum, Command::kEvolve, Command::kSample, Command::kAudit,
                    Command::kResolvent})
    if (name == command_name(c)) return c;
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
}

const char* command_name(Command c) {
  switch (c) {
    case Command::kValidate: return "validate";
    case Command::kSpectrum: return "spectrum";
    case Command::kEvolve: return "evolve";
    case Command::kSample: return "sample";
    case Command::kAudit: return "audit";
    case Command::kResolvent: return "resolvent";
  }
  return "?";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericalBreakdown:
    case ErrorCode::kSingularSystem:
    case ErrorCode::kReducible:
    case ErrorCode::kRatioNotConstant:
      return 3;
    default:
      return 2;
  }
}

namespace {

struct Context {
  const RunConfig& rc;
  OperatorConfig cfg;
  std::string hash;
  Surd tail;

  explicit Context(const RunConfig& r)
      : rc(r), cfg(r.build()), hash(config_hash(r)), tail(tail_bound(cfg, cfg.cutoff_length())) {}

  Json metadata(const char* command) const {
    Json cut{{"length", cfg.cutoff_length()}};
    cut["tolerance"] = rc.cutoff.tolerance ? rational_json(*rc.cutoff.tolerance) : Json(nullptr);
    return {{"command", command},
            {"config_hash", hash},
            {"mode", mode_name(cfg.mode())},
            {"cutoff", cut},
            {"tail_bound", {{"exact", surd_text(tail)}, {"upper", rational_json(tail.upper_bound())}}},
            {"level", rc.run.level},
            {"character", "chi(x) = exp(2 pi i {x}_p), tau(j) = j"}};
  }

  // "# key: value" lines for CSV files.
  std::string csv_header(const char* command) const {
    std::string out;
    Json meta = metadata(command);
    for (const char* key : {"command", "config_hash", "mode", "cutoff", "tail_bound", "level", "character"}) {
      const Json& v = meta.at(key);
      out += "# " + std::string(key) + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return out;
  }
};

Eigen::VectorXd initial_vector(const Context& ctx, const std::vector<Disc>& states) {
  const auto& ic = ctx.rc.run.initial;
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  switch (ic.kind) {
    case InitialCondition::Kind::kIndicator:
      v(ic.state) = 1;
      break;
    case InitialCondition::Kind::kValues:
      for (Eigen::Index i = 0; i < n; ++i) v(i) = to_double(ic.values[static_cast<size_t>(i)]);
      break;
    case InitialCondition::Kind::kWavelet: {
      LevelFunction f = wavelet_function(ctx.cfg.profile(), ctx.rc.run.level, *ic.wavelet);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = f.values[static_cast<size_t>(i)].to_complex().real();
      break;
    }
  }
  return v;
}

Artifact states_csv(const Context& ctx, const char* command, const std::vector<Disc>& states) {
  std::string out = ctx.csv_header(command) + "state_index,state_center,state_radius_exp,mass\n";
  for (size_t i = 0; i < states.size(); ++i)
    out += std::to_string(i) + "," + to_string(states[i].center()) + "," + std::to_string(states[i].radius_exp()) + "," +
           to_string(mass(ctx.cfg.profile(), states[i])) + "\n";
  return {"states.csv", out};
}

std::vector<Artifact> run_validate(const Context& ctx) {
  const auto& rc = ctx.rc;
  DomainReport dom = verify_fundamental_domain(rc.group);
  Census census = completeness_census(ctx.cfg.profile(), rc.run.level);
  Json report = ctx.metadata("validate");
  report["valid"] = true;
  report["genus"] = ctx.cfg.genus();
  report["p"] = ctx.cfg.p();
  report["growth_condition"] = {{"statement", "p^alpha_g > 2g"},
                                {"alpha_g", rational_json(rc.alpha_g)},
                                {"two_g", 2 * ctx.cfg.genus()},
                                {"holds", true}};
  report["fundamental_domain"] = {{"depth", dom.depth},
                                  {"tiles_checked", dom.tiles_checked},
                                  {"sample_points", dom.sample_points},
                                  {"infinity_witness", dom.infinity_witness},
                                  {"haar_measure", rational_json(ctx.cfg.mu())},
                                  {"separation", rational_json(separation(ctx.cfg))}};
  report["measure"] = ctx.cfg.profile().to_json();
  report["census"] = {{"level", census.level},       {"dim", census.dim},
                      {"constants", census.n_constants}, {"wavelets", census.n_wavelets},
                      {"gap", census.gap},           {"maximal_discs", census.maximal_discs}};
  report["config"] = rc.to_json();
  return {{"validate.json", report.dump(2) + "\n"}};
}

std::vector<Artifact> run_spectrum(const Context& ctx) {
  auto entries = spectrum(ctx.cfg, ctx.rc.run.level);
  Rational worst(0);
  for (const auto& e : entries) worst = std::max(worst, std::max(e.lambda_paper.error, e.lambda_exact.error));
  std::string out = ctx.csv_header("spectrum");
  out += "# max_certified_error: " + to_string(worst) + "\n";
  out += "radius_exp,density_num,density_den,lambda_paper,lambda_exact_lo,lambda_exact_hi,multiplicity,n_witness_discs\n";
  for (const auto& e : entries) {
    out += std::to_string(e.radius_exp) + "," + to_string(Integer(e.density.get_num())) + "," +
           to_string(Integer(e.density.get_den())) + "," + surd_text(e.lambda_paper.value) + "," +
           to_string(certified_lower(e.lambda_exact)) + "," + to_string(certified_upper(e.lambda_exact)) + "," +
           std::to_string(e.multiplicity) + "," + std::to_string(e.witnesses.size()) + "\n";
  }
  return {{"spectrum.csv", out}};
}

std::vector<Artifact> run_audit(const Context& ctx) {
  AuditOptions opt;
  opt.random_instances = ctx.rc.run.audit_instances;
  opt.seed = ctx.rc.run.seed;
  Json report = ctx.metadata("audit");
  report["sections"] = audit_lemmas(ctx.cfg, opt);
  return {{"audit.json", report.dump(2) + "\n"}};
}

std::vector<double> times_of(const RunConfig& rc) {
  std::vector<double> ts;
  for (const auto& t : rc.run.times) ts.push_back(to_double(t));
  return ts;
}

std::vector<Artifact> run_evolve(const Context& ctx) {
  GeneratorMatrix G = generator_matrix(ctx.cfg, ctx.rc.run.level);
  HeatSemigroup S(ctx.cfg, G);
  Eigen::VectorXd h0 = initial_vector(ctx, G.states);
  HeatSolution sol = solve_cauchy(S, h0, times_of(ctx.rc));
  std::string out = ctx.csv_header("evolve");
  out += "# spectral_gap: " + num(S.spectral_gap()) + "\n";
  out += "t,state_index,value\n";
  for (size_t k = 0; k < sol.times.size(); ++k)
    for (Eigen::Index i = 0; i < sol.values[k].size(); ++i)
      out += to_string(ctx.rc.run.times[k]) + "," + std::to_string(i) + "," + num(sol.values[k](i)) + "\n";
  return {{"solution.csv", out}, states_csv(ctx, "evolve", G.states)};
}

std::vector<Artifact> run_resolvent(const Context& ctx) {
  GeneratorMatrix G = generator_matrix(ctx.cfg, ctx.rc.run.level);
  Eigen::MatrixXd q = to_dense(G);
  Eigen::VectorXd h = initial_vector(ctx, G.states);
  Eigen::VectorXd u = resolvent_solve(q, to_double(ctx.rc.run.eta), h);
  std::string out = ctx.csv_header("resolvent");
  out += "# eta: " + to_string(ctx.rc.run.eta) + "\n";
  out += "state_index,h,u\n";
  for (Eigen::Index i = 0; i < u.size(); ++i) out += std::to_string(i) + "," + num(h(i)) + "," + num(u(i)) + "\n";
  return {{"resolvent.csv", out}, states_csv(ctx, "resolvent", G.states)};
}

std::vector<Artifact> run_sample(const Context& ctx) {
  const auto& rc = ctx.rc;
  GeneratorMatrix G = generator_matrix(ctx.cfg, rc.run.level);
  HeatSemigroup S(ctx.cfg, G);
  std::vector<double> checkpoints = times_of(rc);
  const double t_max = *std::max_element(checkpoints.begin(), checkpoints.end());
  auto paths = sample_paths(S.generator(), static_cast<size_t>(rc.run.paths), t_max, rc.run.seed,
                            static_cast<size_t>(rc.run.start_state));
  std::string out = ctx.csv_header("sample");
  out += "# seed: " + std::to_string(rc.run.seed) + "\n# t_max: " + num(t_max) + "\n";
  out += "path_id,jump_time,state_index,state_center,state_radius_exp\n";
  for (size_t r = 0; r < paths.size(); ++r)
    for (size_t k = 0; k < paths[r].states.size(); ++k) {
      const Disc& s = G.states[paths[r].states[k]];
      out += std::to_string(r) + "," + num(paths[r].jump_times[k]) + "," + std::to_string(paths[r].states[k]) + "," +
             to_string(s.center()) + "," + std::to_string(s.radius_exp()) + "\n";
    }
  Json check = ctx.metadata("sample");
  check["seed"] = rc.run.seed;
  check["paths"] = rc.run.paths;
  check["start_state"] = rc.run.start_state;
  check["sigma"] = 4;
  Json cps = Json::array();
  for (const auto& c : empirical_validation(paths, S, checkpoints)) cps.push_back(distribution_check_json(c));
  check["checkpoints"] = cps;
  std::vector<double> masses;
  for (const Disc& s : G.states) masses.push_back(to_double(mass(ctx.cfg.profile(), s)));
  StationaryReport st = stationary_distribution(S.generator(), masses);
  check["stationary"] = {{"pi", std::vector<double>(st.pi.data(), st.pi.data() + st.pi.size())},
                         {"total_variation_to_mass", st.total_variation},
                         {"residual", st.residual}};
  return {{"paths.csv", out}, {"sample_check.json", check.dump(2) + "\n"}, states_csv(ctx, "sample", G.states)};
}

}  // namespace

std::vector<Artifact> run_command(Command cmd, const RunConfig& rc) {
  Context ctx(rc);
  switch (cmd) {
    case Command::kValidate: return run_validate(ctx);
    case Command::kSpectrum: return run_spectrum(ctx);
    case Command::kEvolve: return run_evolve(ctx);
    case Command::kSample: return run_sample(ctx);
    case Command::kAudit: return run_audit(ctx);
    case Command::kResolvent: return run_resolvent(ctx);
  }
  return {};
}

}  // namespace mumford
