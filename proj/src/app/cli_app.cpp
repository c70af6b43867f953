#include "congruence/cli_app.hpp"

#include "congruence/experiment.hpp"
#include "congruence/fixtures.hpp"
#include "congruence/json_io.hpp"

namespace congruence::cli {

using json::Json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::MixedFields:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedField:
      return kExitMalformed;
    case ErrorCode::RankPrecondition:
    case ErrorCode::HypothesisViolation:
      return kExitPrecondition;
    default:
      return kExitFailed;
  }
}

namespace {

struct Context {
  const JobSpec& job;
  Json doc;
  Field field;

  uint64_t seed() const {
    if (job.seed) return *job.seed;
    if (doc.contains("seed") && doc.at("seed").is_number_unsigned()) return doc.at("seed").get<uint64_t>();
    throw Error(ErrorCode::MalformedInput, "command '" + job.command + "' is randomized and needs --seed");
  }

  std::size_t size(const char* key, std::size_t fallback) const {
    if (!doc.contains(key)) return fallback;
    const Json& v = doc.at(key);
    if (!v.is_number_unsigned()) throw Error(ErrorCode::MalformedInput, std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
  }

  const Json& at(const char* key) const {
    if (!doc.contains(key)) throw Error(ErrorCode::MalformedInput, "command '" + job.command + "' needs '" + key + "'");
    return doc.at(key);
  }

  EnumerationOptions enumeration() const { return {job.enum_budget, job.jobs}; }

  WitnessOptions witness_options() const {
    WitnessOptions o;
    o.enumeration = enumeration();
    o.free.retries = job.retries;
    return o;
  }
};

Json header(const Context& c) {
  Json out;
  out["command"] = c.job.command;
  out["field"] = json::encode(c.field);
  return out;
}

Json run_rank(Context& c) {
  const MatrixTuple t = json::decode_tuple(c.field, c.at("tuple"));
  const int level = static_cast<int>(c.size("level", 0));
  const RankCertificate cert =
      c.field.is_tower() ? tuple_rank_exhaustive(t, level, c.enumeration()) : tuple_rank_rational_bound(t, c.enumeration());
  Json out = header(c);
  const Json body = json::encode(cert);
  for (const auto& [k, v] : body.items()) out[k] = v;
  if (c.doc.contains("truncate"))
    out["minimal_truncation"] = minimal_truncation(t, c.size("truncate", 0), level, c.enumeration());
  return out;
}

Json run_normal_form(Context& c) {
  if (c.doc.contains("matrix")) {
    const ScalarMatrix m = json::decode_matrix(c.field, c.at("matrix"));
    const SymKind kind = sym_kind_from_string(c.at("kind").get<std::string>());
    Json body;
    body["kind"] = std::string(to_string(kind));
    ScalarMatrix g;
    if (kind == SymKind::Symmetric) {
      const SymmetricCanonical sc = symmetric_canonical(m);
      g = sc.g;
      body["rank"] = sc.rank;
      body["normalized"] = sc.normalized;
      if (!sc.normalized) {
        Json d = Json::array(), sq = Json::array(), sg = Json::array();
        for (std::size_t i = 0; i < sc.rank; ++i) {
          d.push_back(json::encode(sc.diagonal[i]));
          sq.push_back(static_cast<bool>(sc.square[i]));
          sg.push_back(sc.sign[i]);
        }
        body["diagonal"] = d;
        body["square"] = sq;
        body["sign"] = sg;
      }
    } else if (kind == SymKind::Skew) {
      const SkewCanonical sc = skew_canonical(m);
      g = sc.g;
      body["rank"] = sc.rank;
    } else {
      throw Error(ErrorCode::MalformedInput, "normal-form needs kind symmetric or skew");
    }
    body["g"] = json::encode(g);
    body["canonical"] = json::encode(congruence_apply(g, m));
    Json out = header(c);
    for (auto& [k, v] : body.items()) out[k] = v;
    return out;
  }

  const MatrixTuple t = json::decode_tuple(c.field, c.at("tuple"));
  const std::size_t l = c.size("l", 1);
  ScalarMatrix basis;
  if (c.doc.contains("basis")) {
    basis = json::decode_matrix(c.field, c.doc.at("basis"));
  } else {
    Rng rng(c.seed());
    FreeSubspaceOptions fo;
    fo.retries = c.job.retries;
    basis = find_free_subspace(t, (std::size_t{1} << t.size()) * l, rng, fo).basis;
  }
  const BlockNormalForm bnf = block_normal_form(t, basis, l);
  Json out = header(c);
  out["l"] = l;
  out["basis"] = json::encode(basis);
  out["g"] = json::encode(bnf.g);
  out["transformed"] = json::encode(bnf.transformed);
  out["pattern_ok"] = pattern_violations(bnf.pattern, bnf.transformed).empty();
  return out;
}

Json run_witness(Context& c) {
  const ConfigPoint x = json::decode_config(c.field, c.at("config"));
  const TargetCorner target = json::decode_target(c.field, c.at("target"));
  try {
    target.validate(x);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("target: ") + e.what());
  }
  WitnessOptions opt = c.witness_options();
  opt.enforce_rank_bound = !c.doc.value("experiment", false);
  Rng rng(c.seed());
  const std::string mode = c.doc.value("mode", std::string("full"));
  WitnessCurve w;
  if (mode == "sym") {
    if (!x.alt.empty() || x.cols() != 0)
      throw Error(ErrorCode::MalformedInput, "mode 'sym' takes symmetric components only");
    w = witness_sym(x.sym_tuple(), target.sym, target.l, rng, opt);
  } else if (mode == "full") {
    w = witness_full(x, target, rng, opt);
  } else {
    throw Error(ErrorCode::MalformedInput, "unknown witness mode '" + mode + "'");
  }
  Json out = header(c);
  out["config"] = json::encode(x);
  out["target"] = json::encode(target);
  out["curve"] = json::encode(w);
  out["report"] = json::encode(w.report);
  return out;
}

Json run_verify(Context& c, int& exit_code) {
  const ConfigPoint x = json::decode_config(c.field, c.at("config"));
  const TargetCorner target = json::decode_target(c.field, c.at("target"));
  const WitnessCurve w = json::decode_curve(c.field, c.at("curve"));
  const VerificationReport rep = verify_witness(x, target, w.g, w.det_coeff, w.det_degree);
  exit_code = rep.passed() ? kExitOk : kExitFailed;
  Json out = header(c);
  out["passed"] = rep.passed();
  out["report"] = json::encode(rep);
  return out;
}

Json run_gen(Context& c) {
  Rng rng(c.seed());
  const std::string gen = c.doc.value("generator", std::string("config"));
  Json out = header(c);
  out["command"] = "gen";
  out["generator"] = gen;
  if (gen == "config" || gen == "density") {
    const std::size_t l = c.size("l", 1);
    ConfigPoint x;
    if (gen == "density") {
      x = fixtures::identity_and_diagonal(c.field, c.size("N", 17));
    } else {
      const std::size_t p = c.size("p", 1), q = c.size("q", 0), n = c.size("n", 0);
      const std::size_t rank = c.size("rank", 2 * required_rank(p + q, l, n));
      x = fixtures::random_config(c.field, c.size("N", rank + 2), p, q, n, rank, rng);
    }
    const TargetCorner t = fixtures::random_target(x, l, rng);
    out["config"] = json::encode(x);
    out["target"] = json::encode(t);
  } else if (gen == "phi") {
    const std::size_t p = c.size("p", 2), r = c.size("r", 2), n = c.size("N", 6);
    if (p == 0) throw Error(ErrorCode::MalformedInput, "phi generator needs p >= 1");
    std::vector<ScalarMatrix> xs;
    for (std::size_t i = 0; i + 1 < p; ++i) xs.push_back(fixtures::random_of_kind(c.field, SymKind::Symmetric, n, rng));
    const auto phi = phi_parametrize(p, xs, fixtures::random_matrix(c.field, n, r, rng),
                                     fixtures::random_matrix(c.field, p, p, rng));
    MatrixTuple t(c.field, n, n);
    for (const auto& m : phi) t.push(m, SymKind::Symmetric);
    out["tuple"] = json::encode(t);
  } else if (gen == "planted") {
    std::vector<SymKind> kinds;
    for (const auto& k : c.at("kinds")) kinds.push_back(sym_kind_from_string(k.get<std::string>()));
    const std::size_t l = c.size("l", 1);
    const auto pf = fixtures::planted_free_subspace(c.field, kinds, l, c.size("extra", 2), rng);
    out["tuple"] = json::encode(pf.tuple);
    out["basis"] = json::encode(pf.basis);
    out["l"] = l;
  } else {
    throw Error(ErrorCode::MalformedInput, "unknown generator '" + gen + "'");
  }
  out["field"] = json::encode(c.field);
  return out;
}

std::string run_experiment(Context& c) {
  ExperimentConfig cfg;
  cfg.p = c.size("p", 1);
  cfg.q = c.size("q", 0);
  cfg.n = c.size("n", 0);
  cfg.l = c.size("l", 1);
  cfg.instances = c.size("instances", 20);
  cfg.extra = c.size("extra", 2);
  cfg.seed = c.seed();
  cfg.jobs = c.job.jobs;
  cfg.options = c.witness_options();
  return to_csv(cfg, bound_experiment(c.field, cfg));
}

Json error_json(const std::string& command, std::string_view code, const std::string& message) {
  Json out;
  out["command"] = command;
  Json e;
  e["code"] = code;
  e["message"] = message;
  out["error"] = e;
  return out;
}

}  // namespace

JobResult run_job(const JobSpec& job) {
  JobResult res;
  try {
    Context c{job, Json::object(), Field()};
    if (!job.input.empty() && job.input.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        c.doc = Json::parse(job.input);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("input is not valid JSON: ") + e.what());
      }
      if (!c.doc.is_object()) throw Error(ErrorCode::MalformedInput, "input must be a JSON object");
    }
    if (c.doc.contains("field")) {
      c.field = json::decode_field(c.doc.at("field"));
    } else if (job.field_kind == "rational") {
      c.field = Field::rational();
    } else if (job.field_kind == "tower") {
      try {
        c.field = Field::tower(job.prime);
      } catch (const Error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
      }
    } else {
      throw Error(ErrorCode::MalformedInput, "--field must be rational or tower");
    }

    Json out;
    try {
      if (job.command == "rank") {
        out = run_rank(c);
      } else if (job.command == "normal-form") {
        out = run_normal_form(c);
      } else if (job.command == "witness") {
        out = run_witness(c);
      } else if (job.command == "verify") {
        out = run_verify(c, res.exit_code);
      } else if (job.command == "gen") {
        out = run_gen(c);
      } else if (job.command == "experiment") {
        res.output = run_experiment(c);
        return res;
      } else {
        throw Error(ErrorCode::MalformedInput, "unknown command '" + job.command + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedInput, e.what());
    }
    res.output = out.dump(2) + "\n";
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.output = error_json(job.command, to_string(e.code()), e.what()).dump(2) + "\n";
  }
  return res;
}

}  // namespace congruence::cli
