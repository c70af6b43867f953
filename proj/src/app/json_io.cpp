#include "congruence/json_io.hpp"

#include <charconv>

namespace congruence::json {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0))
    malformed(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) malformed("'" + s + "' is not a rational number");
  if (q.get_den() == 0) malformed("'" + s + "' has a zero denominator");
  q.canonicalize();
  return q;
}

uint32_t residue(const Json& j, uint32_t p) {
  mpz_class v;
  if (j.is_number_integer()) {
    v = mpz_class(std::to_string(j.get<int64_t>()));
  } else if (j.is_string()) {
    if (v.set_str(j.get<std::string>(), 10) != 0) malformed("'" + j.get<std::string>() + "' is not an integer");
  } else {
    malformed("tower coefficients must be integers or integer strings");
  }
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<uint32_t>(r.get_ui());
}

template <class F>
auto guarded(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace

Json encode(const Field& f) {
  Json j;
  if (!f.is_tower()) {
    j["kind"] = "rational";
    return j;
  }
  j["kind"] = "tower";
  j["p"] = f.prime();
  Json adj = Json::array();
  for (const auto& a : f.adjoined()) adj.push_back(encode(a));
  j["adjoined"] = adj;
  return j;
}

Field decode_field(const Json& j) {
  return guarded([&] {
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "rational") return Field::rational();
    if (kind != "tower") malformed("unknown field kind '" + kind + "'");
    const auto p = member(j, "p").get<int64_t>();
    if (p <= 2 || p >= (int64_t{1} << 31)) malformed("tower prime out of range");
    Field f;
    try {
      f = Field::tower(static_cast<uint32_t>(p));
    } catch (const Error& e) {
      malformed(e.what());
    }
    if (j.contains("adjoined")) {
      const Json& adj = j.at("adjoined");
      if (!adj.is_array()) malformed("'adjoined' must be an array");
      if (adj.size() > static_cast<std::size_t>(kMaxTowerLevel)) malformed("tower is deeper than supported");
      f.ensure_level(static_cast<int>(adj.size()));
      const auto ours = f.adjoined();
      for (std::size_t k = 0; k < adj.size(); ++k)
        if (!(decode_scalar(f, adj[k]) == ours[k]))
          malformed("adjoined element " + std::to_string(k + 1) + " does not match the canonical tower");
    }
    return f;
  });
}

Json encode(const Scalar& x) {
  if (x.kind() == FieldKind::Rational)
    return x.rational().get_num().get_str() + "/" + x.rational().get_den().get_str();
  Json j;
  j["level"] = x.level();
  Json c = Json::array();
  for (auto v : x.coeffs()) c.push_back(std::to_string(v));
  j["coeffs"] = c;
  return j;
}

Scalar decode_scalar(const Field& f, const Json& j) {
  return guarded([&] {
    if (!f.is_tower()) {
      if (j.is_number_integer()) return f.from_int(j.get<int64_t>());
      if (!j.is_string()) malformed("rational scalars are strings \"a/b\"");
      return f.from_rational(parse_rational(j.get<std::string>()));
    }
    if (j.is_number_integer() || j.is_string()) {
      if (j.is_string() && j.get<std::string>().find('/') != std::string::npos)
        return f.from_rational(parse_rational(j.get<std::string>()));
      return f.from_int(residue(j, f.prime()));
    }
    const std::size_t level = as_size(member(j, "level"), "level");
    if (level > static_cast<std::size_t>(kMaxTowerLevel)) malformed("tower level too deep");
    const Json& c = member(j, "coeffs");
    if (!c.is_array() || c.size() != (std::size_t{1} << level))
      malformed("a level-" + std::to_string(level) + " element needs " + std::to_string(std::size_t{1} << level) +
                " coefficients");
    std::vector<uint32_t> v;
    for (const auto& e : c) v.push_back(residue(e, f.prime()));
    return f.from_coeffs(static_cast<int>(level), v);
  });
}

Json encode(const Laurent& x) {
  Json j = Json::object();
  for (const auto& [d, c] : x.terms()) j[std::to_string(d)] = encode(c);
  return j;
}

Laurent decode_laurent(const Field& f, const Json& j) {
  return guarded([&] {
    if (!j.is_object()) malformed("Laurent polynomials are objects {\"degree\": scalar}");
    Laurent out(f);
    for (const auto& [key, value] : j.items()) {
      int d = 0;
      const auto* end = key.data() + key.size();
      const auto [ptr, ec] = std::from_chars(key.data(), end, d);
      if (ec != std::errc() || ptr != end) malformed("'" + key + "' is not an integer degree");
      out += Laurent::monomial(decode_scalar(f, value), d);
    }
    return out;
  });
}

namespace {

template <class T, class Enc>
Json encode_matrix(const Matrix<T>& m, Enc enc) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(enc(m(i, c)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

template <class T, class Dec>
Matrix<T> decode_matrix_with(const Field& f, const Json& j, Dec dec) {
  return guarded([&] {
    const bool bare = j.is_array();
    const std::size_t r = bare ? j.size() : as_size(member(j, "rows"), "rows");
    const std::size_t c = bare ? (r && j[0].is_array() ? j[0].size() : 0) : as_size(member(j, "cols"), "cols");
    const Json& e = bare ? j : member(j, "entries");
    if (!e.is_array() || e.size() != r) malformed("matrix needs " + std::to_string(r) + " rows of entries");
    Matrix<T> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (!e[i].is_array() || e[i].size() != c) malformed("matrix row " + std::to_string(i) + " has the wrong length");
      for (std::size_t k = 0; k < c; ++k) m(i, k) = dec(f, e[i][k]);
    }
    return m;
  });
}

}  // namespace

Json encode(const ScalarMatrix& m) {
  return encode_matrix(m, [](const Scalar& x) { return encode(x); });
}

ScalarMatrix decode_matrix(const Field& f, const Json& j) { return decode_matrix_with<Scalar>(f, j, decode_scalar); }

Json encode(const LaurentMatrix& m) {
  return encode_matrix(m, [](const Laurent& x) { return encode(x); });
}

LaurentMatrix decode_laurent_matrix(const Field& f, const Json& j) {
  return decode_matrix_with<Laurent>(f, j, decode_laurent);
}

Json encode(const MatrixTuple& t) {
  Json j;
  if (t.rows == t.cols) {
    j["size"] = t.rows;
  } else {
    j["rows"] = t.rows;
    j["cols"] = t.cols;
  }
  Json kinds = Json::array(), mats = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    kinds.push_back(std::string(to_string(t.kinds[i])));
    mats.push_back(encode(t.mats[i]));
  }
  j["kinds"] = kinds;
  j["matrices"] = mats;
  return j;
}

MatrixTuple decode_tuple(const Field& f, const Json& j) {
  return guarded([&] {
    std::size_t rows = 0, cols = 0;
    if (j.contains("size")) {
      rows = cols = as_size(j.at("size"), "size");
    } else {
      rows = as_size(member(j, "rows"), "rows");
      cols = as_size(member(j, "cols"), "cols");
    }
    MatrixTuple t(f, rows, cols);
    const Json& mats = member(j, "matrices");
    if (!mats.is_array()) malformed("'matrices' must be an array");
    const Json kinds = j.contains("kinds") ? j.at("kinds") : Json::array();
    if (!kinds.empty() && kinds.size() != mats.size()) malformed("one kind per matrix required");
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const SymKind kind = kinds.empty() ? SymKind::General : sym_kind_from_string(kinds[i].get<std::string>());
      try {
        t.push(decode_matrix(f, mats[i]), kind);
      } catch (const Error& e) {
        malformed(std::string("tuple: ") + e.what());
      }
    }
    return t;
  });
}

namespace {

Json encode_list(const std::vector<ScalarMatrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(encode(m));
  return a;
}

std::vector<ScalarMatrix> decode_list(const Field& f, const Json& j, const char* key) {
  std::vector<ScalarMatrix> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) malformed(std::string("'") + key + "' must be an array");
  for (const auto& m : j.at(key)) out.push_back(decode_matrix(f, m));
  return out;
}

}  // namespace

Json encode(const ConfigPoint& x) {
  Json j;
  j["N"] = x.n;
  j["sym"] = encode_list(x.sym);
  j["alt"] = encode_list(x.alt);
  j["col"] = encode(x.col);
  Json fin = Json::array();
  for (const auto& c : x.fin) fin.push_back(encode(c));
  j["fin"] = fin;
  return j;
}

ConfigPoint decode_config(const Field& f, const Json& j) {
  return guarded([&] {
    ConfigPoint x;
    x.field = f;
    x.n = as_size(member(j, "N"), "N");
    x.sym = decode_list(f, j, "sym");
    x.alt = decode_list(f, j, "alt");
    x.col = j.contains("col") ? decode_matrix(f, j.at("col")) : ScalarMatrix(f, x.n, 0);
    if (j.contains("fin"))
      for (const auto& c : j.at("fin")) x.fin.push_back(decode_scalar(f, c));
    try {
      x.validate();
    } catch (const Error& e) {
      malformed(std::string("config: ") + e.what());
    }
    return x;
  });
}

Json encode(const TargetCorner& t) {
  Json j;
  j["l"] = t.l;
  j["sym"] = encode_list(t.sym);
  j["alt"] = encode_list(t.alt);
  j["col"] = encode(t.col);
  return j;
}

TargetCorner decode_target(const Field& f, const Json& j) {
  return guarded([&] {
    TargetCorner t;
    t.l = as_size(member(j, "l"), "l");
    t.sym = decode_list(f, j, "sym");
    t.alt = decode_list(f, j, "alt");
    t.col = j.contains("col") ? decode_matrix(f, j.at("col")) : ScalarMatrix(f, t.l, 0);
    return t;
  });
}

Json encode(const RankCertificate& c) {
  Json j;
  if (c.value)
    j["value"] = *c.value;
  else
    j["value"] = "infinity";
  j["certified"] = c.certified;
  j["lower_bound"] = c.lower_bound;
  j["level"] = c.level;
  j["search_domain"] = c.search_domain;
  j["points"] = c.points;
  Json w = Json::array();
  for (const auto& x : c.witness) w.push_back(encode(x));
  j["witness"] = w;
  return j;
}

Json encode(const VerificationReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["det_ok"] = r.det_ok;
  j["det_detail"] = r.det_detail;
  j["entries_checked"] = r.entries_checked;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json e;
    e["component"] = f.component;
    e["row"] = f.row;
    e["col"] = f.col;
    e["reason"] = f.reason;
    fails.push_back(e);
  }
  j["failures"] = fails;
  return j;
}

Json encode(const StageCheck& s) {
  Json j;
  j["stage"] = s.stage;
  j["ok"] = s.ok;
  j["detail"] = s.detail;
  return j;
}

Json encode(const WitnessCurve& w) {
  Json j;
  j["g"] = encode(w.g);
  Json det;
  det["coeff"] = encode(w.det_coeff);
  det["degree"] = w.det_degree;
  j["det"] = det;
  j["ranks_certified"] = w.ranks_certified;
  Json stages = Json::array();
  for (const auto& s : w.stages) stages.push_back(encode(s));
  j["stages"] = stages;
  return j;
}

WitnessCurve decode_curve(const Field& f, const Json& j) {
  return guarded([&] {
    WitnessCurve w;
    w.g = decode_laurent_matrix(f, member(j, "g"));
    const Json& det = member(j, "det");
    w.det_coeff = decode_scalar(f, member(det, "coeff"));
    w.det_degree = member(det, "degree").get<int>();
    w.ranks_certified = j.value("ranks_certified", false);
    return w;
  });
}

}  // namespace congruence::json
