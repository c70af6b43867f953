#include "congruence/tuple_rank.hpp"

#include <algorithm>
#include <thread>

#include "congruence/kernels.hpp"

namespace congruence {

MatrixTuple::MatrixTuple(Field f, std::size_t r, std::size_t c) : field(std::move(f)), rows(r), cols(c) {}

MatrixTuple::MatrixTuple(Field f, std::size_t n, std::vector<ScalarMatrix> m, std::vector<SymKind> k)
    : field(std::move(f)), rows(n), cols(n), mats(std::move(m)), kinds(std::move(k)) {
  validate();
}

void MatrixTuple::push(ScalarMatrix m, SymKind kind) {
  mats.push_back(std::move(m));
  kinds.push_back(kind);
  try {
    validate();
  } catch (...) {
    mats.pop_back();
    kinds.pop_back();
    throw;
  }
}

void MatrixTuple::validate() const {
  if (mats.size() != kinds.size()) throw Error(ErrorCode::ShapeMismatch, "tuple: one kind per component required");
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const auto& m = mats[i];
    if (m.rows() != rows || m.cols() != cols)
      throw Error(ErrorCode::ShapeMismatch, "tuple component " + std::to_string(i) + " has the wrong shape");
    if (!(m.field() == field)) throw Error(ErrorCode::MixedFields, "tuple components over different fields");
    if (!satisfies(m, kinds[i]))
      throw Error(ErrorCode::HypothesisViolation,
                  "tuple component " + std::to_string(i) + " is not " + std::string(to_string(kinds[i])));
  }
}

MatrixTuple MatrixTuple::leading_columns(std::size_t k) const {
  if (k > cols) throw Error(ErrorCode::InvalidArgument, "leading_columns: k exceeds the column count");
  MatrixTuple out(field, rows, k);
  for (const auto& m : mats) out.push(m.block(0, 0, rows, k), SymKind::General);
  return out;
}

MatrixTuple congruence_apply(const ScalarMatrix& g, const MatrixTuple& t) {
  MatrixTuple out(t.field, g.rows(), g.rows());
  for (std::size_t i = 0; i < t.size(); ++i) out.push(congruence_apply(g, t.mats[i]), t.kinds[i]);
  return out;
}

ScalarMatrix combination(const MatrixTuple& t, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != t.size()) throw Error(ErrorCode::ShapeMismatch, "coefficient vector has the wrong length");
  ScalarMatrix acc(t.field, t.rows, t.cols);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!coeffs[i].is_zero()) acc = acc + coeffs[i] * t.mats[i];
  return acc;
}

std::size_t rank_at(const MatrixTuple& t, const std::vector<Scalar>& coeffs) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Scalar& c) { return c.is_zero(); }))
    throw Error(ErrorCode::InvalidArgument, "rank_at: coefficient vector is zero");
  return rank(combination(t, coeffs));
}

std::vector<std::size_t> component_ranks(const MatrixTuple& t) {
  std::vector<std::size_t> out;
  for (const auto& m : t.mats) out.push_back(rank(m));
  return out;
}

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

uint64_t sat_pow(uint64_t q, std::size_t e) {
  uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, q);
  return r;
}

// Digits of a projective point: first nonzero coordinate is 1, later
// coordinates are base-q digits (least significant first).
std::vector<uint64_t> point_digits(uint64_t index, std::size_t s, uint64_t q) {
  std::vector<uint64_t> d(s, 0);
  for (std::size_t lead = 0; lead < s; ++lead) {
    const uint64_t block = sat_pow(q, s - 1 - lead);
    if (index < block) {
      d[lead] = 1;
      for (std::size_t j = lead + 1; j < s; ++j) {
        d[j] = index % q;
        index /= q;
      }
      return d;
    }
    index -= block;
  }
  return d;
}

struct Best {
  std::size_t rank = SIZE_MAX;
  uint64_t index = UINT64_MAX;
};

bool better(const Best& a, const Best& b) {
  return a.rank < b.rank || (a.rank == b.rank && a.index < b.index);
}

Best scan_base(const std::vector<std::vector<uint32_t>>& res, std::size_t rows, std::size_t cols, uint32_t p,
               uint64_t begin, uint64_t end) {
  Best best;
  const std::size_t s = res.size();
  std::vector<uint32_t> acc(rows * cols);
  for (uint64_t k = begin; k < end; ++k) {
    const auto d = point_digits(k, s, p);
    std::fill(acc.begin(), acc.end(), 0u);
    for (std::size_t i = 0; i < s; ++i)
      if (d[i]) kernels::axpy_mod(acc, res[i], static_cast<uint32_t>(d[i]), p);
    const std::size_t r = kernels::rank_mod_p(acc, rows, cols, p);
    if (r < best.rank) best = {r, k};
    if (r == 0) break;
  }
  return best;
}

Best scan_tower(const MatrixTuple& t, int level, uint64_t q, uint64_t begin, uint64_t end) {
  Best best;
  const std::size_t s = t.size();
  for (uint64_t k = begin; k < end; ++k) {
    const auto d = point_digits(k, s, q);
    std::vector<Scalar> c;
    c.reserve(s);
    for (auto x : d) c.push_back(t.field.element(level, x));
    const std::size_t r = rank(combination(t, c));
    if (r < best.rank) best = {r, k};
    if (r == 0) break;
  }
  return best;
}

std::string domain_name(std::size_t s, uint64_t p, int level) {
  return "P^" + std::to_string(s - 1) + "(F_" + std::to_string(p) + "^" + std::to_string(uint64_t{1} << level) + ")";
}

}  // namespace

RankCertificate tuple_rank_exhaustive(const MatrixTuple& t, int level, const EnumerationOptions& opt) {
  if (!t.field.is_tower())
    throw Error(ErrorCode::UnsupportedField, "exhaustive tuple rank needs a finite (tower) field");
  const std::size_t s = t.size();
  RankCertificate cert;
  cert.certified = true;
  if (s == 0) {
    cert.search_domain = "empty tuple";
    return cert;
  }
  for (const auto& m : t.mats) level = std::max(level, max_level(m));
  cert.level = level;
  cert.search_domain = domain_name(s, t.field.prime(), level);
  const uint64_t q = t.field.level_size(level);
  if (sat_pow(q, s) > opt.budget)
    throw Error(ErrorCode::BudgetExceeded, "enumerating " + cert.search_domain + " exceeds the budget");
  t.field.ensure_level(level);

  uint64_t total = 0;
  for (std::size_t i = 0; i < s; ++i) total += sat_pow(q, i);
  cert.points = total;

  std::vector<std::vector<uint32_t>> residues;
  bool base = level == 0;
  if (base) {
    for (const auto& m : t.mats) {
      std::vector<uint32_t> r;
      r.reserve(m.data().size());
      for (const auto& x : m.data()) r.push_back(x.coeffs()[0]);
      residues.push_back(std::move(r));
    }
  }
  auto scan = [&](uint64_t b, uint64_t e) {
    return base ? scan_base(residues, t.rows, t.cols, t.field.prime(), b, e) : scan_tower(t, level, q, b, e);
  };

  const uint64_t jobs = std::clamp<uint64_t>(static_cast<uint64_t>(std::max(opt.jobs, 1)), 1, std::max<uint64_t>(total / 64, 1));
  Best best;
  if (jobs == 1) {
    best = scan(0, total);
  } else {
    std::vector<Best> parts(jobs);
    std::vector<std::thread> threads;
    for (uint64_t j = 0; j < jobs; ++j)
      threads.emplace_back([&, j] { parts[j] = scan(total * j / jobs, total * (j + 1) / jobs); });
    for (auto& th : threads) th.join();
    for (const auto& b : parts)
      if (better(b, best)) best = b;
  }
  cert.value = best.rank;
  for (auto x : point_digits(best.index, s, q)) cert.witness.push_back(t.field.element(level, x));
  return cert;
}

RankCertificate tuple_rank_rational_bound(const MatrixTuple& t, const EnumerationOptions& opt) {
  if (t.field.is_tower()) throw Error(ErrorCode::UnsupportedField, "rational bound needs a rational tuple");
  const std::size_t s = t.size();
  RankCertificate cert;
  cert.level = -1;
  if (s == 0) {
    cert.certified = true;
    cert.search_domain = "empty tuple";
    return cert;
  }
  cert.lower_bound = true;

  // Clear denominators per component; this does not change the tuple rank.
  std::vector<std::vector<mpz_class>> ints;
  for (const auto& m : t.mats) {
    mpz_class l = 1;
    for (const auto& x : m.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rational().get_den_mpz_t());
    std::vector<mpz_class> v;
    for (const auto& x : m.data()) v.push_back(x.rational().get_num() * (l / x.rational().get_den()));
    ints.push_back(std::move(v));
  }

  std::size_t best = 0;
  std::string primes;
  int used = 0;
  for (uint32_t p : {31u, 17u, 11u, 7u, 5u, 3u}) {
    if (used == 3) break;
    if (sat_pow(p, s) > opt.budget) continue;
    Field fp = Field::tower(p);
    MatrixTuple red(fp, t.rows, t.cols);
    for (const auto& v : ints) {
      ScalarMatrix m(fp, t.rows, t.cols);
      for (std::size_t k = 0; k < v.size(); ++k) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v[k].get_mpz_t(), p);
        m(k / t.cols, k % t.cols) = fp.from_int(r.get_si());
      }
      red.push(std::move(m), SymKind::General);
    }
    const auto c = tuple_rank_exhaustive(red, 0, opt);
    best = std::max(best, *c.value);
    cert.points += c.points;
    primes += (used ? "," : "") + std::to_string(p);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::BudgetExceeded, "no reduction prime fits the enumeration budget");
  cert.value = best;
  cert.search_domain = "reductions mod " + primes + " (lower bound)";
  return cert;
}

RankCertificate tuple_rank(const MatrixTuple& t, const EnumerationOptions& opt) {
  return t.field.is_tower() ? tuple_rank_exhaustive(t, 0, opt) : tuple_rank_rational_bound(t, opt);
}

bool rank_at_least(const RankCertificate& c, std::size_t r) {
  if (!c.certified && !c.lower_bound) return false;
  return !c.value || *c.value >= r;
}

std::size_t minimal_truncation(const MatrixTuple& t, std::size_t r, int level, const EnumerationOptions& opt) {
  auto holds = [&](const MatrixTuple& u) {
    return rank_at_least(t.field.is_tower() ? tuple_rank_exhaustive(u, level, opt) : tuple_rank_rational_bound(u, opt), r);
  };
  if (!holds(t))
    throw Error(ErrorCode::RankPrecondition, "tuple rank is below " + std::to_string(r));
  if (r == 0 || t.size() == 0) return 0;
  // Tuple rank is monotone in the number of kept columns.
  std::size_t lo = 0, hi = t.cols;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (holds(t.leading_columns(mid)))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace congruence
