#include "congruence/free_subspace.hpp"

#include <algorithm>

namespace congruence {

namespace {

ScalarMatrix images(const MatrixTuple& t, const ScalarMatrix& basis) {
  ScalarMatrix out(t.field, t.rows, 0);
  for (const auto& m : t.mats) out = hstack(out, m * basis);
  return out;
}

bool is_free(const MatrixTuple& t, const ScalarMatrix& v) { return rank(images(t, v)) == t.size(); }

int tuple_level(const MatrixTuple& t) {
  int level = 0;
  for (const auto& m : t.mats) level = std::max(level, max_level(m));
  return level;
}

std::optional<ScalarMatrix> random_search(const MatrixTuple& t, Rng& rng, int level, uint64_t rational_bound,
                                          int retries, FreeSearchStats& stats) {
  const uint64_t size = t.field.is_tower() ? t.field.level_size(level) : rational_bound;
  for (int attempt = 0; attempt < retries; ++attempt) {
    ++stats.random_draws;
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < t.cols; ++i) v.push_back(t.field.sample(rng, size));
    ScalarMatrix c = column_vector(t.field, v);
    if (is_free(t, c)) return c;
  }
  return std::nullopt;
}

// Projective points of the base field in a fixed order (rationals use the
// digits 0, 1, -1).
std::optional<ScalarMatrix> grid_search(const MatrixTuple& t, uint64_t budget, FreeSearchStats& stats) {
  const std::size_t n = t.cols;
  const uint64_t q = t.field.is_tower() ? t.field.prime() : 3;
  auto digit = [&](uint64_t d) {
    if (t.field.is_tower()) return t.field.from_int(static_cast<int64_t>(d));
    return t.field.from_int(d == 2 ? -1 : static_cast<int64_t>(d));
  };
  for (std::size_t lead = 0; lead < n; ++lead) {
    const std::size_t tail = n - 1 - lead;
    std::vector<uint64_t> d(tail, 0);
    while (true) {
      if (stats.grid_points >= budget) return std::nullopt;
      ++stats.grid_points;
      std::vector<Scalar> v(n, t.field.zero());
      v[lead] = t.field.one();
      for (std::size_t j = 0; j < tail; ++j) v[lead + 1 + j] = digit(d[j]);
      ScalarMatrix c = column_vector(t.field, v);
      if (is_free(t, c)) return c;
      std::size_t j = 0;
      while (j < tail && ++d[j] == q) d[j++] = 0;
      if (j == tail) break;
    }
  }
  return std::nullopt;
}

}  // namespace

ScalarMatrix find_free_vector(const MatrixTuple& t, Rng& rng, const FreeSubspaceOptions& opt,
                              FreeSearchStats* stats_out) {
  FreeSearchStats local;
  FreeSearchStats& stats = stats_out ? *stats_out : local;
  const std::size_t s = t.size();
  if (t.cols == 0) {
    if (s == 0) return ScalarMatrix(t.field, 0, 1);
    throw Error(ErrorCode::NotFound, "no free vector in a zero-dimensional domain");
  }
  if (s == 0) {
    ScalarMatrix e(t.field, t.cols, 1);
    e(0, 0) = t.field.one();
    return e;
  }
  if (s > t.rows) throw Error(ErrorCode::NotFound, "images of " + std::to_string(s) + " maps cannot be independent in dimension " + std::to_string(t.rows));

  const uint64_t min_size = std::max<uint64_t>(opt.size_factor * s, 2);
  int level = 0;
  if (t.field.is_tower()) level = std::max(tuple_level(t), t.field.level_for_size(min_size));
  if (auto v = random_search(t, rng, level, min_size, opt.retries, stats)) return *v;

  stats.used_fallback = true;
  if (auto v = grid_search(t, opt.grid_budget, stats)) return *v;

  if (t.field.is_tower()) {
    for (int e = 1; e <= opt.escalations && level + e <= kMaxTowerLevel; ++e) {
      ++stats.escalations;
      if (auto v = random_search(t, rng, level + e, min_size, opt.retries, stats)) return *v;
    }
  }
  throw Error(ErrorCode::NotFound, "no free vector found; the tuple rank is probably below " + std::to_string(s));
}

Quotient quotient_tuple(const MatrixTuple& t, const ScalarMatrix& v, const ScalarMatrix& w) {
  const ScalarMatrix qv = basis_completion(v, t.cols);
  const ScalarMatrix qw_inv = inverse(basis_completion(w, t.rows));
  const std::size_t k = v.cols(), kw = w.cols();
  Quotient out{MatrixTuple(t.field, t.rows - kw, t.cols - k), qv.block(0, k, t.cols, t.cols - k)};
  for (const auto& m : t.mats) {
    const ScalarMatrix moved = qw_inv * m * qv;
    out.tuple.push(moved.block(kw, k, t.rows - kw, t.cols - k), SymKind::General);
  }
  return out;
}

std::size_t image_rank(const MatrixTuple& t, const ScalarMatrix& basis) { return rank(images(t, basis)); }

FreeSubspace find_free_subspace(const MatrixTuple& t, std::size_t l, Rng& rng, const FreeSubspaceOptions& opt) {
  FreeSubspace out;
  out.basis = ScalarMatrix(t.field, t.cols, 0);
  MatrixTuple current = t;
  ScalarMatrix lift = ScalarMatrix::identity(t.field, t.cols);
  for (std::size_t step = 0; step < l; ++step) {
    const ScalarMatrix v = find_free_vector(current, rng, opt, &out.stats);
    out.basis = hstack(out.basis, lift * v);
    Quotient q = quotient_tuple(current, v, images(current, v));
    lift = lift * q.lift;
    current = std::move(q.tuple);
  }
  out.image_rank = image_rank(t, out.basis);
  if (out.image_rank != l * t.size())
    throw Error(ErrorCode::VerificationFailed, "free subspace image has rank " + std::to_string(out.image_rank) +
                                                   ", expected " + std::to_string(l * t.size()));
  return out;
}

}  // namespace congruence
