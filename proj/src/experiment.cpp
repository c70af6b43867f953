#include "congruence/experiment.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "congruence/fixtures.hpp"

namespace congruence {

namespace {

uint64_t instance_seed(uint64_t seed, std::size_t rank, std::size_t i) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (rank * 1'000'003ULL + i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool attempt(const Field& f, const ExperimentConfig& cfg, std::size_t big_n, std::size_t rank, std::size_t i) {
  Rng rng(instance_seed(cfg.seed, rank, i));
  const ConfigPoint x = fixtures::random_config(f, big_n, cfg.p, cfg.q, cfg.n, rank, rng);
  const TargetCorner target = fixtures::random_target(x, cfg.l, rng);
  try {
    return witness_full(x, target, rng, cfg.options).report.passed();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::vector<ExperimentRow> bound_experiment(const Field& f, ExperimentConfig cfg) {
  cfg.options.enforce_rank_bound = false;
  const std::size_t s = cfg.p + cfg.q;
  const std::size_t r = required_rank(s, cfg.l, cfg.n);
  const std::size_t low = s * (std::size_t{1} << s) * cfg.l + (s + 1) * cfg.n;
  const std::size_t big_n = 2 * r + cfg.extra;

  std::vector<ExperimentRow> rows;
  for (std::size_t rank = 2 * r + 1; rank-- > low;) rows.push_back({rank, cfg.instances, 0});

  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t i = 0; i < cfg.instances; ++i) work.emplace_back(k, i);
  std::vector<char> ok(work.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t w; (w = next.fetch_add(1)) < work.size();)
      ok[w] = attempt(f, cfg, big_n, rows[work[w].first].rank, work[w].second);
  };
  const int jobs = std::max(cfg.jobs, 1);
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (std::size_t w = 0; w < work.size(); ++w) rows[work[w].first].successes += ok[w];
  return rows;
}

std::string to_csv(const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows) {
  const std::size_t s = cfg.p + cfg.q;
  const std::size_t r = required_rank(s, cfg.l, cfg.n);
  std::ostringstream os;
  os << "p,q,n,l,rank,proven_bound,reduced_bound,instances,successes\n";
  for (const auto& row : rows)
    os << cfg.p << ',' << cfg.q << ',' << cfg.n << ',' << cfg.l << ',' << row.rank << ',' << 2 * r << ','
       << s * (std::size_t{1} << s) * cfg.l + (s + 1) * cfg.n << ',' << row.instances << ',' << row.successes << '\n';
  return os.str();
}

}  // namespace congruence
