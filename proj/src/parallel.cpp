#include <erdlab/parallel.hpp>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace erdlab {

int shard_count() {
  const char* env = std::getenv("ERDLAB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  return std::max(1, std::atoi(env));
}

void for_each_shard(long n, int shards, const std::function<void(int, long, long)>& fn) {
  if (shards < 1) throw std::invalid_argument("for_each_shard: shards must be >= 1");
  if (n < 0) throw std::invalid_argument("for_each_shard: n must be >= 0");
  const long base = n / shards;
  const long rem = n % shards;
  auto begin_of = [&](int i) { return i * base + std::min<long>(i, rem); };
  auto count_of = [&](int i) { return base + (i < rem ? 1 : 0); };
  if (shards == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(shards);
  for (int i = 0; i < shards; ++i) pool.emplace_back(fn, i, begin_of(i), count_of(i));
  for (auto& worker : pool) worker.join();
}

}  // namespace erdlab
