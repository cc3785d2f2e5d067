#pragma once

#include <functional>

namespace erdlab {

/// Shard count for Monte-Carlo estimators and Jacobian assembly, read from
/// ERDLAB_THREADS (default 1). Outputs depend on the shard count but not on
/// scheduling, so a fixed count gives byte-identical results.
int shard_count();

/// Splits n items into contiguous chunks, one per shard, and runs
/// fn(shard_index, begin, count) for each; threaded when shards > 1.
/// The partition is a pure function of (n, shards).
void for_each_shard(long n, int shards, const std::function<void(int, long, long)>& fn);

}  // namespace erdlab
