#include "finsler/parallel.hpp"

#include "finsler/simd/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace finsler {

int thread_count() {
  if (const char* env = std::getenv("FINSLER_SHARP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(std::size_t total, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (total == 0) return;
  block = std::max<std::size_t>(1, block);
  const std::size_t nblocks = (total + block - 1) / block;
  const int workers = static_cast<int>(std::min<std::size_t>(nblocks, thread_count()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      try {
        body(b, b * block, std::min(total, (b + 1) * block));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

double parallel_sum(std::size_t total, std::size_t block,
                    const std::function<double(std::size_t, std::size_t)>& partial) {
  block = std::max<std::size_t>(1, block);
  const std::size_t nblocks = (total + block - 1) / block;
  std::vector<double> parts(nblocks, 0.0);
  parallel_blocks(total, block, [&](std::size_t b, std::size_t lo, std::size_t hi) { parts[b] = partial(lo, hi); });
  return simd::kernels().compensated_sum(parts.data(), parts.size());
}

}  // namespace finsler
