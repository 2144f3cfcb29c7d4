#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace hopfsol {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Sum term(0) + ... + term(n-1) split into `workers` contiguous chunks.
/// Each chunk is summed in index order and the partial sums are combined in
/// chunk order, so the result is bit-identical across runs for a fixed
/// worker count.
template <typename Term>
double parallel_sum(std::size_t n, unsigned workers, Term&& term) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  auto chunk_sum = [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  };
  if (workers == 1) return chunk_sum(0, n);

  std::vector<double> partial(workers, 0.0);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = chunk_sum(begin, end); });
    }
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace hopfsol
