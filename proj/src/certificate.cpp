#include <string>

#include "jigsaw/error.hpp"
#include "jigsaw/theory.hpp"

namespace jigsaw {

std::vector<std::size_t> ring_interval_boundaries(std::size_t n, std::size_t x) {
  if (x < 1) throw InputError("interval split needs x >= 1");
  if (n < x * x) {
    throw InputError("interval split needs n >= x^2 (n = " + std::to_string(n) +
                     ", x = " + std::to_string(x) + ")");
  }
  std::vector<std::size_t> bounds{0};
  if (x == 1) {
    for (std::size_t i = 1; i <= n; ++i) bounds.push_back(i);
    return bounds;
  }
  const std::size_t k = n / (x - 1);
  const std::size_t long_count = n - k * (x - 1);
  for (std::size_t i = 1; i <= k; ++i) {
    bounds.push_back(bounds.back() + (i <= long_count ? x : x - 1));
  }
  return bounds;
}

std::optional<VertexId> smallest_x_good_vertex(const Graph& people, std::size_t begin,
                                               std::size_t end, std::size_t x) {
  const std::size_t n = people.vertex_count();
  const std::size_t len = end - begin;
  // Window [begin - x, end + x) taken cyclically; it may cover the whole ring.
  const std::size_t span = len + 2 * x;
  const std::size_t start = (begin + n - (x % n)) % n;
  auto in_window = [&](VertexId w) {
    if (span >= n) return true;
    return (w + n - start) % n < span;
  };
  for (std::size_t u = begin; u < end; ++u) {
    bool good = true;
    for (VertexId w : people.neighbors(static_cast<VertexId>(u))) {
      if (in_window(w)) {
        good = false;
        break;
      }
    }
    if (good) return static_cast<VertexId>(u);
  }
  return std::nullopt;
}

std::optional<CutCertificate> find_cut_certificate(const Graph& people, std::size_t n,
                                                   std::size_t x) {
  if (n < 3) throw InputError("ring puzzle needs n >= 3");
  if (people.vertex_count() != n) {
    throw InputError("people graph has " + std::to_string(people.vertex_count()) +
                     " vertices, expected " + std::to_string(n));
  }
  CutCertificate cert;
  cert.x = x;
  cert.boundaries = ring_interval_boundaries(n, x);
  for (std::size_t j = 0; j + 1 < cert.boundaries.size(); ++j) {
    const auto witness = smallest_x_good_vertex(people, cert.boundaries[j], cert.boundaries[j + 1], x);
    if (!witness) return std::nullopt;
    cert.witnesses.push_back(*witness);
  }
  return cert;
}

}  // namespace jigsaw
