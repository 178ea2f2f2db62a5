#include "graphsum/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "graphsum/decomposition.hpp"
#include "graphsum/errors.hpp"

namespace graphsum {

namespace {

// Nested enumeration over vertices in position order. Each edge is evaluated at
// the depth of its later endpoint, so a partial product is shared by all
// completions of the prefix and zero prefixes are skipped.
class BruteForce {
 public:
  explicit BruteForce(const GraphOfMatrices& gom) : gom_(gom), by_depth_(gom.graph.vertex_count()) {
    for (std::size_t e = 0; e < gom.graph.edge_count(); ++e) {
      const Edge& ed = gom.graph.edge(e);
      by_depth_[std::max(ed.source, ed.target)].push_back(e);
    }
  }

  double contribution(std::size_t first_index) const {
    std::vector<std::size_t> assign(gom_.graph.vertex_count(), 0);
    assign[0] = first_index;
    const double f = factor(0, assign);
    return f == 0.0 ? 0.0 : f * level(1, assign);
  }

 private:
  double factor(std::size_t depth, const std::vector<std::size_t>& a) const {
    double p = 1.0;
    for (std::size_t e : by_depth_[depth]) {
      const Edge& ed = gom_.graph.edge(e);
      p *= gom_.mats[e](a[ed.target], a[ed.source]);
      if (p == 0.0) break;
    }
    return p;
  }

  double level(std::size_t depth, std::vector<std::size_t>& a) const {
    if (depth == a.size()) return 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < gom_.dims[depth]; ++i) {
      a[depth] = i;
      const double f = factor(depth, a);
      if (f != 0.0) acc += f * level(depth + 1, a);
    }
    return acc;
  }

  const GraphOfMatrices& gom_;
  std::vector<std::vector<std::size_t>> by_depth_;
};

void check_term_cap(double terms, double cap) {
  if (terms > cap) {
    std::ostringstream msg;
    msg << "brute force needs " << terms << " index functions (product of dims), cap is " << cap;
    throw CapExceeded(msg.str());
  }
}

}  // namespace

double graph_sum_bruteforce(const GraphOfMatrices& gom, const EvalOptions& opts) {
  require_valid(gom);
  const std::size_t n = gom.graph.vertex_count();
  if (n == 0) return 1.0;
  double terms = 1.0;
  for (std::size_t d : gom.dims) terms *= static_cast<double>(d);
  check_term_cap(terms, opts.term_cap);

  BruteForce bf(gom);
  const std::size_t first = gom.dims[0];
  std::vector<double> parts(first, 0.0);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(first)));
  if (workers == 1) {
    for (std::size_t i = 0; i < first; ++i) parts[i] = bf.contribution(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < first; i += workers) parts[i] = bf.contribution(i);
      });
  }
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

double partition_sum(const std::vector<Matrix>& matrices, const Partition& pi, std::size_t n,
                     const EvalOptions& opts) {
  const std::size_t m = matrices.size();
  if (m == 0) throw InputError("partition_sum: no matrices");
  if (static_cast<std::size_t>(pi.k()) != 2 * m)
    throw InputError("partition_sum: partition of " + std::to_string(pi.k()) + " positions for " + std::to_string(m) +
                     " matrices");
  for (std::size_t l = 0; l < m; ++l)
    if (matrices[l].rows() != n || matrices[l].cols() != n)
      throw InputError("partition_sum: matrix " + std::to_string(l + 1) + " is not " + std::to_string(n) + "x" +
                       std::to_string(n));
  check_term_cap(std::pow(static_cast<double>(n), static_cast<double>(2 * m)), opts.term_cap);

  const std::size_t k = 2 * m;
  std::vector<std::size_t> j(k, 0);
  double s = 0.0;
  for (;;) {
    bool admissible = true;
    for (const auto& block : pi.blocks()) {
      const std::size_t v = j[block.front() - 1];
      for (int p : block)
        if (j[p - 1] != v) {
          admissible = false;
          break;
        }
      if (!admissible) break;
    }
    if (admissible) {
      double term = 1.0;
      for (std::size_t l = 0; l < m; ++l) term *= matrices[l](j[2 * l], j[2 * l + 1]);
      s += term;
    }
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++j[pos] < n) break;
      j[pos] = 0;
      if (pos == 0) return s;
    }
  }
}

double bound(const GraphOfMatrices& gom) {
  require_valid(gom);
  const Forest f = forest_of(gom.graph);
  const auto kinds = classify_leaves(f);
  double b = 1.0;
  for (std::size_t node = 0; node < f.nodes.size(); ++node) {
    if (kinds[node] == LeafKind::internal) continue;
    std::size_t largest = 0;
    for (std::size_t v : f.nodes[node]) largest = std::max(largest, gom.dims[v]);
    const double d = static_cast<double>(largest);
    b *= kinds[node] == LeafKind::trivial_leaf ? d : std::sqrt(d);
  }
  return b * norm_product(gom);
}

}  // namespace graphsum
