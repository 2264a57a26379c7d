#include "spinloc/quadrature.hpp"

#include <map>
#include <mutex>

namespace spinloc {

namespace {

void gauss_legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
}

std::mutex g_cache_mutex;
std::map<int, std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>>>
    g_gl_cache;

}  // namespace

QuadratureGrid QuadratureGrid::gauss_legendre(int n_u, int n_phi) {
  if (n_u < 1 || n_phi < 1)
    throw std::invalid_argument("QuadratureGrid: node counts must be positive");
  QuadratureGrid g;
  g.n_phi_ = n_phi;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_gl_cache.find(n_u);
    if (it != g_gl_cache.end()) {
      g.gl_ = it->second;
      return g;
    }
  }
  auto data = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>();
  gauss_legendre_nodes(n_u, data->first, data->second);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_gl_cache[n_u] = data;
  }
  g.gl_ = std::move(data);
  return g;
}

QuadratureGrid QuadratureGrid::exact_for(TwiceJ tj, int q) {
  if (q < 1) throw std::invalid_argument("exact_for: q must be a positive integer");
  const int degree = q * tj.twice();
  return gauss_legendre(degree / 2 + 1, 2 * degree + 2);
}

}  // namespace spinloc
