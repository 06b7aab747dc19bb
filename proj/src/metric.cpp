#include "mts/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mts/rng.hpp"

namespace mts {

namespace {

double max_entry(const std::vector<std::vector<double>>& dist) {
  double mx = 0.0;
  for (const auto& row : dist)
    for (double v : row) mx = std::max(mx, v);
  return mx;
}

}  // namespace

std::optional<std::string> validate_metric(const std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  if (n == 0) return "structural: empty matrix";
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      std::ostringstream os;
      os << "structural: row " << i << " has " << dist[i].size() << " entries, expected " << n;
      return os.str();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(dist[i][i] == 0.0)) {
      std::ostringstream os;
      os << "nonzero diagonal at (" << i << "," << i << "): " << dist[i][i];
      return os.str();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        std::ostringstream os;
        os << "asymmetry at (" << i << "," << j << "): " << dist[i][j] << " vs " << dist[j][i];
        return os.str();
      }
      if (!(dist[i][j] > 0.0) || !std::isfinite(dist[i][j])) {
        std::ostringstream os;
        os << "nonpositive distance at (" << i << "," << j << "): " << dist[i][j];
        return os.str();
      }
    }
  }
  const double tol = 1e-9 * max_entry(dist);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (dist[i][l] > dist[i][j] + dist[j][l] + tol) {
          std::ostringstream os;
          os << "triangle violation (" << i << "," << j << "," << l << "): " << dist[i][l]
             << " > " << dist[i][j] << " + " << dist[j][l];
          return os.str();
        }
  return std::nullopt;
}

void repair_shortest_paths(std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  for (std::size_t mid = 0; mid < n; ++mid)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][mid] + dist[mid][j]);
}

MetricSpace::MetricSpace(std::vector<std::vector<double>> dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  if (auto violation = validate_metric(dist_)) {
    throw std::invalid_argument("invalid metric: " + *violation);
  }
  n_ = static_cast<int>(dist_.size());
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
    throw std::invalid_argument("label count does not match point count");
  }
  diameter_ = max_entry(dist_);
}

MetricSpace MetricSpace::uniform(int n) {
  if (n < 1) throw std::invalid_argument("uniform metric needs at least one point");
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  return MetricSpace(std::move(d));
}

MetricSpace MetricSpace::random(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random metric needs at least one point");
  Rng rng(seed);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 0.5 + rng.next_double();
  repair_shortest_paths(d);
  return MetricSpace(std::move(d));
}

bool MetricSpace::is_uniform() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && dist_[i][j] != 1.0) return false;
  return true;
}

MetricSpace MetricSpace::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metric file: " + path);
  int n = 0;
  if (!(in >> n) || n < 1) throw std::runtime_error("bad point count in metric file: " + path);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> d[i][j])) throw std::runtime_error("truncated metric file: " + path);
  return MetricSpace(std::move(d));
}

void MetricSpace::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write metric file: " + path);
  out << n_ << "\n";
  out.precision(17);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out << (j ? " " : "") << dist_[i][j];
    out << "\n";
  }
}

MetricSpace MetricSpace::from_spec(const std::string& spec) {
  if (spec.rfind("uniform:", 0) == 0) {
    return uniform(std::stoi(spec.substr(8)));
  }
  if (spec.rfind("random:", 0) == 0) {
    const std::string rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("metric spec random:<n>:<seed> expected, got: " + spec);
    return random(std::stoi(rest.substr(0, colon)),
                  std::stoull(rest.substr(colon + 1)));
  }
  if (spec.rfind("file:", 0) == 0) return load(spec.substr(5));
  return load(spec);
}

}  // namespace mts
