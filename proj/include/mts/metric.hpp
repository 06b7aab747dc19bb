#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mts {

// A finite metric space: n points with a dense symmetric distance matrix.
// Construction validates the metric axioms and freezes the space; instances
// are immutable and safe to share across threads.
class MetricSpace {
 public:
  explicit MetricSpace(std::vector<std::vector<double>> dist,
                       std::vector<std::string> labels = {});

  // All pairwise distances equal to 1.
  static MetricSpace uniform(int n);

  // Random symmetric matrix repaired to a metric by all-pairs shortest paths.
  static MetricSpace random(int n, std::uint64_t seed);

  static MetricSpace load(const std::string& path);

  // "uniform:<n>", "random:<n>:<seed>", or a file path.
  static MetricSpace from_spec(const std::string& spec);

  int size() const { return n_; }
  double distance(int i, int j) const { return dist_[i][j]; }
  double diameter() const { return diameter_; }
  const std::vector<std::vector<double>>& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // True when every off-diagonal distance is exactly 1.
  bool is_uniform() const;

  void save(const std::string& path) const;

 private:
  int n_ = 0;
  std::vector<std::vector<double>> dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
};

// Checks the metric axioms: zero diagonal, exact symmetry, positivity, and
// the triangle inequality up to 1e-9 * diameter. Returns an empty optional
// when the matrix is a metric, otherwise a description of the first violated
// pair or triple.
std::optional<std::string> validate_metric(const std::vector<std::vector<double>>& dist);

// Replaces each entry with the shortest-path distance through the complete
// graph. Idempotent on matrices that already satisfy the triangle inequality.
void repair_shortest_paths(std::vector<std::vector<double>>& dist);

}  // namespace mts
