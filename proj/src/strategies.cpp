#include "mts/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mts/rng.hpp"

namespace mts {

namespace {

Units lcm_1_to_n(int n) {
  Units l = 1;
  for (int i = 2; i <= n; ++i) l = lcm_units(l, i);
  return l;
}

void require_uniform(const MetricSpace& m, const char* who) {
  if (!m.is_uniform())
    throw std::invalid_argument(std::string(who) + " is defined on uniform metrics only");
}

}  // namespace

void PhaseLedger::accrue(const CostVector& c) {
  if (c.size() != accumulated_.size())
    throw std::invalid_argument("cost vector length does not match ledger");
  for (std::size_t i = 0; i < c.size(); ++i) accumulated_[i] += c[i];
}

bool PhaseLedger::all_saturated() const {
  for (std::size_t i = 0; i < accumulated_.size(); ++i)
    if (!saturated(static_cast<int>(i))) return false;
  return true;
}

std::vector<int> PhaseLedger::unsaturated() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < accumulated_.size(); ++i)
    if (!saturated(static_cast<int>(i))) out.push_back(static_cast<int>(i));
  return out;
}

void PhaseLedger::advance_phase() {
  ++phase_;
  std::fill(accumulated_.begin(), accumulated_.end(), 0.0);
}

UniformFractionalStrategy::UniformFractionalStrategy(const MetricSpace& m)
    : n_(m.size()), units_(lcm_1_to_n(m.size())), ledger_(m.size()) {
  require_uniform(m, "uniform_fractional");
}

MassVector UniformFractionalStrategy::step(const CostVector& c) {
  ledger_.accrue(c);
  last_reset_ = false;
  if (ledger_.all_saturated()) {
    ledger_.advance_phase();
    last_reset_ = true;
  }
  const std::vector<int> active = ledger_.unsaturated();
  std::vector<Units> mass(n_, 0);
  const Units share = units_ / static_cast<Units>(active.size());
  for (int i : active) mass[i] = share;
  return MassVector(units_, std::move(mass));
}

BallsUrnsStrategy::BallsUrnsStrategy(const MetricSpace& m)
    : n_(m.size()), balls_(m.size(), 1), ledger_(m.size()) {
  require_uniform(m, "balls_urns");
}

MassVector BallsUrnsStrategy::step(const CostVector& c) {
  ledger_.accrue(c);
  last_reset_ = false;
  last_relocations_ = 0;
  if (ledger_.all_saturated()) {
    ledger_.advance_phase();
    std::fill(balls_.begin(), balls_.end(), 1);
    last_reset_ = true;
  } else {
    // One ball at a time, re-evaluating the least loaded urn after each move.
    for (;;) {
      int from = -1;
      for (int i = 0; i < n_; ++i)
        if (ledger_.saturated(i) && balls_[i] > 0) {
          from = i;
          break;
        }
      if (from < 0) break;
      int to = -1;
      for (int i = 0; i < n_; ++i) {
        if (ledger_.saturated(i)) continue;
        if (to < 0 || balls_[i] < balls_[to]) to = i;
      }
      --balls_[from];
      ++balls_[to];
      ++last_relocations_;
      ++total_relocations_;
    }
  }
  return MassVector(n_, balls_);
}

GreedyStrategy::GreedyStrategy(const MetricSpace& m, int initial)
    : metric_(&m), position_(initial) {
  if (initial < 0 || initial >= m.size())
    throw std::invalid_argument("greedy: initial point out of range");
}

int GreedyStrategy::step(const CostVector& c) {
  if (static_cast<int>(c.size()) != metric_->size())
    throw std::invalid_argument("greedy: cost vector length mismatch");
  int best = 0;
  double best_value = metric_->distance(position_, 0) + c[0];
  for (int i = 1; i < metric_->size(); ++i) {
    const double v = metric_->distance(position_, i) + c[i];
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  position_ = best;
  return position_;
}

namespace {

// One trace entry: "p/q" exactly, or a real rounded onto the declared grid.
Units parse_mass_entry(const std::string& token, Units units, const std::string& origin) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const long long p = std::stoll(token.substr(0, slash));
    const long long q = std::stoll(token.substr(slash + 1));
    if (q <= 0 || p < 0) throw std::runtime_error(origin + ": bad rational '" + token + "'");
    if ((p * units) % q != 0)
      throw std::runtime_error(origin + ": '" + token + "' is not representable in units " +
                               std::to_string(units));
    return static_cast<Units>(p * units / q);
  }
  const double value = std::stod(token);
  const double scaled = value * static_cast<double>(units);
  const double rounded = std::llround(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * static_cast<double>(units) || rounded < 0)
    throw std::runtime_error(origin + ": '" + token + "' is not representable in units " +
                             std::to_string(units));
  return static_cast<Units>(rounded);
}

}  // namespace

FractionalTrace load_trace(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  Units units = 0;
  std::vector<MassVector> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    const std::string origin = path + ":" + std::to_string(lineno);
    if (units == 0) {
      std::string tag;
      if (!(row >> tag >> units) || tag != "U" || units < 1)
        throw std::runtime_error(origin + ": expected header 'U <units>'");
      continue;
    }
    std::vector<Units> mass;
    std::string token;
    while (row >> token) mass.push_back(parse_mass_entry(token, units, origin));
    if (mass.empty()) continue;
    if (static_cast<int>(mass.size()) != n)
      throw std::runtime_error(origin + ": expected " + std::to_string(n) + " entries");
    Units sum = std::accumulate(mass.begin(), mass.end(), Units{0});
    if (sum != units)
      throw std::runtime_error(origin + ": row sums to " + std::to_string(sum) + "/" +
                               std::to_string(units));
    rows.emplace_back(units, std::move(mass));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no distributions found");
  FractionalTrace trace{rows.front(), {}};
  trace.states.assign(rows.begin() + 1, rows.end());
  return trace;
}

void save_trace(const std::string& path, const FractionalTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << "U " << trace.units() << "\n";
  auto emit = [&](const MassVector& v) {
    for (int i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i] << "/" << v.units();
    out << "\n";
  };
  emit(trace.initial);
  for (const MassVector& v : trace.states) emit(v);
}

FractionalTrace random_trace(int n, Units units, int steps, int initial, std::uint64_t seed) {
  Rng rng(seed);
  FractionalTrace trace{MassVector::point_mass(n, initial, units), {}};
  for (int t = 0; t < steps; ++t) {
    // Weighted split of the whole into n parts, largest remainders first.
    std::vector<double> w(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += w[i] = rng.next_double() + 1e-3;
    std::vector<Units> mass(n, 0);
    std::vector<std::pair<double, int>> rem(n);
    Units assigned = 0;
    for (int i = 0; i < n; ++i) {
      const double share = w[i] / total * static_cast<double>(units);
      mass[i] = static_cast<Units>(std::floor(share));
      assigned += mass[i];
      rem[i] = {share - std::floor(share), i};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const Units leftover = units - assigned;
    for (Units idx = 0; idx < leftover; ++idx) ++mass[rem[idx].second];
    trace.states.emplace_back(units, std::move(mass));
  }
  return trace;
}

FractionalTrace oscillating_trace(int n, int steps, int initial, int a, int b) {
  FractionalTrace trace{MassVector::point_mass(n, initial), {}};
  for (int t = 0; t < steps; ++t)
    trace.states.push_back(MassVector::point_mass(n, t % 2 == 0 ? a : b));
  return trace;
}

FractionalTrace run_strategy(FractionalStrategy& strategy, const CostSequence& costs,
                             int initial) {
  FractionalTrace trace{MassVector::point_mass(costs.n, initial, strategy.units()), {}};
  for (const CostVector& c : costs.steps) trace.states.push_back(strategy.step(c));
  return trace;
}

}  // namespace mts
