#include "ferrohyst/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

void require_radius(double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "play radius must be positive, got " + std::to_string(r));
  }
}

}  // namespace

double play_init(double q0, double r) {
  require_radius(r);
  return std::max(q0 - r, std::min(0.0, q0 + r));
}

double play_update(double xi_prev, double q_new, double r) {
  require_radius(r);
  return std::min(q_new + r, std::max(q_new - r, xi_prev));
}

RGrid RGrid::uniform(double cutoff, std::size_t nodes) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw Error(ErrorCode::InvalidParameter, "grid cutoff must be positive and finite");
  }
  if (nodes == 0) {
    throw Error(ErrorCode::InvalidParameter, "grid needs at least one node");
  }
  std::vector<double> r(nodes);
  const auto m = static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    r[j] = cutoff * static_cast<double>(j + 1) / m;
  }
  r.back() = cutoff;
  return from_nodes(std::move(r));
}

RGrid RGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.empty()) {
    throw Error(ErrorCode::InvalidParameter, "grid needs at least one node");
  }
  double prev = 0.0;
  double max_spacing = 0.0;
  for (double r : nodes) {
    if (!std::isfinite(r) || !(r > prev)) {
      throw Error(ErrorCode::InvalidParameter, "grid nodes must be positive and strictly increasing");
    }
    max_spacing = std::max(max_spacing, r - prev);
    prev = r;
  }

  auto data = std::make_shared<Data>();
  const std::size_t m = nodes.size();
  data->weights.resize(m);
  data->origin_weight = 0.5 * nodes[0];
  for (std::size_t j = 0; j < m; ++j) {
    const double left = j == 0 ? 0.0 : nodes[j - 1];
    const double right = j + 1 < m ? nodes[j + 1] : nodes[j];
    data->weights[j] = 0.5 * (right - left);
  }
  data->nodes = std::move(nodes);
  data->max_spacing = max_spacing;
  return RGrid(std::move(data));
}

bool operator==(const RGrid& a, const RGrid& b) noexcept {
  return a.data_ == b.data_ || a.data_->nodes == b.data_->nodes;
}

MemoryState::MemoryState(RGrid grid, std::vector<double> xi, double input)
    : grid_(std::move(grid)), xi_(std::move(xi)), input_(input), input_sup_(std::abs(input)) {}

MemoryState MemoryState::virgin(RGrid grid) {
  std::vector<double> xi(grid.size(), 0.0);
  return MemoryState(std::move(grid), std::move(xi), 0.0);
}

MemoryState MemoryState::initial(RGrid grid, double q0) {
  std::vector<double> xi(grid.size());
  const auto r = grid.nodes();
  for (std::size_t j = 0; j < xi.size(); ++j) {
    xi[j] = play_init(q0, r[j]);
  }
  return MemoryState(std::move(grid), std::move(xi), q0);
}

void MemoryState::evolve(double q_new) {
  const auto r = grid_.nodes();
  for (std::size_t j = 0; j < xi_.size(); ++j) {
    // play_update without the per-node radius check; grid radii are validated.
    xi_[j] = std::min(q_new + r[j], std::max(q_new - r[j], xi_[j]));
  }
  input_ = q_new;
  input_sup_ = std::max(input_sup_, std::abs(q_new));
}

MemoryState evolve_memory(const MemoryState& state, double q_new) {
  MemoryState next = state;
  next.evolve(q_new);
  return next;
}

}  // namespace ferrohyst
