#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ferrohyst {

/// Exact play output at t = 0 for the initial input q0:
/// max(q0 - r, min(0, q0 + r)). Throws invalid-parameter for r <= 0.
double play_init(double q0, double r);

/// Exact play output after the input moves monotonically to q_new.
double play_update(double xi_prev, double q_new, double r);

/// Memory levels 0 < r_1 < ... < r_m = R. Immutable and cheap to copy.
///
/// Alongside the nodes the grid carries the composite trapezoid weights
/// over [0, R] with the origin included as an extra node (the play of
/// radius 0 is the identity), so that an integral over r is evaluated as
///   origin_weight() * h(0) + sum_j weights()[j] * h(r_j).
class RGrid {
 public:
  /// r_j = j * cutoff / nodes, j = 1..nodes.
  static RGrid uniform(double cutoff, std::size_t nodes);

  /// Arbitrary strictly increasing positive nodes; the last is the cutoff.
  static RGrid from_nodes(std::vector<double> nodes);

  [[nodiscard]] std::span<const double> nodes() const noexcept { return data_->nodes; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return data_->weights; }
  [[nodiscard]] double origin_weight() const noexcept { return data_->origin_weight; }
  [[nodiscard]] double cutoff() const noexcept { return data_->nodes.back(); }
  [[nodiscard]] std::size_t size() const noexcept { return data_->nodes.size(); }

  /// Largest spacing r_j - r_{j-1} (with r_0 = 0).
  [[nodiscard]] double max_spacing() const noexcept { return data_->max_spacing; }

  friend bool operator==(const RGrid& a, const RGrid& b) noexcept;

 private:
  struct Data {
    std::vector<double> nodes;
    std::vector<double> weights;
    double origin_weight = 0.0;
    double max_spacing = 0.0;
  };
  explicit RGrid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// The complete hysteresis memory of one material point: the play outputs
/// xi_{r_j} on every grid node plus the last input value.
class MemoryState {
 public:
  /// All plays at zero, last input zero.
  static MemoryState virgin(RGrid grid);

  /// Plays initialised with play_init(q0, r_j).
  static MemoryState initial(RGrid grid, double q0);

  [[nodiscard]] const RGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> xi() const noexcept { return xi_; }
  [[nodiscard]] double input() const noexcept { return input_; }

  /// sup of |q| over the whole input history seen by this state.
  [[nodiscard]] double input_sup() const noexcept { return input_sup_; }

  /// Applies play_update at every node (one monotone input segment).
  void evolve(double q_new);

 private:
  MemoryState(RGrid grid, std::vector<double> xi, double input);

  RGrid grid_;
  std::vector<double> xi_;
  double input_ = 0.0;
  double input_sup_ = 0.0;
};

/// Value-returning form of MemoryState::evolve.
[[nodiscard]] MemoryState evolve_memory(const MemoryState& state, double q_new);

}  // namespace ferrohyst
