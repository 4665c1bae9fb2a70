#pragma once

#include "swarm/core/types.hpp"

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

namespace swarm {

struct Segment {
  std::string name;
  Eigen::Index offset = 0;
  Eigen::Index length = 0;

  bool operator==(const Segment&) const = default;
};

/// Per-particle state description plus its named layout.
struct ObservableVector {
  Eigen::VectorXd values;
  std::vector<Segment> layout;
};

/// Observables for every particle of one species; row i belongs to the
/// i-th particle of that species in colloid order.
struct ObservableBatch {
  Eigen::MatrixXd values;
  std::vector<Segment> layout;

  ObservableVector row(Eigen::Index i) const { return {values.row(i).transpose(), layout}; }
};

/// Indices of colloids with the given species tag, in input order.
std::vector<std::size_t> species_members(const std::vector<Colloid>& colloids, int species);

class Observable {
 public:
  virtual ~Observable() = default;

  /// May update internal history (declared per observable).
  virtual ObservableBatch compute(const std::vector<Colloid>& colloids, int species) = 0;
  virtual Eigen::Index width() const = 0;
  virtual std::string name() const = 0;
  /// Clears any history; called when the environment is reset.
  virtual void reset() {}
};

/// Box-normalized position (each component in [0, 1]) followed by the
/// director, `dim` components each.
class PositionDirectorObservable : public Observable {
 public:
  PositionDirectorObservable(Vec3 box, int dim);

  ObservableBatch compute(const std::vector<Colloid>& colloids, int species) override;
  Eigen::Index width() const override { return 2 * dim_; }
  std::string name() const override { return "position_director"; }

  /// Inverse of the position segment.
  Vec3 denormalize(const Eigen::Ref<const Eigen::VectorXd>& values) const;

 private:
  Vec3 box_;
  int dim_;
};

struct ConcentrationField;

/// scale * (c(r_t) - c(r_{t-1})) per particle; 0 on first sight of a
/// particle. Updates the per-id history on every call.
class ConcentrationChangeObservable : public Observable {
 public:
  ConcentrationChangeObservable(std::shared_ptr<const ConcentrationField> field, double scale = 1.0);

  ObservableBatch compute(const std::vector<Colloid>& colloids, int species) override;
  Eigen::Index width() const override { return 1; }
  std::string name() const override { return "concentration_change"; }
  void reset() override;

 private:
  std::shared_ptr<const ConcentrationField> field_;
  double scale_;
  std::vector<std::pair<std::int64_t, double>> history_;
};

struct VisionConeConfig {
  int n_cones = 5;
  double radius = 1.0;
  /// Types resolved into separate counts; empty counts every type together.
  std::vector<int> observed_types;
  /// Total angular field of view, centered on the director.
  double field_of_view = 6.283185307179586;
  /// Divides every count (e.g. the expected neighbor number).
  double normalization = 1.0;

  bool operator==(const VisionConeConfig&) const = default;
};

/// Neighbor counts per angular sector around the director.
///
/// 2D: the circle is split into n_cones equal sectors; sector k is centered
/// at angle k * 2pi/n counterclockwise from the director, so sector 0 looks
/// straight ahead. 3D: sectors are coaxial cones by polar angle from the
/// director, sector 0 the innermost. A neighbor exactly on a sector boundary
/// goes to the lower-index sector. Neighbors outside the field of view
/// (|angle| > fov/2) are ignored.
///
/// Layout is row-major [sector][type].
class VisionConesObservable : public Observable {
 public:
  VisionConesObservable(VisionConeConfig config, Vec3 box, Boundary boundary, int dim);

  ObservableBatch compute(const std::vector<Colloid>& colloids, int species) override;
  Eigen::Index width() const override;
  std::string name() const override { return "vision_cones"; }

  /// Observable of a single focal particle (index into `colloids`).
  Eigen::VectorXd focal(const std::vector<Colloid>& colloids, std::size_t focal) const;
  /// Sector of a relative angle in (-pi, pi] (2D) or polar angle in [0, pi]
  /// (3D); -1 if outside the field of view.
  int sector_of(double angle) const;

 private:
  VisionConeConfig config_;
  Vec3 box_;
  Boundary boundary_;
  int dim_;
};

/// Concatenates sub-observables in declaration order.
class MultiSensing : public Observable {
 public:
  explicit MultiSensing(std::vector<std::shared_ptr<Observable>> parts);

  ObservableBatch compute(const std::vector<Colloid>& colloids, int species) override;
  Eigen::Index width() const override;
  std::string name() const override { return "multi_sensing"; }
  void reset() override;

 private:
  std::vector<std::shared_ptr<Observable>> parts_;
};

}  // namespace swarm
