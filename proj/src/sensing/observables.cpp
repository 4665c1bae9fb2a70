#include "swarm/core/error.hpp"
#include "swarm/core/geometry.hpp"
#include "swarm/sensing/field.hpp"
#include "swarm/sensing/observable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarm {

std::vector<std::size_t> species_members(const std::vector<Colloid>& colloids, int species) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < colloids.size(); ++i) {
    if (colloids[i].type == species) out.push_back(i);
  }
  return out;
}

PositionDirectorObservable::PositionDirectorObservable(Vec3 box, int dim) : box_(box), dim_(dim) {
  if (dim != 2 && dim != 3) throw Error("position_director: dim must be 2 or 3");
}

ObservableBatch PositionDirectorObservable::compute(const std::vector<Colloid>& colloids, int species) {
  const auto members = species_members(colloids, species);
  ObservableBatch batch;
  batch.values.resize(static_cast<Eigen::Index>(members.size()), width());
  for (std::size_t r = 0; r < members.size(); ++r) {
    const Colloid& c = colloids[members[r]];
    for (int k = 0; k < dim_; ++k) {
      batch.values(r, k) = c.pos[k] / box_[k];
      batch.values(r, dim_ + k) = c.director[k];
    }
  }
  batch.layout = {{"position", 0, dim_}, {"director", dim_, dim_}};
  return batch;
}

Vec3 PositionDirectorObservable::denormalize(const Eigen::Ref<const Eigen::VectorXd>& values) const {
  Vec3 out = Vec3::Zero();
  for (int k = 0; k < dim_; ++k) out[k] = values[k] * box_[k];
  return out;
}

ConcentrationChangeObservable::ConcentrationChangeObservable(
    std::shared_ptr<const ConcentrationField> field, double scale)
    : field_(std::move(field)), scale_(scale) {
  if (!field_) throw Error("concentration_change: missing field");
}

ObservableBatch ConcentrationChangeObservable::compute(const std::vector<Colloid>& colloids,
                                                       int species) {
  const auto members = species_members(colloids, species);
  ObservableBatch batch;
  batch.values.resize(static_cast<Eigen::Index>(members.size()), 1);
  batch.layout = {{name(), 0, 1}};
  for (std::size_t r = 0; r < members.size(); ++r) {
    const Colloid& c = colloids[members[r]];
    const double now = field_->value(c.pos);
    auto it = std::find_if(history_.begin(), history_.end(), [&](const auto& h) { return h.first == c.id; });
    if (it == history_.end()) {
      batch.values(r, 0) = 0.0;
      history_.emplace_back(c.id, now);
    } else {
      batch.values(r, 0) = scale_ * (now - it->second);
      it->second = now;
    }
  }
  return batch;
}

void ConcentrationChangeObservable::reset() { history_.clear(); }

VisionConesObservable::VisionConesObservable(VisionConeConfig config, Vec3 box, Boundary boundary, int dim)
    : config_(std::move(config)), box_(box), boundary_(boundary), dim_(dim) {
  if (config_.n_cones < 1) throw Error("vision_cones: n_cones must be at least 1");
  if (!(config_.radius > 0.0)) throw Error("vision_cones: radius must be positive");
  if (!(config_.field_of_view > 0.0)) throw Error("vision_cones: field_of_view must be positive");
  if (!(config_.normalization > 0.0)) throw Error("vision_cones: normalization must be positive");
}

Eigen::Index VisionConesObservable::width() const {
  return static_cast<Eigen::Index>(config_.n_cones) *
         static_cast<Eigen::Index>(std::max<std::size_t>(1, config_.observed_types.size()));
}

int VisionConesObservable::sector_of(double angle) const {
  const int n = config_.n_cones;
  if (std::abs(angle) > config_.field_of_view / 2.0) return -1;
  double w, phi;
  if (dim_ == 2) {
    w = 2.0 * std::numbers::pi / n;
    phi = angle + w / 2.0;
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi -= 2.0 * std::numbers::pi;
  } else {
    w = std::numbers::pi / n;
    phi = angle;
  }
  const int idx = static_cast<int>(std::ceil(phi / w)) - 1;
  return std::clamp(idx, 0, n - 1);
}

Eigen::VectorXd VisionConesObservable::focal(const std::vector<Colloid>& colloids, std::size_t focal) const {
  const auto& types = config_.observed_types;
  const Eigen::Index n_types = static_cast<Eigen::Index>(std::max<std::size_t>(1, types.size()));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(width());
  const Colloid& me = colloids[focal];
  for (std::size_t j = 0; j < colloids.size(); ++j) {
    if (j == focal) continue;
    Eigen::Index type_slot = 0;
    if (!types.empty()) {
      auto it = std::find(types.begin(), types.end(), colloids[j].type);
      if (it == types.end()) continue;
      type_slot = it - types.begin();
    }
    const Vec3 d = minimum_image_displacement(me.pos, colloids[j].pos, box_, boundary_, dim_);
    const double r = d.norm();
    if (r > config_.radius || r == 0.0) continue;
    double angle;
    if (dim_ == 2) {
      angle = signed_angle_z(me.director, d);
    } else {
      angle = std::acos(std::clamp(me.director.dot(d) / r, -1.0, 1.0));
    }
    const int sector = sector_of(angle);
    if (sector < 0) continue;
    out[sector * n_types + type_slot] += 1.0 / config_.normalization;
  }
  return out;
}

ObservableBatch VisionConesObservable::compute(const std::vector<Colloid>& colloids, int species) {
  const auto members = species_members(colloids, species);
  ObservableBatch batch;
  batch.values.resize(static_cast<Eigen::Index>(members.size()), width());
  for (std::size_t r = 0; r < members.size(); ++r) batch.values.row(r) = focal(colloids, members[r]).transpose();
  batch.layout = {{name(), 0, width()}};
  return batch;
}

MultiSensing::MultiSensing(std::vector<std::shared_ptr<Observable>> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error("multi_sensing: needs at least one observable");
  for (const auto& p : parts_) {
    if (!p) throw Error("multi_sensing: null observable");
  }
}

Eigen::Index MultiSensing::width() const {
  Eigen::Index w = 0;
  for (const auto& p : parts_) w += p->width();
  return w;
}

ObservableBatch MultiSensing::compute(const std::vector<Colloid>& colloids, int species) {
  std::vector<ObservableBatch> results;
  for (const auto& p : parts_) results.push_back(p->compute(colloids, species));
  const Eigen::Index rows = results.front().values.rows();
  ObservableBatch batch;
  batch.values.resize(rows, width());
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    if (r.values.rows() != rows) throw Error("multi_sensing: inconsistent per-particle counts across observables");
    batch.values.middleCols(offset, r.values.cols()) = r.values;
    for (const Segment& s : r.layout) batch.layout.push_back({s.name, offset + s.offset, s.length});
    offset += r.values.cols();
  }
  return batch;
}

void MultiSensing::reset() {
  for (auto& p : parts_) p->reset();
}

}  // namespace swarm
