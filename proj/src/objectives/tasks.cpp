#include "swarm/core/error.hpp"
#include "swarm/core/geometry.hpp"
#include "swarm/objectives/task.hpp"
#include "swarm/sensing/observable.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarm {

TaskOutput Task::operator()(const std::vector<Colloid>& colloids, int species) {
  TaskOutput out = evaluate(colloids, species);
  if (!out.rewards.allFinite()) throw Error("task produced non-finite rewards");
  kill_ = kill_ || out.kill;
  out.kill = kill_;
  return out;
}

void Task::reset(const std::vector<Colloid>& colloids) {
  kill_ = false;
  on_reset(colloids);
}

RotateRodTask::RotateRodTask(int rod_type, double scale, Vec3 box, Boundary boundary, int dim, double sense)
    : rod_type_(rod_type), scale_(scale), box_(box), boundary_(boundary), dim_(dim), sense_(sense) {}

RotateRodTask::RotateRodTask(int rod_type, double scale, Vec3 box, Boundary boundary, int dim,
                             const std::vector<Colloid>& initial, double sense)
    : RotateRodTask(rod_type, scale, box, boundary, dim, sense) {
  on_reset(initial);
}

Vec3 RotateRodTask::rod_axis(const std::vector<Colloid>& colloids) const {
  const auto members = species_members(colloids, rod_type_);
  if (members.size() < 2) throw Error("rotate_rod: rod species " + std::to_string(rod_type_) + " needs at least 2 particles");
  const Vec3 anchor = colloids[members.front()].pos;
  std::vector<Vec3> rel;
  Vec3 mean = Vec3::Zero();
  for (std::size_t i : members) {
    rel.push_back(minimum_image_displacement(anchor, colloids[i].pos, box_, boundary_, dim_));
    mean += rel.back();
  }
  mean /= static_cast<double>(rel.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3& r : rel) cov += (r - mean) * (r - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  return solver.eigenvectors().col(2).normalized();
}

void RotateRodTask::on_reset(const std::vector<Colloid>& colloids) { previous_axis_ = rod_axis(colloids); }

TaskOutput RotateRodTask::evaluate(const std::vector<Colloid>& colloids, int species) {
  const auto agents = species_members(colloids, species);
  const Vec3 axis = rod_axis(colloids);
  double delta = 0.0;
  if (previous_axis_) {
    delta = signed_angle_z(*previous_axis_, axis);
    // The axis is headless: fold into (-pi/2, pi/2].
    if (delta > std::numbers::pi / 2) delta -= std::numbers::pi;
    if (delta <= -std::numbers::pi / 2) delta += std::numbers::pi;
  }
  previous_axis_ = axis;
  return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(agents.size()), scale_ * sense_ * delta), false};
}

GradientTask::GradientTask(std::shared_ptr<const ConcentrationField> field, double scale, bool signed_change)
    : field_(std::move(field)), scale_(scale), signed_change_(signed_change) {
  if (!field_) throw Error("gradient task: missing field");
}

TaskOutput GradientTask::evaluate(const std::vector<Colloid>& colloids, int species) {
  const auto members = species_members(colloids, species);
  TaskOutput out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(members.size())), false};
  for (std::size_t r = 0; r < members.size(); ++r) {
    const Colloid& c = colloids[members[r]];
    const double now = field_->value(c.pos);
    auto it = std::find_if(history_.begin(), history_.end(), [&](const auto& h) { return h.first == c.id; });
    if (it == history_.end()) {
      history_.emplace_back(c.id, now);
      continue;
    }
    const double change = now - it->second;
    it->second = now;
    out.rewards[r] = scale_ * (signed_change_ ? change : std::max(0.0, change));
  }
  return out;
}

void GradientTask::on_reset(const std::vector<Colloid>& colloids) {
  history_.clear();
  for (const Colloid& c : colloids) history_.emplace_back(c.id, field_->value(c.pos));
}

Multitasking::Multitasking(std::vector<std::shared_ptr<Task>> tasks, std::vector<double> weights)
    : tasks_(std::move(tasks)), weights_(std::move(weights)) {
  if (tasks_.size() != weights_.size()) throw Error("multitasking: tasks and weights differ in length");
  if (tasks_.empty()) throw Error("multitasking: needs at least one task");
}

TaskOutput Multitasking::evaluate(const std::vector<Colloid>& colloids, int species) {
  TaskOutput out;
  for (std::size_t k = 0; k < tasks_.size(); ++k) {
    TaskOutput part = (*tasks_[k])(colloids, species);
    if (k == 0) {
      out.rewards = weights_[k] * part.rewards;
    } else {
      if (part.rewards.size() != out.rewards.size()) throw Error("multitasking: sub-task reward sizes differ");
      out.rewards += weights_[k] * part.rewards;
    }
    out.kill = out.kill || part.kill;
  }
  return out;
}

void Multitasking::on_reset(const std::vector<Colloid>& colloids) {
  for (auto& t : tasks_) t->reset(colloids);
}

bool kill_switch_condition(const std::vector<Colloid>& colloids, const KillSwitchConfig& config,
                           double elapsed_time, int species) {
  if (config.max_time > 0.0 && elapsed_time > config.max_time) return true;
  for (const Colloid& c : colloids) {
    for (int k = 0; k < config.dim; ++k) {
      if (config.safe_lower && c.pos[k] < (*config.safe_lower)[k]) return true;
      if (config.safe_upper && c.pos[k] > (*config.safe_upper)[k]) return true;
    }
  }
  if (config.success_threshold) {
    if (!config.field) throw Error("kill switch: success threshold needs a field");
    double sum = 0.0;
    std::size_t n = 0;
    for (const Colloid& c : colloids) {
      if (species >= 0 && c.type != species) continue;
      sum += config.field->value(c.pos);
      ++n;
    }
    if (n > 0 && sum / static_cast<double>(n) > *config.success_threshold) return true;
  }
  return false;
}

KillSwitchTask::KillSwitchTask(KillSwitchConfig config, double slice_duration)
    : config_(std::move(config)), slice_duration_(slice_duration) {}

TaskOutput KillSwitchTask::evaluate(const std::vector<Colloid>& colloids, int species) {
  const bool kill = kill_switch_condition(colloids, config_, elapsed_, species);
  elapsed_ += slice_duration_;
  return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(species_members(colloids, species).size())), kill};
}

void KillSwitchTask::on_reset(const std::vector<Colloid>&) { elapsed_ = 0.0; }

std::string to_string(RewardMode m) { return m == RewardMode::individual ? "individual" : "team_average"; }

RewardMode reward_mode_from_string(const std::string& name) {
  if (name == "individual") return RewardMode::individual;
  if (name == "team_average") return RewardMode::team_average;
  throw Error("unknown reward mode '" + name + "'");
}

Eigen::VectorXd aggregate_rewards(const Eigen::VectorXd& rewards, RewardMode mode) {
  if (rewards.size() == 0) throw Error("aggregate_rewards: empty reward list");
  if (mode == RewardMode::individual) return rewards;
  return Eigen::VectorXd::Constant(rewards.size(), rewards.mean());
}

}  // namespace swarm
