#pragma once

#include "swarm/core/types.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace swarm {

/// Shortest decimal that round-trips to the same binary64.
std::string format_double(double v);

inline constexpr const char* kFooterMarker = "# complete";

/// Append-only CSV file. The footer marker is written only by `complete()`.
class CsvLog {
 public:
  CsvLog(const std::filesystem::path& path, const std::string& header);
  CsvLog(const CsvLog&) = delete;
  CsvLog& operator=(const CsvLog&) = delete;
  virtual ~CsvLog() = default;

  void row(const std::string& line);
  void complete();
  bool completed() const { return completed_; }
  const std::filesystem::path& path() const { return path_; }
  std::size_t rows() const { return rows_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t rows_ = 0;
  bool completed_ = false;
};

inline constexpr const char* kTrajectoryHeader = "time,id,type,x,y,z,dx,dy,dz,action_index";
inline constexpr const char* kRewardHeader = "episode,species,mean_reward,cum_reward,actor_loss,critic_loss,entropy";

class TrajectoryLog : public CsvLog {
 public:
  explicit TrajectoryLog(const std::filesystem::path& path) : CsvLog(path, kTrajectoryHeader) {}

  /// One row per colloid; `indices` may be empty (all -1).
  void write_state(double time, const std::vector<Colloid>& colloids, const std::vector<int>& indices = {});
};

struct EpisodeSummary {
  int episode = 0;
  int species = 0;
  double mean_reward = 0.0;
  double cum_reward = 0.0;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  double entropy = 0.0;
  int slices = 0;
};

class RewardLog : public CsvLog {
 public:
  explicit RewardLog(const std::filesystem::path& path) : CsvLog(path, kRewardHeader) {}

  void write(const EpisodeSummary& s);
};

struct TrajectoryRow {
  double time = 0.0;
  std::int64_t id = 0;
  int type = 0;
  Vec3 pos = Vec3::Zero();
  Vec3 director = Vec3::Zero();
  int action_index = -1;
};

struct CsvContents {
  std::vector<std::vector<std::string>> rows;
  bool complete = false;
};

/// Reads a CSV produced by CsvLog, checking the header.
CsvContents read_csv(const std::filesystem::path& path, const std::string& header);

std::vector<TrajectoryRow> read_trajectory(const std::filesystem::path& path, bool* complete = nullptr);
std::vector<EpisodeSummary> read_rewards(const std::filesystem::path& path, bool* complete = nullptr);

}  // namespace swarm
